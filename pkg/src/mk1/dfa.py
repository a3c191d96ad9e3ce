"""Acyclic DFAs for prefix codes: minimal automata, measures, length stats.

A trimmed acyclic automaton with one accepting state can only accept an
antichain of words — a comparable pair would force a path from the accept
state back to itself — so these automata are exactly compressed prefix
codes.  They let the measure of a code, and the length statistics of
congruence classes, be computed by dynamic programming on the DAG instead
of by walking word lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .congruence import PrefixCodeCongruence
from .elements import Mk1Element, image_code, part
from .errors import BaseTooSmall, CyclicGraph, EmptyLanguage, NotSingleAccept, OutOfRange
from .green import HeightReport, _rep_sum
from .kary import KRational, kq, kq_zero
from .words import PrefixCode, Word, format_word, word_key


@dataclass(frozen=True, slots=True)
class AcyclicDfa:
    """A deterministic, acyclic, trimmed automaton with one accepting state.

    ``edges`` holds (state, letter, state) triples sorted by source state
    and letter.  Every state must be reachable from ``start`` and must
    reach ``accept``; the accept state therefore has no outgoing edges.
    """

    k: int
    n_states: int
    start: int
    accept: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.k < 2:
            raise BaseTooSmall(f"alphabet size must be at least 2, got {self.k}")
        if self.n_states < 1:
            raise ValueError("need at least one state")
        for q in (self.start, self.accept):
            if not 0 <= q < self.n_states:
                raise ValueError(f"state {q} out of range")
        seen = set()
        for p, a, q in self.edges:
            if not (0 <= p < self.n_states and 0 <= q < self.n_states):
                raise ValueError(f"edge ({p},{a},{q}) leaves the state range")
            if not 0 <= a < self.k:
                raise OutOfRange(f"letter {a} outside alphabet of size {self.k}")
            if (p, a) in seen:
                raise ValueError(f"two edges leave state {p} on letter {a}")
            seen.add((p, a))
        if self.edges != tuple(sorted(self.edges)):
            raise ValueError("edges must be sorted")
        order = _topological_order(self.n_states, self.edges)
        if order is None:
            raise CyclicGraph("the transition graph has a cycle")
        fwd: dict[int, list[int]] = {}
        back: dict[int, list[int]] = {}
        for p, _, q in self.edges:
            fwd.setdefault(p, []).append(q)
            back.setdefault(q, []).append(p)
        if len(_closure(self.start, fwd)) != self.n_states:
            raise ValueError("every state must be reachable from the start")
        if len(_closure(self.accept, back)) != self.n_states:
            raise ValueError("every state must reach the accept state")

    @classmethod
    def make(cls, k, n_states, start, accepts, edges) -> "AcyclicDfa":
        accepts = sorted(set(accepts))
        if len(accepts) != 1:
            raise NotSingleAccept(f"need exactly one accept state, got {len(accepts)}")
        return cls(k, n_states, start, accepts[0], tuple(sorted(edges)))


def _closure(source: int, adj: dict[int, list[int]]) -> set[int]:
    seen = {source}
    todo = [source]
    while todo:
        for q in adj.get(todo.pop(), ()):
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return seen


def _topological_order(n: int, edges) -> list[int] | None:
    indeg = [0] * n
    for _, _, q in edges:
        indeg[q] += 1
    todo = sorted(q for q in range(n) if indeg[q] == 0)
    order = []
    outs: dict[int, list[int]] = {}
    for p, _, q in edges:
        outs.setdefault(p, []).append(q)
    while todo:
        p = todo.pop(0)
        order.append(p)
        for q in outs.get(p, ()):
            indeg[q] -= 1
            if indeg[q] == 0:
                todo.append(q)
        todo.sort()
    return order if len(order) == n else None


def trie_dfa(code: PrefixCode) -> AcyclicDfa:
    """The minimal acyclic automaton of a prefix code.

    Builds the word trie, then merges states with identical outgoing
    behaviour bottom-up (all leaves collapse into the single accept
    state).  States are numbered in breadth-first order from the start.
    """
    if not code.words:
        raise EmptyLanguage("cannot build an automaton for the empty code")
    children: dict[Word, dict[int, Word]] = {(): {}}
    for w in code.words:
        for i in range(len(w)):
            children.setdefault(w[: i + 1], {})
            children[w[: i]].setdefault(w[i], w[: i + 1])
    # Bottom-up signature merge: nodes sharing (letter -> class) maps unify.
    cls: dict[Word, int] = {}
    sig_ids: dict[tuple, int] = {}
    for node in sorted(children, key=len, reverse=True):
        sig = tuple(sorted((a, cls[ch]) for a, ch in children[node].items()))
        if sig not in sig_ids:
            sig_ids[sig] = len(sig_ids)
        cls[node] = sig_ids[sig]
    out: dict[int, dict[int, int]] = {}
    for node, kids in children.items():
        out.setdefault(cls[node], {a: cls[ch] for a, ch in kids.items()})
    # Renumber classes breadth-first from the root, letters in order.
    number = {cls[()]: 0}
    queue = [cls[()]]
    while queue:
        c = queue.pop(0)
        for a in sorted(out[c]):
            d = out[c][a]
            if d not in number:
                number[d] = len(number)
                queue.append(d)
    edges = tuple(sorted(
        (number[c], a, number[d]) for c, kids in out.items() for a, d in kids.items()
    ))
    accept = number[cls[code.words[0]]]
    return AcyclicDfa(code.k, len(number), 0, accept, edges)


def language(d: AcyclicDfa) -> list[Word]:
    """All accepted words, in canonical (length, then letters) order."""
    outs: dict[int, list[tuple[int, int]]] = {}
    for p, a, q in d.edges:
        outs.setdefault(p, []).append((a, q))
    words: list[Word] = []
    stack: list[tuple[int, Word]] = [(d.start, ())]
    while stack:
        state, w = stack.pop()
        if state == d.accept:
            words.append(w)
            continue
        for a, q in outs.get(state, ()):
            stack.append((q, w + (a,)))
    return sorted(words, key=word_key)


def dfa_measure(d: AcyclicDfa) -> KRational:
    """Measure of the accepted code: push mass 1 from the start state
    through the DAG, each edge carrying a 1/k share of its source."""
    order = _topological_order(d.n_states, d.edges)
    assert order is not None
    into: dict[int, list[int]] = {}
    for p, _, q in d.edges:
        into.setdefault(q, []).append(p)
    mass = {q: kq_zero(d.k) for q in range(d.n_states)}
    mass[d.start] = kq(d.k, 1)
    for q in order:
        for p in into.get(q, ()):
            mass[q] = mass[q] + mass[p].scale_pow(-1)
    return mass[d.accept]


def shortest_accepted(d: AcyclicDfa) -> int:
    dist = {d.start: 0}
    queue = [d.start]
    while queue:
        p = queue.pop(0)
        if p == d.accept:
            return dist[p]
        for e_p, _, q in d.edges:
            if e_p == p and q not in dist:
                dist[q] = dist[p] + 1
                queue.append(q)
    raise AssertionError("trimmed automaton must reach accept")


def min_rep_measure(d: AcyclicDfa) -> KRational:
    """k^(-n) for the shortest accepted word length n."""
    return kq(d.k, 1, shortest_accepted(d))


def counts_by_length(d: AcyclicDfa) -> dict[int, int]:
    """How many accepted words there are of each length."""
    order = _topological_order(d.n_states, d.edges)
    assert order is not None
    into: dict[int, list[int]] = {}
    for p, _, q in d.edges:
        into.setdefault(q, []).append(p)
    counts: dict[int, dict[int, int]] = {q: {} for q in range(d.n_states)}
    counts[d.start] = {0: 1}
    for q in order:
        for p in into.get(q, ()):
            for n, c in counts[p].items():
                counts[q][n + 1] = counts[q].get(n + 1, 0) + c
    return counts[d.accept]


def _length_stats(counts: dict[int, int]) -> tuple[int, int, Fraction, Fraction]:
    total = sum(counts.values())
    lengths = sorted(counts)
    lo, hi = lengths[0], lengths[-1]
    ave = Fraction(sum(n * c for n, c in counts.items()), total)
    # Walk the sorted multiset to its middle element(s).
    wanted = [(total - 1) // 2, total // 2]
    mids = []
    seen = 0
    for n in lengths:
        seen += counts[n]
        while wanted and wanted[0] < seen:
            mids.append(n)
            wanted.pop(0)
    med = Fraction(mids[0] + mids[1], 2)
    return lo, hi, ave, med


def height_report_via_dfa(e: Mk1Element) -> HeightReport:
    """The same report as :func:`mk1.green.heights`, but computed from
    minimal automata of the image code and of each collapsing class."""
    if e.is_zero:
        zero = kq_zero(e.k)
        return HeightReport(zero, zero, zero, zero, zero)
    k = e.k
    r = dfa_measure(trie_dfa(image_code(e)))
    p: PrefixCodeCongruence = part(e)
    l = kq_zero(k)
    l_max = kq_zero(k)
    aves: list[Fraction] = []
    meds: list[Fraction] = []
    for cls in p.classes:
        counts = counts_by_length(trie_dfa(PrefixCode.make(k, cls)))
        lo, hi, ave, med = _length_stats(counts)
        l = l + kq(k, 1, lo)
        l_max = l_max + kq(k, 1, hi)
        aves.append(ave)
        meds.append(med)
    return HeightReport(r=r, l=l, l_max=l_max,
                        l_ave=_rep_sum(k, aves), l_med=_rep_sum(k, meds))


def format_dfa(d: AcyclicDfa) -> str:
    lines = [f"states: {d.n_states}", f"start: {d.start}", f"accept: {d.accept}"]
    lines.extend(
        f"{p} --{format_word((a,))}--> {q}" for p, a, q in d.edges
    )
    return "\n".join(lines)
