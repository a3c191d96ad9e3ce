"""Words over a k-letter alphabet and finite prefix codes.

Words are plain tuples of 0-based letter indices; the empty tuple is the
empty word.  Letters print as 'a', 'b', 'c', ... and the empty word prints
as '^'.  Python's tuple ordering coincides with the dictionary order used
throughout (a prefix precedes its extensions, otherwise the first differing
letter decides), and the canonical display order sorts by length first.

A :class:`PrefixCode` is a finite set of pairwise prefix-incomparable words
together with the alphabet size.  Its Bernoulli measure mu(P) = sum over
words of k**(-length) is exact (:class:`~mk1.kary.KRational`); a prefix code
is maximal iff the measure is 1.  The right ideal generated by P is P·A*,
and two ideals are essentially equal when they contain the same infinite
ends — decidable by the bounded covering test below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    ChildrenMissing,
    NotInCode,
    OutOfRange,
    ParseError,
)
from .kary import KRational, kq, kq_one

Word = tuple[int, ...]

EPSILON: Word = ()


def is_prefix(u: Word, v: Word) -> bool:
    """True iff u is a (not necessarily proper) prefix of v."""
    return len(u) <= len(v) and v[: len(u)] == u


def prefix_comparable(u: Word, v: Word) -> bool:
    return is_prefix(u, v) or is_prefix(v, u)


def word_key(w: Word) -> tuple[int, Word]:
    """Sort key for the canonical (length, dictionary) display order."""
    return (len(w), w)


def word_cmp_dict(x: Word, y: Word) -> int:
    """-1/0/1 for the dictionary order: prefixes first, then letter order."""
    return (x > y) - (x < y)


def format_word(w: Word) -> str:
    if not w:
        return "^"
    if any(j >= 26 for j in w):
        raise ValueError("letter display supports alphabets up to 26 letters")
    return "".join(chr(ord("a") + j) for j in w)


def parse_word(text: str, k: int) -> Word:
    text = text.strip()
    if text == "^":
        return ()
    if not text:
        raise ParseError("empty word text (use '^' for the empty word)")
    out = []
    for c in text:
        j = ord(c) - ord("a")
        if not 0 <= j < min(k, 26):
            raise ParseError(f"letter {c!r} invalid for a {k}-letter alphabet")
        out.append(j)
    return tuple(out)


def is_prefix_code(words: Iterable[Word]) -> bool:
    """True iff no word is a proper prefix of another (duplicates rejected)."""
    ws = sorted(words)
    for u, v in zip(ws, ws[1:]):
        if is_prefix(u, v):
            return False
    return True


@dataclass(frozen=True, slots=True)
class PrefixCode:
    """A finite prefix code over a k-letter alphabet, canonically sorted."""

    k: int
    words: tuple[Word, ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("alphabet needs at least two letters")
        for w in self.words:
            for j in w:
                if not 0 <= j < self.k:
                    raise ValueError(f"letter index {j} out of range for k={self.k}")
        if list(self.words) != sorted(set(self.words), key=word_key):
            raise ValueError("words must be canonically sorted and distinct")
        if not is_prefix_code(self.words):
            raise ValueError("not a prefix code")

    @classmethod
    def make(cls, k: int, words: Iterable[Word]) -> "PrefixCode":
        return cls(k, tuple(sorted(set(map(tuple, words)), key=word_key)))

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w) -> bool:
        return tuple(w) in set(self.words)

    @property
    def mu(self) -> KRational:
        return mu(self.k, self.words)

    def __str__(self) -> str:
        return "{" + ", ".join(format_word(w) for w in self.words) + "}"


def mu(k: int, words: Iterable[Word]) -> KRational:
    """Bernoulli measure of a finite set of words: sum of k**(-length).

    Input is treated as a set; duplicates do not count twice.
    """
    ws = set(map(tuple, words))
    if not ws:
        return kq(k, 0)
    depth = max(len(w) for w in ws)
    total = sum(k ** (depth - len(w)) for w in ws)
    return kq(k, total, depth)


def is_maximal_code(code: PrefixCode) -> bool:
    return code.mu == kq_one(code.k)


# -- the right-ideal covering test -------------------------------------------

class _Trie:
    """Internal prefix tree for covering queries against a fixed code."""

    __slots__ = ("k", "root")

    def __init__(self, k: int, words: Iterable[Word]):
        self.k = k
        self.root = {}
        for w in words:
            node = self.root
            for j in w:
                node = node.setdefault(j, {})
            node[None] = True  # end marker

    def covers(self, w: Word) -> bool:
        """True iff every infinite end through w has a prefix in the code."""
        node = self.root
        for j in w:
            if None in node:
                return True
            node = node.get(j)
            if node is None:
                return False
        return _subtree_is_full(node, self.k)


def _subtree_is_full(node, k: int) -> bool:
    """Whether the code words below this node form a maximal prefix code."""
    if None in node:
        return True
    if len(node) < k:
        return False
    return all(_subtree_is_full(child, k) for child in node.values())


def covered(w: Word, code: PrefixCode) -> bool:
    """True iff the end set of w·A* is contained in that of code·A*."""
    return _Trie(code.k, code.words).covers(w)


def ideal_ess_leq(p1: PrefixCode, p2: PrefixCode) -> bool:
    """Essential containment of right ideals: ends(P1 A*) within ends(P2 A*)."""
    trie = _Trie(p2.k, p2.words)
    return all(trie.covers(w) for w in p1.words)


def ideal_ess_eq(p1: PrefixCode, p2: PrefixCode) -> bool:
    return ideal_ess_leq(p1, p2) and ideal_ess_leq(p2, p1)


def complement_code(code: PrefixCode) -> PrefixCode:
    """The canonical prefix code complementary to ``code``.

    Its members are the maximal tree nodes whose subtrees miss code·A*
    entirely; together with ``code`` it covers every infinite end, and the
    complement of the empty code is {^}.
    """
    k = code.k
    out: list[Word] = []

    def walk(prefix: Word, node):
        if None in node:
            return
        if not node:
            out.append(prefix)
            return
        for j in range(k):
            walk(prefix + (j,), node.get(j, {}))

    walk((), _Trie(k, code.words).root)
    return PrefixCode.make(k, out)


# -- measure-preserving rewriting ---------------------------------------------

def replace_r1(code: PrefixCode, c: Word) -> PrefixCode:
    """Replace the code word c by its k children c·a. Preserves the measure."""
    c = tuple(c)
    if c not in code:
        raise NotInCode(f"{format_word(c)} is not in the code")
    rest = [w for w in code.words if w != c]
    rest.extend(c + (j,) for j in range(code.k))
    return PrefixCode.make(code.k, rest)


def replace_r2(code: PrefixCode, c: Word) -> PrefixCode:
    """Inverse step: merge the full sibling family c·A back into c."""
    c = tuple(c)
    children = {c + (j,) for j in range(code.k)}
    if not children <= set(code.words):
        raise ChildrenMissing(f"code lacks the full sibling family of {format_word(c)}")
    rest = [w for w in code.words if w not in children]
    rest.append(c)
    return PrefixCode.make(code.k, rest)


def r2_normal_form(code: PrefixCode) -> PrefixCode:
    """Merge sibling families until none remain (the minimal representative)."""
    words = set(code.words)
    changed = True
    while changed:
        changed = False
        parents = {w[:-1] for w in words if w}
        for p in sorted(parents, key=word_key):
            fam = {p + (j,) for j in range(code.k)}
            if fam <= words:
                words -= fam
                words.add(p)
                changed = True
    return PrefixCode.make(code.k, words)


# -- codes of prescribed measure ------------------------------------------------

def code_with_measure(k: int, h: KRational) -> PrefixCode:
    """The canonical prefix code P_h with mu(P_h) = h, for 0 <= h <= 1.

    Reading h = 0.d1 d2 ... dn in base k, block i contributes the words
    p_i · {first d_i letters} where p_i is the length-(i-1) prefix built by
    appending, at step j, the letter with index d_j.  The code has exactly
    d1 + ... + dn words; h = 0 gives the empty code and h = 1 gives {^}.
    Measures g < h yield nested ideals: P_g lies inside P_h · A*.
    """
    if h.base != k:
        raise OutOfRange(f"measure is in base {h.base}, expected {k}")
    one = kq_one(k)
    if h > one:
        raise OutOfRange("measures above 1 have no prefix code")
    if h == one:
        return PrefixCode.make(k, [()])
    _, frac = h.digits()
    words = []
    prefix: Word = ()
    for d in frac:
        words.extend(prefix + (j,) for j in range(d))
        prefix = prefix + (d,)
    return PrefixCode.make(k, words)
