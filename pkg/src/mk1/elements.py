"""Elements of the monoid M_{k,1} as finite tables.

A table is a finite list of rows x -> y where the left-hand words form a
prefix code and the right-hand words are arbitrary.  It denotes the partial
map sending x·t to y·t for every tail t — a morphism of right ideals of the
free monoid.  Tables denote the same monoid element exactly when they merge
to the same *reduced* form: whenever all k rows x·a -> y·a (one per letter a)
are present they collapse into the single row x -> y, and :func:`reduce_rows`
iterates this to its unique fixpoint.

Equality on :class:`Mk1Element` is structural, so monoid equality is
structural equality of reduced elements; every public constructor here
except :func:`image_code_restriction` and the uniform-level restrictions
returns reduced tables.  The restrictions deliberately return equivalent
*split* tables, since their whole point is reshaping the rows.

The empty table is the zero element (nowhere-defined map); {^ -> ^} is the
identity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from .congruence import PrefixCodeCongruence
from .errors import (
    AlphabetMismatch,
    DomainNotPrefixCode,
    LengthTooSmall,
    NotInjective,
    OutOfRange,
    ParseError,
)
from .words import (
    PrefixCode,
    Word,
    format_word,
    is_prefix_code,
    parse_word,
    word_key,
)

Row = tuple[Word, Word]


class NoValue(enum.Enum):
    """Non-word results of applying a table to a finite word."""

    UNDEFINED = "undefined"
    NEED_LONGER = "need-longer"


@dataclass(frozen=True, slots=True)
class Mk1Element:
    """A table over a k-letter alphabet, rows sorted by domain word.

    Direct construction validates but does not reduce; use :meth:`make` (or
    any higher-level constructor) to get the canonical reduced table.
    """

    k: int
    rows: tuple[Row, ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("alphabet needs at least two letters")
        for x, y in self.rows:
            for j in x + y:
                if not 0 <= j < self.k:
                    raise OutOfRange(f"letter index {j} out of range for k={self.k}")
        doms = [x for x, _ in self.rows]
        if doms != sorted(set(doms), key=word_key):
            raise ValueError("rows must be sorted by domain word, without repeats")
        if not is_prefix_code(doms):
            raise DomainNotPrefixCode("domain words must form a prefix code")

    @classmethod
    def make(cls, k: int, rows: Iterable[Row]) -> "Mk1Element":
        """Canonical reduced element from an arbitrary (valid) row iterable."""
        canon = tuple(sorted({(tuple(x), tuple(y)) for x, y in rows},
                             key=lambda r: word_key(r[0])))
        return cls(k, canon).reduced()

    def __iter__(self) -> Iterator[Row]:
        return iter(self.rows)

    @property
    def is_zero(self) -> bool:
        return not self.rows

    @property
    def domain_code(self) -> PrefixCode:
        return PrefixCode(self.k, tuple(x for x, _ in self.rows))

    @property
    def image_words(self) -> tuple[Word, ...]:
        """Right-hand words in row order (repeats preserved)."""
        return tuple(y for _, y in self.rows)

    def is_reduced(self) -> bool:
        return self.rows == reduce_rows(self.k, self.rows)

    def reduced(self) -> "Mk1Element":
        rows = reduce_rows(self.k, self.rows)
        return self if rows == self.rows else Mk1Element(self.k, rows)

    def __matmul__(self, other: "Mk1Element") -> "Mk1Element":
        return compose(self, other)

    def __str__(self) -> str:
        return format_table(self)


def reduce_rows(k: int, rows: Iterable[Row]) -> tuple[Row, ...]:
    """Merge full sibling row families x·a -> y·a to the unique fixpoint."""
    table = {tuple(x): tuple(y) for x, y in rows}
    stack = sorted({x[:-1] for x in table if x}, key=word_key)  # pop() takes deepest
    while stack:
        p = stack.pop()
        children = [p + (a,) for a in range(k)]
        if not all(c in table for c in children):
            continue
        images = [table[c] for c in children]
        stem = images[0][:-1] if images[0] else None
        if stem is None or any(y != stem + (a,) for a, y in enumerate(images)):
            continue
        for c in children:
            del table[c]
        table[p] = stem
        if p:
            stack.append(p[:-1])
    return tuple(sorted(table.items(), key=lambda r: word_key(r[0])))


# -- constructors ---------------------------------------------------------------

def zero_element(k: int) -> Mk1Element:
    return Mk1Element(k, ())


def identity_element(k: int) -> Mk1Element:
    return Mk1Element(k, (((), ()),))


def single_row(k: int, x: Word, y: Word) -> Mk1Element:
    return Mk1Element(k, ((tuple(x), tuple(y)),))


def partial_identity(code: PrefixCode) -> Mk1Element:
    """The idempotent fixing code·A* pointwise and undefined elsewhere."""
    return Mk1Element.make(code.k, ((w, w) for w in code.words))


# -- applying and composing ------------------------------------------------------

def apply(e: Mk1Element, w: Word):
    """Value of the table map at w: a word, UNDEFINED, or NEED_LONGER.

    NEED_LONGER means w is a proper prefix of some domain word, so the map is
    defined on part of w·A* but w itself is too short to determine the value.
    """
    w = tuple(w)
    best = None
    partial = False
    for x, y in e.rows:
        if len(x) <= len(w):
            if w[: len(x)] == x:
                best = y + w[len(x):]
                break
        elif x[: len(w)] == w:
            partial = True
    if best is not None:
        return best
    return NoValue.NEED_LONGER if partial else NoValue.UNDEFINED


def compose(f: Mk1Element, g: Mk1Element) -> Mk1Element:
    """The element f∘g (g applied first), reduced."""
    if f.k != g.k:
        raise AlphabetMismatch(f"cannot compose over {f.k} and {g.k} letters")
    k = f.k
    fdom = {x: y for x, y in f.rows}
    maxlen = max((len(x) for x in fdom), default=0)
    out: list[Row] = []
    stack: list[Row] = list(g.rows)
    while stack:
        x, y = stack.pop()
        hit = next((i for i in range(min(len(y), maxlen) + 1) if y[:i] in fdom), None)
        if hit is not None:
            out.append((x, fdom[y[:hit]] + y[hit:]))
        elif any(x2[: len(y)] == y for x2 in fdom):
            stack.extend((x + (a,), y + (a,)) for a in range(k))
        # otherwise y leads outside f's domain ideal: the row dies
    return Mk1Element.make(k, out)


# -- canonical restrictions ------------------------------------------------------

def image_code_restriction(e: Mk1Element) -> Mk1Element:
    """Split rows until the image words form a prefix code (repeats allowed).

    A row whose image is a proper prefix of another row's image is split into
    its k letter-children, and the children are re-examined until no such row
    remains.  Splitting a row never turns a non-conflicting row into a
    conflicting one, so the outcome does not depend on the processing order.
    The returned table denotes the same element but is not reduced.
    """
    if len({len(y) for _, y in e.rows}) <= 1:
        return e  # images share one length, so none is a proper prefix
    ext: dict[Word, int] = {}  # proper prefix -> number of images extending it
    for _, y in e.rows:
        for i in range(len(y)):
            p = y[:i]
            ext[p] = ext.get(p, 0) + 1
    rows: list[Row] = []
    stack = list(e.rows)
    while stack:
        x, y = stack.pop()
        if not ext.get(y):
            rows.append((x, y))
            continue
        for i in range(len(y)):
            ext[y[:i]] -= 1
        for a in range(e.k):
            child = y + (a,)
            for i in range(len(child)):
                p = child[:i]
                ext[p] = ext.get(p, 0) + 1
            stack.append((x + (a,), child))
    return Mk1Element(e.k, tuple(sorted(rows, key=lambda r: word_key(r[0]))))


def image_code(e: Mk1Element) -> PrefixCode:
    """The prefix code generating the image ideal (empty for zero)."""
    r = image_code_restriction(e)
    return PrefixCode.make(e.k, {y for _, y in r.rows})


def part(e: Mk1Element) -> PrefixCodeCongruence:
    """The fiber partition of the image-code restriction of e.

    Classes group domain words with equal images; together with a common
    tail they are exactly the end pairs the map collapses.
    """
    r = image_code_restriction(e)
    groups: dict[Word, list[Word]] = {}
    for x, y in r.rows:
        groups.setdefault(y, []).append(x)
    return PrefixCodeCongruence.make(r.domain_code, groups.values())


def restrict_to_length(e: Mk1Element, m: int) -> Mk1Element:
    """Split every row until all domain words have length exactly m.

    Requires m at least the longest current domain word; the result denotes
    the same element (not reduced).
    """
    longest = max((len(x) for x, _ in e.rows), default=0)
    if m < longest:
        raise LengthTooSmall(f"cannot shorten domain words of length {longest} to {m}")
    rows: list[Row] = []
    for x, y in e.rows:
        if len(x) == m:
            rows.append((x, y))
        else:
            rows.extend(_level_splits(e.k, x, y, m - len(x)))
    return Mk1Element(e.k, tuple(sorted(rows, key=lambda r: word_key(r[0]))))


def uniform_image_form(e: Mk1Element) -> Mk1Element:
    """Split rows until all image words share the maximal image length."""
    target = max((len(y) for _, y in e.rows), default=0)
    rows: list[Row] = []
    for x, y in e.rows:
        rows.extend(_level_splits(e.k, x, y, target - len(y)))
    return Mk1Element(e.k, tuple(sorted(rows, key=lambda r: word_key(r[0]))))


def _level_splits(k: int, x: Word, y: Word, depth: int):
    suffixes = [()]
    for _ in range(depth):
        suffixes = [s + (a,) for s in suffixes for a in range(k)]
    return ((x + s, y + s) for s in suffixes)


# -- predicates and inverses -----------------------------------------------------

def is_injective(e: Mk1Element) -> bool:
    r = image_code_restriction(e)
    return len({y for _, y in r.rows}) == len(r.rows)


def inverse_element(e: Mk1Element) -> Mk1Element:
    """The inverse of an injective element (its image words, restricted, form
    a prefix code, so the flipped table is again valid)."""
    r = image_code_restriction(e)
    if len({y for _, y in r.rows}) != len(r.rows):
        raise NotInjective("element collapses distinct ends")
    return Mk1Element.make(e.k, ((y, x) for x, y in r.rows))


def is_idempotent(e: Mk1Element) -> bool:
    e = e.reduced()
    return compose(e, e) == e


def is_partial_identity(e: Mk1Element) -> bool:
    return all(x == y for x, y in e.rows)


# -- text format -----------------------------------------------------------------

def format_table(e: Mk1Element) -> str:
    """Multi-line text form: a 'k <int>' header then one 'x -> y' row per line."""
    lines = [f"k {e.k}"]
    lines.extend(f"{format_word(x)} -> {format_word(y)}" for x, y in e.rows)
    return "\n".join(lines)


def parse_table(text: str) -> Mk1Element:
    """Parse the :func:`format_table` form.

    Blank lines and lines starting with '#' are ignored.  Rows need not be
    sorted; the element is validated but not reduced, so normal forms remain
    an explicit, observable step.
    """
    k = None
    rows: list[Row] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if k is None:
            head = line.split()
            if len(head) != 2 or head[0] != "k" or not head[1].isdigit():
                raise ParseError(f"expected 'k <int>' header, got {line!r}")
            k = int(head[1])
            if k < 2:
                raise ParseError("alphabet needs at least two letters")
            continue
        if "->" not in line:
            raise ParseError(f"expected 'x -> y' row, got {line!r}")
        left, _, right = line.partition("->")
        rows.append((parse_word(left, k), parse_word(right, k)))
    if k is None:
        raise ParseError("missing 'k <int>' header")
    doms = [x for x, _ in rows]
    if len(set(doms)) != len(doms):
        raise ParseError("repeated domain word")
    return Mk1Element(k, tuple(sorted(rows, key=lambda r: word_key(r[0]))))
