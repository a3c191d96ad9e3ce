"""Boolean ∀-counting encoded as exact collapse measures, plus padding maps.

Given a boolean formula B(x1..xm, y1..yn), the number N of y-assignments
with ∀x B(x,y) can be read off one table element φ_B over the binary
alphabet: the noncollision measure of φ_B equals

    2^-m - N * 2^-(n+m+2).

φ_B routes each "question" word 0·y·x to the answer letter B(x,y) followed
by y, and routes a spare 1·y·w branch (one letter longer) to 0·y so that
every answer word keeps a short preimage *except* when the answer 0 only
arises through the spare branch — which happens exactly when ∀x B(x,y)=1.
Counting is thereby reduced to computing one exact measure, and back.

The padding helpers at the bottom re-encode arbitrary words over a doubled
alphabet so that codes can be completed to a single fixed length without
changing their measure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .congruence import noncollision_measure
from .elements import Mk1Element, part
from .errors import (
    ArityMismatch,
    LengthTooSmall,
    NotSurjective,
    OutOfRange,
    ParseError,
    TooLarge,
    TooLong,
)
from .kary import KRational, kq
from .words import PrefixCode, Word

Ast = tuple


@dataclass(frozen=True, slots=True)
class BooleanFormula:
    """A formula over variables x1..xm and y1..yn.

    The ast is nested tuples: ('x', i) and ('y', i) with 1-based indices,
    ('not', a), ('and', a, b), ('or', a, b), ('const', 0 or 1).
    """

    m: int
    n: int
    ast: Ast

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ArityMismatch("variable counts must be non-negative")
        _check_ast(self.ast, self.m, self.n)

    def __str__(self) -> str:
        return f"m={self.m} n={self.n} {_format_ast(self.ast, 0)}"


def _check_ast(ast: Ast, m: int, n: int) -> None:
    op = ast[0]
    if op in ("x", "y"):
        bound = m if op == "x" else n
        if not 1 <= ast[1] <= bound:
            raise ArityMismatch(f"{op}{ast[1]} out of range (have {bound})")
    elif op == "const":
        if ast[1] not in (0, 1):
            raise ArityMismatch("constants are 0 or 1")
    elif op == "not":
        _check_ast(ast[1], m, n)
    elif op in ("and", "or"):
        _check_ast(ast[1], m, n)
        _check_ast(ast[2], m, n)
    else:
        raise ArityMismatch(f"unknown node {op!r}")


def _format_ast(ast: Ast, prec: int) -> str:
    op = ast[0]
    if op in ("x", "y"):
        return f"{op}{ast[1]}"
    if op == "const":
        return str(ast[1])
    if op == "not":
        return "!" + _format_ast(ast[1], 3)
    level = 2 if op == "and" else 1
    sep = " & " if op == "and" else " | "
    body = sep.join(_format_ast(a, level) for a in ast[1:])
    return f"({body})" if prec > level else body


_HEADER = re.compile(r"^\s*m=(\d+)\s+n=(\d+)\s+(.*)$", re.DOTALL)
_VAR = re.compile(r"[xy]\d+|[01()!&|]")


def parse_formula(text: str) -> BooleanFormula:
    """Read "m=<int> n=<int> <expression>" with ! over & over |."""
    header = _HEADER.match(text)
    if not header:
        raise ParseError("expected a header like 'm=2 n=1' before the formula")
    m, n = int(header.group(1)), int(header.group(2))
    body = header.group(3)
    tokens = _VAR.findall(body)
    if "".join(tokens) != "".join(body.split()):
        raise ParseError(f"unexpected characters in formula {body!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("formula ended unexpectedly")
        pos += 1
        return tokens[pos - 1]

    def parse_or():
        node = parse_and()
        while peek() == "|":
            take()
            node = ("or", node, parse_and())
        return node

    def parse_and():
        node = parse_not()
        while peek() == "&":
            take()
            node = ("and", node, parse_not())
        return node

    def parse_not():
        if peek() == "!":
            take()
            return ("not", parse_not())
        return parse_atom()

    def parse_atom():
        t = take()
        if t == "(":
            node = parse_or()
            if take() != ")":
                raise ParseError("missing closing parenthesis")
            return node
        if t in ("0", "1"):
            return ("const", int(t))
        if t[0] in "xy":
            return (t[0], int(t[1:]))
        raise ParseError(f"unexpected token {t!r}")

    ast = parse_or()
    if pos != len(tokens):
        raise ParseError(f"trailing tokens after formula: {tokens[pos:]}")
    return BooleanFormula(m, n, ast)


def _py(ast: Ast) -> str:
    op = ast[0]
    if op == "x":
        return f"x[{ast[1] - 1}]"
    if op == "y":
        return f"y[{ast[1] - 1}]"
    if op == "const":
        return str(ast[1])
    if op == "not":
        return f"(1-{_py(ast[1])})"
    sym = "&" if op == "and" else "|"
    return f"({_py(ast[1])}{sym}{_py(ast[2])})"


@lru_cache(maxsize=None)
def _compiled(f: BooleanFormula):
    return eval(f"lambda x, y: {_py(f.ast)}")


def evaluate(f: BooleanFormula, x: tuple, y: tuple) -> int:
    if len(x) != f.m or len(y) != f.n:
        raise ArityMismatch(f"need {f.m} x-bits and {f.n} y-bits")
    return _compiled(f)(x, y)


def bits(n: int):
    return product((0, 1), repeat=n)


def count_forall_sat(f: BooleanFormula) -> int:
    """|{y : for every x, B(x,y)=1}| by brute force."""
    if f.m + f.n > 24:
        raise TooLarge("brute force capped at 24 variables")
    fn = _compiled(f)
    return sum(1 for y in bits(f.n) if all(fn(x, y) for x in bits(f.m)))


def covers_every_y(f: BooleanFormula) -> bool:
    """Whether each y has at least one satisfying x (needed by φ_B)."""
    if f.m + f.n > 24:
        raise TooLarge("brute force capped at 24 variables")
    fn = _compiled(f)
    return all(any(fn(x, y) for x in bits(f.m)) for y in bits(f.n))


def ensure_surjective(f: BooleanFormula) -> BooleanFormula:
    """Add a fresh x-variable OR-ed in: same ∀-count, every y coverable."""
    return BooleanFormula(f.m + 1, f.n, ("or", ("x", f.m + 1), f.ast))


def formula_from_truth_table(m: int, n: int, table: int) -> BooleanFormula:
    """The DNF whose truth table is the given bitmask.

    Bit i of ``table`` is the value at the i-th pair in the (y, x)
    enumeration by :func:`bits`, y varying slowest.
    """
    if table < 0 or table >= 1 << (1 << (m + n)):
        raise OutOfRange("truth table bitmask out of range")
    minterms = []
    for i, (y, x) in enumerate(product(bits(n), bits(m))):
        if table >> i & 1:
            lits = [("x", j + 1) if b else ("not", ("x", j + 1)) for j, b in enumerate(x)]
            lits += [("y", j + 1) if b else ("not", ("y", j + 1)) for j, b in enumerate(y)]
            node = lits[0]
            for lit in lits[1:]:
                node = ("and", node, lit)
            minterms.append(node)
    if not minterms:
        return BooleanFormula(m, n, ("const", 0))
    node = minterms[0]
    for t in minterms[1:]:
        node = ("or", node, t)
    return BooleanFormula(m, n, node)


def truth_table(f: BooleanFormula) -> int:
    fn = _compiled(f)
    table = 0
    for i, (y, x) in enumerate(product(bits(f.n), bits(f.m))):
        table |= fn(x, y) << i
    return table


# -- the counting element ---------------------------------------------------------

def encode_formula(f: BooleanFormula, skeleton=None) -> Mk1Element:
    """The binary table element φ_B whose noncollision measure counts
    ∀-satisfied y's.  Raises NotSurjective when some y has no satisfying x
    (:func:`ensure_surjective` repairs that without changing the count)."""
    if not covers_every_y(f):
        raise NotSurjective("some y has no satisfying x; ensure_surjective first")
    fn = _compiled(f)
    if skeleton is None:
        skeleton = encoding_skeleton(f.m, f.n)
    questions, spares = skeleton
    rows = [(w, (fn(x, y),) + y) for w, y, x in questions]
    rows.extend(spares)
    return Mk1Element.make(2, rows)


@lru_cache(maxsize=None)
def encoding_skeleton(m: int, n: int):
    """Reusable domain scaffolding for :func:`encode_formula`."""
    questions = tuple(
        ((0,) + y + x, y, x) for y in bits(n) for x in bits(m)
    )
    spares = tuple(
        ((1,) + y + w, (0,) + y) for y in bits(n) for w in bits(m + 1)
    )
    return questions, spares


def predicted_noncollision(m: int, n: int, count: int) -> KRational:
    """2^-m - count * 2^-(n+m+2), as one canonical binary rational."""
    if not 0 <= count <= 1 << n:
        raise OutOfRange(f"count must lie in [0, 2^{n}]")
    return kq(2, (1 << (n + 2)) - count, n + m + 2)


def recover_count(m: int, n: int, noncollision: KRational) -> int:
    """Invert :func:`predicted_noncollision`."""
    return (kq(2, 1, m) - noncollision).scale_pow(n + m + 2).as_integer()


def count_via_element(f: BooleanFormula) -> int:
    """The ∀-count read off the collapse structure of φ_B."""
    return recover_count(f.m, f.n, noncollision_measure(part(encode_formula(f))))


# -- measure-preserving padding ---------------------------------------------------

def pad_encode(k: int, w: Word, p: int) -> Word:
    """Double each letter with a marker and pad to length exactly 2p.

    Letter a becomes the pair (a, letter 1); padding pairs are (0, 0).
    The map is injective and prefix-free on equal-length blocks, so codes
    stay codes after encoding."""
    if 2 * len(w) > 2 * p:
        raise TooLong(f"word of length {len(w)} does not fit in {p} pairs")
    for a in w:
        if not 0 <= a < k:
            raise OutOfRange(f"letter {a} outside alphabet of size {k}")
    out = []
    for a in w:
        out.extend((a, 1))
    out.extend((0, 0) * (p - len(w)))
    return tuple(out)


def pad_decode(k: int, u: Word) -> Word:
    if len(u) % 2:
        raise ParseError("padded words have even length")
    letters = []
    padding = False
    for i in range(0, len(u), 2):
        a, tag = u[i], u[i + 1]
        if tag == 1 and not padding:
            if not 0 <= a < k:
                raise ParseError(f"letter {a} outside alphabet of size {k}")
            letters.append(a)
        elif (a, tag) == (0, 0):
            padding = True
        else:
            raise ParseError(f"bad pair ({a},{tag}) at position {i}")
    return tuple(letters)


def complete_to_length(code: PrefixCode, p: int) -> PrefixCode:
    """Replace every word by all its length-p extensions: same measure,
    fixed length, k^p * measure many words."""
    if any(len(w) > p for w in code.words):
        raise LengthTooSmall(f"code has words longer than {p}")
    words = []
    tails = {0: [()]}
    for w in sorted(code.words, key=len):
        need = p - len(w)
        if need not in tails:
            tails[need] = [t for t in product(range(code.k), repeat=need)]
        words.extend(w + t for t in tails[need])
    return PrefixCode.make(code.k, words)
