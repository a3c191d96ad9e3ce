"""The length-equality-preserving submonoids: predicates, indices, witnesses.

An element preserves length equality (is *plep*) when equally long inputs
get equally long outputs — for a table, when len(image) - len(domain word)
is the same in every row, a quantity invariant under splitting and merging.
Total plep elements (domain measure 1) form the *tlep* submonoid.  The zero
element counts as plep but not tlep.

Within these submonoids the D-class of a nonzero element is pinned down by
a single positive integer prime to k: the numerator of its R-height (the
k-free part of its image-code size).  :func:`plep_d_witness` makes the
equivalence concrete, producing a conjugating pair built from level-extended
image codes; :func:`plep_element_with_index` realizes any admissible index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .elements import (
    Mk1Element,
    image_code,
    image_code_restriction,
    restrict_to_length,
    uniform_image_form,
)
from .errors import (
    AlphabetMismatch,
    DivisibleIndex,
    IndexMismatch,
    NotFixedLength,
    NotPlep,
    OutOfRange,
    RepNotInCode,
    ZeroElement,
)
from .kary import kq_one
from .words import PrefixCode, Word


def is_plep(e: Mk1Element) -> bool:
    return len({len(y) - len(x) for x, y in e.rows}) <= 1


def is_tlep(e: Mk1Element) -> bool:
    return is_plep(e) and e.domain_code.mu == kq_one(e.k)


def _require_plep(e: Mk1Element) -> None:
    if e.is_zero:
        raise ZeroElement("the zero element has no index")
    if not is_plep(e):
        raise NotPlep("element does not preserve length equality")


def d_index_plep(e: Mk1Element) -> int:
    """The k-free part of the image-code size: numerator of the R-height."""
    _require_plep(e)
    return image_code(e).mu.num


def eq_D_plep(f: Mk1Element, g: Mk1Element) -> bool:
    if f.k != g.k:
        raise AlphabetMismatch("different alphabets")
    if f.is_zero or g.is_zero:
        return f.is_zero and g.is_zero
    return d_index_plep(f) == d_index_plep(g)


def eta_idempotent(q: PrefixCode, q0: Word) -> Mk1Element:
    """The total idempotent fixing the fixed-length code q and sending every
    other word of that length to the representative q0."""
    q0 = tuple(q0)
    if not q.words:
        raise NotFixedLength("need a nonempty fixed-length code")
    lengths = {len(w) for w in q.words}
    if len(lengths) != 1:
        raise NotFixedLength("code words must all have the same length")
    if q0 not in set(q.words):
        raise RepNotInCode("representative must belong to the code")
    (n,) = lengths
    members = set(q.words)
    rows = [(w, w) for w in q.words]
    rows.extend((w, q0) for w in _level(q.k, n) if w not in members)
    return Mk1Element.make(q.k, rows)


def _level(k: int, n: int) -> list[Word]:
    words: list[Word] = [()]
    for _ in range(n):
        words = [w + (a,) for w in words for a in range(k)]
    return words


def plep_element_with_index(k: int, i: int) -> Mk1Element:
    """A total plep idempotent whose D-index is i (i must be prime to k)."""
    if i < 1:
        raise OutOfRange("index must be positive")
    if i % k == 0:
        raise DivisibleIndex(f"index must not be divisible by {k}")
    n = 1
    while k ** n <= i:
        n += 1
    level = _level(k, n)
    q = PrefixCode.make(k, level[:i])
    return eta_idempotent(q, level[0])


def _uniform_image_code(e: Mk1Element) -> tuple[Mk1Element, PrefixCode]:
    r = uniform_image_form(image_code_restriction(e))
    return r, PrefixCode.make(e.k, {y for _, y in r.rows})


def _k_free(k: int, n: int) -> tuple[int, int]:
    j = 0
    while n % k == 0:
        n //= k
        j += 1
    return n, j


def common_image_refinement(e1: Mk1Element, e2: Mk1Element) -> tuple[Mk1Element, Mk1Element]:
    """Split two plep tables until their image codes are fixed-length and
    equally large.  Possible exactly when the D-indices agree; the two image
    word lengths still differ unless the R-heights were equal."""
    if e1.k != e2.k:
        raise AlphabetMismatch("different alphabets")
    _require_plep(e1)
    _require_plep(e2)
    k = e1.k
    r1, q1 = _uniform_image_code(e1)
    r2, q2 = _uniform_image_code(e2)
    n1, j1 = _k_free(k, len(q1))
    n2, j2 = _k_free(k, len(q2))
    if n1 != n2:
        raise IndexMismatch(f"D-indices differ: {n1} vs {n2}")
    big = max(j1, j2)
    r1 = restrict_to_length(r1, max(len(x) for x, _ in r1.rows) + (big - j1))
    r2 = restrict_to_length(r2, max(len(x) for x, _ in r2.rows) + (big - j2))
    return r1, r2


@dataclass(frozen=True, slots=True)
class PlepWitness:
    """Conjugators realizing a D-equivalence between plep elements.

    q1 and q2 are the level-extended image codes of the two inputs; b maps
    q1 bijectively onto q2 (totally, with a constant filler, when both
    inputs are tlep) and b_prime is its partner the other way.  Composing
    b_prime∘b and b∘b_prime yields the canonical idempotents over q1 and q2
    respectively, linking the two elements inside the submonoid.
    """

    b: Mk1Element
    b_prime: Mk1Element
    q1: PrefixCode
    q2: PrefixCode
    tlep: bool


def plep_d_witness(e1: Mk1Element, e2: Mk1Element) -> PlepWitness:
    if e1.k != e2.k:
        raise AlphabetMismatch("different alphabets")
    _require_plep(e1)
    _require_plep(e2)
    k = e1.k
    r1, code1 = _uniform_image_code(e1)
    r2, code2 = _uniform_image_code(e2)
    n1, j1 = _k_free(k, len(code1))
    n2, j2 = _k_free(k, len(code2))
    if n1 != n2:
        raise IndexMismatch(f"D-indices differ: {n1} vs {n2}")
    big = max(j1, j2)
    ext1 = sorted(w + u for w in code1.words for u in _level(k, big - j1))
    ext2 = sorted(w + u for w in code2.words for u in _level(k, big - j2))
    assert len(ext1) == len(ext2)
    q1 = PrefixCode.make(k, ext1)
    q2 = PrefixCode.make(k, ext2)
    pairing = list(zip(ext1, ext2))
    total = is_tlep(e1) and is_tlep(e2)
    rows_b = list(pairing)
    rows_bp = [(y, x) for x, y in pairing]
    if total:
        members1, members2 = set(ext1), set(ext2)
        rows_b.extend((w, ext2[0]) for w in _level(k, len(ext1[0])) if w not in members1)
        rows_bp.extend((w, ext1[0]) for w in _level(k, len(ext2[0])) if w not in members2)
    return PlepWitness(
        b=Mk1Element.make(k, rows_b),
        b_prime=Mk1Element.make(k, rows_bp),
        q1=q1,
        q2=q2,
        tlep=total,
    )
