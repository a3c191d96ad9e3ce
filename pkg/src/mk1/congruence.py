"""Partitions of prefix codes and their collision measures.

A :class:`PrefixCodeCongruence` partitions a prefix code into classes.  When
the code is the domain of a table map and the classes are its fibers, the
partition describes exactly which pairs of infinite ends the map collapses:
ends c·t and c'·t are identified for c, c' in a common class and t an
arbitrary common tail.

Two exact quantities live here.  The *noncollision measure* sums k**(-length)
of one shortest representative per class; the *collision measure* is its
complement within 1 and also decomposes as (uncovered region) + (mass of the
non-representative words), which :func:`collision_measure` cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotAClass
from .kary import KRational, kq_one
from .words import PrefixCode, Word, mu, word_key


@dataclass(frozen=True, slots=True)
class PrefixCodeCongruence:
    code: PrefixCode
    classes: tuple[tuple[Word, ...], ...]

    def __post_init__(self):
        seen: set[Word] = set()
        for cls in self.classes:
            if not cls:
                raise NotAClass("empty class")
            if list(cls) != sorted(cls, key=word_key):
                raise ValueError("class not canonically sorted")
            seen.update(cls)
        if sum(len(cls) for cls in self.classes) > len(seen):
            raise ValueError("classes overlap")
        if seen != set(self.code.words):
            raise ValueError("classes do not partition the code")
        if list(self.classes) != sorted(self.classes, key=lambda c: word_key(c[0])):
            raise ValueError("classes not sorted by leading representative")

    @classmethod
    def make(cls, code: PrefixCode, groups: Iterable[Iterable[Word]]) -> "PrefixCodeCongruence":
        sorted_groups = [tuple(sorted(map(tuple, g), key=word_key)) for g in groups]
        if any(not g for g in sorted_groups):
            raise NotAClass("empty class")
        canon = tuple(sorted(sorted_groups, key=lambda c: word_key(c[0])))
        return cls(code, canon)

    @property
    def k(self) -> int:
        return self.code.k

    def min_reps(self) -> tuple[Word, ...]:
        """The shortest (then dictionary-first) representative of each class."""
        return tuple(cls[0] for cls in self.classes)

    def class_of(self, w: Word) -> tuple[Word, ...]:
        for cls in self.classes:
            if w in cls:
                return cls
        raise NotAClass("word not in any class")

    def __str__(self) -> str:
        from .words import format_word
        parts = ("{" + ", ".join(format_word(w) for w in cls) + "}" for cls in self.classes)
        return " | ".join(parts)


def noncollision_measure(c: PrefixCodeCongruence) -> KRational:
    """Sum of k**(-length) over one shortest representative per class."""
    return mu(c.k, c.min_reps())


def collision_measure(c: PrefixCodeCongruence) -> KRational:
    """Total mass of collapsed-or-undefined ends: 1 - noncollision.

    Computed directly as mu(uncovered region) + sum over classes of the mass
    of everything except the shortest representative, then cross-checked
    against the complement form.
    """
    k = c.k
    covered = c.code.mu
    direct = (kq_one(k) - covered) + (covered - mu(k, c.min_reps()))
    dual = kq_one(k) - noncollision_measure(c)
    assert direct == dual
    return direct


def split_class(c: PrefixCodeCongruence, index: int) -> PrefixCodeCongruence:
    """Refine one class into its k letter-children classes.

    The class {c1, ..., cr} becomes the k classes {c1·a, ..., cr·a}, one per
    letter a.  The underlying code is refined accordingly, and the
    noncollision measure is unchanged.
    """
    k = c.k
    target = c.classes[index]
    groups = [cls for i, cls in enumerate(c.classes) if i != index]
    groups.extend(tuple(w + (a,) for w in target) for a in range(k))
    words = [w for cls in groups for w in cls]
    return PrefixCodeCongruence.make(PrefixCode.make(k, words), groups)


def max_congruence(c: PrefixCodeCongruence) -> PrefixCodeCongruence:
    """Coarsen to the unique maximal form.

    Whenever k classes are S·a1, ..., S·ak for a common stem set S and the k
    distinct last letters, they encode the same end identifications as the
    single class S over the coarser code; merge and repeat.  The result is
    the canonical coarsest presentation of the end relation.
    """
    k = c.k
    classes = [frozenset(cls) for cls in c.classes]
    changed = True
    while changed:
        changed = False
        by_strip: dict[frozenset, dict[int, int]] = {}
        for i, cls in enumerate(classes):
            if any(not w for w in cls):
                continue
            lasts = {w[-1] for w in cls}
            if len(lasts) != 1:
                continue
            (a,) = lasts
            fam = by_strip.setdefault(frozenset(w[:-1] for w in cls), {})
            fam[a] = i
            if len(fam) == k:
                strip = frozenset(w[:-1] for w in cls)
                for j in sorted(fam.values(), reverse=True):
                    del classes[j]
                classes.append(strip)
                changed = True
                break
    words = [w for cls in classes for w in cls]
    return PrefixCodeCongruence.make(PrefixCode.make(k, words), classes)
