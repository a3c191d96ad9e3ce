"""Seeded random generators shared across the test suite."""

import random

from mk1.elements import Mk1Element, zero_element
from mk1.words import PrefixCode, Word, parse_word


def el(k, *rows):
    """Shorthand: an element from (domain, image) word strings."""
    return Mk1Element.make(k, [(parse_word(x, k), parse_word(y, k)) for x, y in rows])


def random_code(rng: random.Random, k: int, max_depth: int = 4) -> PrefixCode:
    """A random prefix code, possibly empty, possibly with uncovered holes."""
    words: list[Word] = []

    def build(prefix: Word, depth: int):
        if depth >= max_depth:
            if rng.random() < 0.9:
                words.append(prefix)
            return
        r = rng.random()
        if r < 0.12 and prefix:
            return  # leave this subtree uncovered
        if r < 0.55:
            words.append(prefix)
            return
        for j in range(k):
            build(prefix + (j,), depth + 1)

    build((), 0)
    return PrefixCode.make(k, words)


def random_maximal_code(rng: random.Random, k: int, max_depth: int = 4,
                        p_leaf: float = 0.5) -> PrefixCode:
    """A random maximal prefix code (measure exactly 1)."""
    words: list[Word] = []

    def build(prefix: Word, depth: int):
        if depth >= max_depth or rng.random() < p_leaf:
            words.append(prefix)
            return
        for j in range(k):
            build(prefix + (j,), depth + 1)

    build((), 0)
    return PrefixCode.make(k, words)


def random_nonempty_code(rng: random.Random, k: int, max_depth: int = 4) -> PrefixCode:
    while True:
        code = random_code(rng, k, max_depth)
        if len(code):
            return code


def random_word(rng: random.Random, k: int, length: int) -> Word:
    return tuple(rng.randrange(k) for _ in range(length))


def random_element(rng: random.Random, k: int, max_depth: int = 3,
                   p_zero: float = 0.1) -> Mk1Element:
    if rng.random() < p_zero:
        return zero_element(k)
    dom = random_nonempty_code(rng, k, max_depth)
    rows = [(x, random_word(rng, k, rng.randrange(0, 4))) for x in dom.words]
    return Mk1Element.make(k, rows)


def random_congruence(rng: random.Random, k: int):
    from mk1.congruence import PrefixCodeCongruence
    code = random_nonempty_code(rng, k, max_depth=3)
    groups: list[list] = []
    for w in code.words:
        if groups and rng.random() < 0.4:
            groups[rng.randrange(len(groups))].append(w)
        else:
            groups.append([w])
    return PrefixCodeCongruence.make(code, groups)


def random_level_plep(rng: random.Random, k: int, total: bool) -> Mk1Element:
    """A random plep element: level words into fixed-length images."""
    n = rng.randint(1, 3)
    level = [()]
    for _ in range(n):
        level = [w + (a,) for w in level for a in range(k)]
    size = rng.randint(1, len(level))
    dom = rng.sample(level, size)
    m = rng.randint(0, 2)
    images = [tuple(rng.randrange(k) for _ in range(m)) for _ in dom]
    e = Mk1Element.make(k, list(zip(sorted(dom), images)))
    if total and size < len(level):
        rest = [w for w in level if w not in set(dom)]
        rows = list(e.rows) + [(w, images[0]) for w in rest]
        e = Mk1Element.make(k, rows)
    return e


def random_idempotent(rng: random.Random, k: int, max_depth: int = 3) -> Mk1Element:
    """A random idempotent: fix a prefix code Q pointwise, and map words from
    the uncovered region into Q·A* (such a table squares to itself)."""
    from mk1.words import complement_code
    q = random_nonempty_code(rng, k, max_depth)
    rows = [(w, w) for w in q.words]
    for v in complement_code(q).words:
        if rng.random() < 0.6:
            target = q.words[rng.randrange(len(q.words))] + \
                random_word(rng, k, rng.randrange(0, 2))
            rows.append((v + random_word(rng, k, rng.randrange(0, 2)), target))
    return Mk1Element.make(k, rows)
