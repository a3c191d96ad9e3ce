"""A finite generating set acting on leading letters, and word synthesis.

Each generator is an ordinary table that reads and rewrites a short prefix
of its input, leaving the tail alone:

* ``and`` / ``or`` — consume two letters, emit one; the first alphabet
  letter plays the role of "true".
* ``not`` — flip the first letter between letter 0 and letter 1 (every
  other letter maps to letter 0).
* ``fork`` — duplicate the first letter.
* ``proj2`` — drop the first of two letters.
* ``E1`` .. ``Ek`` — equality probes: ``Ei`` replaces the first letter by
  letter 1 when it equals letter i-1, by letter 0 otherwise.
* ``guard`` — the partial identity killing inputs whose first letter is
  letter 0.
* ``tau(i)`` — swap input positions i and i+1 (1-based).

A generator word is a list of such tokens, applied right to left like
function composition.  Its length charges 1 per gate and i+1 per tau(i),
matching the widths of the underlying tables.

:func:`synthesize_partial_identity` compiles, for any target word s, a
generator word evaluating to the partial identity on all length-|s| words
except s.  The construction probes each input position against the
corresponding letter of s, OR-combines the probe flags (the flag stays at
letter 0 exactly on input s), then negates, guards, and discards the flag.
"""

from __future__ import annotations

import re

from .elements import Mk1Element, compose, identity_element, image_code_restriction
from .errors import EmptyTarget, OutOfRange, UnknownGate
from .words import Word

_TAU = re.compile(r"^tau\((\d+)\)$")
_PROBE = re.compile(r"^E(\d+)$")


def gate_element(k: int, token: str) -> Mk1Element:
    if token == "and":
        rows = [((i, j), (0,) if i == 0 and j == 0 else (1,)) for i in range(k) for j in range(k)]
    elif token == "or":
        rows = [((i, j), (0,) if i == 0 or j == 0 else (1,)) for i in range(k) for j in range(k)]
    elif token == "not":
        rows = [((i,), (1,) if i == 0 else (0,)) for i in range(k)]
    elif token == "fork":
        rows = [((i,), (i, i)) for i in range(k)]
    elif token == "proj2":
        rows = [((i, j), (j,)) for i in range(k) for j in range(k)]
    elif token == "guard":
        rows = [((i,), (i,)) for i in range(1, k)]
    elif m := _PROBE.match(token):
        c = int(m.group(1))
        if not 1 <= c <= k:
            raise UnknownGate(f"probe {token} needs an alphabet of at least {c} letters")
        rows = [((i,), (1,) if i == c - 1 else (0,)) for i in range(k)]
    elif m := _TAU.match(token):
        i = int(m.group(1))
        if i < 1:
            raise UnknownGate("tau positions are 1-based")
        rows = [(w, w[: i - 1] + (w[i], w[i - 1])) for w in _level(k, i + 1)]
    else:
        raise UnknownGate(f"unknown generator {token!r}")
    return Mk1Element.make(k, rows)


def _level(k: int, n: int) -> list[Word]:
    words: list[Word] = [()]
    for _ in range(n):
        words = [w + (a,) for w in words for a in range(k)]
    return words


def token_length(token: str) -> int:
    if m := _TAU.match(token):
        return int(m.group(1)) + 1
    return 1


def generator_length(tokens: list[str]) -> int:
    return sum(token_length(t) for t in tokens)


def parse_generator_word(text: str) -> list[str]:
    return [t for t in text.replace(",", " ").split() if t]


def eval_generator_word(k: int, tokens: list[str]) -> Mk1Element:
    """Compose the generator tables, rightmost token acting first."""
    acc = identity_element(k)
    for token in tokens:
        acc = compose(acc, gate_element(k, token))
    return acc


def synthesize_partial_identity(k: int, target: Word) -> list[str]:
    """A generator word for the partial identity on A^m minus {target}."""
    target = tuple(target)
    m = len(target)
    if m == 0:
        raise EmptyTarget("target word must be nonempty")
    for c in target:
        if not 0 <= c < k:
            raise OutOfRange(f"letter {c} outside alphabet of size {k}")
    prog: list[str] = []
    for i in range(1, m + 1):
        if i > 1:
            # x_i sits at position i+1 behind the flag and x_1..x_{i-1}.
            prog.extend(f"tau({p})" for p in range(i, 0, -1))
        prog.append("fork")
        prog.append(f"E{target[i - 1] + 1}")
        if i > 1:
            prog.append("tau(2)")
            prog.append("or")
            prog.extend(f"tau({p})" for p in range(2, i + 1))
    prog.extend(["not", "guard", "proj2"])
    return list(reversed(prog))


def length_bound_check(k: int, tokens: list[str], factor: int = 2) -> bool:
    """Every image word has a preimage within |image| + factor*word-length."""
    e = eval_generator_word(k, tokens)
    bound = factor * generator_length(tokens)
    shortest: dict[Word, int] = {}
    for x, y in image_code_restriction(e).rows:
        if y not in shortest or len(x) < shortest[y]:
            shortest[y] = len(x)
    return all(n <= len(y) + bound for y, n in shortest.items())
