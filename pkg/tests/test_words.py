"""Prefix codes: measure, covering, complements, rewriting, measure chains."""

import random

import pytest

from helpers import random_code, random_nonempty_code
from mk1.errors import ChildrenMissing, NotInCode, OutOfRange, ParseError
from mk1.kary import kq, kq_one, kq_zero, parse_krational
from mk1.words import (
    PrefixCode,
    code_with_measure,
    complement_code,
    covered,
    format_word,
    ideal_ess_eq,
    ideal_ess_leq,
    is_maximal_code,
    is_prefix,
    is_prefix_code,
    mu,
    parse_word,
    r2_normal_form,
    replace_r1,
    replace_r2,
    word_key,
)


def pc(k, *texts):
    return PrefixCode.make(k, [parse_word(t, k) for t in texts])


def test_word_text():
    assert format_word(()) == "^"
    assert format_word((0, 1, 2)) == "abc"
    assert parse_word("abc", 3) == (0, 1, 2)
    assert parse_word("^", 2) == ()
    with pytest.raises(ParseError):
        parse_word("ac", 2)
    with pytest.raises(ParseError):
        parse_word("", 2)


def test_prefix_basics():
    assert is_prefix((), (0, 1))
    assert is_prefix((0,), (0, 1))
    assert not is_prefix((1,), (0, 1))
    assert sorted([(1,), (0, 0), ()], key=word_key) == [(), (1,), (0, 0)]


def test_prefix_code_validation():
    assert is_prefix_code([(0,), (1, 0)])
    assert not is_prefix_code([(0,), (0, 1)])
    assert not is_prefix_code([(0,), (0,)])
    with pytest.raises(ValueError):
        PrefixCode.make(2, [(0,), (0, 1)])
    with pytest.raises(ValueError):
        PrefixCode.make(2, [(0,), (2,)])


def test_measure():
    # mu applies to any finite word set, not only prefix codes
    assert mu(2, [(0,), (0, 0), (0, 0, 0)]) == kq(2, 7, 3)
    assert pc(2, "aa", "b").mu == kq(2, 3, 2)
    assert pc(2).mu == kq_zero(2)
    assert pc(2, "^").mu == kq_one(2)
    assert mu(2, [(0, 0), (0, 0), (1,)]) == kq(2, 3, 2)   # duplicates ignored


def test_maximality():
    assert is_maximal_code(pc(2, "a", "b"))
    assert is_maximal_code(pc(2, "a", "ba", "bb"))
    assert not is_maximal_code(pc(2, "aa", "b"))
    assert not is_maximal_code(pc(2))
    assert is_maximal_code(pc(3, "a", "b", "c"))


def test_covered():
    code = pc(2, "aa", "b")
    assert covered((0, 0, 1), code)       # below a code word
    assert covered((1,), code)
    assert not covered((0, 1), code)      # the hole
    assert not covered((), code)
    full = pc(2, "a", "ba", "bb")
    assert covered((), full)
    assert covered((1,), full)            # via the pair {ba, bb}


def test_complement():
    assert complement_code(pc(2, "aa", "b")) == pc(2, "ab")
    assert complement_code(pc(2)) == pc(2, "^")
    assert complement_code(pc(2, "a", "b")) == pc(2)
    assert complement_code(pc(3, "b")) == pc(3, "a", "c")


def test_complement_is_exact_cover(seed=4242):
    rng = random.Random(seed)
    for _ in range(200):
        k = rng.choice([2, 3])
        code = random_code(rng, k)
        comp = complement_code(code)
        assert code.mu + comp.mu == kq_one(k)
        assert is_prefix_code(code.words + comp.words)


def test_ideal_essential_containment():
    assert ideal_ess_eq(pc(2, "a", "ba", "bb"), pc(2, "a", "b"))
    assert ideal_ess_leq(pc(2, "aa"), pc(2, "a"))
    assert not ideal_ess_leq(pc(2, "a"), pc(2, "aa"))
    assert ideal_ess_eq(pc(2), pc(2))
    assert not ideal_ess_leq(pc(2, "b"), pc(2, "aa", "ab"))


def _all_codes(k, depth):
    """Every prefix code over k letters with words of length <= depth."""
    if depth == 0:
        return [((),), ()]
    shallower = _all_codes(k, depth - 1)
    out = [((),)]
    for parts in _product_codes(shallower, k):
        out.append(parts)
    return out


def _product_codes(codes, k):
    def rec(j):
        if j == k:
            yield ()
            return
        for rest in rec(j + 1):
            for c in codes:
                yield tuple((j,) + w for w in c) + rest
    yield from rec(0)


def test_ess_eq_matches_merge_normal_form():
    # Exhaustively over all 677 codes of depth <= 3 on two letters:
    # two ideals are essentially equal iff the codes merge to the same
    # minimal representative.
    codes = [PrefixCode.make(2, ws) for ws in _all_codes(2, 3)]
    assert len(codes) == 677
    forms = [r2_normal_form(c) for c in codes]
    rng = random.Random(7)
    idx = range(len(codes))
    pairs = {(i, j) for i in idx for j in rng.sample(idx, 12)}
    for i, j in pairs:
        assert ideal_ess_eq(codes[i], codes[j]) == (forms[i] == forms[j])


def test_replace_steps():
    code = pc(2, "aa", "b")
    stepped = replace_r1(code, (1,))
    assert stepped == pc(2, "aa", "ba", "bb")
    assert replace_r2(stepped, (1,)) == code
    with pytest.raises(NotInCode):
        replace_r1(code, (0,))
    with pytest.raises(ChildrenMissing):
        replace_r2(code, (1,))


def test_replace_preserves_measure(seed=99):
    rng = random.Random(seed)
    for _ in range(100):
        k = rng.choice([2, 3, 5])
        code = random_nonempty_code(rng, k)
        m = code.mu
        for _ in range(8):
            c = code.words[rng.randrange(len(code.words))]
            code = replace_r1(code, c)
            assert code.mu == m
        form = r2_normal_form(code)
        assert form.mu == m
        assert ideal_ess_eq(form, code)


def test_code_with_measure_worked_example():
    h = parse_krational(5, "0.0031042")
    code = code_with_measure(5, h)
    assert code == pc(5, "aaa", "aab", "aac", "aada",
                      "aadbaa", "aadbab", "aadbac", "aadbad",
                      "aadbaea", "aadbaeb")
    assert len(code) == 10          # the digit sum of h
    assert code.mu == h


def test_code_with_measure_edges():
    assert code_with_measure(2, kq_zero(2)) == pc(2)
    assert code_with_measure(2, kq_one(2)) == pc(2, "^")
    assert code_with_measure(3, kq(3, 2, 1)) == pc(3, "a", "b")
    with pytest.raises(OutOfRange):
        code_with_measure(2, kq(2, 3, 1))
    with pytest.raises(OutOfRange):
        code_with_measure(2, kq(3, 1, 1))


def test_code_with_measure_chain(seed=2024):
    rng = random.Random(seed)
    for _ in range(200):
        k = rng.choice([2, 3, 7])
        a = kq(k, rng.randrange(0, k**6 + 1), 6)
        b = kq(k, rng.randrange(0, k**6 + 1), 6)
        pa, pb = code_with_measure(k, a), code_with_measure(k, b)
        assert pa.mu == a and pb.mu == b
        if a == b:
            assert pa == pb
        else:
            lo, hi = (pa, pb) if a < b else (pb, pa)
            assert ideal_ess_leq(lo, hi)
            assert not ideal_ess_leq(hi, lo)
