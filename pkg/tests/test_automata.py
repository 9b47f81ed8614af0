from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxpop import automata as fa
from coxpop.automata import Dfa, NoRecurrenceWithinBound, RationalGF


@st.composite
def dfas(draw, k=2, max_states=4):
    n = draw(st.integers(1, max_states))
    delta = draw(st.lists(st.integers(0, n - 1), min_size=n * k, max_size=n * k))
    acc = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(k, np.array(delta).reshape(n, k), 0, acc)


def words(k, n_max):
    for n in range(n_max + 1):
        yield from product(range(k), repeat=n)


@settings(max_examples=60, deadline=None)
@given(dfas(), dfas())
def test_boolean_operations(a, b):
    i, u, c = fa.intersect(a, b), fa.union(a, b), fa.complement(a)
    for w in words(2, 6):
        assert i.accepts(w) == (a.accepts(w) and b.accepts(w))
        assert u.accepts(w) == (a.accepts(w) or b.accepts(w))
        assert c.accepts(w) != a.accepts(w)


@settings(max_examples=60, deadline=None)
@given(dfas(), dfas())
def test_concat_reverse_star(a, b):
    cat, rev, st_ = fa.concat(a, b), fa.reverse(a), fa.star(a)
    for w in words(2, 6):
        split = any(a.accepts(w[:i]) and b.accepts(w[i:]) for i in range(len(w) + 1))
        assert cat.accepts(w) == split
        assert rev.accepts(w) == a.accepts(w[::-1])
    # star: concatenations of accepted words, checked by dynamic programming
    for w in words(2, 6):
        ok = [True] + [False] * len(w)
        for j in range(1, len(w) + 1):
            ok[j] = any(ok[i] and a.accepts(w[i:j]) for i in range(j))
        assert st_.accepts(w) == ok[len(w)]


@settings(max_examples=60, deadline=None)
@given(dfas(k=3, max_states=3))
def test_cyc(a):
    c = fa.cyc(a)
    for w in words(3, 5):
        rotated = w[-1:] + w[:-1] if w else w
        assert c.accepts(w) == a.accepts(rotated)


@settings(max_examples=60, deadline=None)
@given(dfas(k=2, max_states=5))
def test_series_matches_enumeration(a):
    s = fa.series(a, 7)
    assert s == [fa.brute_count(a.accepts, 2, n) for n in range(8)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=3).map(tuple), max_size=4))
def test_factor_and_suffix_languages(ws):
    avoid = fa.avoid_factors(3, ws)
    nosuf = fa.no_suffix_in(3, ws)
    for w in words(3, 5):
        has = any(w[i:i + len(f)] == f for f in ws for i in range(len(w) - len(f) + 1))
        assert avoid.accepts(w) == (not has)
        assert nosuf.accepts(w) == (not any(len(w) >= len(f) and w[len(w) - len(f):] == f for f in ws))


def test_minimization_is_canonical():
    # two presentations of "even number of 1s"
    a = Dfa(2, [[0, 1], [1, 0]], 0, [0])
    b = Dfa(2, [[0, 1], [1, 2], [2, 1]], 0, [0, 2])
    assert a == b and a.n_states == 2
    assert Dfa.from_json(a.to_json()) == a


def test_letter_constructions():
    assert fa.starts_with(3, [0]).accepts((0, 2)) and not fa.starts_with(3, [0]).accepts(())
    assert fa.ends_with(3, [1]).accepts((2, 1))
    assert fa.length_at_least(2, 3).accepts((0, 0, 0)) and not fa.length_at_least(2, 3).accepts((0, 0))
    runs = fa.avoid_letter_runs(2, [1], 3)
    assert runs.accepts((1, 1, 0, 1, 1)) and not runs.accepts((0, 1, 1, 1))
    assert not fa.no_suffix_run(2, [1], 2).accepts((0, 1, 1))
    assert fa.Dfa.from_finite(2, [(0, 1), ()]).accepts(())
    assert fa.Dfa.from_predicate_on_letters(3, [0, 2]).accepts((2, 0, 2))


def test_alphabet_mismatch():
    with pytest.raises(fa.AlphabetMismatch):
        fa.intersect(Dfa.full(2), Dfa.full(3))


def test_rational_gf_expand_and_fit():
    gf = RationalGF((1, -1, -1, -1), (1, -2, -1, -2))
    s = gf.expand(20)
    assert s[:9] == [1, 1, 2, 6, 16, 42, 112, 298, 792]
    assert fa.fit_rational_gf(s, 3) == gf
    assert str(gf) == "(1-z-z^2-z^3)/(1-2z-z^2-2z^3)"


def test_fit_reduces_common_factors():
    # (1 - z) / ((1 - z)(1 - 2z)) has the reduced form 1 / (1 - 2z)
    s = [2**n for n in range(20)]
    assert fa.fit_rational_gf(s, 4) == RationalGF((1,), (1, -2))


def test_fit_rejects_short_or_irregular():
    with pytest.raises(NoRecurrenceWithinBound):
        fa.fit_rational_gf([1, 2, 3], 3)
    with pytest.raises(NoRecurrenceWithinBound):
        fa.fit_rational_gf([n * n % 7 + (n > 15) * n**3 for n in range(24)], 2)


@settings(max_examples=40, deadline=None)
@given(dfas(k=2, max_states=4))
def test_fit_recovers_automaton_series(a):
    s = fa.series(a, 2 * a.n_states + 8)
    gf = fa.fit_rational_gf(s, a.n_states)
    assert gf.expand(len(s) - 1) == s
    assert len(gf.den) - 1 <= a.n_states


def test_berlekamp_massey_fibonacci():
    C = fa.berlekamp_massey([0, 1, 1, 2, 3, 5, 8, 13])
    assert C == [1, -1, -1]
