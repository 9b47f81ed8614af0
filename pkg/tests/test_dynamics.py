from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxpop.classical import HyperoctahedralGroup, SymmetricGroup
from coxpop.coxeter import CoxeterGroup, weak_leq_R
from coxpop.dynamics import (
    CompulsiveMap,
    DomainMismatch,
    NotAFunction,
    avg_orbit,
    brieskorn,
    count_compulsive_maps,
    is_compulsive,
    lower_interval,
    max_compulsive_orbit,
    max_orbit,
    orbit,
    orbit_sizes,
    pop,
    pop_via_meet,
    preimages,
    random_compulsive,
    tpss_set,
)


def test_h3_max_orbit():
    size, w = max_orbit(CoxeterGroup("H3"))
    assert size == 10
    assert orbit(w).size == 10


def test_orbit_sizes_sum_in_s3():
    sizes = orbit_sizes(SymmetricGroup(3))
    assert sorted(sizes.values()) == [1, 2, 2, 2, 3, 3]
    assert avg_orbit(SymmetricGroup(3)) == Fraction(13, 6)


def test_preimages_of_identity_are_layered():
    G = SymmetricGroup(4)
    assert len(preimages(G.identity(), G)) == 8


def test_tpss_counts_type_a_and_b():
    assert [len(tpss_set(SymmetricGroup(n), 2)) for n in range(1, 8)] == [1, 2, 6, 16, 42, 112, 298]
    assert [len(tpss_set(HyperoctahedralGroup(n), 2)) for n in range(1, 5)] == [2, 6, 16, 42]


def test_tpss_is_forward_closed():
    G = SymmetricGroup(5)
    found = tpss_set(G, 2)
    brute = {w for w in G.elements() if pop(pop(w, G), G) == G.identity()}
    assert found == brute


def test_tpss_rejects_negative_t():
    with pytest.raises(ValueError):
        tpss_set(SymmetricGroup(3), -1)


words = st.lists(st.integers(1, 3), max_size=15)


@settings(max_examples=100, deadline=None)
@given(words)
def test_pop_properties(u):
    G = CoxeterGroup("H3")
    w = G.element(u)
    p = pop(w)
    assert p == pop_via_meet(w)
    assert weak_leq_R(p, w)
    assert w in preimages(p)
    assert (p == w) == (w == G.identity())


@settings(max_examples=100, deadline=None)
@given(words)
def test_brieskorn_prefixes(u):
    G = CoxeterGroup("B3")
    w = G.element(u)
    bs = brieskorn(w)
    orb = orbit(w).elements
    prod = G.identity()
    for i, b in enumerate(bs, 1):
        prod = prod * b
        assert prod == orb[len(bs) - i]
        assert b == G.longest_element(b.right_descents())
    assert prod == w


def test_pop_is_compulsive_and_random_maps_are():
    G = CoxeterGroup("A3")
    assert is_compulsive(CompulsiveMap(G, {w: pop(w) for w in G.elements()}))
    for seed in range(5):
        assert is_compulsive(random_compulsive(G, seed))
    assert not is_compulsive(CompulsiveMap(G, {w: w for w in G.elements()}))


def test_compulsive_errors():
    G = CoxeterGroup("A2")
    table = {w: w for w in G.elements()}
    with pytest.raises(DomainMismatch):
        is_compulsive(CompulsiveMap(G, dict(list(table.items())[:3])))
    bad = dict(table)
    bad[G.identity()] = "nope"
    with pytest.raises(NotAFunction):
        is_compulsive(CompulsiveMap(G, bad))


def test_lower_interval_size():
    G = CoxeterGroup("A3")
    assert len(lower_interval(G.w0)) == 24
    assert lower_interval(G.identity()) == [G.identity()]


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7])
def test_dihedral_compulsive_bound(m):
    G = CoxeterGroup(f"I2({m})")
    assert max_compulsive_orbit(G) == m
    assert count_compulsive_maps(G) > 1
