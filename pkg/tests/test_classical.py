import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxpop.classical import (
    AffinePermutation,
    AffineSymmetricGroup,
    HyperoctahedralGroup,
    InvalidAffinePermutation,
    NotCentrallySymmetric,
    RepeatedEntry,
    SymmetricGroup,
    _affine_length_bruteforce,
    a_embed,
    b_embed,
    b_project,
    compose,
    descending_runs,
    dihedral_elements,
    dihedral_pop,
    inversions,
    is_centrally_symmetric,
    parse_element,
    parse_perm,
    perm_inverse,
    pop_by_runs,
    standardize,
)
from coxpop.coxeter import CoxeterGroup
from coxpop.dynamics import pop


def test_pop_by_runs_worked_example():
    w = parse_perm("42135867")
    assert pop_by_runs(w) == parse_perm("12435687")
    assert compose(w, parse_perm("32145768")) == parse_perm("12435687")


def test_orbit_worked_example():
    w = parse_perm("42351")
    seen = [w]
    while seen[-1] != (1, 2, 3, 4, 5):
        seen.append(pop_by_runs(seen[-1]))
    assert [''.join(map(str, x)) for x in seen] == ["42351", "24315", "21345", "12345"]


def test_descending_runs():
    assert descending_runs((4, 2, 1, 3, 5, 8, 6, 7)) == [(4, 2, 1), (3,), (5,), (8, 6), (7,)]


def test_standardize():
    assert standardize((10, 3, 7)) == (3, 1, 2)
    with pytest.raises(RepeatedEntry):
        standardize((1, 1))


perms = st.integers(1, 7).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(tuple)


@settings(max_examples=150, deadline=None)
@given(perms)
def test_symmetric_group_model(w):
    G = SymmetricGroup(len(w))
    assert compose(w, perm_inverse(w)) == G.identity()
    assert inversions(pop_by_runs(w)) < inversions(w) or w == G.identity()
    assert pop_by_runs(w) == pop(w, G)


def test_generic_a_matches_one_line():
    G = CoxeterGroup("A3")
    S = SymmetricGroup(4)
    for w in G.elements():
        assert inversions(a_embed(w)) == w.length
        assert a_embed(pop(w)) == pop(a_embed(w), S)


def test_type_b_model_matches_generic():
    for n in (2, 3):
        G = CoxeterGroup(f"B{n}")
        H = HyperoctahedralGroup(n)
        images = {b_embed(w) for w in G.elements()}
        assert images == set(H.elements())
        for w in G.elements():
            assert H.length(b_embed(w)) == w.length
            assert b_project(b_embed(w), G) == w


def test_type_b_rejects_asymmetric():
    assert is_centrally_symmetric((2, 1, 4, 3))
    with pytest.raises(NotCentrallySymmetric):
        parse_element("1243", HyperoctahedralGroup(2))


def test_affine_worked_example():
    w = AffinePermutation((0, 3, 2, 6, 4))
    assert w.descents() == {2, 4}
    assert w.length() == 3
    assert w.pop() == AffinePermutation((0, 2, 3, 4, 6))
    assert w.pop().pop() == AffineSymmetricGroup(5).identity()


def test_affine_validation():
    with pytest.raises(InvalidAffinePermutation):
        AffinePermutation((1, 2, 4))
    with pytest.raises(InvalidAffinePermutation):
        AffinePermutation((1, 4, 1))


def test_affine_json_roundtrip():
    w = AffinePermutation((0, 3, 2, 6, 4))
    assert AffinePermutation.from_json(w.to_json()) == w


def test_affine_tpss_t1_counts():
    from coxpop.classical import enumerate_affine_tpss

    assert [len(enumerate_affine_tpss(n, 1)) for n in range(2, 6)] == [3, 7, 15, 31]


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32))
def test_affine_length_two_routes(n, seed):
    G = AffineSymmetricGroup(n)
    w = G.random_element(random.Random(seed), 15)
    assert w.length() == _affine_length_bruteforce(w)
    assert (w * w.inverse()) == G.identity()
    for i in G.generators:
        assert (i in G.right_descents(w)) == (G.multiply(w, G.gen(i)).length() < w.length())


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32))
def test_affine_pop_is_descent_formula(n, seed):
    G = AffineSymmetricGroup(n)
    w = G.random_element(random.Random(seed), 20)
    assert w.pop() == G.multiply(w, G.longest_element(G.right_descents(w)))


@pytest.mark.parametrize("m", [2, 3, 6, 9])
def test_dihedral_closed_form(m):
    G = CoxeterGroup(f"I2({m})")
    elems = dihedral_elements(m)
    assert len(elems) == 2 * m
    for x in elems:
        assert G.element(dihedral_pop(x).word()) == pop(G.element(x.word()))
