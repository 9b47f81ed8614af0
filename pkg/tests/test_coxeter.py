import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxpop.coxeter import (
    CapTooSmall,
    CoxeterGroup,
    CoxeterMatrix,
    InvalidMatrix,
    NotBipartite,
    NotFiniteWithinCap,
    bipartition,
    bruhat_leq,
    coxeter_number,
    meet_R,
    nerve,
    parabolic_decompose,
    preset,
    reduced_word,
    weak_leq_R,
    weak_leq_R_by_length,
)

# (name, number of roots, order, Coxeter number)
FINITE = [
    ("A2", 6, 6, 3),
    ("A5", 30, 720, 6),
    ("B3", 18, 48, 6),
    ("D4", 24, 192, 6),
    ("H3", 30, 120, 10),
    ("F4", 48, 1152, 12),
    ("I2(5)", 10, 10, 5),
    ("I2(8)", 16, 16, 8),
]


@pytest.mark.parametrize("name,roots,order,h", FINITE)
def test_group_invariants(name, roots, order, h):
    G = CoxeterGroup(name)
    assert len(G.roots.roots) == roots == 2 * G.roots.n_positive
    assert G.order == order
    assert G.coxeter_number() == h
    assert G.w0.length == roots // 2


def test_matrix_validation():
    with pytest.raises(InvalidMatrix):
        CoxeterMatrix(((1, 3), (2, 1)))
    with pytest.raises(InvalidMatrix):
        CoxeterMatrix(((1, 1), (1, 1)))
    with pytest.raises(InvalidMatrix):
        preset("Q7")


def test_matrix_json_roundtrip():
    m = preset("F4")
    assert CoxeterMatrix.from_json(json.dumps(m.to_json())) == m


def test_infinite_group_raises():
    with pytest.raises(NotFiniteWithinCap):
        CoxeterGroup("Atilde2", cap=500)


def test_affine_nerve_is_proper_subsets():
    N = nerve(preset("Atilde2"))
    assert len(N) == 7
    assert frozenset({1, 2, 3}) not in N


def test_nerve_cap_too_small():
    with pytest.raises(CapTooSmall):
        nerve(preset("H3"), cap=10)


def test_coxeter_number_infinite():
    assert coxeter_number(preset("Atilde3")) == float("inf")


def test_bipartition():
    a, b = bipartition(preset("A4"))
    assert {a, b} == {frozenset({1, 3}), frozenset({2, 4})}
    with pytest.raises(NotBipartite):
        bipartition(preset("Atilde2"))


def test_longest_element_parabolic():
    G = CoxeterGroup("A3")
    w = G.longest_element({1, 3})
    assert w.length == 2 and w.right_descents() == {1, 3}


def test_conjugate_generator_in_type_a():
    G = CoxeterGroup("A4")
    assert [G.conjugate_generator(G.w0, s) for s in G.generators] == [4, 3, 2, 1]


def test_parabolic_decompose_example():
    G = CoxeterGroup("A3")
    w = G.element([1, 2, 3, 1])
    wJ, Jw = parabolic_decompose(w, {1})
    assert wJ * Jw == w
    assert wJ.length + Jw.length == w.length
    assert 1 not in Jw.left_descents()


words3 = st.lists(st.integers(1, 3), max_size=12)


@settings(max_examples=80, deadline=None)
@given(words3, words3)
def test_weak_order_two_routes(u, v):
    G = CoxeterGroup("H3")
    x, y = G.element(u), G.element(v)
    assert weak_leq_R(x, y) == weak_leq_R_by_length(x, y)


@settings(max_examples=80, deadline=None)
@given(words3)
def test_group_axioms(u):
    G = CoxeterGroup("B3")
    w = G.element(u)
    assert w * w.inverse() == G.identity()
    assert w.length <= len(u)
    assert w.length % 2 == len(u) % 2
    assert G.element(reduced_word(w)) == w
    assert len(reduced_word(w)) == w.length
    for s in G.generators:
        assert (s in w.right_descents()) == (w.times_gen(s).length < w.length)


@settings(max_examples=60, deadline=None)
@given(words3, words3)
def test_meet_is_greatest_lower_bound(u, v):
    G = CoxeterGroup("A3")
    x, y = G.element(u), G.element(v)
    m = meet_R([x, y])
    assert weak_leq_R(m, x) and weak_leq_R(m, y)
    for z in G.elements():
        if weak_leq_R(z, x) and weak_leq_R(z, y):
            assert weak_leq_R(z, m)


@settings(max_examples=60, deadline=None)
@given(words3, words3)
def test_weak_implies_bruhat(u, v):
    G = CoxeterGroup("A3")
    x, y = G.element(u), G.element(v)
    if weak_leq_R(x, y):
        assert bruhat_leq(x, y)
    assert bruhat_leq(G.identity(), y) and bruhat_leq(y, G.w0)


def test_bruhat_against_subword_oracle():
    from itertools import combinations

    G = CoxeterGroup("A2")
    for w in G.elements():
        word = reduced_word(w)
        below = {G.element([word[i] for i in c]) for k in range(len(word) + 1) for c in combinations(range(len(word)), k)}
        for x in G.elements():
            assert bruhat_leq(x, w) == (x in below)
