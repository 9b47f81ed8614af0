import json

import pytest

from coxpop.lattice import (
    FiniteMeetSemilattice,
    InvalidLattice,
    best_compulsive,
    boolean_lattice,
    chain,
    enumerate_meet_semilattices,
    is_compulsive_on,
    lattice_compulsive_search,
    lattice_pop,
    max_pop_orbit,
    search_small_lattices,
)


def test_chain_and_boolean():
    assert max_pop_orbit(chain(4)) == 5
    assert max_pop_orbit(boolean_lattice(3)) == 2
    assert lattice_pop(boolean_lattice(2), 3) == 0


def test_invalid_lattices():
    with pytest.raises(InvalidLattice):
        FiniteMeetSemilattice([0, 1], [(0, 1), (1, 0)])
    with pytest.raises(InvalidLattice):
        # two minimal elements: no meet
        FiniteMeetSemilattice([0, 1, 2], [(0, 2), (1, 2)])


def test_json_roundtrip():
    M = boolean_lattice(2)
    again = FiniteMeetSemilattice.from_json(json.dumps(M.to_json()))
    assert sorted(again.covers) == sorted(M.covers)


def test_best_compulsive_is_compulsive():
    for M in enumerate_meet_semilattices(5):
        f, best = best_compulsive(M)
        assert is_compulsive_on(M, f)
        assert best >= max_pop_orbit(M)


def test_small_lattice_search():
    M, (f, best, pop_best) = search_small_lattices(6)
    assert len(M) == 6 and best == 4 and pop_best == 3
    assert is_compulsive_on(M, f)
    assert lattice_compulsive_search(chain(3)) is None
