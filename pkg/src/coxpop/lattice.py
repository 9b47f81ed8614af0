"""Finite meet-semilattices, their pop-stack operator and the largest orbit
achievable by any compulsive map."""

from __future__ import annotations

import json
from itertools import combinations
from typing import Hashable, Iterable, Sequence


class InvalidLattice(ValueError):
    pass


class FiniteMeetSemilattice:
    """A finite poset in which every pair has a meet.

    ``covers`` may be any generating set of relations ``(lower, upper)``; the
    order is its reflexive-transitive closure and the stored covers are the
    transitive reduction.
    """

    def __init__(self, elements: Sequence[Hashable], relations: Iterable[tuple[Hashable, Hashable]]):
        self.elements = list(elements)
        if len(set(self.elements)) != len(self.elements):
            raise InvalidLattice("repeated element labels")
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        if n == 0:
            raise InvalidLattice("empty poset")
        up = [1 << i for i in range(n)]  # bit j of up[i]: i <= j
        for a, b in relations:
            if a not in self.index or b not in self.index:
                raise InvalidLattice(f"unknown element in relation ({a}, {b})")
            up[self.index[a]] |= 1 << self.index[b]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                closure = up[i]
                rest = closure & ~(1 << i)
                while rest:
                    j = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    closure |= up[j]
                if closure != up[i]:
                    up[i] = closure
                    changed = True
        for i in range(n):
            for j in range(i + 1, n):
                if up[i] >> j & 1 and up[j] >> i & 1:
                    raise InvalidLattice("relations contain a cycle")
        self._up = up
        self._down = [sum(1 << i for i in range(n) if up[i] >> j & 1) for j in range(n)]
        self._meet = [[self._compute_meet(i, j) for j in range(n)] for i in range(n)]
        self.lower_covers = [
            [i for i in range(n) if i != j and self._down[j] >> i & 1
             and not any(k not in (i, j) and up[i] >> k & 1 and self._down[j] >> k & 1 for k in range(n))]
            for j in range(n)
        ]

    def _compute_meet(self, i: int, j: int) -> int:
        common = self._down[i] & self._down[j]
        tops = [k for k in range(len(self.elements)) if common >> k & 1 and self._up[k] & common == 1 << k]
        if len(tops) != 1:
            raise InvalidLattice(f"{self.elements[i]} and {self.elements[j]} have no meet")
        return tops[0]

    def __len__(self):
        return len(self.elements)

    @property
    def covers(self) -> list[tuple[Hashable, Hashable]]:
        return [(self.elements[i], self.elements[j]) for j, low in enumerate(self.lower_covers) for i in low]

    def leq(self, x, y) -> bool:
        return bool(self._up[self.index[x]] >> self.index[y] & 1)

    def meet(self, xs: Iterable[Hashable]):
        idx = [self.index[x] for x in xs]
        if not idx:
            raise InvalidLattice("meet of an empty set")
        m = idx[0]
        for i in idx[1:]:
            m = self._meet[m][i]
        return self.elements[m]

    @property
    def bottom(self):
        return self.meet(self.elements)

    def down_set(self, x) -> list:
        d = self._down[self.index[x]]
        return [self.elements[i] for i in range(len(self)) if d >> i & 1]

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data: dict | str) -> FiniteMeetSemilattice:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["elements"], [tuple(c) for c in data["covers"]])


def lattice_pop(M: FiniteMeetSemilattice, x):
    j = M.index[x]
    return M.meet([x] + [M.elements[i] for i in M.lower_covers[j]])


def orbit_size(M: FiniteMeetSemilattice, f, x) -> int:
    seen = [x]
    while True:
        y = f(seen[-1])
        if y == seen[-1]:
            return len(seen)
        seen.append(y)


def max_pop_orbit(M: FiniteMeetSemilattice) -> int:
    return max(orbit_size(M, lambda y: lattice_pop(M, y), x) for x in M.elements)


def is_compulsive_on(M: FiniteMeetSemilattice, f: dict) -> bool:
    return all(M.leq(f[x], lattice_pop(M, x)) for x in M.elements)


def best_compulsive(M: FiniteMeetSemilattice) -> tuple[dict, int]:
    """A compulsive map with the largest possible orbit.

    Values ``f(x)`` are chosen independently inside the down-set of
    ``Pop_M(x)``, so the best orbit from ``x`` is one more than the best orbit
    from any element below ``Pop_M(x)``; elements are processed bottom-up.
    """
    order = sorted(M.elements, key=lambda x: len(M.down_set(x)))
    best: dict = {}
    f: dict = {}
    bot = M.bottom
    for x in order:
        if x == bot:
            best[x], f[x] = 1, x
            continue
        choice = max(M.down_set(lattice_pop(M, x)), key=lambda y: (best[y], -M.index[y]))
        f[x] = choice
        best[x] = best[choice] + 1
    return f, max(best.values())


def lattice_compulsive_search(M: FiniteMeetSemilattice) -> tuple[dict, int, int] | None:
    """``(f, sup|O_f|, sup|O_Pop|)`` when some compulsive ``f`` beats Pop."""
    f, best = best_compulsive(M)
    pop_best = max_pop_orbit(M)
    if best > pop_best:
        return f, best, pop_best
    return None


def enumerate_meet_semilattices(n: int):
    """Meet-semilattices on ``{0, ..., n-1}`` with ``0`` the bottom, one per
    natural labelling (isomorphic copies repeat)."""
    pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        rel = [(0, j) for j in range(1, n)]
        rel += [p for b, p in enumerate(pairs) if mask >> b & 1]
        # only transitively closed relation sets, so each poset appears once per labelling
        rs = set(rel)
        if any((a, c) not in rs for a, b in rs for b2, c in rs if b == b2):
            continue
        try:
            yield FiniteMeetSemilattice(list(range(n)), rel)
        except InvalidLattice:
            continue


def search_small_lattices(max_size: int = 6):
    """First lattice (by size) where some compulsive map beats Pop."""
    for n in range(1, max_size + 1):
        for M in enumerate_meet_semilattices(n):
            hit = lattice_compulsive_search(M)
            if hit is not None:
                return M, hit
    return None


def chain(k: int) -> FiniteMeetSemilattice:
    return FiniteMeetSemilattice(list(range(k + 1)), [(i, i + 1) for i in range(k)])


def boolean_lattice(r: int) -> FiniteMeetSemilattice:
    elems = list(range(1 << r))
    rel = [(a, a | 1 << i) for a in elems for i in range(r) if not a >> i & 1]
    return FiniteMeetSemilattice(elems, rel)
