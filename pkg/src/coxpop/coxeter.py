"""Finite Coxeter groups realized through the geometric representation.

A Coxeter matrix is turned into a root system (float coordinates in the basis
of simple roots); every group element is stored as the permutation it induces
on that finite set of roots.  Generators are labelled ``1..rank`` throughout,
so ``s_i`` in formulas is ``group.gen(i)`` here.
"""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

INF = 0  # encoding of m(s, s') = infinity
DEFAULT_CAP = 4000
ROOT_TOL = 1e-9


class CoxeterError(Exception):
    pass


class InvalidMatrix(CoxeterError):
    pass


class NotFiniteWithinCap(CoxeterError):
    pass


class CapTooSmall(CoxeterError):
    pass


class MixedSystems(CoxeterError):
    pass


class InfiniteParabolic(CoxeterError):
    pass


class NotBipartite(CoxeterError):
    pass


class Reducible(CoxeterError):
    pass


class EmptySet(CoxeterError):
    pass


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of orders ``m(s, s')``; ``0`` stands for infinity."""

    m: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.m)
        object.__setattr__(self, "m", m)
        n = len(m)
        if n == 0:
            raise InvalidMatrix("rank must be positive")
        for i in range(n):
            if len(m[i]) != n:
                raise InvalidMatrix("matrix must be square")
            if m[i][i] != 1:
                raise InvalidMatrix(f"m({i + 1},{i + 1}) must be 1")
            for j in range(n):
                if i != j and (m[i][j] != m[j][i] or m[i][j] == 1 or m[i][j] < 0):
                    raise InvalidMatrix(f"bad entry m({i + 1},{j + 1}) = {m[i][j]}")

    @property
    def rank(self) -> int:
        return len(self.m)

    def entry(self, i: int, j: int) -> int:
        """Order of ``s_i s_j`` (1-based labels), ``0`` meaning infinity."""
        return self.m[i - 1][j - 1]

    def edges(self) -> list[tuple[int, int]]:
        n = self.rank
        return [
            (i + 1, j + 1)
            for i in range(n)
            for j in range(i + 1, n)
            if self.m[i][j] == INF or self.m[i][j] >= 3
        ]

    def is_irreducible(self) -> bool:
        adj = {i: set() for i in range(1, self.rank + 1)}
        for i, j in self.edges():
            adj[i].add(j)
            adj[j].add(i)
        seen = {1}
        todo = [1]
        while todo:
            for j in adj[todo.pop()]:
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return len(seen) == self.rank

    def restrict(self, J: Iterable[int]) -> CoxeterMatrix:
        idx = sorted(J)
        return CoxeterMatrix(tuple(tuple(self.m[i - 1][j - 1] for j in idx) for i in idx))

    def bilinear_form(self) -> np.ndarray:
        n = self.rank
        B = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                mij = self.m[i][j]
                B[i, j] = -1.0 if mij == INF else -math.cos(math.pi / mij)
        return B

    def is_positive_definite(self) -> bool:
        # W is finite exactly when the Tits form is positive definite
        return bool(np.linalg.eigvalsh(self.bilinear_form()).min() > 1e-10)

    def to_json(self) -> dict:
        data = {"rank": self.rank, "m": [list(r) for r in self.m]}
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_json(cls, data: dict | str) -> CoxeterMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        m = data["m"]
        if "rank" in data and data["rank"] != len(m):
            raise InvalidMatrix("rank does not match matrix size")
        return cls(tuple(tuple(r) for r in m), data.get("name", ""))

    @classmethod
    def from_edges(cls, rank: int, labels: dict[tuple[int, int], int], name: str = "") -> CoxeterMatrix:
        m = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for (i, j), v in labels.items():
            m[i - 1][j - 1] = m[j - 1][i - 1] = v
        return cls(tuple(tuple(r) for r in m), name)


def _path(n: int) -> dict[tuple[int, int], int]:
    return {(i, i + 1): 3 for i in range(1, n)}


def preset(name: str) -> CoxeterMatrix:
    """Named Coxeter matrices: ``A<n>``, ``B<n>``, ``D<n>``, ``E6..8``, ``F4``,
    ``H3``, ``H4``, ``I2(<m>)`` and ``Atilde<n>``."""
    key = name.strip().replace(" ", "")
    if mt := re.fullmatch(r"A(\d+)", key):
        n = int(mt[1])
        if n < 1:
            raise InvalidMatrix(name)
        return CoxeterMatrix.from_edges(n, _path(n), key)
    if mt := re.fullmatch(r"B(\d+)", key):
        n = int(mt[1])
        if n < 2:
            raise InvalidMatrix(name)
        labels = _path(n)
        labels[(n - 1, n)] = 4
        return CoxeterMatrix.from_edges(n, labels, key)
    if mt := re.fullmatch(r"D(\d+)", key):
        n = int(mt[1])
        if n < 4:
            raise InvalidMatrix(name)
        labels = _path(n - 1)
        labels[(n - 2, n)] = 3
        return CoxeterMatrix.from_edges(n, labels, key)
    if mt := re.fullmatch(r"E([678])", key):
        n = int(mt[1])
        # 1-3-4-5-...-n with 2 attached to 4 (Bourbaki labelling)
        labels = {(1, 3): 3, (2, 4): 3, (3, 4): 3}
        labels.update({(i, i + 1): 3 for i in range(4, n)})
        return CoxeterMatrix.from_edges(n, labels, key)
    if key == "F4":
        return CoxeterMatrix.from_edges(4, {(1, 2): 3, (2, 3): 4, (3, 4): 3}, key)
    if key == "H3":
        return CoxeterMatrix.from_edges(3, {(1, 2): 5, (2, 3): 3}, key)
    if key == "H4":
        return CoxeterMatrix.from_edges(4, {(1, 2): 5, (2, 3): 3, (3, 4): 3}, key)
    if mt := re.fullmatch(r"I2\((\d+)\)", key) or re.fullmatch(r"I2_?(\d+)", key):
        m = int(mt[1])
        if m < 2:
            raise InvalidMatrix(name)
        return CoxeterMatrix.from_edges(2, {(1, 2): m}, f"I2({m})")
    if mt := re.fullmatch(r"Atilde(\d+)", key):
        n = int(mt[1])
        if n < 1:
            raise InvalidMatrix(name)
        if n == 1:
            return CoxeterMatrix.from_edges(2, {(1, 2): INF}, key)
        labels = _path(n + 1)
        labels[(1, n + 1)] = 3
        return CoxeterMatrix.from_edges(n + 1, labels, key)
    raise InvalidMatrix(f"unknown preset {name!r}")


@dataclass(frozen=True)
class RootSystem:
    """All roots of a finite Coxeter group, positives first.

    Root ``r + n_positive`` is the negative of root ``r``; ``gen_action[i][r]``
    is the index of ``s_{i+1}(root r)``.
    """

    matrix: CoxeterMatrix
    roots: np.ndarray
    n_positive: int
    simple: tuple[int, ...]
    gen_action: tuple[tuple[int, ...], ...]

    @property
    def simple_roots(self) -> np.ndarray:
        return self.roots[list(self.simple)]

    def is_positive(self, r: int) -> bool:
        return r < self.n_positive


def build_root_system(matrix: CoxeterMatrix, cap: int = DEFAULT_CAP) -> RootSystem:
    n = matrix.rank
    if cap < 2 * n:
        raise ValueError("cap must be at least 2*rank")
    B = matrix.bilinear_form()

    def reflect(i, v):
        return v - 2.0 * float(B[i] @ v) * np.eye(n)[i]

    pos: list[np.ndarray] = [np.eye(n)[i] for i in range(n)]
    stack = np.array(pos)
    todo = deque(range(n))
    while todo:
        r = pos[todo.popleft()]
        for i in range(n):
            v = reflect(i, r)
            if np.all(v <= ROOT_TOL):
                continue  # only s_i(alpha_i) = -alpha_i leaves the positive cone
            if np.min(np.abs(stack - v).max(axis=1)) < 1e-7:
                continue
            pos.append(v)
            stack = np.vstack([stack, v])
            todo.append(len(pos) - 1)
            if 2 * len(pos) > cap:
                raise NotFiniteWithinCap(
                    f"root closure exceeded cap={cap} for {matrix.name or matrix.m}"
                )
    N = len(pos)
    roots = np.vstack([stack, -stack])

    def find(v):
        d = np.abs(roots - v).max(axis=1)
        k = int(np.argmin(d))
        if d[k] > 1e-7:
            raise InvalidMatrix("root set is not closed under reflections")
        return k

    action = []
    for i in range(n):
        perm = tuple(find(reflect(i, roots[r])) for r in range(2 * N))
        # s_i negates alpha_i and permutes the remaining positive roots
        for r in range(N):
            if r == i:
                assert perm[r] == i + N
            elif perm[r] >= N:
                raise InvalidMatrix("generator action is inconsistent")
        action.append(perm)
    return RootSystem(matrix, roots, N, tuple(range(n)), tuple(action))


class Element:
    """A group element stored as a permutation of root indices."""

    __slots__ = ("group", "perm", "_length", "_mask", "__weakref__")

    def __init__(self, group: CoxeterGroup, perm: tuple[int, ...]):
        self.group = group
        self.perm = perm
        self._length = None
        self._mask = None

    def __eq__(self, other):
        return isinstance(other, Element) and self.group is other.group and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __mul__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        if other.group is not self.group:
            raise MixedSystems("elements belong to different groups")
        u = self.perm
        return Element(self.group, tuple([u[r] for r in other.perm]))

    def __repr__(self):
        word = "".join(f"s{i}" for i in reduced_word(self)) or "e"
        return f"<{self.group.name}: {word}>"

    def inverse(self) -> Element:
        inv = [0] * len(self.perm)
        for r, x in enumerate(self.perm):
            inv[x] = r
        return Element(self.group, tuple(inv))

    def times_gen(self, i: int) -> Element:
        g = self.group.roots.gen_action[i - 1]
        u = self.perm
        return Element(self.group, tuple([u[r] for r in g]))

    def gen_times(self, i: int) -> Element:
        g = self.group.roots.gen_action[i - 1]
        return Element(self.group, tuple([g[r] for r in self.perm]))

    @property
    def length(self) -> int:
        if self._length is None:
            N = self.group.roots.n_positive
            p = self.perm
            self._length = sum(1 for r in range(N) if p[r] >= N)
        return self._length

    @property
    def inversion_mask(self) -> int:
        """Bitmask of the left inversion set ``{beta > 0 : w^-1 beta < 0}``."""
        if self._mask is None:
            N = self.group.roots.n_positive
            mask = 0
            for r, x in enumerate(self.perm):
                # w(r) = x with r negative and x positive  <=>  w^-1(x) < 0
                if r >= N and x < N:
                    mask |= 1 << x
            self._mask = mask
        return self._mask

    def right_descents(self) -> frozenset[int]:
        N = self.group.roots.n_positive
        p = self.perm
        return frozenset(i + 1 for i in range(self.group.rank) if p[i] >= N)

    def left_descents(self) -> frozenset[int]:
        return self.inverse().right_descents()

    def is_identity(self) -> bool:
        return self.length == 0


class CoxeterGroup:
    """A finite Coxeter group built from its Coxeter matrix."""

    def __init__(self, matrix: CoxeterMatrix | str, cap: int = DEFAULT_CAP):
        if isinstance(matrix, str):
            matrix = preset(matrix)
        self.matrix = matrix
        self.name = matrix.name or f"W{matrix.m}"
        self.roots = build_root_system(matrix, cap)
        self.rank = matrix.rank
        self._w0_cache: dict[frozenset, Element] = {}
        self._identity = Element(self, tuple(range(len(self.roots.roots))))
        self._gens = tuple(Element(self, g) for g in self.roots.gen_action)

    def __repr__(self):
        return f"CoxeterGroup({self.name})"

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    def identity(self) -> Element:
        return self._identity

    def gen(self, i: int) -> Element:
        return self._gens[i - 1]

    def element(self, word: Sequence[int]) -> Element:
        w = self._identity
        for i in word:
            w = w.times_gen(i)
        return w

    # the duck-typed group protocol used by pop_dynamics
    def multiply(self, u: Element, v: Element) -> Element:
        return u * v

    def right_descents(self, w: Element) -> frozenset[int]:
        return w.right_descents()

    def longest_element(self, J: Iterable[int] | None = None) -> Element:
        J = frozenset(self.generators if J is None else J)
        w = self._w0_cache.get(J)
        if w is None:
            w = self._identity
            cap = self.roots.n_positive
            while True:
                ascents = sorted(J - w.right_descents())
                if not ascents:
                    break
                w = w.times_gen(ascents[0])
                if w.length > cap:
                    raise InfiniteParabolic(sorted(J))
            self._w0_cache[J] = w
        return w

    @cached_property
    def w0(self) -> Element:
        return self.longest_element()

    def nerve(self) -> list[frozenset[int]]:
        # every parabolic subgroup of a finite group is finite
        gens = self.generators
        return [frozenset(c) for k in range(self.rank + 1) for c in combinations(gens, k)]

    def elements(self) -> list[Element]:
        return enumerate_group(self)

    @cached_property
    def order(self) -> int:
        return len(self.elements())

    def coxeter_number(self) -> int:
        return coxeter_number(self)

    def conjugate_generator(self, w: Element, i: int) -> int | None:
        """Label ``j`` with ``w s_i w^-1 = s_j``, or ``None``."""
        x = w * self.gen(i) * w.inverse()
        for j in self.generators:
            if self.gen(j) == x:
                return j
        return None


def multiply(u: Element, v: Element) -> Element:
    return u * v


def inverse(u: Element) -> Element:
    return u.inverse()


def right_descents(w: Element) -> frozenset[int]:
    return w.right_descents()


def left_descents(w: Element) -> frozenset[int]:
    return w.left_descents()


def weak_leq_R(u: Element, w: Element) -> bool:
    """Right weak order via containment of left inversion sets."""
    if u.group is not w.group:
        raise MixedSystems("elements belong to different groups")
    return u.inversion_mask & ~w.inversion_mask == 0


def weak_leq_R_by_length(u: Element, w: Element) -> bool:
    """Right weak order via ``l(u) + l(u^-1 w) = l(w)``."""
    if u.group is not w.group:
        raise MixedSystems("elements belong to different groups")
    return u.length + (u.inverse() * w).length == w.length


def reduced_word(w: Element) -> list[int]:
    """Strip the smallest right descent until the identity is reached."""
    word = []
    while w.length:
        i = min(w.right_descents())
        word.append(i)
        w = w.times_gen(i)
    word.reverse()
    return word


def bruhat_leq(u: Element, w: Element) -> bool:
    if u.group is not w.group:
        raise MixedSystems("elements belong to different groups")
    while True:
        if u.length > w.length:
            return False
        if w.length == 0:
            return u.length == 0
        if u.length == 0:
            return True
        s = min(w.right_descents())
        if s in u.right_descents():
            u = u.times_gen(s)
        w = w.times_gen(s)


def meet_R(elements: Iterable[Element]) -> Element:
    elems = list(elements)
    if not elems:
        raise EmptySet("meet of an empty set")
    group = elems[0].group
    for a in elems:
        if a.group is not group:
            raise MixedSystems("elements belong to different groups")
    v = group.identity()
    while True:
        for s in group.generators:
            if s in v.right_descents():
                continue
            vs = v.times_gen(s)
            if all(weak_leq_R(vs, a) for a in elems):
                v = vs
                break
        else:
            return v


def longest_element(group: CoxeterGroup, J: Iterable[int] | None = None) -> Element:
    return group.longest_element(J)


def parabolic_decompose(w: Element, J: Iterable[int]) -> tuple[Element, Element]:
    """Return ``(w_J, ^J w)`` with ``w = w_J * ^J w`` length-additive."""
    J = frozenset(J)
    x = w
    while True:
        common = sorted(J & x.left_descents())
        if not common:
            break
        x = x.gen_times(common[0])
    return w * x.inverse(), x


def nerve(system: CoxeterMatrix | CoxeterGroup, cap: int = DEFAULT_CAP) -> list[frozenset[int]]:
    """All ``J`` with ``W_J`` finite, decided by root closure per subset."""
    if isinstance(system, CoxeterGroup):
        return system.nerve()
    out = [frozenset()]
    for k in range(1, system.rank + 1):
        for J in combinations(range(1, system.rank + 1), k):
            sub = system.restrict(J)
            try:
                build_root_system(sub, cap)
            except NotFiniteWithinCap:
                if sub.is_positive_definite():
                    raise CapTooSmall(f"J={J} is finite but exceeds cap={cap}") from None
                continue
            out.append(frozenset(J))
    return out


def coxeter_number(system: CoxeterGroup | CoxeterMatrix) -> float | int:
    matrix = system.matrix if isinstance(system, CoxeterGroup) else system
    if not matrix.is_irreducible():
        raise Reducible("decompose the Coxeter diagram first")
    if isinstance(system, CoxeterMatrix):
        try:
            system = CoxeterGroup(matrix)
        except NotFiniteWithinCap:
            return math.inf
    c = system.element(system.generators)
    x = c
    bound = 2 * system.roots.n_positive + 2
    for k in range(1, bound + 1):
        if x.length == 0:
            return k
        x = x * c
    raise CoxeterError("Coxeter element order exceeds 2N+2")


def bipartition(matrix: CoxeterMatrix | CoxeterGroup) -> tuple[frozenset[int], frozenset[int]]:
    if isinstance(matrix, CoxeterGroup):
        matrix = matrix.matrix
    adj = {i: set() for i in range(1, matrix.rank + 1)}
    for i, j in matrix.edges():
        adj[i].add(j)
        adj[j].add(i)
    color: dict[int, int] = {}
    for root in sorted(adj):
        if root in color:
            continue
        color[root] = 0
        todo = [root]
        while todo:
            i = todo.pop()
            for j in adj[i]:
                if j not in color:
                    color[j] = 1 - color[i]
                    todo.append(j)
                elif color[j] == color[i]:
                    raise NotBipartite(f"odd cycle through s{i}, s{j}")
    X = frozenset(i for i, c in color.items() if c == 0)
    return X, frozenset(adj) - X


def enumerate_group(group: CoxeterGroup) -> list[Element]:
    """Breadth-first search by right multiplication; sorted by length."""
    e = group.identity()
    seen = {e.perm: e}
    order = [e]
    todo = deque([e])
    while todo:
        w = todo.popleft()
        for i in group.generators:
            x = w.times_gen(i)
            if x.perm not in seen:
                seen[x.perm] = x
                order.append(x)
                todo.append(x)
    return order
