"""Concrete models: one-line permutations, centrally symmetric permutations,
window-notation affine permutations and dihedral elements.

All permutations are tuples of values ``w(1), ..., w(n)``.  Products follow
``(u * v)(i) = u(v(i))``.  Each model class implements the small group protocol
used by :mod:`coxpop.dynamics` (``identity``, ``multiply``, ``right_descents``,
``longest_element``, ``nerve``, ``length``).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

Perm = tuple[int, ...]


class RepeatedEntry(ValueError):
    pass


class NotCentrallySymmetric(ValueError):
    pass


class InvalidAffinePermutation(ValueError):
    pass


# ---------------------------------------------------------------- one-line


def parse_perm(text: str) -> Perm:
    """``"42135867"`` (single digits) or ``"12,4,3,..."``."""
    text = text.strip()
    if "," in text:
        vals = tuple(int(x) for x in text.split(","))
    else:
        vals = tuple(int(c) for c in text)
    if sorted(vals) != list(range(1, len(vals) + 1)):
        raise ValueError(f"not a permutation: {text!r}")
    return vals


def format_perm(w: Sequence[int]) -> str:
    if all(0 <= x <= 9 for x in w):
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def compose(u: Sequence[int], v: Sequence[int]) -> Perm:
    return tuple(u[x - 1] for x in v)


def perm_inverse(u: Sequence[int]) -> Perm:
    inv = [0] * len(u)
    for i, x in enumerate(u, 1):
        inv[x - 1] = i
    return tuple(inv)


def inversions(w: Sequence[int]) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def descents(w: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])


def descending_runs(w: Sequence[int]) -> list[tuple[int, ...]]:
    runs: list[list[int]] = []
    for i, x in enumerate(w):
        if i and w[i - 1] > x:
            runs[-1].append(x)
        else:
            runs.append([x])
    return [tuple(r) for r in runs]


def pop_by_runs(w):
    if isinstance(w, AffinePermutation):
        return w.pop()
    return tuple(x for run in descending_runs(w) for x in reversed(run))


def layered_from_descents(descent_positions: Iterable[int], n: int) -> Perm:
    D = set(descent_positions)
    if any(not 1 <= d < n for d in D):
        raise ValueError("descent positions must lie in [n-1]")
    out: list[int] = []
    start = 1
    for i in range(1, n + 1):
        if i not in D:
            out.extend(range(i, start - 1, -1))
            start = i + 1
    return tuple(out)


def direct_sum(u: Sequence[int], v: Sequence[int]) -> Perm:
    m = len(u)
    return tuple(u) + tuple(x + m for x in v)


def standardize(w: Sequence[int]) -> Perm:
    if len(set(w)) != len(w):
        raise RepeatedEntry("entries must be distinct")
    rank = {x: i for i, x in enumerate(sorted(w), 1)}
    return tuple(rank[x] for x in w)


def is_2pss_runs(w: Sequence[int]) -> bool:
    runs = descending_runs(w)
    return all(runs[j][0] <= runs[j + 1][-1] + 1 for j in range(len(runs) - 1))


class SymmetricGroup:
    """``S_n`` on one-line tuples; generator ``i`` swaps positions ``i, i+1``."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.rank = n - 1
        self.name = f"S{n}"

    def __repr__(self):
        return f"SymmetricGroup({self.n})"

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(range(1, self.n))

    def identity(self) -> Perm:
        return tuple(range(1, self.n + 1))

    def multiply(self, u: Perm, v: Perm) -> Perm:
        return compose(u, v)

    def inverse(self, u: Perm) -> Perm:
        return perm_inverse(u)

    def right_descents(self, w: Perm) -> frozenset[int]:
        return descents(w)

    def length(self, w: Perm) -> int:
        return inversions(w)

    def longest_element(self, J: Iterable[int] | None = None) -> Perm:
        J = self.generators if J is None else J
        return layered_from_descents(J, self.n)

    def nerve(self) -> list[frozenset[int]]:
        gens = self.generators
        return [frozenset(c) for k in range(len(gens) + 1) for c in combinations(gens, k)]

    def elements(self) -> list[Perm]:
        return list(permutations(range(1, self.n + 1)))

    def pop(self, w: Perm) -> Perm:
        return pop_by_runs(w)

    def coxeter_number(self) -> int:
        return self.n

    def format(self, w: Perm) -> str:
        return format_perm(w)


# ------------------------------------------------------------------ type B


def is_centrally_symmetric(w: Sequence[int]) -> bool:
    m = len(w)
    return all(w[m - 1 - i] == m + 1 - w[i] for i in range(m))


def signed_window(w: Sequence[int]) -> tuple[int, ...]:
    """Display form: the right half of ``w`` recentred at zero."""
    n = len(w) // 2
    return tuple(x - n if x > n else x - n - 1 for x in w[n:])


class HyperoctahedralGroup:
    """``B_n`` as the centrally symmetric subgroup of ``S_{2n}``.

    Generator ``i < n`` is ``s_i s_{2n-i}``; generator ``n`` is ``s_n``.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.rank = n
        self.name = f"B{n}"
        self._sym = SymmetricGroup(2 * n)

    def __repr__(self):
        return f"HyperoctahedralGroup({self.n})"

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def _lift(self, J: Iterable[int]) -> set[int]:
        out = set()
        for i in J:
            out.add(i)
            out.add(2 * self.n - i)
        return out

    def identity(self) -> Perm:
        return self._sym.identity()

    def gen(self, i: int) -> Perm:
        return layered_from_descents(self._lift([i]), 2 * self.n)

    def multiply(self, u: Perm, v: Perm) -> Perm:
        return compose(u, v)

    def inverse(self, u: Perm) -> Perm:
        return perm_inverse(u)

    def right_descents(self, w: Perm) -> frozenset[int]:
        return frozenset(i for i in range(1, self.n + 1) if w[i - 1] > w[i])

    def length(self, w: Perm) -> int:
        # Coxeter length of B_n in the S_{2n} model
        return (inversions(w) + sum(1 for x in w[: self.n] if x > self.n)) // 2

    def longest_element(self, J: Iterable[int] | None = None) -> Perm:
        J = self.generators if J is None else J
        return layered_from_descents(self._lift(J), 2 * self.n)

    def nerve(self) -> list[frozenset[int]]:
        gens = self.generators
        return [frozenset(c) for k in range(len(gens) + 1) for c in combinations(gens, k)]

    def elements(self) -> list[Perm]:
        n = self.n
        out = []
        for right in permutations(range(1, 2 * n + 1), n):
            w = [0] * (2 * n)
            for i, x in enumerate(right):
                w[n + i] = x
                w[n - 1 - i] = 2 * n + 1 - x
            if len(set(w)) == 2 * n:
                out.append(tuple(w))
        return out

    def pop(self, w: Perm) -> Perm:
        return pop_by_runs(w)

    def coxeter_number(self) -> int:
        return 2 * self.n

    def format(self, w: Perm) -> str:
        return format_perm(w)


def b_embed(w) -> Perm:
    """Element of the generic ``B<n>`` group to its ``S_{2n}`` model."""
    from .coxeter import reduced_word

    n = w.group.rank
    if not w.group.name.startswith("B"):
        raise ValueError("expected an element of a B<n> group")
    model = HyperoctahedralGroup(n)
    x = model.identity()
    for i in reduced_word(w):
        x = compose(x, model.gen(i))
    return x


def b_project(perm: Sequence[int], group):
    """Centrally symmetric permutation to an element of ``group`` (type ``B<n>``)."""
    perm = tuple(perm)
    if len(perm) % 2 or not is_centrally_symmetric(perm):
        raise NotCentrallySymmetric(format_perm(perm))
    model = HyperoctahedralGroup(len(perm) // 2)
    word = []
    x = perm
    while True:
        D = model.right_descents(x)
        if not D:
            break
        i = min(D)
        word.append(i)
        x = compose(x, model.gen(i))
    return group.element(reversed(word))


# ------------------------------------------------------------------ affine


@dataclass(frozen=True)
class AffinePermutation:
    """Window notation ``w(1), ..., w(n)`` with ``w(i + n) = w(i) + n``."""

    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", w)
        n = len(w)
        if n < 1:
            raise InvalidAffinePermutation("empty window")
        if len({x % n for x in w}) != n:
            raise InvalidAffinePermutation(f"entries not distinct mod {n}: {w}")
        if sum(w) != n * (n + 1) // 2:
            raise InvalidAffinePermutation(f"window sum must be {n * (n + 1) // 2}: {w}")

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: AffinePermutation) -> AffinePermutation:
        return AffinePermutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.window) + "]"

    def inverse(self) -> AffinePermutation:
        n = self.n
        inv = [0] * n
        for i, x in enumerate(self.window, 1):
            q, r = divmod(x - 1, n)
            inv[r] = i - q * n
        return AffinePermutation(tuple(inv))

    def descents(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.n + 1) if self(i) > self(i + 1))

    def length(self) -> int:
        w, n = self.window, self.n
        total = 0
        for i in range(n):
            for j in range(i + 1, n):
                d = w[i] - w[j]
                # pairs (i, j + kn) with k >= 0 and (j, i + kn) with k >= 1
                if d > 0:
                    total += (d + n - 1) // n
                elif d < 0:
                    total += (-d - 1) // n
        return total

    def _ascent_start(self) -> int:
        for k in range(1, self.n + 1):
            if self(k) < self(k + 1):
                return k
        raise InvalidAffinePermutation("every position is a descent")

    def descending_runs(self) -> list[tuple[int, ...]]:
        """Runs of one period, starting just after an ascent."""
        k = self._ascent_start()
        return descending_runs([self(i) for i in range(k + 1, k + self.n + 1)])

    def pop(self) -> AffinePermutation:
        k = self._ascent_start()
        vals = pop_by_runs([self(i) for i in range(k + 1, k + self.n + 1)])
        return AffinePermutation(_window_from_positions(k + 1, vals, self.n))

    def to_json(self) -> dict:
        return {"n": self.n, "window": list(self.window)}

    @classmethod
    def from_json(cls, data: dict | str) -> AffinePermutation:
        if isinstance(data, str):
            data = json.loads(data)
        w = cls(tuple(data["window"]))
        if "n" in data and data["n"] != w.n:
            raise InvalidAffinePermutation("n does not match window length")
        return w

    @classmethod
    def identity(cls, n: int) -> AffinePermutation:
        return cls(tuple(range(1, n + 1)))


def _window_from_positions(first: int, vals: Sequence[int], n: int) -> tuple[int, ...]:
    w = [0] * n
    for off, x in enumerate(vals):
        i = first + off
        q, r = divmod(i - 1, n)
        w[r] = x - q * n
    return tuple(w)


def _affine_length_bruteforce(w: AffinePermutation) -> int:
    n = w.n
    total = 0
    span = max(abs(x) for x in w.window) + 2 * n
    for i in range(1, n + 1):
        for j in range(i + 1, i + 2 * span + 1):
            if w(i) > w(j):
                total += 1
    return total


def affine_descents(w: AffinePermutation) -> frozenset[int]:
    return w.descents()


def affine_length(w: AffinePermutation) -> int:
    return w.length()


class AffineSymmetricGroup:
    """``S~_n``; generator ``i`` swaps ``i + mn`` and ``i + mn + 1``."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        self.rank = n
        self.name = f"Atilde{n - 1}"

    def __repr__(self):
        return f"AffineSymmetricGroup({self.n})"

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def identity(self) -> AffinePermutation:
        return AffinePermutation.identity(self.n)

    def gen(self, i: int) -> AffinePermutation:
        w = list(range(1, self.n + 1))
        if i < self.n:
            w[i - 1], w[i] = w[i], w[i - 1]
        else:
            w[0], w[-1] = 0, self.n + 1
        return AffinePermutation(tuple(w))

    def element(self, word: Sequence[int]) -> AffinePermutation:
        w = self.identity()
        for i in word:
            w = w * self.gen(i)
        return w

    def multiply(self, u: AffinePermutation, v: AffinePermutation) -> AffinePermutation:
        return u * v

    def inverse(self, u: AffinePermutation) -> AffinePermutation:
        return u.inverse()

    def right_descents(self, w: AffinePermutation) -> frozenset[int]:
        return w.descents()

    def length(self, w: AffinePermutation) -> int:
        return w.length()

    def longest_element(self, J: Iterable[int] | None = None) -> AffinePermutation:
        J = frozenset(self.generators if J is None else J)
        n = self.n
        missing = [k for k in self.generators if k not in J]
        if not missing:
            from .coxeter import InfiniteParabolic

            raise InfiniteParabolic(sorted(J))
        k = missing[0]
        vals: list[int] = []
        start = k + 1
        for i in range(k + 1, k + n + 1):
            if (i - 1) % n + 1 not in J:
                vals.extend(range(i, start - 1, -1))
                start = i + 1
        return AffinePermutation(_window_from_positions(k + 1, vals, n))

    def nerve(self) -> list[frozenset[int]]:
        gens = self.generators
        return [frozenset(c) for k in range(len(gens)) for c in combinations(gens, k)]

    def pop(self, w: AffinePermutation) -> AffinePermutation:
        return w.pop()

    def random_element(self, rng: random.Random, max_length: int) -> AffinePermutation:
        w = self.identity()
        for _ in range(rng.randint(0, max_length)):
            w = w * self.gen(rng.randint(1, self.n))
        return w

    def format(self, w: AffinePermutation) -> str:
        return str(w)


def enumerate_affine_tpss(n: int, t: int) -> set[AffinePermutation]:
    from .dynamics import tpss_set

    return tpss_set(AffineSymmetricGroup(n), t)


# ---------------------------------------------------------------- dihedral


@dataclass(frozen=True)
class DihedralElement:
    """``e``, ``alpha_k`` (alternating word of length ``k`` ending in ``s1``)
    or ``beta_k`` (ending in ``s2``) in ``I2(m)``."""

    kind: str
    k: int
    m: int

    def __post_init__(self):
        kind, k, m = self.kind, self.k, self.m
        if m < 2:
            raise ValueError("m must be at least 2")
        if kind == "beta" and k == m:
            object.__setattr__(self, "kind", "alpha")
        elif kind == "e":
            object.__setattr__(self, "k", 0)
        elif kind not in ("alpha", "beta") or not 1 <= k <= m:
            raise ValueError(f"bad dihedral element {kind}_{k} in I2({m})")

    def word(self) -> list[int]:
        if self.kind == "e":
            return []
        last = 1 if self.kind == "alpha" else 2
        return [last if (self.k - 1 - j) % 2 == 0 else 3 - last for j in range(self.k)]

    def __str__(self):
        return "e" if self.kind == "e" else f"{self.kind}_{self.k}"


def dihedral_elements(m: int) -> list[DihedralElement]:
    out = [DihedralElement("e", 0, m)]
    out += [DihedralElement("alpha", j, m) for j in range(1, m + 1)]
    out += [DihedralElement("beta", k, m) for k in range(1, m)]
    return out


def dihedral_pop(x: DihedralElement) -> DihedralElement:
    if x.kind == "e" or x.k == 1 or (x.kind == "alpha" and x.k == x.m):
        return DihedralElement("e", 0, x.m)
    other = "beta" if x.kind == "alpha" else "alpha"
    return DihedralElement(other, x.k - 1, x.m)


# ------------------------------------------------------------------ parsing


def parse_element(text: str, group):
    """Parse a CLI element for ``group``: one-line string, window JSON or a
    reduced word like ``"1,2,1"`` / ``"s1s2s1"``."""
    text = text.strip()
    if isinstance(group, AffineSymmetricGroup):
        if text.startswith("{"):
            return AffinePermutation.from_json(text)
        if text.startswith("["):
            return AffinePermutation(tuple(json.loads(text)))
        return group.element(_parse_word(text))
    if isinstance(group, (SymmetricGroup, HyperoctahedralGroup)):
        if text.startswith("s") or text in ("", "e"):
            w = group.identity()
            for i in _parse_word(text):
                g = group.gen(i) if isinstance(group, HyperoctahedralGroup) else compose(
                    group.identity(), layered_from_descents([i], group.n)
                )
                w = compose(w, g)
            return w
        w = parse_perm(text)
        if len(w) != len(group.identity()):
            raise ValueError(f"expected {len(group.identity())} entries")
        if isinstance(group, HyperoctahedralGroup) and not is_centrally_symmetric(w):
            raise NotCentrallySymmetric(text)
        return w
    return group.element(_parse_word(text))


def _parse_word(text: str) -> list[int]:
    text = text.strip()
    if text in ("", "e"):
        return []
    if text.startswith("s"):
        return [int(x) for x in text.split("s")[1:]]
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def all_words(alphabet: int, n: int):
    return product(range(alphabet), repeat=n)


def a_embed(w) -> Perm:
    """Element of a generic ``A<n>`` group to its one-line permutation."""
    from .coxeter import reduced_word

    x = list(range(1, w.group.rank + 2))
    for i in reduced_word(w):
        x[i - 1], x[i] = x[i], x[i - 1]
    return tuple(x)
