"""Pop, orbits, preimages, Brieskorn factorizations and compulsive maps.

Every function takes elements together with a group implementing the small
protocol shared by :class:`coxpop.coxeter.CoxeterGroup` and the classical
models.  For generic Coxeter elements the group may be omitted.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable

from .coxeter import CoxeterError, Element, meet_R, weak_leq_R


class NotFinite(CoxeterError):
    pass


class CounterexampleFound(CoxeterError):
    pass


class NotAFunction(ValueError):
    pass


class DomainMismatch(ValueError):
    pass


def _group_of(w, group):
    if group is not None:
        return group
    if isinstance(w, Element):
        return w.group
    raise TypeError("group is required for non-generic elements")


def _length(group, w) -> int:
    return w.length if isinstance(w, Element) else group.length(w)


def pop(w, group=None):
    """``w * w0(D_R(w))``."""
    group = _group_of(w, group)
    return group.multiply(w, group.longest_element(group.right_descents(w)))


def pop_via_meet(w: Element) -> Element:
    """Meet of ``w`` and its lower covers in the right weak order."""
    return meet_R([w] + [w.times_gen(s) for s in w.right_descents()])


@dataclass
class OrbitRecord:
    elements: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.elements)


def orbit(w, group=None, step: Callable | None = None) -> OrbitRecord:
    """Iterate ``step`` (default: Pop) until a fixed point is reached."""
    group = _group_of(w, group)
    f = step or (lambda x: pop(x, group))
    seen = [w]
    while True:
        x = f(seen[-1])
        if x == seen[-1]:
            return OrbitRecord(seen)
        seen.append(x)


def _elements(group):
    if not hasattr(group, "elements"):
        raise NotFinite(f"{group!r} cannot be enumerated")
    return group.elements()


def orbit_sizes(group) -> dict:
    """Orbit size of every element, filled in by increasing length."""
    elems = sorted(_elements(group), key=lambda w: _length(group, w))
    sizes: dict = {}
    for w in elems:
        if _length(group, w) == 0:
            sizes[w] = 1
        else:
            sizes[w] = sizes[pop(w, group)] + 1
    return sizes


def max_orbit(group) -> tuple[int, object]:
    sizes = orbit_sizes(group)
    best = max(sizes.values())
    witness = min((w for w, s in sizes.items() if s == best), key=lambda w: _length(group, w))
    return best, witness


def avg_orbit(group) -> Fraction:
    sizes = orbit_sizes(group)
    return Fraction(sum(sizes.values()), len(sizes))


def preimages(v, group=None) -> set:
    group = _group_of(v, group)
    out = set()
    for J in group.nerve():
        w = group.multiply(v, group.longest_element(J))
        if group.right_descents(w) == J:
            out.add(w)
    return out


def tpss_set(group, t: int) -> set:
    """All ``w`` with ``Pop^t(w) = e``, grown by iterated preimages."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    e = group.identity()
    found = {e}
    frontier = {e}
    for _ in range(t):
        new = set()
        for v in frontier:
            new |= preimages(v, group)
        new -= found
        found |= new
        frontier = new
    return found


def brieskorn(w, group=None) -> list:
    """Factors ``b_1, ..., b_r`` whose prefix products are the Pop orbit of ``w``."""
    group = _group_of(w, group)
    orb = orbit(w, group).elements
    factors = []
    # b_i = w0(D_R(Pop^{r-i}(w))), read from the end of the orbit
    for x in reversed(orb[:-1]):
        factors.append(group.longest_element(group.right_descents(x)))
    return factors


# ------------------------------------------------------------- compulsive


class CompulsiveMap:
    """A table ``w -> f(w)`` over a finite group."""

    def __init__(self, group, table: dict):
        self.group = group
        self.table = dict(table)

    def __call__(self, w):
        return self.table[w]

    def orbit_size(self, w) -> int:
        return orbit(w, self.group, step=self).size

    def max_orbit(self) -> int:
        sizes: dict = {}
        for w in sorted(self.table, key=lambda x: _length(self.group, x)):
            fw = self.table[w]
            sizes[w] = 1 if fw == w else sizes[fw] + 1
        return max(sizes.values())


def _weak_leq(group, u, w) -> bool:
    if isinstance(u, Element):
        return weak_leq_R(u, w)
    # l(u) + l(u^-1 w) = l(w)
    return group.length(u) + group.length(group.multiply(group.inverse(u), w)) == group.length(w)


def is_compulsive(f: CompulsiveMap) -> bool:
    group = f.group
    elems = _elements(group)
    if set(f.table) != set(elems):
        raise DomainMismatch("map must be defined on every group element")
    for w in elems:
        fw = f.table[w]
        if fw not in f.table:
            raise NotAFunction(f"value {fw!r} is not a group element")
        if not _weak_leq(group, fw, pop(w, group)):
            return False
    return True


def lower_interval(w, group=None) -> list:
    """``{v : v <=_R w}`` by downward search through lower covers."""
    group = _group_of(w, group)
    seen = {w}
    todo = deque([w])
    while todo:
        x = todo.popleft()
        for s in group.right_descents(x):
            y = group.multiply(x, group.longest_element([s]))
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return list(seen)


def random_compulsive(group, seed: int = 0, intervals: dict | None = None) -> CompulsiveMap:
    """Sample ``f(w)`` uniformly from the lower interval of ``Pop(w)``."""
    rng = random.Random(seed)
    elems = sorted(_elements(group), key=lambda w: (_length(group, w), _key(w)))
    table = {}
    for w in elems:
        p = pop(w, group)
        if intervals is not None:
            if p not in intervals:
                intervals[p] = sorted(lower_interval(p, group), key=_key)
            choices = intervals[p]
        else:
            choices = sorted(lower_interval(p, group), key=_key)
        table[w] = rng.choice(choices)
    return CompulsiveMap(group, table)


def _key(w) -> Hashable:
    return w.perm if isinstance(w, Element) else getattr(w, "window", w)


@dataclass
class CompulsiveReport:
    group: str
    trials: int
    bound: int
    max_observed: int

    @property
    def ok(self) -> bool:
        return self.max_observed <= self.bound


def verify_compulsive_bound(group, trials: int, seed: int = 0, h: int | None = None) -> CompulsiveReport:
    if h is None:
        h = group.coxeter_number()
    intervals: dict = {}
    worst = 0
    for k in range(trials):
        f = random_compulsive(group, seed=seed * 1_000_003 + k, intervals=intervals)
        m = f.max_orbit()
        worst = max(worst, m)
        if m > h:
            raise CounterexampleFound(f"compulsive map with orbit {m} > {h} in {group!r}")
    return CompulsiveReport(getattr(group, "name", repr(group)), trials, h, worst)


def max_compulsive_orbit(group) -> int:
    """Largest orbit over every compulsive map at once.

    Each ``f(w)`` may be chosen independently, so the best orbit from ``w`` is
    ``1 + max`` over the lower interval of ``Pop(w)`` (or 1 at ``e``).
    """
    best: dict = {}
    for w in sorted(_elements(group), key=lambda x: _length(group, x)):
        if _length(group, w) == 0:
            best[w] = 1
            continue
        best[w] = 1 + max(best[v] for v in lower_interval(pop(w, group), group))
    return max(best.values())


def count_compulsive_maps(group) -> int:
    total = 1
    for w in _elements(group):
        total *= len(lower_interval(pop(w, group), group))
    return total
