"""Bar codes, segment words, semitraces and forbidden segments.

A segment of order ``t`` and length ``n`` is stored as its word of ``n + 1``
letters over ``{0, ..., 2^t - 1}``.  Letter ``j`` is the bar code between
columns ``j`` and ``j + 1``; bit ``t - i`` of a letter is 1 when row ``i`` has a
blank there (row 1 is the top row).  A block is a maximal run of columns in one
row not separated by bars.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .classical import AffinePermutation, Perm, pop_by_runs

Word = tuple[int, ...]


class OutOfRange(ValueError):
    pass


class NotTPss(ValueError):
    pass


class NotOperationArray(ValueError):
    pass


class NotBounded(ValueError):
    pass


class UncalibratedCatalog(ValueError):
    pass


# ----------------------------------------------------------------- letters


def barcode_encode(bits: Sequence[int]) -> int:
    """``(x_1, ..., x_t)`` to ``x_t + 2 x_{t-1} + ... + 2^{t-1} x_1``."""
    letter = 0
    for x in bits:
        if x not in (0, 1):
            raise OutOfRange(f"bar code digit {x}")
        letter = 2 * letter + x
    return letter


def barcode_decode(letter: int, t: int) -> tuple[int, ...]:
    if not 0 <= letter < 1 << t:
        raise OutOfRange(f"letter {letter} not in Sigma_{t}")
    return tuple((letter >> (t - i)) & 1 for i in range(1, t + 1))


def blank(letter: int, row: int, t: int) -> bool:
    return bool((letter >> (t - row)) & 1)


def blank_letters(row: int, t: int) -> frozenset[int]:
    """``Z_row``: letters whose bar code is blank in ``row``."""
    return frozenset(m for m in range(1 << t) if blank(m, row, t))


def parse_word(text: str) -> Word:
    return tuple(int(x) for x in text.split())


def format_word(word: Iterable[int]) -> str:
    return " ".join(str(x) for x in word)


def is_bounded(word: Sequence[int], t: int) -> bool:
    """No block of length four or more outside the first row."""
    for row in range(2, t + 1):
        run = 0
        for m in word:
            run = run + 1 if blank(m, row, t) else 0
            if run >= 3:
                return False
    return True


def is_operation_array(word: Sequence[int]) -> bool:
    return len(word) >= 1 and word[0] == 0 and word[-1] == 0


# ------------------------------------------------------------- plans (S_n)


def sorting_plan_of(w: Perm, t: int) -> Word:
    n = len(w)
    rows = [tuple(w)]
    for _ in range(t):
        rows.append(pop_by_runs(rows[-1]))
    if rows[-1] != tuple(range(1, n + 1)):
        raise NotTPss(f"Pop^{t} does not sort {w}")
    word = [0] * (n + 1)
    for k in range(1, t + 1):
        p = rows[k - 1]
        for j in range(1, n):
            if p[j - 1] > p[j]:
                word[j] |= 1 << (t - k)
    return tuple(word)


def _blocks(word: Sequence[int], row: int, t: int) -> list[tuple[int, int]]:
    """Blocks of ``row`` as ``(left bar letter, right bar letter)``; columns
    ``left+1 .. right`` in 1-based column numbering."""
    out = []
    left = 0
    for j in range(1, len(word)):
        if not blank(word[j], row, t):
            out.append((left, j))
            left = j
    return out


@dataclass
class Semitrace:
    word: Word
    t: int
    rows: list[tuple[int, ...]]  # rows[0] is the top row

    @property
    def first_row(self) -> tuple[int, ...]:
        return self.rows[0]


def semitrace(word: Sequence[int], t: int) -> Semitrace:
    word = tuple(word)
    if not is_operation_array(word):
        raise NotOperationArray(format_word(word))
    n = len(word) - 1
    rows = [tuple(range(1, n + 1))]
    for k in range(t, 0, -1):
        below = rows[-1]
        cur = list(below)
        for L, R in _blocks(word, k, t):
            cur[L:R] = below[L:R][::-1]
        rows.append(tuple(cur))
    rows.pop(0)
    rows.reverse()
    return Semitrace(word, t, rows)


def plan_to_permutation(word: Sequence[int], t: int) -> Perm:
    return semitrace(word, t).first_row


def violating_pairs(T: Semitrace) -> set[tuple[int, int]]:
    out = set()
    t = T.t
    for k, row in enumerate(T.rows, 1):
        for j in range(1, len(row)):
            x, y = row[j - 1], row[j]
            if blank(T.word[j], k, t):
                if x < y:
                    out.add((x, y))
            elif x > y:
                out.add((y, x))
    return out


def pair_span(T: Semitrace, a: int, b: int) -> tuple[int, int] | None:
    """Letter range of the smallest segment holding every block outside the
    first row that contains ``a`` or ``b``."""
    lo = hi = None
    for k in range(2, T.t + 1):
        row = T.rows[k - 1]
        for L, R in _blocks(T.word, k, T.t):
            if a in row[L:R] or b in row[L:R]:
                lo = L if lo is None else min(lo, L)
                hi = R if hi is None else max(hi, R)
    return None if lo is None else (lo, hi)


def is_forbidden(segment: Sequence[int], t: int) -> bool:
    segment = tuple(segment)
    if not is_bounded(segment, t):
        raise NotBounded(format_word(segment))
    T = semitrace((0,) + segment + (0,), t)
    target = (1, len(segment))
    return any(pair_span(T, a, b) == target for a, b in violating_pairs(T))


def is_sorting_plan(word: Sequence[int], t: int) -> bool:
    """Oracle: the semitrace has no violating pair."""
    word = tuple(word)
    if not is_operation_array(word):
        return False
    return not violating_pairs(semitrace(word, t))


def contains_factor(word: Sequence[int], factors: Iterable[Sequence[int]]) -> bool:
    s = tuple(word)
    for f in factors:
        f = tuple(f)
        for i in range(len(s) - len(f) + 1):
            if s[i : i + len(f)] == f:
                return True
    return False


# ----------------------------------------------------------------- catalog


@dataclass
class ForbiddenCatalog:
    t: int
    segments: set[Word] = field(default_factory=set)
    l_max: int = 0
    calibration: tuple[int, int] | None = None  # (n_min, n_max) oracle-checked

    @property
    def k_prime(self) -> int:
        return max((len(s) for s in self.segments), default=0)

    @property
    def calibrated(self) -> bool:
        return self.calibration is not None

    def require_calibrated(self) -> None:
        if not self.calibrated:
            raise UncalibratedCatalog(f"catalog for t={self.t} has not been calibrated")

    def sorted_segments(self) -> list[Word]:
        return sorted(self.segments, key=lambda s: (len(s), s))

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "k_prime": self.k_prime,
            "l_max": self.l_max,
            "calibration": list(self.calibration) if self.calibration else None,
            "segments": [format_word(s) for s in self.sorted_segments()],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> ForbiddenCatalog:
        if isinstance(data, str):
            data = json.loads(data)
        cal = data.get("calibration")
        return cls(
            data["t"],
            {parse_word(s) for s in data["segments"]},
            data.get("l_max", 0),
            tuple(cal) if cal else None,
        )


def _new_forbidden_suffix(word: Word, t: int) -> Word | None:
    """Shortest forbidden suffix of ``word``, assuming no proper prefix holds one."""
    E = (0,) + word + (0,)
    n = len(E) - 1
    last = len(word)
    rows: list[list[int]] = [list(range(1, n + 1))]
    spans: list[list[tuple[int, int]]] = []
    for k in range(t, 0, -1):
        below = rows[-1]
        cur = list(below)
        span_of = [(0, 0)] * n
        left = 0
        shift = t - k
        for j in range(1, n + 1):
            if j == n or not (E[j] >> shift) & 1:
                cur[left:j] = below[left:j][::-1]
                for c in range(left, j):
                    span_of[c] = (left, j)
                left = j
        rows.append(cur)
        spans.append(span_of)
    rows = rows[:0:-1]  # top row first
    spans.reverse()
    # column of each value, per row
    where = []
    for row in rows:
        pos = [0] * (n + 1)
        for c, v in enumerate(row):
            pos[v] = c
        where.append(pos)
    best = None
    for k in range(t):
        row = rows[k]
        shift = t - 1 - k
        for j in range(1, n):
            x, y = row[j - 1], row[j]
            inside = (E[j] >> shift) & 1
            if inside and x < y:
                a, b = x, y
            elif not inside and x > y:
                a, b = y, x
            else:
                continue
            lo, hi = n + 1, -1
            for r in range(1, t):
                for v in (a, b):
                    L, R = spans[r][where[r][v]]
                    if L < lo:
                        lo = L
                    if R > hi:
                        hi = R
            if hi == last and lo >= 1 and (best is None or lo > best):
                best = lo
    return None if best is None else word[best - 1 :]


def enumerate_forbidden(t: int, l_max: int, stop_after: int = 2) -> ForbiddenCatalog:
    """Minimal bounded forbidden segments with at most ``l_max`` letters.

    Bounded forbidden-free words are grown to the right; the first time a
    forbidden suffix appears it is recorded and that branch is cut.  The
    search also stops once ``stop_after`` consecutive lengths add nothing
    after at least one word has been found.
    """
    if l_max < 2:
        raise ValueError("l_max must be at least 2")
    alphabet = range(1 << t)
    found: set[Word] = set()
    frontier: list[Word] = [(m,) for m in alphabet]
    quiet = 0
    reached = 1
    for length in range(2, l_max + 1):
        added = 0
        nxt = []
        for w in frontier:
            for m in alphabet:
                x = w + (m,)
                if not is_bounded(x[-3:], t):
                    continue
                f = _new_forbidden_suffix(x, t)
                if f is None:
                    nxt.append(x)
                elif f not in found:
                    found.add(f)
                    added += 1
        frontier = nxt
        reached = length
        if found and added == 0:
            quiet += 1
            if quiet >= stop_after:
                break
        else:
            quiet = 0
    return ForbiddenCatalog(t, found, reached)


# ---------------------------------------------------------- affine plans


@dataclass(frozen=True)
class PeriodicSegment:
    """One period ``a_1 ... a_n``: ``a_i`` is the bar code left of column ``i``."""

    t: int
    word: Word

    @property
    def n(self) -> int:
        return len(self.word)

    def is_non_escher(self) -> bool:
        return all(any(not blank(m, k, self.t) for m in self.word) for k in range(1, self.t + 1))


def affine_sorting_plan_of(w: AffinePermutation, t: int) -> PeriodicSegment:
    n = w.n
    rows = [w]
    for _ in range(t):
        rows.append(rows[-1].pop())
    if rows[-1] != AffinePermutation.identity(n):
        raise NotTPss(f"Pop^{t} does not sort {w}")
    word = [0] * n
    for k in range(1, t + 1):
        p = rows[k - 1]
        for i in range(1, n + 1):
            if p(i - 1) > p(i):
                word[i - 1] |= 1 << (t - k)
    return PeriodicSegment(t, tuple(word))


def alpha_encode(p: PeriodicSegment) -> Word:
    return p.word


def affine_plan_to_permutation(p: PeriodicSegment) -> AffinePermutation:
    """First row of the periodic semitrace (requires non-Escher)."""
    if not p.is_non_escher():
        raise NotOperationArray("periodic segment has an infinite block")
    n, t = p.n, p.t
    cur = AffinePermutation.identity(n)
    for k in range(t, 0, -1):
        # start one period at a bar of row k
        b = next(i for i in range(1, n + 1) if not blank(p.word[i - 1], k, t))
        vals: list[int] = []
        block: list[int] = []
        for i in range(b, b + n):
            if i > b and not blank(p.word[(i - 1) % n], k, t):
                vals.extend(reversed(block))
                block = []
            block.append(cur(i))
        vals.extend(reversed(block))
        window = [0] * n
        for off, x in enumerate(vals):
            q, r = divmod(b + off - 1, n)
            window[r] = x - q * n
        cur = AffinePermutation(tuple(window))
    return cur


def _cyclic_bounded(word: Sequence[int], t: int) -> bool:
    n = len(word)
    for row in range(2, t + 1):
        flags = [blank(m, row, t) for m in word]
        if all(flags):
            return False
        run = 0
        for f in flags + flags[:3]:
            run = run + 1 if f else 0
            if run >= 3:
                return False
    return n > 0


def is_affine_sorting_plan(p: PeriodicSegment, catalog: ForbiddenCatalog) -> bool:
    """Periodic non-Escher, short blocks off the first row, no catalog factor."""
    if not p.is_non_escher() or not _cyclic_bounded(p.word, p.t):
        return False
    n = p.n
    span = catalog.k_prime + n
    reps = span // n + 2
    periodic = p.word * reps
    for f in catalog.segments:
        L = len(f)
        for i in range(n):
            if periodic[i : i + L] == f:
                return False
    return True


def is_affine_sorting_plan_oracle(p: PeriodicSegment) -> bool:
    """Rebuild the permutation from the plan and compare plans directly."""
    if not p.is_non_escher():
        return False
    try:
        w = affine_plan_to_permutation(p)
        return affine_sorting_plan_of(w, p.t) == p
    except (NotTPss, ValueError):
        return False


# --------------------------------------------------------- type-B helpers


def full_word_from_half(half: Sequence[int]) -> Word:
    """``x . rev(x)`` sharing the middle letter."""
    half = tuple(half)
    return half + half[-2::-1]


def compute_U_prime(catalog: ForbiddenCatalog) -> set[Word]:
    """Suffix-minimal ``u`` with ``u`` and ``rev(u)`` catalog-free but the
    folded word ``u . rev(u)`` containing a catalog factor."""
    catalog.require_calibrated()
    t = catalog.t
    segs = catalog.segments
    if not segs:
        return set()
    limit = catalog.k_prime
    out: set[Word] = set()
    frontier: list[Word] = [()]
    for _ in range(limit):
        nxt = []
        for u in frontier:
            for m in range(1 << t):
                x = (m,) + u
                if not is_bounded(x[:3], t):
                    continue
                if contains_factor(x[:limit], segs) or contains_factor(x[::-1][-limit:], segs):
                    continue
                if contains_factor(full_word_from_half(x), segs):
                    out.add(x)
                else:
                    nxt.append(x)
        frontier = nxt
    return out
