"""Deterministic finite automata over ``{0, ..., k-1}``, word counting and
rational generating-function fitting.

Transition tables are numpy integer arrays (states x letters).  Every
constructor returns a trimmed, minimized automaton renumbered in breadth-first
order from the start state, so equal languages give equal objects.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

import numpy as np

STATE_CAP = 2_000_000


class AlphabetMismatch(ValueError):
    pass


class TooManyStates(RuntimeError):
    pass


class NoRecurrenceWithinBound(ValueError):
    pass


class Dfa:
    """Complete DFA; ``delta[q, a]`` is the next state."""

    def __init__(self, alphabet_size: int, delta, start: int, accepting: Iterable[int], *, canonical: bool = False):
        self.alphabet_size = int(alphabet_size)
        self.delta = np.asarray(delta, dtype=np.int64).reshape(-1, self.alphabet_size)
        self.start = int(start)
        acc = np.zeros(len(self.delta), dtype=bool)
        acc[list(accepting)] = True
        self.accepting = acc
        if not canonical:
            other = _minimize(self)
            self.delta, self.start, self.accepting = other.delta, other.start, other.accepting

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def __repr__(self):
        return f"Dfa(alphabet={self.alphabet_size}, states={self.n_states})"

    def __eq__(self, other):
        return (
            isinstance(other, Dfa)
            and self.alphabet_size == other.alphabet_size
            and self.start == other.start
            and np.array_equal(self.delta, other.delta)
            and np.array_equal(self.accepting, other.accepting)
        )

    def __hash__(self):
        return hash((self.alphabet_size, self.delta.tobytes(), self.accepting.tobytes()))

    def accepts(self, word: Sequence[int]) -> bool:
        q = self.start
        for a in word:
            q = self.delta[q, a]
        return bool(self.accepting[q])

    # -------------------------------------------------------- constructors

    @classmethod
    def full(cls, k: int) -> Dfa:
        return cls(k, np.zeros((1, k)), 0, [0])

    @classmethod
    def empty(cls, k: int) -> Dfa:
        return cls(k, np.zeros((1, k)), 0, [])

    @classmethod
    def from_finite(cls, k: int, words: Iterable[Sequence[int]]) -> Dfa:
        trie = [{}]
        final = set()
        for w in words:
            q = 0
            for a in w:
                _check_letter(a, k)
                if a not in trie[q]:
                    trie[q][a] = len(trie)
                    trie.append({})
                q = trie[q][a]
            final.add(q)
        dead = len(trie)
        delta = np.full((dead + 1, k), dead)
        for q, edges in enumerate(trie):
            for a, r in edges.items():
                delta[q, a] = r
        return cls(k, delta, 0, final)

    @classmethod
    def from_predicate_on_letters(cls, k: int, letters: Iterable[int]) -> Dfa:
        """Words whose every letter lies in ``letters``."""
        ok = set(letters)
        delta = np.array([[0 if a in ok else 1 for a in range(k)], [1] * k])
        return cls(k, delta, 0, [0])

    def to_json(self) -> dict:
        return {
            "alphabet_size": self.alphabet_size,
            "start": self.start,
            "transitions": self.delta.tolist(),
            "accepting": np.flatnonzero(self.accepting).tolist(),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> Dfa:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["alphabet_size"], data["transitions"], data["start"], data["accepting"])


def _check_letter(a: int, k: int) -> None:
    if not 0 <= a < k:
        raise AlphabetMismatch(f"letter {a} outside alphabet of size {k}")


def _same_alphabet(*dfas: Dfa) -> int:
    ks = {d.alphabet_size for d in dfas}
    if len(ks) != 1:
        raise AlphabetMismatch(f"alphabets differ: {sorted(ks)}")
    return ks.pop()


def _minimize(d: Dfa) -> Dfa:
    """Trim unreachable states, then Moore partition refinement."""
    k = d.alphabet_size
    # reachable states in BFS order
    order = [d.start]
    index = {d.start: 0}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for a in range(k):
            r = int(d.delta[q, a])
            if r not in index:
                index[r] = len(order)
                order.append(r)
    remap = np.array(order)
    delta = np.vectorize(index.__getitem__, otypes=[np.int64])(d.delta[remap]) if len(order) else d.delta
    acc = d.accepting[remap]
    n = len(order)
    cls = acc.astype(np.int64)
    n_cls = len(np.unique(cls))
    while True:
        sig = np.column_stack([cls, cls[delta]])
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(-1)
        m = int(new.max()) + 1 if n else 0
        if m == n_cls:
            cls = new
            break
        cls, n_cls = new, m
    # canonical numbering by BFS from the start class
    blocks_delta = np.zeros((n_cls, k), dtype=np.int64)
    blocks_delta[cls] = cls[delta]
    blocks_acc = np.zeros(n_cls, dtype=bool)
    blocks_acc[cls] = acc
    start = int(cls[0])
    order = [start]
    index = {start: 0}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for a in range(k):
            r = int(blocks_delta[q, a])
            if r not in index:
                index[r] = len(order)
                order.append(r)
    lut = np.zeros(n_cls, dtype=np.int64)
    for q, j in index.items():
        lut[q] = j
    out_delta = lut[blocks_delta[order]]
    out = Dfa.__new__(Dfa)
    out.alphabet_size = k
    out.delta = out_delta
    out.start = 0
    out.accepting = blocks_acc[order]
    return out


def minimize(d: Dfa) -> Dfa:
    return _minimize(d)


def _product(a: Dfa, b: Dfa, accept) -> Dfa:
    k = _same_alphabet(a, b)
    nb = b.n_states
    # the full product table is small enough at the sizes used here; fall back
    # to reachable exploration when it is not
    if a.n_states * nb <= 4_000_000:
        delta = a.delta[:, None, :] * nb + b.delta[None, :, :]
        delta = delta.reshape(-1, k)
        acc = accept(a.accepting[:, None], b.accepting[None, :]).reshape(-1)
        start = a.start * nb + b.start
        return Dfa(k, delta, start, np.flatnonzero(acc))
    return _explore(k, (a.start, b.start), lambda s, x: (int(a.delta[s[0], x]), int(b.delta[s[1], x])),
                    lambda s: bool(accept(a.accepting[s[0]], b.accepting[s[1]])))


def _explore(k: int, start, step, is_accepting) -> Dfa:
    index = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        row = []
        for x in range(k):
            r = step(s, x)
            j = index.get(r)
            if j is None:
                j = index[r] = len(order)
                order.append(r)
                if len(order) > STATE_CAP:
                    raise TooManyStates(f"more than {STATE_CAP} states")
            row.append(j)
        rows.append(row)
    acc = [j for j, s in enumerate(order) if is_accepting(s)]
    return Dfa(k, np.array(rows, dtype=np.int64).reshape(-1, k), 0, acc)


def intersect(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, np.logical_and)


def union(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, np.logical_or)


def intersect_all(dfas: Sequence[Dfa]) -> Dfa:
    dfas = sorted(dfas, key=lambda d: d.n_states)
    out = dfas[0]
    for d in dfas[1:]:
        out = intersect(out, d)
    return out


def complement(a: Dfa) -> Dfa:
    return Dfa(a.alphabet_size, a.delta, a.start, np.flatnonzero(~a.accepting))


# NFA steps use sets of states of the inputs; determinized by subset search.


def concat(a: Dfa, b: Dfa) -> Dfa:
    k = _same_alphabet(a, b)

    def close(qa, sb):
        return (qa, sb | {b.start}) if a.accepting[qa] else (qa, sb)

    def step(s, x):
        qa, sb = s
        return close(int(a.delta[qa, x]), frozenset(int(b.delta[q, x]) for q in sb))

    return _explore(k, close(a.start, frozenset()), step, lambda s: any(b.accepting[q] for q in s[1]))


def star(a: Dfa) -> Dfa:
    k = a.alphabet_size

    def close(S):
        S = frozenset(S)
        if any(a.accepting[q] for q in S):
            S = S | {a.start}
        return S

    start = ("init", close({a.start}))

    def step(s, x):
        return ("run", close(int(a.delta[q, x]) for q in s[1]))

    def acc(s):
        return s[0] == "init" or any(a.accepting[q] for q in s[1])

    return _explore(k, start, step, acc)


def reverse(a: Dfa) -> Dfa:
    k = a.alphabet_size
    preds = [[[] for _ in range(k)] for _ in range(a.n_states)]
    for q in range(a.n_states):
        for x in range(k):
            preds[int(a.delta[q, x])][x].append(q)
    start = frozenset(np.flatnonzero(a.accepting).tolist())

    def step(S, x):
        return frozenset(p for q in S for p in preds[q][x])

    return _explore(k, start, step, lambda S: a.start in S)


def avoid_factors(k: int, words: Iterable[Sequence[int]]) -> Dfa:
    """Words containing none of ``words`` as a factor (Aho-Corasick)."""
    words = [tuple(w) for w in words]
    if any(len(w) == 0 for w in words):
        return Dfa.empty(k)
    goto = [{}]
    out = [False]
    for w in words:
        q = 0
        for a in w:
            _check_letter(a, k)
            if a not in goto[q]:
                goto[q][a] = len(goto)
                goto.append({})
                out.append(False)
            q = goto[q][a]
        out[q] = True
    n = len(goto)
    fail = [0] * n
    delta = np.zeros((n, k), dtype=np.int64)
    todo = deque()
    for a in range(k):
        r = goto[0].get(a, 0)
        delta[0, a] = r
        if r:
            todo.append(r)
    while todo:
        q = todo.popleft()
        out[q] = out[q] or out[fail[q]]
        for a in range(k):
            r = goto[q].get(a)
            if r is None:
                delta[q, a] = delta[fail[q], a]
            else:
                fail[r] = int(delta[fail[q], a])
                delta[q, a] = r
                todo.append(r)
    # a matched state is absorbing and rejecting
    for q in range(n):
        if out[q]:
            delta[q, :] = q
    return Dfa(k, delta, 0, [q for q in range(n) if not out[q]])


def contains_word_from(k: int, words: Iterable[Sequence[int]]) -> Dfa:
    return complement(avoid_factors(k, words))


def no_suffix_in(k: int, words: Iterable[Sequence[int]]) -> Dfa:
    """``Sigma* minus Sigma* W``: the current Aho-Corasick state decides."""
    words = [tuple(w) for w in words]
    if not words:
        return Dfa.full(k)
    goto = [{}]
    out = [False]
    for w in words:
        q = 0
        for a in w:
            if a not in goto[q]:
                goto[q][a] = len(goto)
                goto.append({})
                out.append(False)
            q = goto[q][a]
        out[q] = True
    n = len(goto)
    fail = [0] * n
    delta = np.zeros((n, k), dtype=np.int64)
    todo = deque()
    for a in range(k):
        r = goto[0].get(a, 0)
        delta[0, a] = r
        if r:
            todo.append(r)
    while todo:
        q = todo.popleft()
        out[q] = out[q] or out[fail[q]]
        for a in range(k):
            r = goto[q].get(a)
            if r is None:
                delta[q, a] = delta[fail[q], a]
            else:
                fail[r] = int(delta[fail[q], a])
                delta[q, a] = r
                todo.append(r)
    if any(len(w) == 0 for w in words):
        return Dfa.empty(k)
    return Dfa(k, delta, 0, [q for q in range(n) if not out[q]])


def cyc(a: Dfa) -> Dfa:
    """``{x_2 ... x_n x_1 : x_1 ... x_n in L}``.

    After reading ``y`` the automaton knows, for every possible rotated-out
    first letter ``c``, the state ``a`` reaches from ``delta(start, c)`` on all
    of ``y`` but its last letter, plus that last letter.
    """
    k = a.alphabet_size
    firsts = tuple(int(a.delta[a.start, c]) for c in range(k))
    start = ("empty",)

    def step(s, x):
        if s[0] == "empty":
            return ("run", firsts, x)
        _, vec, last = s
        return ("run", tuple(int(a.delta[q, last]) for q in vec), x)

    def acc(s):
        if s[0] == "empty":
            return bool(a.accepting[a.start])
        _, vec, last = s
        return bool(a.accepting[vec[last]])

    return _explore(k, start, step, acc)


def length_at_least(k: int, m: int) -> Dfa:
    delta = np.array([[min(q + 1, m)] * k for q in range(m + 1)])
    return Dfa(k, delta, 0, [m])


def starts_with(k: int, letters: Iterable[int]) -> Dfa:
    ok = set(letters)
    # 0: start, 1: good, 2: dead
    delta = np.array([[1 if x in ok else 2 for x in range(k)], [1] * k, [2] * k])
    return Dfa(k, delta, 0, [1])


def ends_with(k: int, letters: Iterable[int]) -> Dfa:
    ok = set(letters)
    delta = np.array([[1 if x in ok else 0 for x in range(k)]] * 2)
    return Dfa(k, delta, 0, [1])


def avoid_letter_runs(k: int, letters: Iterable[int], run: int) -> Dfa:
    """No ``run`` consecutive letters from ``letters``."""
    ok = set(letters)
    delta = np.array([[min(q + 1, run) if x in ok else 0 for x in range(k)] if q < run else [run] * k
                      for q in range(run + 1)])
    return Dfa(k, delta, 0, list(range(run)))


def no_suffix_run(k: int, letters: Iterable[int], run: int) -> Dfa:
    """Words not ending in ``run`` letters from ``letters``."""
    ok = set(letters)
    delta = np.array([[min(q + 1, run) if x in ok else 0 for x in range(k)] for q in range(run + 1)])
    return Dfa(k, delta, 0, list(range(run)))


# ------------------------------------------------------------- counting


def count_words(a: Dfa, n: int) -> int:
    return series(a, n)[n]


def series(a: Dfa, N: int) -> list[int]:
    """Number of accepted words of each length ``0..N`` (exact)."""
    k = a.alphabet_size
    nq = a.n_states
    # multiplicity of each edge q -> r
    edges: dict[tuple[int, int], int] = {}
    for q in range(nq):
        for x in range(k):
            key = (q, int(a.delta[q, x]))
            edges[key] = edges.get(key, 0) + 1
    src = np.array([e[0] for e in edges], dtype=np.int64)
    dst = np.array([e[1] for e in edges], dtype=np.int64)
    mult = np.array(list(edges.values()), dtype=object)
    vec = np.zeros(nq, dtype=object)
    vec[a.start] = 1
    acc = a.accepting
    out = []
    for length in range(N + 1):
        out.append(int(vec[acc].sum()) if acc.any() else 0)
        if length == N:
            break
        new = np.zeros(nq, dtype=object)
        np.add.at(new, dst, vec[src] * mult)
        vec = new
    return out


def brute_count(accept, k: int, n: int) -> int:
    return sum(1 for w in product(range(k), repeat=n) if accept(w))


# -------------------------------------------------- rational functions


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: Sequence, q: Sequence) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def _poly_divmod(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[list, list]:
    p = [Fraction(x) for x in _trim(p)]
    q = [Fraction(x) for x in _trim(q)]
    if len(q) == 1 and q[0] == 0:
        raise ZeroDivisionError
    quo = [Fraction(0)] * max(1, len(p) - len(q) + 1)
    while len(p) >= len(q) and any(p):
        c = p[-1] / q[-1]
        d = len(p) - len(q)
        quo[d] = c
        for i, y in enumerate(q):
            p[i + d] -= c * y
        p = _trim(p)
        if len(p) == 1 and p[0] == 0:
            break
    return quo, p


def _poly_gcd(p: Sequence, q: Sequence) -> list[Fraction]:
    a = [Fraction(x) for x in _trim(p)]
    b = [Fraction(x) for x in _trim(q)]
    while not (len(b) == 1 and b[0] == 0):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return [x / a[-1] for x in a]


@dataclass(frozen=True)
class RationalGF:
    """``num(z) / den(z)`` with ``den(0) = 1`` and no common factor."""

    num: tuple[int, ...]
    den: tuple[int, ...]

    def expand(self, N: int) -> list[int]:
        """Coefficients of ``z^0 .. z^N``."""
        num = list(self.num) + [0] * (N + 1)
        den = self.den
        out = []
        for n in range(N + 1):
            c = num[n] - sum(den[i] * out[n - i] for i in range(1, min(n, len(den) - 1) + 1))
            out.append(c)
        return out

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    def __str__(self):
        return f"({_fmt_poly(self.num)})/({_fmt_poly(self.den)})"

    @classmethod
    def from_fractions(cls, num: Sequence[Fraction], den: Sequence[Fraction]) -> RationalGF:
        num = [Fraction(x) for x in _trim(num)]
        den = [Fraction(x) for x in _trim(den)]
        g = _poly_gcd(num, den)
        if len(g) > 1:
            num, _ = _poly_divmod(num, g)
            den, _ = _poly_divmod(den, g)
        c0 = den[0]
        num = [x / c0 for x in _trim(num)]
        den = [x / c0 for x in _trim(den)]
        lcm = 1
        for x in num + den:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        num_i = [int(x * lcm) for x in num]
        den_i = [int(x * lcm) for x in den]
        if lcm != 1:
            # den(0) = 1 is the normalization; keep rationals out of the output
            raise NoRecurrenceWithinBound("series does not have an integral rational form")
        if all(x == 0 for x in num_i):
            return cls((0,), (1,))
        return cls(tuple(num_i), tuple(den_i))


def _fmt_poly(p: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        if mon and abs(c) == 1:
            coef = "-" if c < 0 else "+"
            terms.append(f"{coef}{mon}")
        else:
            terms.append(f"{c:+d}{mon}")
    s = "".join(terms) or "0"
    return s[1:] if s.startswith("+") else s


def berlekamp_massey(seq: Sequence) -> list[Fraction]:
    """Connection polynomial ``C`` (``C[0] = 1``) of the shortest recurrence
    ``sum_i C[i] s[n - i] = 0``, over the rationals."""
    s = [Fraction(x) for x in seq]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n] + sum(C[i] * s[n - i] for i in range(1, L + 1))
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        C = C + [Fraction(0)] * max(0, len(B) + m - len(C))
        for i, x in enumerate(B):
            C[i + m] -= coef * x
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    C = C + [Fraction(0)] * (L + 1 - len(C))
    return C[: L + 1]


def fit_rational_gf(counts: Sequence[int], state_bound: int, holdout: float = 0.25) -> RationalGF:
    """Shortest recurrence on the leading part of ``counts``, checked on the
    held-out tail and on every supplied term."""
    counts = [int(c) for c in counts]
    if len(counts) < 2 * state_bound + 4:
        raise NoRecurrenceWithinBound(
            f"need at least {2 * state_bound + 4} terms for state bound {state_bound}"
        )
    if not any(counts):
        return RationalGF((0,), (1,))
    n_fit = len(counts) - max(1, int(len(counts) * holdout))
    C = berlekamp_massey(counts[:n_fit])
    L = len(C) - 1
    if 2 * L > n_fit:
        raise NoRecurrenceWithinBound("fitting window too short for the recurrence found")
    num = _poly_mul(C, [Fraction(c) for c in counts[:L]])[:L] if L else [Fraction(0)]
    gf = RationalGF.from_fractions(num, C)
    if len(gf.den) - 1 > state_bound:
        raise NoRecurrenceWithinBound(f"denominator degree {len(gf.den) - 1} exceeds {state_bound}")
    if gf.expand(len(counts) - 1) != counts:
        raise NoRecurrenceWithinBound("recurrence does not reproduce the held-out terms")
    return gf
