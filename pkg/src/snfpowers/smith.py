"""Smith normal form over Z.

Two independent routes are kept apart on purpose:

* ``smith_form`` runs elimination with a minimal-|entry| pivot, then a gcd/lcm
  fix-up pass over diagonal pairs.
* ``snf_from_divisors(determinantal_divisors(M))`` reads the invariant factors
  off the gcds of the compound matrices.

Each is used to check the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactmat import IntMatrix, compound, content_gcd, det
from .ntkit import int_valuation, prime_factors, require_prime


class CorruptDivisorsError(ValueError):
    pass


@dataclass(frozen=True)
class SmithForm:
    diag: tuple[int, ...]
    rank: int
    u: IntMatrix | None = None
    v: IntMatrix | None = None

    @property
    def size(self) -> int:
        return len(self.diag)

    def matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(self.diag)

    def is_chain(self) -> bool:
        return is_divisibility_chain(self.diag)


def is_divisibility_chain(diag: Sequence[int]) -> bool:
    if any(d < 0 for d in diag):
        return False
    rank = sum(1 for d in diag if d)
    if any(diag[i] == 0 for i in range(rank)):
        return False
    return all(diag[i + 1] % diag[i] == 0 for i in range(rank - 1))


@dataclass(frozen=True)
class DeterminantalDivisors:
    gamma: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for g in self.gamma[1:] if g)


class _Work:
    """Mutable elimination state keeping M = U W V throughout."""

    def __init__(self, m: IntMatrix, track: bool):
        self.n = m.rows
        self.w = m.to_rows()
        self.track = track
        if track:
            self.u = IntMatrix.identity(self.n).to_rows()
            self.v = IntMatrix.identity(self.n).to_rows()

    # Row op on W is W <- E W, so U <- U E^{-1} (a column op on U).
    def add_row(self, dst: int, src: int, c: int) -> None:
        w = self.w
        w[dst] = [x + c * y for x, y in zip(w[dst], w[src])]
        if self.track:
            for r in self.u:
                r[src] -= c * r[dst]

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.w[i], self.w[j] = self.w[j], self.w[i]
        if self.track:
            for r in self.u:
                r[i], r[j] = r[j], r[i]

    def negate_row(self, i: int) -> None:
        self.w[i] = [-x for x in self.w[i]]
        if self.track:
            for r in self.u:
                r[i] = -r[i]

    # Column op on W is W <- W F, so V <- F^{-1} V (a row op on V).
    def add_col(self, dst: int, src: int, c: int) -> None:
        for r in self.w:
            r[dst] += c * r[src]
        if self.track:
            v = self.v
            v[src] = [x - c * y for x, y in zip(v[src], v[dst])]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for r in self.w:
            r[i], r[j] = r[j], r[i]
        if self.track:
            self.v[i], self.v[j] = self.v[j], self.v[i]

    def pair_to_gcd_lcm(self, i: int, j: int) -> None:
        """diag(a, b) at positions i, j becomes diag(gcd, lcm) by 2x2 unimodular ops."""
        a, b = self.w[i][i], self.w[j][j]
        g, s, t = _egcd(a, b)
        ag, bg = a // g, b // g
        # left L = [[s, t], [-b/g, a/g]], right R = [[1, -t b/g], [1, s a/g]]
        self.w[i][i], self.w[j][j] = g, a * bg
        if self.track:
            # U <- U L^{-1}, L^{-1} = [[a/g, -t], [b/g, s]]
            for r in self.u:
                x, y = r[i], r[j]
                r[i], r[j] = x * ag + y * bg, -x * t + y * s
            # V <- R^{-1} V, R^{-1} = [[s a/g, t b/g], [-1, 1]]
            vi, vj = self.v[i], self.v[j]
            self.v[i] = [s * ag * x + t * bg * y for x, y in zip(vi, vj)]
            self.v[j] = [y - x for x, y in zip(vi, vj)]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _pick_pivot(w: list[list[int]], k: int, n: int) -> tuple[int, int] | None:
    best = None
    for i in range(k, n):
        row = w[i]
        for j in range(k, n):
            x = row[j]
            if x:
                key = (abs(x), i, j)
                if best is None or key < best:
                    best = key
    return None if best is None else (best[1], best[2])


def smith_form(m: IntMatrix, with_witnesses: bool = False) -> SmithForm:
    """Smith normal form of a square integer matrix.

    With ``with_witnesses`` the result carries unimodular ``u``, ``v`` such
    that ``u @ diag @ v == m``.
    """
    if not m.is_square:
        raise ValueError("smith_form expects a square matrix")
    n = m.rows
    work = _Work(m, with_witnesses)
    w = work.w
    rank = 0
    for k in range(n):
        pos = _pick_pivot(w, k, n)
        if pos is None:
            break
        while True:
            i, j = pos
            work.swap_rows(k, i)
            work.swap_cols(k, j)
            piv = w[k][k]
            for r in range(k + 1, n):
                if w[r][k]:
                    work.add_row(r, k, -(w[r][k] // piv))
            for c in range(k + 1, n):
                if w[k][c]:
                    work.add_col(c, k, -(w[k][c] // piv))
            if not any(w[r][k] for r in range(k + 1, n)) and not any(w[k][k + 1:]):
                break
            # some remainder survived and is smaller than the pivot
            pos = _pick_pivot(w, k, n)
        if w[k][k] < 0:
            work.negate_row(k)
        rank += 1

    for i in range(rank):
        for j in range(i + 1, rank):
            if w[j][j] % w[i][i]:
                work.pair_to_gcd_lcm(i, j)

    diag = tuple(w[i][i] for i in range(n))
    if with_witnesses:
        return SmithForm(diag, rank, IntMatrix.from_rows(work.u), IntMatrix.from_rows(work.v))
    return SmithForm(diag, rank)


def determinantal_divisors(m: IntMatrix) -> DeterminantalDivisors:
    """gamma_i = gcd of all i x i minors, with gamma_0 = 1."""
    if not m.is_square:
        raise ValueError("determinantal_divisors expects a square matrix")
    gamma = [1]
    for i in range(1, m.rows + 1):
        if gamma[-1] == 0:
            gamma.append(0)
        elif i == m.rows:
            gamma.append(abs(det(m.to_rows())))
        else:
            gamma.append(content_gcd(compound(m, i)))
    return DeterminantalDivisors(tuple(gamma))


def snf_from_divisors(g: DeterminantalDivisors) -> SmithForm:
    """Invariant factors as ratios of consecutive determinantal divisors."""
    gamma = g.gamma
    if not gamma or gamma[0] != 1:
        raise CorruptDivisorsError("gamma_0 must be 1")
    diag = []
    for i in range(1, len(gamma)):
        prev, cur = gamma[i - 1], gamma[i]
        if cur < 0:
            raise CorruptDivisorsError(f"negative gamma_{i}")
        if cur == 0:
            diag.append(0)
            continue
        if prev == 0:
            raise CorruptDivisorsError(f"gamma_{i} nonzero after a zero")
        if cur % prev:
            raise CorruptDivisorsError(f"gamma_{i - 1} does not divide gamma_{i}")
        diag.append(cur // prev)
    if not is_divisibility_chain(diag):
        raise CorruptDivisorsError(f"ratios {diag} are not a divisibility chain")
    return SmithForm(tuple(diag), sum(1 for d in diag if d))


def local_part(d: int, p: int) -> int:
    return 0 if d == 0 else p ** int_valuation(d, p)


def local_smith(m: IntMatrix, p: int) -> SmithForm:
    """Smith form over Z localized at p: the p-parts of the global invariant factors."""
    require_prime(p)
    s = smith_form(m)
    return SmithForm(tuple(local_part(d, p) for d in s.diag), s.rank)


def reconstruct_global(parts: Iterable[tuple[int, SmithForm]]) -> SmithForm:
    """Entrywise product of localized Smith forms."""
    parts = list(parts)
    if not parts:
        raise ValueError("no localized parts given")
    size, rank = parts[0][1].size, parts[0][1].rank
    for p, s in parts:
        if s.size != size or s.rank != rank:
            raise ValueError(f"part at p={p} has size/rank {s.size}/{s.rank}, "
                             f"expected {size}/{rank}")
    diag = [1] * size
    for _, s in parts:
        diag = [x * y for x, y in zip(diag, s.diag)]
    return SmithForm(tuple(diag), rank)


def relevant_primes(m: IntMatrix) -> list[int]:
    """Primes dividing the largest nonzero determinantal divisor of ``m``."""
    s = smith_form(m)
    if s.rank == 0:
        return []
    return prime_factors(math.prod(s.diag[:s.rank]))
