"""Linear congruences over Z/p^M with per-row moduli and precision tracking."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .padic import residue_valuation


class SolveError(ValueError):
    pass


class UnderdeterminedError(SolveError):
    def __init__(self, column: int):
        self.column = column
        super().__init__(
            f"no pivot for unknown {column}: constraints do not determine it; enlarge the window"
        )


class InconsistentError(SolveError):
    pass


@dataclass
class Constraint:
    coeffs: list[int]
    rhs: int
    exponent: int  # the row holds modulo p^exponent
    tag: object = None


@dataclass
class Solution:
    values: list[int]
    precisions: list[int]  # value i is known modulo p^precisions[i]
    pivot_valuations: list[int]
    residual: int  # largest shortfall of a constraint at the attained precision
    rows_used: int
    log: list[str] = field(default_factory=list)

    @property
    def precision(self) -> int:
        return min(self.precisions) if self.precisions else 0


def solve_congruences(rows: list[Constraint], d: int, p: int, M: int) -> Solution:
    """Solve sum_j C_j a_j = b (mod p^e) for every row, all e <= M.

    Each row is lifted to a congruence mod p^M by multiplying with p^(M-e).
    Gaussian elimination picks, per column, a pivot of least valuation; a
    pivot of valuation v costs v digits of precision for that unknown, and
    back substitution propagates the loss.  Columns without a nonzero pivot
    raise :class:`UnderdeterminedError`.
    """
    mod = p**M
    work = []
    for r in rows:
        e = min(r.exponent, M)
        if e <= 0:
            continue
        s = p ** (M - e)
        work.append([s * a % mod for a in r.coeffs] + [s * r.rhs % mod])
    log = []
    pivots = []
    pvals = []
    remaining = list(range(len(work)))
    for c in range(d):
        best, bestv = None, M
        for ri in remaining:
            x = work[ri][c]
            if x:
                v = residue_valuation(x, p, M)
                if v < bestv:
                    best, bestv = ri, v
                    if v == 0:
                        break
        if best is None:
            raise UnderdeterminedError(c)
        remaining.remove(best)
        row = work[best]
        unit = pow(row[c] // p**bestv, -1, mod)
        row[:] = [x * unit % mod for x in row]
        pk = p**bestv
        for ri in remaining:
            x = work[ri][c]
            if x:
                y = x // pk
                other = work[ri]
                other[:] = [(a - y * b) % mod for a, b in zip(other, row)]
        pivots.append(best)
        pvals.append(bestv)
        if bestv:
            log.append(f"unknown {c}: pivot divisible by p^{bestv}, precision reduced")
    shortfall = 0
    for ri in remaining:
        b = work[ri][d]
        if b:
            shortfall = max(shortfall, M - residue_valuation(b, p, M))
    values = [0] * d
    precs = [0] * d
    for c in range(d - 1, -1, -1):
        row = work[pivots[c]]
        v = pvals[c]
        R = row[d]
        Q = M
        for c2 in range(c + 1, d):
            x = row[c2]
            if x:
                R -= x * values[c2]
                Q = min(Q, residue_valuation(x, p, M) + precs[c2])
        R %= p**Q
        if R and residue_valuation(R, p, Q) < v:
            raise InconsistentError(
                f"unknown {c}: right-hand side has valuation below the pivot's {v}"
            )
        P = max(Q - v, 0)
        values[c] = (R // p**v) % p**P if P else 0
        precs[c] = P
    sol = Solution(values, precs, pvals, 0, len(work), log)
    sol.residual = max(shortfall, residual_shortfall(rows, sol, p, M))
    return sol


def residual_shortfall(rows: list[Constraint], sol: Solution, p: int, M: int) -> int:
    """max over rows of (required - attained) valuation of the residual, >= 0.

    A row is required to hold modulo p^min(e, M') where M' is the attained
    precision of the solution.
    """
    worst = 0
    prec = sol.precision
    for r in rows:
        need = min(r.exponent, M, prec)
        if need <= 0:
            continue
        res = (sum(a * c for a, c in zip(r.coeffs, sol.values)) - r.rhs) % p**need
        if res:
            worst = max(worst, need - residue_valuation(res, p, need))
    return worst


def charpoly(matrix: list[list[int]]) -> list[int]:
    """Integer characteristic polynomial det(T I - A), highest degree first.

    Division free: the coefficient of T^(d-k) is (-1)^k times the sum of the
    principal k x k minors, each computed by Laplace expansion.
    """
    d = len(matrix)
    coeffs = [1]
    for k in range(1, d + 1):
        total = 0
        for idx in combinations(range(d), k):
            total += _det([[matrix[i][j] for j in idx] for i in idx])
        coeffs.append((-1) ** k * total)
    return coeffs


def _det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = 0
    for j in range(n):
        if a[0][j]:
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            total += (-1) ** j * a[0][j] * _det(minor)
    return total
