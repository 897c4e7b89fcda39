"""Character sums over finite fields: Jacobi sums, point counts on the
elliptic surface Y^2 = X (X + 1) (X + t^N), Lefschetz traces and local
factors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cyclotomic import CycInt
from .finitefield import FFCtx, FieldError


class CharSumError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """chi(gen^e) = zeta_n^(e mod n); exponent -1 marks chi(0) = 0."""

    ctx: FFCtx
    order: int
    exps: np.ndarray

    def exponent(self, x) -> np.ndarray:
        return self.exps[np.asarray(x)]

    def value(self, x: int) -> complex:
        e = int(self.exps[x])
        if e < 0:
            return 0
        return complex(np.exp(2j * np.pi * e / self.order))

    def as_cycint(self, x: int, M: int | None = None) -> CycInt:
        M = self.order if M is None else M
        e = int(self.exps[x])
        if e < 0:
            return CycInt.integer(M, 0)
        return CycInt.zeta(M, e * (M // self.order))


def mult_char(ctx: FFCtx, order: int) -> Character:
    if order < 1 or (ctx.q - 1) % order:
        raise CharSumError(f"character order {order} does not divide q - 1 = {ctx.q - 1}")
    exps = np.where(ctx.log >= 0, ctx.log % order, -1)
    return Character(ctx, order, exps.astype(np.int64))


@dataclass
class JacobiResult:
    value: CycInt
    degenerate: bool


def jacobi_sum(ctx: FFCtx, a: Sequence[int], m: int) -> JacobiResult:
    """(-1)^r sum_{x_1+...+x_r = -1} chi(x_1)^a_1 ... chi(x_r)^a_r with chi of order m.

    A trivial character power takes the value 1 at 0.  Degenerate (some a_i
    or the sum of the a_i divisible by m) sums are flagged.
    """
    a = [int(x) for x in a]
    r = len(a)
    if r < 1:
        raise CharSumError("need at least one exponent")
    chi = mult_char(ctx, m)
    q = ctx.q
    elems = ctx.elements()

    def pw(idx, ai):
        e = chi.exps[idx]
        if ai % m == 0:
            return np.zeros_like(e), np.ones_like(e, dtype=bool)
        return (e * ai) % m, e >= 0

    minus_one = ctx.minus_one()
    counts = np.zeros(m, dtype=np.int64)
    if r == 1:
        e, ok = pw(np.array([minus_one]), a[0])
        np.add.at(counts, e[ok], 1)
    else:
        # dist[e] counts tuples (x_1..x_j) with partial sum s and exponent e
        dist = np.zeros((q, m), dtype=np.int64)
        e, ok = pw(elems, a[0])
        np.add.at(dist, (elems[ok], e[ok]), 1)
        for ai in a[1:-1]:
            e, ok = pw(elems, ai)
            new = np.zeros_like(dist)
            for x in elems[ok]:
                shifted = ctx.add(elems, x)
                new[shifted] += np.roll(dist, int(e[x]), axis=1)
            dist = new
        # the last variable is forced: x_r = -1 - s
        last = ctx.sub(np.full(q, minus_one), elems)
        e, ok = pw(last, a[-1])
        for s in elems[ok]:
            counts += np.roll(dist[s], int(e[s]))
    sign = -1 if r % 2 else 1
    value = CycInt.from_exponents(m, [sign * int(c) for c in counts])
    degenerate = any(x % m == 0 for x in a) or sum(a) % m == 0
    return JacobiResult(value, degenerate)


def J_i(ctx: FFCtx, N: int, i: int, x: int = 1) -> CycInt:
    """chi^N(-1) sum_{x_1 + x_2 = -x} chi^(2i)(x_1) chi^N(x_2), chi of order 2N, in Z[zeta_2N]."""
    M = 2 * N
    chi = mult_char(ctx, M)
    elems = ctx.elements()
    mx = int(ctx.neg(x))
    x2 = ctx.sub(np.full(ctx.q, mx), elems)
    e1 = chi.exps[elems]
    e2 = chi.exps[x2]
    ok = (e1 >= 0) & (e2 >= 0)
    counts = np.bincount(((2 * i * e1 + N * e2) % M)[ok], minlength=M)
    s = CycInt.from_exponents(M, counts)
    sign_exp = int(chi.exps[ctx.minus_one()]) * N % M
    return s * CycInt.zeta(M, sign_exp)


def jacobi_identity_sum(N: int, ctx: FFCtx) -> int:
    """sum_{i=1}^{N-1} J_i(1)^2 as a rational integer (requires q = 1 mod 2N)."""
    if (ctx.q - 1) % (2 * N):
        raise CharSumError(f"q = {ctx.q} is not 1 mod 2N = {2 * N}")
    total = CycInt.integer(2 * N, 0)
    for i in range(1, N):
        total = total + J_i(ctx, N, i) ** 2
    if not total.is_rational():
        raise CharSumError(f"sum of J_i(1)^2 is not rational: {total!r}")
    return total.to_int()


# ---------------------------------------------------------------------------
# the elliptic surface


def _check_surface(N: int, ctx: FFCtx) -> None:
    if N < 1:
        raise CharSumError("N must be positive")
    if math.gcd(ctx.q, 2 * N) != 1:
        raise CharSumError(f"q = {ctx.q} must be prime to 2N = {2 * N}")


def surface_count(N: int, ctx: FFCtx) -> int:
    """Affine points of Y^2 = X (X + 1) (X + t^N) over F_q, summed t by t.

    Fibres sharing the same t^N are counted once and reused.
    """
    _check_surface(N, ctx)
    chi2 = ctx.quadratic()
    X = ctx.elements()
    base = chi2[X] * chi2[ctx.add(X, 1)]
    seen: dict[int, int] = {}
    total = 0
    for u in ctx.power(X, N):
        u = int(u)
        if u not in seen:
            seen[u] = int(np.sum(base * chi2[ctx.add(X, u)] + 1))
        total += seen[u]
    return total


def fiber_count(u: int, ctx: FFCtx) -> int:
    """Affine points of Y^2 = X (X + 1) (X + u)."""
    chi2 = ctx.quadratic()
    X = ctx.elements()
    return int(np.sum(chi2[X] * chi2[ctx.add(X, 1)] * chi2[ctx.add(X, u)] + 1))


@dataclass(frozen=True)
class FiberType:
    kind: str  # good, split, nonsplit or additive
    trace: int | None = None


def classify_fiber(u: int, ctx: FFCtx) -> FiberType:
    """Reduction type of Y^2 = X (X + 1) (X + u) from its roots 0, -1, -u.

    A double root r with simple root s gives a node with tangent slopes
    +-sqrt(r - s): split when r - s is a square in F_q.
    """
    roots = [0, ctx.minus_one(), int(ctx.neg(u))]
    distinct = set(roots)
    if len(distinct) == 3:
        return FiberType("good")
    if len(distinct) == 1:
        return FiberType("additive", 0)
    r = next(x for x in distinct if roots.count(x) == 2)
    s = next(x for x in distinct if roots.count(x) == 1)
    disc = int(ctx.sub(r, s))
    chi2 = ctx.quadratic()
    if chi2[disc] == 1:
        return FiberType("split", 1)
    return FiberType("nonsplit", -1)


def _fiber_data(N: int, ctx: FFCtx) -> dict[int, int]:
    """u -> number of t in F_q with t^N = u."""
    us = ctx.power(ctx.elements(), N)
    vals, cnt = np.unique(us, return_counts=True)
    return {int(u): int(c) for u, c in zip(vals, cnt)}


def lefschetz_trace(N: int, ctx: FFCtx) -> int:
    """-sum over t in F_q of the Frobenius trace on the fibre at t.

    Good fibres contribute q + 1 - #E_t (projective count); multiplicative
    fibres +-1 by splitting type.  The fibres are grouped by u = t^N.
    """
    _check_surface(N, ctx)
    total = 0
    for u, mult in _fiber_data(N, ctx).items():
        ft = classify_fiber(u, ctx)
        if ft.kind == "good":
            tr = ctx.q + 1 - (fiber_count(u, ctx) + 1)
        else:
            tr = ft.trace
        total -= mult * tr
    return total


def trace_from_surface(N: int, ctx: FFCtx) -> int:
    """The same trace assembled from the whole-surface count.

    Tr = #E(F_q) + #good - sum_bad #E_t(affine) - (q+1) #good - sum_bad tr_t,
    with the bad fibres (t = 0 and t^N = 1) classified by the sign of
    chi^N(-1), i.e. whether -1 is a square.
    """
    _check_surface(N, ctx)
    q = ctx.q
    chi2 = ctx.quadratic()
    minus_one_square = chi2[ctx.minus_one()] == 1
    X = ctx.elements()
    t = ctx.elements()
    tN = ctx.power(t, N)
    bad = (t == 0) | (tN == 1)
    n_good = int(np.sum(~bad))
    n_roots = int(np.sum(tN == 1))
    bad_affine = 0
    for u in (0, 1):
        c = int(np.sum(chi2[X] * chi2[ctx.add(X, 1)] * chi2[ctx.add(X, u)] + 1))
        bad_affine += c * (1 if u == 0 else n_roots)
    bad_trace = 1 + (1 if minus_one_square else -1) * n_roots
    return surface_count(N, ctx) + n_good - bad_affine - (q + 1) * n_good - bad_trace


# ---------------------------------------------------------------------------
# local factors


@dataclass
class LocalFactor:
    N: int
    p: int
    traces: dict[int, int]
    poly: list[int]  # highest degree first
    checks: dict = field(default_factory=dict)
    shape: str | None = None
    sign: int | None = None

    def as_dict(self):
        return {
            "N": self.N,
            "p": self.p,
            "traces": {str(k): v for k, v in self.traces.items()},
            "poly": self.poly,
            "checks": self.checks,
            "shape": self.shape,
            "sign": self.sign,
        }


def newton_to_poly(power_sums: Sequence[int], D: int) -> list[Fraction]:
    """Monic polynomial (highest first) with the given power sums s_1..s_D."""
    if len(power_sums) < D:
        raise CharSumError(f"need {D} power sums, got {len(power_sums)}")
    e = [Fraction(1)]
    for k in range(1, D + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * power_sums[i - 1]
        e.append(acc / k)
    return [(-1) ** k * e[k] for k in range(D + 1)]


def local_factor(N: int, p: int, degrees: Sequence[int] | None = None, weight: int = 3) -> LocalFactor:
    """Characteristic polynomial of Frobenius on the (N-1)-dimensional space W.

    Traces of Frob_(p^k) for k in ``degrees`` come from the fibre sums; the
    polynomial follows by Newton's identities.
    """
    if p % 2 == 0 or N % p == 0:
        raise CharSumError(f"p = {p} must be odd and prime to N = {N}")
    D = N - 1
    degrees = list(range(1, D + 1)) if degrees is None else sorted(set(degrees))
    missing = [k for k in range(1, D + 1) if k not in degrees]
    if missing:
        raise CharSumError(f"Newton reconstruction needs degrees 1..{D}; missing {missing}")
    traces = {}
    for k in degrees:
        traces[k] = lefschetz_trace(N, FFCtx(p, k))
    raw = newton_to_poly([traces[k] for k in range(1, D + 1)], D)
    integral = all(c.denominator == 1 for c in raw)
    poly = [int(c) for c in raw] if integral else [c for c in raw]
    from .derham import functional_equation_holds, weil_check

    w = p ** (weight - 1)
    checks = {"integrality": integral}
    if integral:
        checks["weil"] = weil_check(poly, w)
        checks["functional_equation"] = functional_equation_holds(poly, w)
        for k in degrees:
            if k > D:
                pk = sum(complex(r) ** k for r in np.roots([float(x) for x in poly]))
                checks[f"trace_degree_{k}"] = abs(pk.real - traces[k]) < 1e-6 * max(1, abs(traces[k]))
    lf = LocalFactor(N, p, traces, poly, checks)
    if integral and N == 5 and p % 5 in (2, 3):
        ok = poly[1:4] == [0, 0, 0] and abs(poly[4]) == p**4
        checks["shape_T4_pm_p4"] = ok
        lf.shape = "T^4 + c"
        lf.sign = 1 if poly[4] > 0 else -1
    return lf


# ---------------------------------------------------------------------------
# Davenport-Hasse and Weil's exponent


@dataclass
class DHResult:
    passed: bool
    lhs: CycInt
    rhs: CycInt
    order: int


def davenport_hasse_check(N: int, d: int, p: int, k: int, twist: int = 1) -> DHResult:
    """(J_(2,N/d))^(2k) over F_p = J_(2N',NN'/d)^2 over F_(p^k), with (p^k-1)/d = 2NN'/d.

    The base-field character is the norm-compatible one: chi_p(Norm x) =
    chi~(x)^N', realised by giving chi_p the generator Norm(gen).
    """
    if N % 2 == 0 or N < 1:
        raise CharSumError("N must be odd")
    if N % d:
        raise CharSumError(f"d = {d} does not divide N = {N}")
    if (p - 1) % N:
        raise CharSumError(f"p = {p} is not 1 mod N = {N}")
    big = FFCtx(p, k, twist)
    q = big.q
    M = (q - 1) // d
    if (q - 1) % (2 * N):
        raise CharSumError("q - 1 must be divisible by 2N")
    Nprime = (q - 1) // (2 * N)
    m_small = 2 * N // d
    # base field with generator Norm(gen): exponent tables re-indexed
    small = FFCtx(p, 1)
    g = big.norm_generator()
    if big.k > 1:
        # the norm lands in the prime field: the constant polynomial g
        g = int(big.digits[g][0])
    shift = int(small.log[g])  # g = small_gen^shift
    if math.gcd(shift, p - 1) != 1:
        raise FieldError("norm of the generator is not a generator of F_p")
    small = FFCtx(p, 1, shift)
    lhs = jacobi_sum(small, [2, N // d], m_small).value ** (2 * k)
    lhs = lhs.embed(M, Nprime)
    rhs = jacobi_sum(big, [2 * Nprime, N * Nprime // d], M).value ** 2
    return DHResult(lhs == rhs, lhs, rhs, M)


def omega_exponent(m: int, a: Sequence[int]) -> dict[int, Fraction]:
    """t -> sum_rho <t a_rho / m> over units t mod m (fractional parts)."""
    if m < 2:
        raise CharSumError("m must exceed 1")
    out = {}
    for t in range(1, m):
        if math.gcd(t, m) == 1:
            out[t] = sum((Fraction(t * x, m) % 1 for x in a), Fraction(0))
    return out
