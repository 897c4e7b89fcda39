"""Explicit q-expansions: Eisenstein series, Delta, eta quotients and the
weight-3 forms on the index-N Fermat quotient group Phi0(N)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .qseries import QQ, FracSeries, SeriesError

mpq = gmpy2.mpq

HOLO_CLASSES = ("cusp", "modular", "weak-cusp", "weakly-exact", "weak")


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class FormRecord:
    series: FracSeries
    weight: int
    group: str
    b_eigen: int | None = None
    holo_class: str = "modular"
    name: str = ""

    def __post_init__(self):
        if self.holo_class not in HOLO_CLASSES:
            raise FormError(f"unknown holomorphy class {self.holo_class!r}")
        if self.holo_class == "cusp":
            s = self.series
            if not s.is_zero() and s.lo < 1:
                raise FormError("a cusp form must vanish at infinity")
        if self.b_eigen is not None and not self.group.startswith("Phi0("):
            raise FormError("B-eigenvalue labels only make sense on Phi0(N)")

    @property
    def level_N(self) -> int | None:
        if self.group.startswith("Phi0("):
            return int(self.group[5:-1])
        return None


def _grid_hi(order, m: int) -> int:
    """Largest grid index whose exponent is <= order (order in units of q)."""
    return math.floor(Fraction(order) * m)


def sigma(n: int, k: int = 1) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def _divisor_sums(limit: int, k: int = 1) -> list[int]:
    out = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dk = d**k
        for j in range(d, limit + 1, d):
            out[j] += dk
    return out


def product_series(factors: Iterable[tuple[int, int, Fraction]], hi: int, m: int = 1) -> FracSeries:
    """Prod (1 - c t^d)^e over the given (d, c, e) with c = +-1, known to t^hi.

    Uses the logarithmic derivative: if P is the product then
    t P'/P = sum_K L(K) t^K with L(K) = -sum_{d | K} e d c^(K/d),
    and K P_K = sum_{j=1..K} L(j) P_{K-j}.
    """
    L = [mpq(0)] * (hi + 1)
    for d, c, e in factors:
        if d < 1:
            raise SeriesError("factor exponents must be positive")
        if d > hi:
            continue
        ed = mpq(Fraction(e)) * d
        sign = 1
        for K in range(d, hi + 1, d):
            sign *= c
            L[K] -= ed * sign
    P = [mpq(1)]
    Lnz = [(j, L[j]) for j in range(1, hi + 1) if L[j]]
    for K in range(1, hi + 1):
        s = mpq(0)
        for j, lj in Lnz:
            if j > K:
                break
            pk = P[K - j]
            if pk:
                s += lj * pk
        P.append(s / K)
    return FracSeries(P, 0, m, hi, QQ)


def eta_quotient(spec: Sequence[tuple], order, weight: int = 0, group: str = "",
                 holo_class: str = "weak", max_denominator: int = 720) -> FormRecord:
    """Prod over (c, e) of eta(c*tau)^e, known through q^order.

    eta(c tau) = q^(c/24) prod_{n>=1} (1 - q^(c n)); scales c and exponents e
    are rationals.  The grid is the least one housing every q^(c n) and the
    leading exponent sum c e / 24.
    """
    entries = [(Fraction(c), Fraction(e)) for c, e in spec]
    if any(c <= 0 for c, _ in entries):
        raise FormError("eta scales must be positive")
    lead = sum(c * e for c, e in entries) / 24
    m = 1
    for c, _ in entries:
        m = math.lcm(m, c.denominator)
    m = math.lcm(m, lead.denominator)
    if m > max_denominator:
        raise FormError(f"grid q^(1/{m}) exceeds the allowed denominator {max_denominator}")
    lo = int(lead * m)
    hi = _grid_hi(order, m)
    rel = hi - lo
    if rel < 0:
        return FormRecord(FracSeries.zero(m, hi), weight, group, None, holo_class)
    factors = []
    for c, e in entries:
        step = int(c * m)
        n = 1
        while step * n <= rel:
            factors.append((step * n, 1, e))
            n += 1
    unit = product_series(factors, rel, m)
    return FormRecord(unit.shift(lo), weight, group, None, holo_class)


def delta(order) -> FracSeries:
    return eta_quotient([(1, 24)], order, 12, "SL2(Z)", "cusp").series


def ramanujan_tau(n_max: int) -> list[int]:
    """[0, tau(1), ..., tau(n_max)]."""
    if n_max < 1:
        raise FormError("n_max must be at least 1")
    d = delta(n_max)
    out = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        c = d.coeff(n)
        if c.denominator != 1:
            raise FormError(f"tau({n}) is not an integer")
        out[n] = int(c)
    return out


# -2k/B_k for the two weights needed here
_EIS_CONST = {4: 240, 6: -504}


def eisenstein(k: int, order: int) -> FormRecord:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for k in {4, 6}."""
    if k % 2 or k < 4:
        raise FormError("Eisenstein series need even k >= 4")
    if k not in _EIS_CONST:
        raise FormError(f"only k in {sorted(_EIS_CONST)} are supported")
    c = _EIS_CONST[k]
    sig = _divisor_sums(order, k - 1)
    vals = [1] + [c * sig[n] for n in range(1, order + 1)]
    return FormRecord(FracSeries(vals, 0, 1, order), k, "SL2(Z)", None, "modular", f"E{k}")


def weak_e4_delta(order: int = 10) -> FormRecord:
    """E4^6/Delta - 1464 E4^3, the weight-12 weakly exact form with q^-1 leading."""
    e4 = eisenstein(4, order + 1).series
    dinv = delta(order + 2).inverse()
    f = (e4**6) * dinv - (e4**3).scale(1464)
    f = f.truncate(order)
    if f.coeff(0) != 0:
        raise FormError("constant term of the weak form does not vanish")
    return FormRecord(f, 12, "SL2(Z)", None, "weakly-exact", "weak-e4-delta")


def dim_s3(N: int) -> int:
    """dim S_3(Phi0(N)) = (N-1)/2 (Shimura's formula with g = 0, no elliptic points)."""
    if N < 3 or N % 2 == 0:
        raise FormError("N must be odd and at least 3")
    return (N - 1) // 2


def theta_series(hi: int) -> FracSeries:
    """sum_{n in Z} q^(n^2/2) on the grid q^(1/2), known through index hi."""
    d = {}
    n = 0
    while n * n <= hi:
        d[n * n] = 1 if n == 0 else 2
        n += 1
    return FracSeries.from_dict(d, 2, hi, QQ)


@dataclass
class FermatSuite:
    N: int
    order: Fraction
    theta1: FracSeries
    lambda_tilde: FracSeries
    lam: FracSeries
    t: FracSeries
    x_pow: FracSeries  # x^N = -16 lambda_tilde
    y_pow: FracSeries  # y^N = 16 (1 - lambda_tilde)
    forms: dict[int, FormRecord] = field(default_factory=dict)

    def basis(self) -> list[FormRecord]:
        return [self.forms[i] for i in sorted(self.forms)]

    def x(self) -> FracSeries:
        return self.x_pow.pow_rational(Fraction(1, self.N))

    def y(self) -> FracSeries:
        return self.y_pow.pow_rational(Fraction(1, self.N))


def _half_products(hi: int, odd_sign: int, odd_exp, even_sign: int, even_exp) -> FracSeries:
    """Prod_n (1 - a s^(2n-1))^e1 (1 - b s^(2n))^e2 with s = q^(1/2)."""
    factors = []
    for n in range(1, hi + 2):
        if 2 * n - 1 <= hi and odd_exp:
            factors.append((2 * n - 1, odd_sign, odd_exp))
        if 2 * n <= hi and even_exp:
            factors.append((2 * n, even_sign, even_exp))
    return product_series(factors, hi, 2)


def fermat_suite(N: int, order) -> FermatSuite:
    """theta_1, lambda~, lambda, the Hauptmodul t and f_1..f_{N-1} through q^order."""
    if N < 3 or N % 2 == 0:
        raise FormError("N must be odd and at least 3")
    order = Fraction(order)
    hi = _grid_hi(order, 2)
    # 16 (1 - lambda~) = s^-1 prod (1 + s^(2n-1))^8 (1 + s^(2n))^-8; keep one extra term
    # because of the s^-1 in front
    ext = hi + 2
    y_pow = _half_products(ext, -1, 8, -1, -8).shift(-1)
    x_pow = _half_products(ext, 1, 8, -1, -8).shift(-1)
    lambda_tilde = x_pow.scale(mpq(-1, 16))
    lam = _half_products(hi, -1, -8, -1, 8).shift(1).scale(16)
    tN = _half_products(hi, 1, 8, 1, 0) * _half_products(hi, -1, -8, 1, 0)
    t = tN.pow_rational(Fraction(1, N))
    if t.m != 2:
        raise FormError(f"t landed on grid q^(1/{t.m}) instead of q^(1/2)")
    theta1 = theta_series(hi) ** 2
    inv = y_pow.inverse()
    base = (theta1**3) * inv
    forms = {}
    half = (N - 1) // 2
    ti = FracSeries.one(2)
    for i in range(1, N):
        ti = (ti * t).truncate(hi)
        f = (base * ti).truncate(hi)
        if f.lo != 1 or f.coeff(1) != 1:
            raise FormError(f"f_{i} does not start with q^(1/2)")
        cls = "cusp" if i <= half else "weakly-exact"
        forms[i] = FormRecord(f, 3, f"Phi0({N})", i, cls, f"f{i}")
    return FermatSuite(N, order, theta1.truncate(hi), lambda_tilde.truncate(hi), lam,
                       t.truncate(hi), x_pow.truncate(hi), y_pow.truncate(hi), forms)


ETA_F1 = [(Fraction(1, 2), Fraction(4, 3)), (1, -2), (2, Fraction(20, 3))]
ETA_F2 = [(Fraction(1, 2), Fraction(20, 3)), (1, -10), (2, Fraction(28, 3))]


def phi0_3_eta_forms(order) -> tuple[FormRecord, FormRecord]:
    """The two weight-3 eta quotients on Phi0(3)."""
    f1 = eta_quotient(ETA_F1, order, 3, "Phi0(3)", "cusp")
    f2 = eta_quotient(ETA_F2, order, 3, "Phi0(3)", "weak-cusp")
    return (
        FormRecord(f1.series, 3, "Phi0(3)", 1, "cusp", "f1"),
        FormRecord(f2.series, 3, "Phi0(3)", 2, "weakly-exact", "f2"),
    )
