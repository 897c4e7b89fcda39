"""Truncated Laurent series in fractional powers of q.

A :class:`FracSeries` stores coefficients on the grid ``t = q^(1/m)``:
index ``n`` stands for ``q^(n/m)``.  Coefficients live either in the
rationals (``QQ``, backed by gmpy2 ``mpq``) or in ``Z/p^M``
(:class:`ModPrimePower`).  Truncation is explicit: coefficients with index
above ``hi`` are *unknown*, and every operation computes the exact index up
to which its result is guaranteed.  ``hi=None`` marks an exact (finite)
Laurent polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from operator import mul
from typing import Iterable, Iterator

import gmpy2

from .padic import PadicError, hensel_gamma, to_residue

mpq = gmpy2.mpq
_ZERO = mpq(0)
_ONE = mpq(1)


class SeriesError(ValueError):
    pass


class RingMismatchError(SeriesError):
    pass


class TruncationError(SeriesError):
    """Raised when a coefficient beyond the known precision is requested."""


class NonIntegralError(SeriesError):
    def __init__(self, index, value, p):
        self.index = index
        self.value = value
        self.p = p
        super().__init__(
            f"coefficient at index {index} ({value}) has denominator divisible by {p}"
        )


@dataclass(frozen=True)
class ExactRational:
    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class ModPrimePower:
    p: int
    M: int

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def __str__(self):
        return f"Zp {self.p} {self.M}"


QQ = ExactRational()
Ring = ExactRational | ModPrimePower


def _min_hi(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_hi(h, s):
    return None if h is None else h + s


@dataclass(frozen=True)
class CuspContext:
    """Expansion data at one cusp: width m, delta with delta*t^m = q, and the
    Frobenius twist gamma at prime p and precision M."""

    m: int
    delta: Fraction
    p: int
    M: int
    gamma: int

    def __post_init__(self):
        p, M = self.p, self.M
        if math.gcd(p, self.m) != 1:
            raise SeriesError(f"p={p} divides cusp width {self.m}")
        d = Fraction(self.delta)
        if d.numerator % p == 0 or d.denominator % p == 0:
            raise SeriesError(f"delta={d} is not a {p}-adic unit")
        mod = p**M
        if self.gamma % p != 1 % p:
            raise SeriesError("gamma must be 1 mod p")
        target = pow(to_residue(d, p, M), p - 1, mod)
        if pow(self.gamma, self.m, mod) != target:
            raise SeriesError("gamma^m != delta^(p-1) mod p^M")

    @classmethod
    def build(cls, m: int, p: int, M: int, delta=1) -> "CuspContext":
        try:
            gamma = hensel_gamma(m, delta, p, M).residue
        except PadicError as exc:
            raise SeriesError(str(exc)) from exc
        return cls(m, Fraction(delta), p, M, gamma)

    @property
    def ring(self) -> ModPrimePower:
        return ModPrimePower(self.p, self.M)


class FracSeries:
    """Immutable truncated Laurent series on the grid q^(1/m)."""

    __slots__ = ("m", "lo", "coeffs", "hi", "ring")

    def __init__(self, coeffs: Iterable, lo: int = 0, m: int = 1, hi=None, ring: Ring = QQ):
        if m < 1:
            raise SeriesError("grid denominator m must be positive")
        if isinstance(ring, ModPrimePower):
            mod = ring.modulus
            vals = []
            for c in coeffs:
                if not isinstance(c, int):
                    if isinstance(c, (Fraction,)) or (hasattr(c, "denominator") and c.denominator != 1):
                        raise RingMismatchError(
                            "rational coefficient in a mod p^M series; use reduce_mod"
                        )
                    c = int(c)
                vals.append(c % mod)
            zero = 0
        else:
            vals = [mpq(c) for c in coeffs]
            zero = _ZERO
        if hi is not None and len(vals) > max(0, hi - lo + 1):
            keep = max(0, hi - lo + 1)
            if any(vals[keep:]):
                raise SeriesError("coefficients given beyond the truncation index")
            vals = vals[:keep]
        # strip leading zeros
        start = 0
        while start < len(vals) and vals[start] == zero:
            start += 1
        vals = vals[start:]
        lo += start
        if not vals:
            lo = 0
        elif hi is None:
            while vals and vals[-1] == zero:
                vals.pop()
        else:
            vals.extend([zero] * (hi - lo + 1 - len(vals)))
        self.m = m
        self.lo = lo
        self.coeffs = tuple(vals)
        self.hi = hi
        self.ring = ring

    # ----- constructors -------------------------------------------------

    @classmethod
    def monomial(cls, c, n: int, m: int = 1, hi=None, ring: Ring = QQ) -> "FracSeries":
        return cls([c], lo=n, m=m, hi=hi, ring=ring)

    @classmethod
    def one(cls, m: int = 1, ring: Ring = QQ) -> "FracSeries":
        return cls([1], 0, m, None, ring)

    @classmethod
    def zero(cls, m: int = 1, hi=None, ring: Ring = QQ) -> "FracSeries":
        return cls([], 0, m, hi, ring)

    @classmethod
    def from_dict(cls, d: dict, m: int = 1, hi=None, ring: Ring = QQ) -> "FracSeries":
        if not d:
            return cls.zero(m, hi, ring)
        lo, top = min(d), max(d)
        vals = [d.get(n, 0) for n in range(lo, top + 1)]
        return cls(vals, lo, m, hi, ring)

    # ----- access -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.hi is None

    @property
    def zero_value(self):
        return 0 if isinstance(self.ring, ModPrimePower) else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def top(self) -> int:
        """Largest index carried in ``coeffs`` (lo-1 for the zero series)."""
        return self.lo + len(self.coeffs) - 1

    def coeff(self, n: int):
        if self.hi is not None and n > self.hi:
            raise TruncationError(f"index {n} beyond known precision {self.hi} (m={self.m})")
        if n < self.lo or n > self.top:
            return self.zero_value
        return self.coeffs[n - self.lo]

    __getitem__ = coeff

    def coeff_q(self, e) -> object:
        """Coefficient of q^e for rational e; zero off the grid."""
        e = Fraction(e)
        x = e * self.m
        if self.hi is not None and x > self.hi:
            raise TruncationError(f"q^{e} beyond known precision")
        if x.denominator != 1:
            return self.zero_value
        return self.coeff(int(x))

    def items(self) -> Iterator[tuple[int, object]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lo + i, c

    def leading(self):
        if not self.coeffs:
            raise SeriesError("zero series has no leading term")
        return self.coeffs[0]

    def truncate(self, hi: int) -> "FracSeries":
        if self.hi is not None and hi > self.hi:
            raise TruncationError(f"cannot extend precision from {self.hi} to {hi}")
        vals = self.coeffs[: max(0, hi - self.lo + 1)] if self.coeffs else ()
        return FracSeries(vals, self.lo, self.m, hi, self.ring)

    def truncate_q(self, order) -> "FracSeries":
        """Truncate to exponents <= order (in units of q)."""
        return self.truncate(math.floor(Fraction(order) * self.m))

    def __repr__(self):
        shown = ", ".join(f"{n}:{c}" for n, c in list(self.items())[:6])
        return f"FracSeries(m={self.m}, lo={self.lo}, hi={self.hi}, ring={self.ring}, {{{shown}}})"

    def __eq__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        if self.ring != other.ring:
            return False
        a, b = _align(self, other)
        return a.lo == b.lo and a.coeffs == b.coeffs and a.hi == b.hi

    def __hash__(self):
        return hash((self.m, self.lo, self.coeffs, self.hi, self.ring))

    def agrees(self, other: "FracSeries", upto_q=None) -> bool:
        """Coefficientwise equality on the common known range (or up to q^upto_q)."""
        a, b = _align(self, other)
        hi = _min_hi(a.hi, b.hi)
        if upto_q is not None:
            hi = _min_hi(hi, math.floor(Fraction(upto_q) * a.m))
        if hi is None:
            return a.lo == b.lo and a.coeffs == b.coeffs
        lo = min(a.lo if a.coeffs else hi, b.lo if b.coeffs else hi)
        return all(a.coeff(n) == b.coeff(n) for n in range(lo, hi + 1))

    # ----- grid handling ------------------------------------------------

    def rescale(self, m2: int) -> "FracSeries":
        """Re-express on the finer grid q^(1/m2); m2 must be a multiple of m."""
        if m2 == self.m:
            return self
        if m2 % self.m:
            raise SeriesError(f"grid {m2} is not a refinement of {self.m}")
        s = m2 // self.m
        z = self.zero_value
        vals = []
        for c in self.coeffs:
            vals.append(c)
            vals.extend([z] * (s - 1))
        if vals:
            del vals[len(vals) - (s - 1):]
        hi = None if self.hi is None else (self.hi + 1) * s - 1
        return FracSeries(vals, self.lo * s, m2, hi, self.ring)

    def coarsen(self) -> "FracSeries":
        """Move to the coarsest grid carrying all nonzero coefficients."""
        g = self.m
        for n, _ in self.items():
            g = math.gcd(g, n)
            if g == 1:
                return self
        if self.hi is not None:
            # the next unknown index must stay an unknown grid point
            g = math.gcd(g, self.hi + 1)
        if g <= 1:
            return self
        d = {n // g: c for n, c in self.items()}
        hi = None if self.hi is None else (self.hi + 1) // g - 1
        return FracSeries.from_dict(d, self.m // g, hi, self.ring)

    # ----- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "FracSeries":
        if isinstance(other, FracSeries):
            return other
        if isinstance(self.ring, ModPrimePower):
            if not isinstance(other, int):
                raise RingMismatchError("only integer scalars combine with a mod p^M series")
        return FracSeries([other], 0, self.m, None, self.ring)

    def __neg__(self):
        vals = [-c for c in self.coeffs]
        return FracSeries(vals, self.lo, self.m, self.hi, self.ring)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = _align(self, other)
        hi = _min_hi(a.hi, b.hi)
        if a.is_zero() and b.is_zero():
            return FracSeries.zero(a.m, hi, a.ring)
        los = [s.lo for s in (a, b) if s.coeffs]
        lo = min(los)
        top = max(s.top for s in (a, b) if s.coeffs)
        if hi is not None:
            top = min(top, hi)
        z = a.zero_value
        vals = [z] * (top - lo + 1) if top >= lo else []
        for s in (a, b):
            for i, c in enumerate(s.coeffs):
                n = s.lo + i
                if n > top:
                    break
                vals[n - lo] = vals[n - lo] + c
        return FracSeries(vals, lo, a.m, hi, a.ring)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "FracSeries":
        if isinstance(self.ring, ModPrimePower):
            if not isinstance(c, int):
                raise RingMismatchError("only integer scalars act on a mod p^M series")
            vals = [c * x for x in self.coeffs]
        else:
            c = mpq(c)
            vals = [c * x for x in self.coeffs]
        return FracSeries(vals, self.lo, self.m, self.hi, self.ring)

    def shift(self, k: int) -> "FracSeries":
        """Multiply by t^k."""
        return FracSeries(self.coeffs, self.lo + k, self.m, _add_hi(self.hi, k), self.ring)

    def __mul__(self, other):
        if not isinstance(other, FracSeries):
            return self.scale(other)
        return mul_series(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def inverse(self, prec: int | None = None) -> "FracSeries":
        """Multiplicative inverse; leading coefficient must be a unit.

        ``prec`` is the number of known terms after the leading one and is
        required only for exact (polynomial) inputs.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero series")
        if self.hi is None:
            if prec is None:
                if len(self.coeffs) == 1:
                    return FracSeries([self._inv_scalar(self.coeffs[0])], -self.lo, self.m, None, self.ring)
                raise SeriesError("inverse of a polynomial needs an explicit precision")
            rel = prec
        else:
            rel = self.hi - self.lo
        c0inv = self._inv_scalar(self.coeffs[0])
        if rel > _NEWTON_MIN:
            unit = FracSeries(self.coeffs[: rel + 1], 0, self.m, rel, self.ring).scale(c0inv)
            g = _newton_inv_root(unit, 1, rel).scale(c0inv)
            return FracSeries(g.coeffs, -self.lo, self.m, -self.lo + rel, self.ring)
        f = list(self.coeffs[: rel + 1])
        f.extend([self.zero_value] * (rel + 1 - len(f)))
        g = [c0inv]
        modular = isinstance(self.ring, ModPrimePower)
        mod = self.ring.modulus if modular else None
        for n in range(1, rel + 1):
            s = sum(map(mul, f[1 : n + 1], reversed(g)))
            v = -s * c0inv
            if modular:
                v %= mod
            g.append(v)
        return FracSeries(g, -self.lo, self.m, -self.lo + rel, self.ring)

    def _inv_scalar(self, c):
        if isinstance(self.ring, ModPrimePower):
            try:
                return pow(c, -1, self.ring.modulus)
            except ValueError:
                raise SeriesError(f"leading coefficient {c} is not a unit mod {self.ring.p}") from None
        return 1 / mpq(c)

    def __truediv__(self, other):
        if isinstance(other, FracSeries):
            return self * other.inverse()
        return self.scale(self._inv_scalar(other) if isinstance(self.ring, ModPrimePower) else 1 / mpq(other))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return self.pow_rational(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = FracSeries.one(self.m, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ----- operators used by the congruence machinery --------------------

    def pow_rational(self, r, m_out: int | None = None, prec: int | None = None) -> "FracSeries":
        """t^(r*lo) * (1+u)^r for a series t^lo * (1+u) with leading coefficient 1.

        The unit part is expanded with the power recurrence
        g_n = (1/n) sum_{k=1..n} ((r+1)k - n) f_k g_{n-k}, which reproduces the
        binomial series term for term.  The output grid is enlarged to house a
        fractional leading exponent.
        """
        if isinstance(self.ring, ModPrimePower):
            raise RingMismatchError("pow_rational needs exact rational coefficients")
        r = Fraction(r)
        if self.is_zero():
            raise SeriesError("rational power of the zero series")
        if self.coeffs[0] != 1:
            raise SeriesError(
                f"leading coefficient is {self.coeffs[0]}, not 1; normalise before taking powers"
            )
        lead = r * Fraction(self.lo, self.m)
        need = math.lcm(self.m, lead.denominator)
        if m_out is None:
            m_out = need
        elif m_out % need:
            raise SeriesError(
                f"exponent {lead} of the leading term is not on the grid q^(1/{m_out})"
            )
        if self.hi is None:
            if r.denominator == 1 and r >= 0:
                return (self ** int(r)).rescale(m_out)
            if prec is None:
                raise SeriesError("rational power of a polynomial needs an explicit precision")
            rel = prec
        else:
            rel = self.hi - self.lo
        if rel > _NEWTON_MIN:
            unit = _newton_power(FracSeries(self.coeffs[: rel + 1], 0, self.m, rel, QQ), r, rel)
            return unit.rescale(m_out).shift(int(lead * m_out))
        f = list(self.coeffs[: rel + 1])
        f.extend([_ZERO] * (rel + 1 - len(f)))
        rq = mpq(r.numerator, r.denominator)
        rp1 = rq + 1
        kf = [k * f[k] for k in range(rel + 1)]
        g = [_ONE]
        for n in range(1, rel + 1):
            rev = g[n - 1 :: -1]
            a = sum(map(mul, kf[1 : n + 1], rev))
            b = sum(map(mul, f[1 : n + 1], rev))
            g.append((rp1 * a - n * b) / n)
        unit = FracSeries(g, 0, self.m, rel, QQ).rescale(m_out)
        shift = lead * m_out
        return unit.shift(int(shift))

    def theta_deriv(self, iterations: int = 1) -> "FracSeries":
        """Apply (q d/dq)^iterations: index n is multiplied by (n/m)^iterations."""
        if iterations < 0:
            raise SeriesError("iterations must be non-negative")
        if isinstance(self.ring, ModPrimePower):
            p, mod = self.ring.p, self.ring.modulus
            if self.m % p == 0:
                raise SeriesError(f"p={p} divides grid denominator m={self.m}")
            minv = pow(self.m, -iterations, mod)
            vals = [c * pow(self.lo + i, iterations, mod) * minv for i, c in enumerate(self.coeffs)]
        else:
            vals = [
                c * mpq(self.lo + i, self.m) ** iterations for i, c in enumerate(self.coeffs)
            ]
        return FracSeries(vals, self.lo, self.m, self.hi, self.ring)

    def frob_twist(self, ctx: CuspContext, k: int) -> "FracSeries":
        """sum b(n) t^n  ->  p^(k-1) sum gamma^n b(n) t^(np).

        The series is read as an expansion in the local parameter t of ``ctx``
        (identical to the q^(1/m) expansion when delta = 1).
        """
        p = ctx.p
        if self.m != ctx.m:
            raise SeriesError(f"series grid {self.m} differs from cusp width {ctx.m}")
        modular = isinstance(self.ring, ModPrimePower)
        if modular:
            if self.ring.p != p:
                raise RingMismatchError(f"series is mod {self.ring.p}, context prime is {p}")
            mod = self.ring.modulus
            gamma = ctx.gamma % mod
        else:
            if ctx.gamma % ctx.p**ctx.M != 1:
                raise SeriesError("a nontrivial gamma twist needs a mod p^M series")
            gamma = 1
        scale = p ** (k - 1)
        out = {}
        for n, c in self.items():
            if modular:
                out[n * p] = scale * c * pow(gamma, n, mod) % mod
            else:
                out[n * p] = scale * c
        hi = None if self.hi is None else (self.hi + 1) * p - 1
        return FracSeries.from_dict(out, self.m, hi, self.ring)

    def reduce_mod(self, p: int, M: int) -> "FracSeries":
        """Reduce an exact series with p-integral coefficients to Z/p^M."""
        ring = ModPrimePower(p, M)
        if isinstance(self.ring, ModPrimePower):
            if self.ring.p != p or self.ring.M < M:
                raise RingMismatchError(f"cannot reduce {self.ring} to {ring}")
            return FracSeries(self.coeffs, self.lo, self.m, self.hi, ring)
        mod = ring.modulus
        vals = []
        for i, c in enumerate(self.coeffs):
            den = int(c.denominator)
            if den % p == 0:
                raise NonIntegralError(self.lo + i, c, p)
            vals.append(int(c.numerator) * pow(den, -1, mod) % mod)
        return FracSeries(vals, self.lo, self.m, self.hi, ring)


# above this many terms, inverses and rational powers use Newton iteration
_NEWTON_MIN = 64


def _newton_inv_root(f: FracSeries, b: int, rel: int) -> FracSeries:
    """f^(-1/b) through index rel, for f with constant term 1 and lo = 0.

    h <- h + h (1 - f h^b) / b doubles the number of correct terms.
    """
    one = FracSeries.one(f.m, f.ring)
    inv_b = f._inv_scalar(b)
    h = one
    k = 0
    while k < rel:
        k = min(2 * k + 1, rel)
        fk = f.truncate(k)
        err = (one - (fk * h**b).truncate(k)).truncate(k)
        step = (h * err).truncate(k).scale(inv_b)
        h = FracSeries(list((h + step).coeffs), 0, f.m, None, f.ring)
    return FracSeries(h.coeffs, 0, f.m, rel, f.ring) if not h.is_zero() else h


def _newton_power(f: FracSeries, r: Fraction, rel: int) -> FracSeries:
    a, b = r.numerator, r.denominator
    if b == 1:
        h = f if a >= 0 else _newton_inv_root(f, 1, rel)
        return (h ** abs(a)).truncate(rel)
    h = _newton_inv_root(f, b, rel)
    if a < 0:
        return (h ** (-a)).truncate(rel)
    root = (f * h ** (b - 1)).truncate(rel)
    return (root**a).truncate(rel)


def _align(a: FracSeries, b: FracSeries) -> tuple[FracSeries, FracSeries]:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")
    if a.m == b.m:
        return a, b
    m = math.lcm(a.m, b.m)
    return a.rescale(m), b.rescale(m)


def mul_series(a: FracSeries, b: FracSeries) -> FracSeries:
    a, b = _align(a, b)
    ring = a.ring
    if a.is_zero() or b.is_zero():
        hi = _min_hi(_add_hi(a.hi, b.lo if b.coeffs else 0), _add_hi(b.hi, a.lo if a.coeffs else 0))
        return FracSeries.zero(a.m, hi, ring)
    lo = a.lo + b.lo
    hi = _min_hi(_add_hi(a.hi, b.lo), _add_hi(b.hi, a.lo))
    la, lb = len(a.coeffs), len(b.coeffs)
    nrel = la + lb - 1 if hi is None else min(la + lb - 1, hi - lo + 1)
    ca, cb = a.coeffs, b.coeffs
    modular = isinstance(ring, ModPrimePower)
    if modular:
        vals = _kronecker_mul(ca, cb, nrel, ring.modulus)
    elif min(la, lb) > 24:
        vals = _kronecker_exact(ca, cb, nrel)
    else:
        vals = []
        for r in range(nrel):
            i0 = max(0, r - lb + 1)
            i1 = min(r, la - 1)
            if i0 > i1:
                vals.append(_ZERO)
                continue
            seg = cb[r - i1 : r - i0 + 1]
            vals.append(sum(map(mul, ca[i0 : i1 + 1], reversed(seg))))
    return FracSeries(vals, lo, a.m, hi, ring)


def _pack(vals, nbytes: int) -> gmpy2.mpz:
    """Nonnegative integers as base-2^(8 nbytes) digits of one big integer."""
    raw = b"".join(int(v).to_bytes(nbytes, "little") for v in vals)
    return gmpy2.mpz(int.from_bytes(raw, "little"))


def _unpack(C, nbytes: int, count: int) -> list[int]:
    raw = int(C).to_bytes(max(nbytes * count, (C.bit_length() + 7) // 8), "little")
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") for i in range(count)]


def _slot_bytes(bound: int) -> int:
    return (int(bound).bit_length() + 8) // 8


def _kronecker_mul(ca, cb, nrel: int, mod: int) -> list[int]:
    """Product of residue vectors mod ``mod`` by packing into one big integer."""
    nb = _slot_bytes(mod * mod * min(len(ca), len(cb)))
    C = _pack(ca, nb) * _pack(cb, nb)
    return [x % mod for x in _unpack(C, nb, nrel)]


def _kronecker_exact(ca, cb, nrel: int) -> list:
    """Product of rational vectors: clear denominators, then three nonnegative
    Kronecker products (positive and negative parts, Karatsuba style)."""
    da, A = _common_denominator(ca)
    db, B = _common_denominator(cb)
    ap = [x if x > 0 else 0 for x in A]
    an = [-x if x < 0 else 0 for x in A]
    bp = [x if x > 0 else 0 for x in B]
    bn = [-x if x < 0 else 0 for x in B]
    ma = max(abs(x) for x in A)
    mb = max(abs(x) for x in B)
    nb = _slot_bytes(4 * ma * mb * min(len(A), len(B)))
    X = _pack(ap, nb) * _pack(bp, nb)
    Y = _pack(an, nb) * _pack(bn, nb)
    Z = _pack([x + y for x, y in zip(ap, an)], nb) * _pack([x + y for x, y in zip(bp, bn)], nb)
    x, y, z = (_unpack(T, nb, nrel) for T in (X, Y, Z))
    den = da * db
    return [mpq(2 * u + 2 * v - w, den) for u, v, w in zip(x, y, z)]


def _common_denominator(cs) -> tuple:
    d = gmpy2.mpz(1)
    for c in cs:
        d = gmpy2.lcm(d, c.denominator)
    return d, [c.numerator * (d // c.denominator) for c in cs]


def q_monomial(e, c=1, hi=None) -> FracSeries:
    """c * q^e for rational e."""
    e = Fraction(e)
    return FracSeries.monomial(c, e.numerator, e.denominator, hi)


def reduce_mod(f: FracSeries, p: int, M: int) -> FracSeries:
    return f.reduce_mod(p, M)


def pow_rational(f: FracSeries, r, m_out: int | None = None) -> FracSeries:
    return f.pow_rational(r, m_out)


def theta_deriv(f: FracSeries, iterations: int = 1) -> FracSeries:
    return f.theta_deriv(iterations)


def frob_twist(f: FracSeries, ctx: CuspContext, k: int) -> FracSeries:
    return f.frob_twist(ctx, k)
