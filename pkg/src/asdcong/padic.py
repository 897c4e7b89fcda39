"""p-adic helpers: valuations, Hensel roots, residues and rational reconstruction.

Everything here works at an explicit precision ``M`` supplied by the caller;
there is no global precision setting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

INF = math.inf


class PadicError(ValueError):
    pass


def valuation(x, p: int):
    """Exact p-adic valuation of an integer or rational; ``math.inf`` for 0."""
    if isinstance(x, int):
        num, den = x, 1
    else:
        q = gmpy2.mpq(x)
        num, den = int(q.numerator), int(q.denominator)
    if num == 0:
        return INF
    v = 0
    if num % p == 0:
        v = int(gmpy2.remove(gmpy2.mpz(num), p)[1])
    if den % p == 0:
        v -= int(gmpy2.remove(gmpy2.mpz(den), p)[1])
    return v


def residue_valuation(r: int, p: int, M: int) -> int:
    """Valuation of a residue mod p^M, capped at M (zero residue gives M)."""
    r %= p**M
    if r == 0:
        return M
    return int(gmpy2.remove(gmpy2.mpz(r), p)[1])


def to_residue(x, p: int, M: int) -> int:
    """Map a p-integral rational to Z/p^M."""
    q = gmpy2.mpq(x)
    mod = p**M
    den = int(q.denominator)
    if den % p == 0:
        raise PadicError(f"{x} is not {p}-integral")
    return int(q.numerator) * pow(den, -1, mod) % mod


def balanced(r: int, mod: int) -> int:
    """Symmetric representative of r mod ``mod`` in (-mod/2, mod/2]."""
    r %= mod
    return r - mod if 2 * r > mod else r


@dataclass(frozen=True)
class PadicScalar:
    p: int
    M: int
    residue: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.p**self.M)

    @property
    def val(self):
        if self.residue == 0:
            return INF
        return residue_valuation(self.residue, self.p, self.M)

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def balanced(self) -> int:
        return balanced(self.residue, self.modulus)

    def __int__(self):
        return self.residue


def hensel_gamma(m: int, delta, p: int, M: int) -> PadicScalar:
    """Return the unique gamma = 1 mod p with gamma^m = delta^(p-1) mod p^M.

    Newton iteration starting from 1; each step doubles the number of
    correct p-adic digits because m is a unit.
    """
    if m <= 0:
        raise PadicError("cusp width must be positive")
    if m % p == 0:
        raise PadicError(f"p={p} divides the cusp width m={m}")
    d = Fraction(delta)
    if d == 0 or valuation(d, p) != 0:
        raise PadicError(f"delta={delta} is not a {p}-adic unit")
    mod = p**M
    target = pow(to_residue(d, p, M), p - 1, mod)
    gamma = 1
    steps = max(1, M.bit_length() + 1)
    for _ in range(steps):
        f = (pow(gamma, m, mod) - target) % mod
        if f == 0:
            break
        fprime = m * pow(gamma, m - 1, mod) % mod
        gamma = (gamma - f * pow(fprime, -1, mod)) % mod
    if pow(gamma, m, mod) != target or gamma % p != 1 % p:
        raise PadicError(f"no root of gamma^{m} = {delta}^{p - 1} congruent to 1 mod {p}")
    return PadicScalar(p, M, gamma)


def _legendre(j: int, p: int) -> int:
    # ord_p(j!)
    total, pk = 0, p
    while pk <= j:
        total += j // pk
        pk *= p
    return total


def angle_scan_bound(k_minus_1: int, p: int) -> int:
    """Largest j that can attain inf{ j - ord_p(j!) : j >= k-1 }.

    Since ord_p(j!) <= (j-1)/(p-1), the objective is at least
    (j(p-2)+1)/(p-1), which exceeds k-1 (an upper bound for the infimum,
    attained at j = k-1 at worst) once j > (k-1)(p-1)/(p-2).  For p = 2 the
    objective is the binary digit sum, minimised by a power of two below 2(k-1).
    """
    base = (k_minus_1 + p) * p // (p - 1) + p
    if p == 2:
        return max(base, 2 * k_minus_1 + 2)
    return max(base, (k_minus_1 * (p - 1)) // (p - 2) + 2)


def angle(k_minus_1: int, p: int) -> int:
    """inf over j >= k-1 of ord_p(p^j / j!)."""
    if k_minus_1 < 1:
        raise PadicError("k-1 must be at least 1")
    hi = angle_scan_bound(k_minus_1, p)
    return min(j - _legendre(j, p) for j in range(k_minus_1, hi + 1))


def rational_reconstruct(r: int, mod: int):
    """Smallest-height fraction a/b with a = b*r mod ``mod`` (Wang's algorithm).

    Returns None when no fraction with |a|, b <= sqrt(mod/2) exists.
    """
    r %= mod
    bound = math.isqrt(mod // 2)
    r0, r1 = mod, r
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)
