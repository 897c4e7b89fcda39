"""Exact arithmetic in Z[zeta_M], elements stored reduced mod the M-th cyclotomic polynomial."""

from __future__ import annotations

import cmath
import math
from functools import lru_cache


class CyclotomicError(ValueError):
    pass


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """num / den for integer polynomials (lowest degree first), den monic, exact."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise CyclotomicError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Coefficients of Phi_M, lowest degree first."""
    if M < 1:
        raise CyclotomicError("cyclotomic order must be positive")
    num = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(M: int) -> tuple[tuple[int, ...], ...]:
    """x^j mod Phi_M for 0 <= j < M, as length-phi(M) vectors."""
    phi = cyclotomic_poly(M)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg else []
    for _ in range(M):
        rows.append(tuple(cur))
        if deg == 0:
            continue
        # multiply by x, then reduce the x^deg term with the monic Phi_M
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


class CycInt:
    """An element of Z[zeta_M]: sum coeffs[j] zeta^j with deg < phi(M)."""

    __slots__ = ("M", "coeffs")

    def __init__(self, M: int, coeffs=()):
        self.M = M
        deg = len(cyclotomic_poly(M)) - 1
        vals = [int(c) for c in coeffs]
        if len(vals) > deg:
            vals = _reduce(M, vals)
        self.coeffs = tuple(vals + [0] * (deg - len(vals)))

    @classmethod
    def from_exponents(cls, M: int, counts) -> "CycInt":
        """sum_e counts[e] zeta^e with exponents taken mod M."""
        folded = [0] * M
        for e, c in enumerate(counts):
            folded[e % M] += int(c)
        return cls(M, _reduce(M, folded))

    @classmethod
    def zeta(cls, M: int, e: int = 1) -> "CycInt":
        return cls.from_exponents(M, [0] * (e % M) + [1])

    @classmethod
    def integer(cls, M: int, n: int) -> "CycInt":
        return cls(M, [n])

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def _check(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt.integer(self.M, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.M != self.M:
            raise CyclotomicError(f"orders differ: {self.M} vs {other.M}; embed first")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CycInt(self.M, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.M, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        prod = [0] * max(1, 2 * self.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycInt(self.M, _reduce(self.M, prod))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise CyclotomicError("negative powers are not integral")
        out = CycInt.integer(self.M, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.M, other)
        return isinstance(other, CycInt) and self.M == other.M and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.M, self.coeffs))

    def __repr__(self):
        return f"CycInt({self.M}, {list(self.coeffs)})"

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise CyclotomicError(f"{self!r} is not a rational integer")
        return self.coeffs[0] if self.coeffs else 0

    def galois(self, t: int) -> "CycInt":
        """sigma_t: zeta -> zeta^t for t prime to M."""
        if math.gcd(t, self.M) != 1:
            raise CyclotomicError(f"{t} is not a unit mod {self.M}")
        counts = [0] * self.M
        for j, c in enumerate(self.coeffs):
            counts[j * t % self.M] += c
        return CycInt(self.M, _reduce(self.M, counts))

    def embed(self, M2: int, power: int | None = None) -> "CycInt":
        """Image under zeta_M -> zeta_M2^power (default power = M2 / M)."""
        if power is None:
            if M2 % self.M:
                raise CyclotomicError(f"Q(zeta_{self.M}) does not embed in Q(zeta_{M2})")
            power = M2 // self.M
        if (power * self.M) % M2:
            raise CyclotomicError("power map does not send zeta_M to an M-th root of unity")
        counts = [0] * M2
        for j, c in enumerate(self.coeffs):
            counts[j * power % M2] += c
        return CycInt(M2, _reduce(M2, counts))

    def embeddings(self) -> list[complex]:
        """Values under zeta -> exp(2 pi i t / M) for every unit t."""
        out = []
        for t in range(1, self.M + 1):
            if math.gcd(t, self.M) == 1:
                z = cmath.exp(2j * cmath.pi * t / self.M)
                out.append(sum(c * z**j for j, c in enumerate(self.coeffs)))
        return out

    def conj(self) -> "CycInt":
        return self.galois(-1 % self.M) if self.M > 2 else self


def _reduce(M: int, vals: list[int]) -> list[int]:
    table = _power_table(M)
    deg = len(cyclotomic_poly(M)) - 1
    out = [0] * deg
    for j, c in enumerate(vals):
        if c:
            row = table[j % M]
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
    return out
