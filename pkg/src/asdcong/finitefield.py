"""Finite fields F_(p^k) with discrete-log tables.

Elements are integers 0..q-1: the base-p digits are the coefficients of a
polynomial in x modulo a primitive polynomial of degree k (for k = 1, plain
residues mod p).  The generator is x (a primitive root when k = 1), raised
to ``twist`` if an alternative generator is wanted.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

MAX_TABLE = 2_000_000


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _factor(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _ONE(k: int) -> tuple[int, ...]:
    return (1,) + (0,) * (k - 1)


def _polymulmod(a, b, poly, p):
    """a * b modulo the monic x^k + sum poly[i] x^i, coefficients lowest first."""
    k = len(poly)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for d in range(2 * k - 2, k - 1, -1):
        c = prod[d] % p
        if c:
            for i, r in enumerate(poly):
                prod[d - k + i] -= c * r
    return tuple(c % p for c in prod[:k])


def _xpow(poly, e: int, p: int) -> tuple[int, ...]:
    k = len(poly)
    out = _ONE(k)
    base = (0, 1) + (0,) * (k - 2) if k > 1 else (0,)
    while e:
        if e & 1:
            out = _polymulmod(out, base, poly, p)
        e >>= 1
        if e:
            base = _polymulmod(base, base, poly, p)
    return out


class FFCtx:
    """The field of q = p^k elements with exp/log tables for a fixed generator."""

    def __init__(self, p: int, k: int = 1, twist: int = 1):
        if not is_prime(p) or p == 2:
            raise FieldError(f"p = {p} must be an odd prime")
        if k < 1:
            raise FieldError("extension degree must be positive")
        self.p, self.k = p, k
        self.q = q = p**k
        if q > MAX_TABLE:
            raise FieldError(f"q = {q} exceeds the table limit {MAX_TABLE}")
        if math.gcd(twist, q - 1) != 1:
            raise FieldError(f"twist {twist} is not prime to q - 1 = {q - 1}")
        self.twist = twist
        self.digits = np.array(
            [[(x // p**i) % p for i in range(k)] for x in range(q)], dtype=np.int64
        ).reshape(q, k)
        self._weights = np.array([p**i for i in range(k)], dtype=np.int64)
        self.modulus = self._find_primitive()
        base_exp = self._power_sequence()
        exp = base_exp[(np.arange(q - 1) * twist) % (q - 1)]
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.exp = exp
        self.log = log
        if not np.all(log[1:] >= 0):
            raise FieldError("generator table is incomplete")
        self.gen = int(exp[1]) if q > 2 else 1
        self._negtab = self.encode(-self.digits)
        chi2 = np.where(log % 2 == 0, 1, -1).astype(np.int64)
        chi2[0] = 0
        self._chi2 = chi2

    # -- construction -----------------------------------------------------

    def _find_primitive(self) -> tuple[int, ...]:
        """Lowest-first coefficients of a monic primitive polynomial (k > 1)."""
        p, k = self.p, self.k
        if k == 1:
            for g in range(2 if p > 2 else 1, p):
                if all(pow(g, (p - 1) // r, p) != 1 for r in _factor(p - 1)):
                    return (g,)
            return (1,)
        order = self.q - 1
        primes = _factor(order)
        for tail in itertools.product(range(p), repeat=k):
            if tail[0] == 0:
                continue
            poly = tuple(tail)
            # x has order q - 1 exactly when x^(q-1) = 1 and no maximal divisor works
            if _xpow(poly, order, p) != _ONE(k):
                continue
            if all(_xpow(poly, order // r, p) != _ONE(k) for r in primes):
                return poly
        raise FieldError("no primitive polynomial found")

    def _power_sequence(self, check: bool = False):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            g = self.modulus[0]
            out = np.empty(q - 1, dtype=np.int64)
            x = 1
            for i in range(q - 1):
                out[i] = x
                x = x * g % p
            return out
        # x^k = -sum modulus[i] x^i
        red = [(-c) % p for c in self.modulus]
        cur = [1] + [0] * (k - 1)
        out = np.empty(q - 1, dtype=np.int64)
        for i in range(q - 1):
            val = sum(c * p**j for j, c in enumerate(cur))
            if check and i > 0 and val == 1:
                return None
            out[i] = val
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c + top * r) % p for c, r in zip(cur, red)]
        if check and sum(c * p**j for j, c in enumerate(cur)) != 1:
            return None
        return out

    # -- arithmetic -------------------------------------------------------

    def encode(self, digits: np.ndarray) -> np.ndarray:
        digits = np.asarray(digits) % self.p
        out = digits[..., 0].copy()
        for i in range(1, self.k):
            out += digits[..., i] * self._weights[i]
        return out

    def add(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        if self.k == 1:
            return (a + b) % self.p
        da, db = self.digits[a], self.digits[b]
        out = (da[..., 0] + db[..., 0]) % self.p
        for i in range(1, self.k):
            out += (da[..., i] + db[..., i]) % self.p * self._weights[i]
        return out

    def neg(self, a):
        a = np.asarray(a)
        if self.k == 1:
            return (-a) % self.p
        return self._negtab[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        zero = (a == 0) | (b == 0)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where(zero, 0, out)

    def power(self, a, n: int):
        a = np.asarray(a)
        out = self.exp[(self.log[a] * n) % (self.q - 1)]
        if n == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def one(self) -> int:
        return 1

    def minus_one(self) -> int:
        return int(self.neg(1))

    def norm_generator(self) -> int:
        """gen^((q-1)/(p-1)): the image of the generator under the norm to F_p."""
        return int(self.exp[(self.q - 1) // (self.p - 1) % (self.q - 1)])

    def quadratic(self) -> np.ndarray:
        """Quadratic character values (-1, 0, 1) indexed by element."""
        return self._chi2

    def __repr__(self):
        return f"FFCtx(p={self.p}, k={self.k}, twist={self.twist})"
