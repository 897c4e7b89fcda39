"""Fast truncated power series arithmetic modulo a small prime power.

Used when Frobenius windows run into the thousands of terms.  Products go
through Kronecker substitution with GMP integers; inverses and N-th roots
use Newton iteration, so nothing divides by an index.  The Fermat forms are
built from sparse theta series:

    f_i = s * theta3^2 * psi^4 * (theta4 / theta3)^(4 i / N),   s = q^(1/2),

with theta3 = sum s^(n^2), theta4 = sum (-1)^n s^(n^2) and psi = sum_{n>=0}
s^(n(n+1)).  The exact constructors in :mod:`modforms` remain the reference;
the tests check both agree.
"""

from __future__ import annotations

import gmpy2
import numpy as np

from .qseries import FracSeries, ModPrimePower

_LIMIT = 2**31


class FastModError(ValueError):
    pass


def _check_mod(mod: int) -> None:
    if mod >= _LIMIT:
        raise FastModError(f"modulus {mod} too large for the fast path (needs < 2^31)")


def mulmod(a: np.ndarray, b: np.ndarray, n: int, mod: int) -> np.ndarray:
    """First n coefficients of a*b modulo mod; inputs are int64 residues."""
    a = a[:n]
    b = b[:n]
    if not len(a) or not len(b):
        return np.zeros(n, dtype=np.int64)
    # every product coefficient is below n * mod^2 < 2^128
    slot = 16
    A = _pack(a, slot)
    B = _pack(b, slot)
    C = gmpy2.mpz(A) * gmpy2.mpz(B)
    nbytes = slot * (len(a) + len(b))
    raw = np.frombuffer(int(C).to_bytes(nbytes, "little"), dtype=np.uint64).reshape(-1, 2)
    lo = raw[:n, 0]
    hi = raw[:n, 1]
    out = (hi % np.uint64(mod)) * np.uint64(pow(2, 64, mod)) % np.uint64(mod)
    out = (out + lo % np.uint64(mod)) % np.uint64(mod)
    res = np.zeros(n, dtype=np.int64)
    res[: len(out)] = out.astype(np.int64)
    return res


def _pack(a: np.ndarray, slot: int) -> int:
    buf = np.zeros((len(a), slot // 8), dtype=np.uint64)
    buf[:, 0] = a.astype(np.uint64)
    return int.from_bytes(buf.tobytes(), "little")


def invmod(f: np.ndarray, n: int, mod: int) -> np.ndarray:
    """Power series inverse of f (unit constant term) to n terms."""
    c0 = int(f[0]) % mod
    g = np.array([pow(c0, -1, mod)], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        fg = mulmod(f, g, k, mod)
        e = (-fg) % mod
        e[0] = (e[0] + 2) % mod
        g = mulmod(g, e, k, mod)
    return g


def inv_root(u: np.ndarray, N: int, n: int, mod: int) -> np.ndarray:
    """u^(-1/N) to n terms for u with constant term 1 and N a unit mod p."""
    if int(u[0]) % mod != 1:
        raise FastModError("inverse root needs constant term 1")
    invN = pow(N, -1, mod)
    h = np.array([1], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        hN = powmod(h, N, k, mod)
        e = (-mulmod(u, hN, k, mod)) % mod
        e[0] = (e[0] + 1) % mod
        corr = mulmod(h, e, k, mod) * invN % mod
        h2 = np.zeros(k, dtype=np.int64)
        h2[: len(h)] = h
        h = (h2 + corr) % mod
    return h


def powmod(f: np.ndarray, e: int, n: int, mod: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.int64)
    out[0] = 1 % mod
    base = np.zeros(n, dtype=np.int64)
    base[: min(n, len(f))] = f[:n] % mod
    while e:
        if e & 1:
            out = mulmod(out, base, n, mod)
        e >>= 1
        if e:
            base = mulmod(base, base, n, mod)
    return out


def _sparse(n: int, mod: int, kind: str) -> np.ndarray:
    out = np.zeros(n, dtype=np.int64)
    j = 0
    while True:
        idx = j * (j + 1) if kind == "psi" else j * j
        if idx >= n:
            break
        if kind == "psi":
            out[idx] = 1
        else:
            c = 1 if j == 0 else 2
            if kind == "theta4" and j % 2:
                c = -c
            out[idx] = c % mod
        j += 1
    return out


def fermat_forms_mod(N: int, hi: int, p: int, M: int) -> dict[int, FracSeries]:
    """f_1..f_{N-1} modulo p^M on the grid q^(1/2), known through index hi."""
    if N < 3 or N % 2 == 0:
        raise FastModError("N must be odd and at least 3")
    if p % 2 == 0 or N % p == 0:
        raise FastModError("p must be odd and prime to N")
    mod = p**M
    _check_mod(mod)
    n = hi  # coefficient of s^(j+1) comes from index j of the unit part
    th3 = _sparse(n, mod, "theta3")
    th4 = _sparse(n, mod, "theta4")
    psi = _sparse(n, mod, "psi")
    u = mulmod(th4, invmod(th3, n, mod), n, mod)
    h = inv_root(u, N, n, mod)
    root = mulmod(u, powmod(h, N - 1, n, mod), n, mod)  # u^(1/N)
    t = powmod(root, 4, n, mod)
    base = mulmod(powmod(th3, 2, n, mod), powmod(psi, 4, n, mod), n, mod)
    ring = ModPrimePower(p, M)
    forms = {}
    cur = base
    for i in range(1, N):
        cur = mulmod(cur, t, n, mod)
        forms[i] = FracSeries([int(x) for x in cur], 1, 2, hi, ring)
    return forms
