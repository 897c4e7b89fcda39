"""Congruences from the Frobenius action on de Rham classes of q-expansions.

A weakly exact form is determined modulo the image of (q d/dq)^(k-1); on
expansions that image is exactly the set of series whose n-th coefficient
lies in n^(k-1) Z_p.  Everything here is phrased in those terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import Constraint, InconsistentError, UnderdeterminedError, charpoly, solve_congruences
from .modforms import FormRecord
from .padic import INF, angle, balanced, residue_valuation, valuation
from .qseries import CuspContext, FracSeries, ModPrimePower, TruncationError


class CongruenceError(ValueError):
    pass


class PrecisionShortfall(CongruenceError):
    pass


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
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


@dataclass
class WeakExactResult:
    passed: bool
    witnesses: list[int]
    checked: list[int]


def weakly_exact_check(f: FormRecord | FracSeries, k: int | None = None) -> WeakExactResult:
    """Principal part in the image of theta^(k-1): a_n in n^(k-1) Z for n < 0.

    For every prime l dividing n this asks ord_l(a_n) >= (k-1) ord_l(n).
    """
    series = f.series if isinstance(f, FormRecord) else f
    if k is None:
        if not isinstance(f, FormRecord):
            raise CongruenceError("weight required for a bare series")
        k = f.weight
    if isinstance(series.ring, ModPrimePower):
        raise CongruenceError("weak exactness is checked on exact expansions")
    bad, checked = [], []
    for n, c in series.items():
        if n >= 0:
            break
        checked.append(n)
        for ell in _prime_factors(n):
            if valuation(c, ell) < (k - 1) * valuation(n, ell):
                bad.append(n)
                break
    return WeakExactResult(not bad, bad, checked)


@dataclass
class CongruenceRow:
    n: int
    s: int
    required: int
    attained: float
    passed: bool

    def as_dict(self):
        att = self.attained
        return {
            "n": self.n,
            "s": self.s,
            "required": self.required,
            "attained": "inf" if att == INF else int(att),
            "pass": self.passed,
        }


@dataclass
class CongruenceReport:
    p: int
    k: int
    H: list[int]
    rows: list[CongruenceRow]
    strengthen: bool = False
    note: str = "a(n) = 0 for n not an integer; H lists coefficients from the top degree down"
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def failures(self) -> list[CongruenceRow]:
        return [r for r in self.rows if not r.passed]

    def as_dict(self):
        return {
            "p": self.p,
            "k": self.k,
            "H": [int(h) for h in self.H],
            "strengthen": self.strengthen,
            "pass": self.passed,
            "note": self.note,
            "rows": [r.as_dict() for r in self.rows],
            **self.extra,
        }


def asd_check(f: FormRecord | FracSeries, H: Sequence[int], k: int, p: int, n_max: int,
              strengthen: bool = False, ctx: CuspContext | None = None,
              n_min: int | None = None) -> CongruenceReport:
    """Check sum_j p^((k-1)j) A_j a(n/p^j) = 0 mod p^((k-1) ord_p(n)) for n <= n_max.

    ``H`` holds the coefficients of H(T) = sum A_j T^j from the top degree
    down, e.g. [1, -tau(p), p^11] for T^2 - tau(p) T + p^11.  With
    ``strengthen`` the modulus gains p^<k-1>.  Indices are grid indices of
    the expansion (q^(n/m)); a nontrivial gamma in ``ctx`` is applied as the
    factor gamma^(n (p^j - 1)/(p - 1)).
    """
    series = f.series if isinstance(f, FormRecord) else f
    A = [int(h) for h in reversed(list(H))]
    if series.hi is not None and n_max > series.hi:
        raise CongruenceError(
            f"expansion known to index {series.hi}, congruences requested to {n_max}"
        )
    extra_digits = angle(k - 1, p) if strengthen else 0
    exact = not isinstance(series.ring, ModPrimePower)
    gamma, mod, M = 1, None, None
    if ctx is not None and ctx.gamma % ctx.p**ctx.M != 1:
        exact = False
    if exact:
        for n, c in series.items():
            if n > n_max:
                break
            if valuation(c, p) < 0:
                raise CongruenceError(f"coefficient at index {n} is not {p}-integral")
    else:
        M = ctx.M if ctx is not None else series.ring.M
        if not isinstance(series.ring, ModPrimePower):
            series = series.reduce_mod(p, M)
        M = min(M, series.ring.M)
        mod = p**M
        gamma = ctx.gamma % mod if ctx is not None else 1
    lo = n_min if n_min is not None else (series.lo if not series.is_zero() else 1)
    rows = []
    for n in range(lo, n_max + 1):
        if n == 0:
            continue
        s = valuation(n, p)
        total = 0
        pj = 1
        for j, a in enumerate(A):
            if n % pj == 0 and a:
                b = series.coeff(n // pj)
                term = p ** ((k - 1) * j) * a * b
                if not exact and gamma != 1:
                    term *= pow(gamma, n * (pj - 1) // (p - 1), mod)
                total += term
            pj *= p
        required = (k - 1) * s + extra_digits
        if exact:
            att = valuation(total, p)
        else:
            att = residue_valuation(int(total) % mod, p, M)
            if att >= M:
                att = M
            if required > M:
                raise PrecisionShortfall(
                    f"index {n} needs valuation {required} but only p^{M} is carried"
                )
        rows.append(CongruenceRow(n, s, required, att, att >= required))
    return CongruenceReport(p, k, list(H), rows, strengthen)


# ---------------------------------------------------------------------------
# Frobenius matrix


def _product_precision(vals: Sequence[tuple[int, int]]) -> int:
    """Precision of a product of p-adic numbers given (precision, valuation) pairs."""
    if not vals:
        return INF
    return min(P + sum(v for j, (_, v) in enumerate(vals) if j != i) for i, (P, _) in enumerate(vals))


@dataclass
class FrobReport:
    p: int
    k: int
    M: int
    attained: int
    window: tuple[int, int]
    matrix: list[list[int]]
    precisions: list[list[int]]
    permutation: dict[int, int] | None
    alphas: dict[int, int] | None
    alpha_valuations: dict[int, int] | None
    alpha_precisions: dict[int, int] | None
    completed: list[int]
    charpoly_residues: list[int]
    charpoly_precision: int
    charpoly: list[int] | None
    charpoly_candidates: list[list[int]]
    checks: dict
    residual: int
    log: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def trace(self) -> tuple[int, int]:
        """(trace mod p^P, P)."""
        if self.alphas is not None:
            fixed = [i for i, j in self.permutation.items() if i == j]
            P = min((self.alpha_precisions[i] for i in fixed), default=self.M)
            return sum(self.alphas[i] for i in fixed) % self.p**P, P
        P = min(self.precisions[i][i] for i in range(self.dim))
        return sum(self.matrix[i][i] for i in range(self.dim)) % self.p**P, P

    def cycles(self) -> list[list[int]]:
        seen, out = set(), []
        for i in sorted(self.permutation):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.permutation[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.permutation[j]
            out.append(cyc)
        return out

    def alpha_product(self, indices: Sequence[int] | None = None) -> tuple[int, int]:
        """(product of the alphas mod p^P, P) over the given labels (default all)."""
        idx = sorted(self.alphas) if indices is None else list(indices)
        P = _product_precision([(self.alpha_precisions[i], self.alpha_valuations[i]) for i in idx])
        P = min(P, self.M + sum(self.alpha_valuations[i] for i in idx))
        val = 1
        for i in idx:
            val *= self.alphas[i]
        return val % self.p**P, P

    def as_dict(self):
        out = {
            "p": self.p,
            "k": self.k,
            "M": self.M,
            "attained_precision": self.attained,
            "window": list(self.window),
            "matrix": self.matrix,
            "entry_precisions": self.precisions,
            "charpoly_mod": self.charpoly_residues,
            "charpoly_precision": self.charpoly_precision,
            "charpoly": self.charpoly,
            "charpoly_candidates": self.charpoly_candidates,
            "trace": dict(zip(("value", "precision"), self.trace())),
            "checks": self.checks,
            "residual": self.residual,
            "log": self.log,
        }
        if self.permutation is not None:
            prod, P = self.alpha_product()
            out["permutation"] = {str(i): j for i, j in self.permutation.items()}
            out["alphas"] = {
                str(i): {
                    "value": a,
                    "valuation": self.alpha_valuations[i],
                    "precision": self.alpha_precisions[i],
                    "completed_by_pairing": i in self.completed,
                }
                for i, a in self.alphas.items()
            }
            out["alpha_product"] = {"value": prod, "precision": P}
            out["alpha_inverse_side"] = self.inverse_side()
        return out

    def inverse_side(self) -> dict[str, dict]:
        """p^(k-1)/alpha_i: the scalar with a_{ip}(pj) = (p^(k-1)/alpha_i) a_i(j)."""
        out = {}
        p, w_exp = self.p, self.k - 1
        for i, a in self.alphas.items():
            v, P = self.alpha_valuations[i], self.alpha_precisions[i]
            if v >= P or v > w_exp:
                continue
            u = a // p**v
            prec = P - v + (w_exp - v)
            inv = pow(u, -1, p ** (P - v))
            out[str(i)] = {
                "valuation": w_exp - v,
                "value": p ** (w_exp - v) * inv % p**prec,
                "precision": prec,
            }
        return out


def _mod_basis(basis: Sequence[FormRecord | FracSeries], p: int, M: int) -> list[FracSeries]:
    out = []
    for b in basis:
        s = b.series if isinstance(b, FormRecord) else b
        if isinstance(s.ring, ModPrimePower) and (s.ring.p != p or s.ring.M < M):
            raise CongruenceError(f"basis element reduced in {s.ring}, need Zp {p} {M}")
        out.append(s.reduce_mod(p, M))
    return out


def _is_holomorphic(b) -> bool:
    return isinstance(b, FormRecord) and b.holo_class in ("cusp", "modular")


def default_window(basis: Sequence[FracSeries], p: int, top: int = 200) -> tuple[int, int]:
    lo = min(s.lo for s in basis if not s.is_zero())
    return (-p * abs(lo) if lo < 0 else 1, top)


def frobenius_constraints(phi_i: FracSeries, basis: list[FracSeries], k: int, p: int, M: int,
                          window: tuple[int, int], columns: Sequence[int] | None = None,
                          extra: int = 0) -> list[Constraint]:
    """Rows expressing phi~(f_i) = sum_j C_ij f_j modulo the theta^(k-1) image.

    Without ``extra`` only indices n with p | n constrain: for p not dividing
    n the coefficient n^(k-1) is a unit and the image contains every t^n.
    For a holomorphic f_i the relation holds modulo p^extra times the image
    (extra = <k-1>), which adds rows at every index.
    """
    cols = list(range(len(basis))) if columns is None else list(columns)
    rows = []
    lo, hi = window
    for n in range(lo, hi + 1):
        if n == 0 or (n % p and not extra):
            continue
        e = min(M, (k - 1) * valuation(n, p) + extra)
        try:
            a = [int(basis[j].coeff(n)) for j in cols]
            b = int(phi_i.coeff(n))
        except TruncationError as exc:
            raise CongruenceError(f"window index {n} beyond the basis expansions") from exc
        rows.append(Constraint(a, b, e, n))
    return rows


def frobenius_matrix(basis: Sequence[FormRecord | FracSeries], ctx: CuspContext, k: int,
                     window: tuple[int, int] | None = None, use_eigen: bool = True,
                     strengthen: bool = True, enlarge: bool = True,
                     complete_pairs: bool = False, integral_charpoly: bool = True) -> FrobReport:
    """Recover C with phi~(f_i) = sum_j C_ij f_j modulo theta^(k-1)(Z_p((t))).

    When every basis element carries a B-eigenvalue label on Phi0(N) the
    system decouples: phi~(f_i) = alpha_i f_(i p mod N).  ``strengthen`` uses
    the extra p^<k-1> available for holomorphic rows.  ``complete_pairs``
    fills a unit alpha_i that the expansion leaves undetermined from
    alpha_i alpha_(N-i) = p^(k-1); this needs i p = i mod N and is flagged.
    Pass ``integral_charpoly=False`` when the basis spans only part of the de
    Rham space (e.g. Delta alone): its characteristic polynomial then has no
    integer lift to look for.
    """
    p, M = ctx.p, ctx.M
    series = _mod_basis(basis, p, M)
    if window is None:
        window = default_window(series, p)
    labels = N = None
    if use_eigen and all(isinstance(b, FormRecord) and b.b_eigen is not None for b in basis):
        N = basis[0].level_N
        labels = [b.b_eigen for b in basis]
        if sorted(labels) != list(range(1, N)):
            labels = N = None
    extra = angle(k - 1, p) if strengthen else 0
    extras = [extra if _is_holomorphic(b) else 0 for b in basis]
    phis = [s.frob_twist(ctx, k) for s in series]
    args = (series, phis, labels, N, k, p, M, extras, complete_pairs, integral_charpoly)
    try:
        return _solve_frobenius(*args, window)
    except CongruenceError:
        if not enlarge:
            raise
        lo, hi = window
        avail = min(s.hi for s in series)
        wider = (lo, min(avail, 2 * hi))
        if wider == window:
            raise
        rep = _solve_frobenius(*args, wider)
        rep.log.insert(0, f"window enlarged from {window} to {wider}")
        return rep


def _solve_full(series, phis, k, p, M, extras, window):
    d = len(series)
    matrix, precs, residual, log = [], [], 0, []
    for idx in range(d):
        rows = frobenius_constraints(phis[idx], series, k, p, M, window, extra=extras[idx])
        try:
            sol = solve_congruences(rows, d, p, M)
        except (UnderdeterminedError, InconsistentError) as exc:
            raise CongruenceError(f"row {idx}: {exc}") from exc
        matrix.append(list(sol.values))
        precs.append(list(sol.precisions))
        residual = max(residual, sol.residual)
        log.extend(f"row {idx}: {line}" for line in sol.log)
    return matrix, precs, residual, log


def _solve_frobenius(series, phis, labels, N, k, p, M, extras, complete_pairs, integral,
                     window) -> FrobReport:
    d = len(series)
    w = p ** (k - 1)
    log: list[str] = []
    checks: dict = {}
    if labels is None:
        matrix, precs, residual, log = _solve_full(series, phis, k, p, M, extras, window)
        attained = min(min(r) for r in precs)
        if attained <= 0:
            raise CongruenceError("no digits of the Frobenius matrix are determined; enlarge the window")
        matrix = [[x % p**attained for x in row] for row in matrix]
        cp_prec = attained
        cp_res = [c % p**cp_prec for c in charpoly(matrix)]
        permutation = alphas = avals = aprec = None
        completed: list[int] = []
    else:
        pos = {lab: idx for idx, lab in enumerate(labels)}
        permutation, alphas, avals, aprec = {}, {}, {}, {}
        residual = 0
        missing = []
        for idx, i in enumerate(labels):
            j = i * p % N
            permutation[i] = j
            rows = frobenius_constraints(phis[idx], series, k, p, M, window, [pos[j]], extras[idx])
            try:
                sol = solve_congruences(rows, 1, p, M)
            except UnderdeterminedError:
                missing.append(i)
                continue
            except InconsistentError as exc:
                raise CongruenceError(f"alpha_{i}: no {p}-adic solution ({exc})") from exc
            if sol.precisions[0] <= 0:
                missing.append(i)
                continue
            P = sol.precisions[0]
            alphas[i] = sol.values[0] % p**P
            aprec[i] = P
            avals[i] = min(residue_valuation(alphas[i], p, P), P)
            residual = max(residual, sol.residual)
            log.extend(f"f{i}: {line}" for line in sol.log)
        completed = []
        for i in missing:
            partner = N - i
            if not complete_pairs or permutation[i] != i or partner not in alphas:
                raise CongruenceError(
                    f"alpha_{i}: no pivot in the window; the expansion of f{i} does not "
                    "determine it (locally exact at this cusp?)"
                )
            v, P = avals[partner], aprec[partner]
            if v >= P or v > k - 1:
                raise CongruenceError(f"alpha_{partner} too imprecise to complete alpha_{i}")
            u = alphas[partner] // p**v
            prec = P - v + (k - 1 - v)
            alphas[i] = p ** (k - 1 - v) * pow(u, -1, p ** (P - v)) % p**prec
            aprec[i] = prec
            avals[i] = min(residue_valuation(alphas[i], p, prec), prec)
            completed.append(i)
            log.append(f"alpha_{i} completed from alpha_{i} alpha_{partner} = p^{k - 1}")
        matrix = [[0] * d for _ in range(d)]
        precs = [[M] * d for _ in range(d)]
        for i, j in permutation.items():
            matrix[pos[i]][pos[j]] = alphas[i]
            precs[pos[i]][pos[j]] = aprec[i]
        attained = min(aprec.values())
        # characteristic polynomial: product over cycles of (T^r - prod alpha)
        cp = [1]
        cp_prec = M * d
        report_stub = FrobReport(p, k, M, attained, tuple(window), matrix, precs, permutation,
                                 alphas, avals, aprec, completed, [], 0, None, [], {}, residual)
        for cyc in report_stub.cycles():
            c, P = report_stub.alpha_product(cyc)
            cp_prec = min(cp_prec, P)
            factor = [1] + [0] * (len(cyc) - 1) + [-c]
            cp = _polymul(cp, factor)
        cp_res = [x % p**cp_prec for x in cp]
        half = (N - 1) // 2
        checks["cusp_alpha_valuation"] = all(
            avals[i] >= k - 1 for i in alphas if i <= half
        )
        try:
            fm, fp, _, _ = _solve_full(series, phis, k, p, M, extras, window)
            ok = all(
                fm[r][c] % p ** fp[r][c] == 0
                for r in range(d) for c in range(d)
                if labels[c] != labels[r] * p % N
            )
            checks["permutation_consistent"] = ok
        except CongruenceError as exc:
            checks["permutation_consistent"] = None
            log.append(f"full solve skipped: {exc}")
    cands = []
    if integral:
        cands = reconstruct_charpoly(cp_res, p, cp_prec, w)
        checks.update(frobenius_checks(cp_res, cands, p, cp_prec, k))
    checks["residual_ok"] = residual == 0
    return FrobReport(p, k, M, attained, tuple(window), matrix, precs, permutation, alphas, avals,
                      aprec, completed, cp_res, cp_prec, cands[0] if len(cands) == 1 else None,
                      cands, checks, residual, log)


def trace_from_root(alpha: int, P: int, p: int, k: int) -> tuple[int, int]:
    """alpha + p^(k-1)/alpha for a root alpha known mod p^P with 0 < ord alpha <= k-1.

    Returns (balanced value, precision).  In the ordinary case the unit root
    line is invisible in the expansion at infinity, but the trace still
    follows from the non-unit root.
    """
    v = min(residue_valuation(alpha % p**P, p, P), P)
    if v >= P or v > k - 1:
        raise CongruenceError("root too imprecise or of too large valuation")
    u = alpha // p**v % p ** (P - v)
    prec = min(P, P - v + (k - 1 - v))
    other = p ** (k - 1 - v) * pow(u, -1, p ** (P - v))
    return balanced((alpha + other) % p**prec, p**prec), prec


def _polymul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def reconstruct_charpoly(residues: list[int], p: int, prec: int, w: int) -> list[list[int]]:
    """Integer lifts (highest degree first) of a characteristic polynomial known mod p^prec.

    The roots have absolute value sqrt(w), so the coefficient of T^(D-j) is at
    most C(D, j) w^(j/2) in size and is lifted directly when that bound is
    below p^prec / 2.  For even D the rest follows from the functional
    equation c_i = eps w^(D/2 - i) c_(D-i) (c_i the coefficient of T^i); every
    eps = +-1 consistent with the residues is returned.
    """
    D = len(residues) - 1
    mod = p**prec
    res = list(reversed(residues))  # res[i] = coefficient of T^i
    direct = {}
    for i in range(D + 1):
        j = D - i
        bound = math.comb(D, j) * (math.isqrt(w**j) + 1)
        if 2 * bound < mod:
            direct[i] = balanced(res[i], mod)
    if D % 2:
        if len(direct) == D + 1:
            return [[direct[i] for i in range(D, -1, -1)]]
        return []
    cands = []
    for eps in (1, -1):
        c = []
        for i in range(D + 1):
            if i in direct:
                c.append(direct[i])
            elif D - i in direct and i <= D // 2:
                c.append(eps * w ** (D // 2 - i) * direct[D - i])
            else:
                break
        if len(c) != D + 1:
            continue
        h = list(reversed(c))
        if not all((a - r) % mod == 0 for a, r in zip(h, residues)):
            continue
        if functional_equation_holds(h, w) and h not in cands:
            cands.append(h)
    return cands


def frobenius_checks(residues: list[int], cands: list[list[int]], p: int, prec: int, k: int) -> dict:
    D = len(residues) - 1
    w = p ** (k - 1)
    mod = p**prec
    det = (-1) ** D * residues[-1] % mod
    checks = {"charpoly_determined": len(cands) == 1}
    if D % 2 == 0:
        target = w ** (D // 2)
        checks["det_is_pm_power"] = (det - target) % mod == 0 or (det + target) % mod == 0
    if len(cands) == 1:
        h = cands[0]
        checks["integrality"] = all(isinstance(x, int) for x in h)
        checks["functional_equation"] = functional_equation_holds(h, w)
        checks["weil"] = weil_check(h, w)
    return checks


def functional_equation_holds(h: list[int], w: int) -> bool:
    """Roots stable under a -> w/a: c_i = eps w^(D/2 - i) c_(D-i) with eps = +-1."""
    D = len(h) - 1
    if D % 2:
        return False
    c = [h[D - i] for i in range(D + 1)]  # c[i] = coefficient of T^i
    half = w ** (D // 2)
    if abs(c[0]) != half * abs(c[D]):
        return False
    eps = 1 if c[0] == half * c[D] else -1
    return all(c[i] == eps * w ** (D // 2 - i) * c[D - i] for i in range(D // 2 + 1))


def weil_check(h: list[int], w: int, tol: float = 1e-9) -> bool:
    """All complex roots have absolute value sqrt(w) to relative tolerance tol."""
    roots = np.roots([float(x) for x in h])
    target = math.sqrt(w)
    return bool(np.all(np.abs(np.abs(roots) - target) <= tol * target))


# ---------------------------------------------------------------------------


def eigen_congruence_check(N: int, p: int, report: FrobReport, basis: Sequence[FormRecord],
                           n_max: int) -> CongruenceReport:
    """p^(k-1) a_i(j) = alpha_i a_{ip mod N}(p j) mod p^((k-1)(ord_p j + 1) + ord_p alpha_i).

    Equivalent to the form with p^(k-1)/alpha_i on the left.  alpha_i is only
    known mod p^P, so the difference is meaningful up to valuation
    P + ord_p a_{ip}(pj) (and the carried precision M of the expansions);
    a row whose requirement exceeds that raises :class:`PrecisionShortfall`.
    """
    if report.alphas is None:
        raise CongruenceError("report carries no eigen-decoupled alphas")
    k, M = report.k, report.M
    mod = p**M
    series = {b.b_eigen: b.series for b in basis}
    rows = []
    for i in range(1, N):
        j_to = report.permutation[i]
        alpha = report.alphas[i]
        va, P = report.alpha_valuations[i], report.alpha_precisions[i]
        fi, fj = series[i], series[j_to]
        for j in range(1, n_max + 1):
            s = valuation(j, p)
            required = (k - 1) * (s + 1) + va
            b = _as_residue(fj.coeff(p * j), p, M)
            cap = min(M, P + residue_valuation(b, p, M))
            if required > cap:
                raise PrecisionShortfall(
                    f"i={i}, j={j}: needs valuation {required} but alpha_{i} (known mod p^{P}) "
                    f"and the expansions (mod p^{M}) only support {cap}"
                )
            lhs = p ** (k - 1) * _as_residue(fi.coeff(j), p, M)
            att = residue_valuation((lhs - alpha * b) % mod, p, M)
            att = min(att, cap)
            row = CongruenceRow(j, s, required, att, att >= required)
            row.n = (i, j)
            rows.append(row)
    rep = CongruenceReport(p, k, [], rows)
    rep.note = "rows indexed by (i, j); p^(k-1) a_i(j) - alpha_i a_(ip mod N)(pj)"
    rep.extra = {"alpha": {str(i): report.alphas[i] for i in report.alphas},
                 "alpha_inverse_side": report.inverse_side()}
    return rep


def _as_residue(c, p: int, M: int) -> int:
    if isinstance(c, int):
        return c % p**M
    q = Fraction(int(c.numerator), int(c.denominator))
    return q.numerator * pow(q.denominator, -1, p**M) % p**M
