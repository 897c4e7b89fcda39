"""Acceptance criteria.  Each test prints one line with its verdict and runtime."""

import math
import random
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asdcong.charsums import (
    davenport_hasse_check,
    jacobi_identity_sum,
    jacobi_sum,
    lefschetz_trace,
    local_factor,
)
from asdcong.crossval import fermat_basis_mod, resolve_twist
from asdcong.derham import asd_check, eigen_congruence_check, frobenius_matrix
from asdcong.finitefield import FFCtx
from asdcong.modforms import (
    delta,
    eisenstein,
    fermat_suite,
    phi0_3_eta_forms,
    ramanujan_tau,
    weak_e4_delta,
)
from asdcong.padic import residue_valuation, valuation
from asdcong.qseries import CuspContext, FracSeries

HALF = [Fraction(k, 2) for k in range(1, 5)]


def report(label, ok, start, detail=""):
    print(f"[criterion {label}] {'PASS' if ok else 'FAIL'} {time.perf_counter() - start:.2f}s {detail}")


# 1 ---------------------------------------------------------------------------
@pytest.mark.criterion("1", 1)
def test_c1_golden_expansions():
    start = time.perf_counter()
    f1, f2 = phi0_3_eta_forms(2)
    c1 = [f1.series.coeff_q(e) for e in HALF]
    c2 = [f2.series.coeff_q(e) for e in HALF]
    w = weak_e4_delta(3).series
    cw = [w.coeff(n) for n in (-1, 1, 2, 3)]
    ok = (
        c1 == [1, Fraction(-4, 3), Fraction(8, 9), Fraction(-176, 81)]
        and c2 == [1, Fraction(-20, 3), Fraction(200, 9), Fraction(-4720, 81)]
        and cw == [1, -142236, 51123200, 39826861650]
    )
    report("1", ok, start)
    assert ok
    assert time.perf_counter() - start < 1


# 2 ---------------------------------------------------------------------------
@pytest.mark.criterion("2", 5)
def test_c2_construction_equivalence():
    start = time.perf_counter()
    suite = fermat_suite(3, 25)
    f1, f2 = phi0_3_eta_forms(25)
    ok = suite.forms[1].series.agrees(f1.series, upto_q=25) and suite.forms[2].series.agrees(f2.series, upto_q=25)
    ok = ok and suite.forms[1].series.hi >= 50 and f1.series.hi >= 50
    report("2", ok, start, "to q^25")
    assert ok
    assert time.perf_counter() - start < 5


# 3 ---------------------------------------------------------------------------
@pytest.mark.criterion("3", 10)
def test_c3_weight12_asd():
    start = time.perf_counter()
    f = weak_e4_delta(170)
    tau = ramanujan_tau(13)
    ok = True
    for p in (11, 13):
        H = [1, -tau[p], p**11]
        rep = asd_check(f, H, 12, p, p * p)
        row = next(r for r in rep.rows if r.n == p * p)
        inner = f.series.coeff(p * p) - tau[p] * f.series.coeff(p) + p**11 * f.series.coeff(1)
        ok = ok and rep.passed and row.required == 22 and valuation(inner, p) >= 11
    report("3", ok, start, "p in {11, 13}, n <= p^2")
    assert ok
    assert time.perf_counter() - start < 10


# 4 ---------------------------------------------------------------------------
@pytest.mark.criterion("4", 30)
def test_c4_phi0_3_paired_congruences():
    start = time.perf_counter()
    p, M, W = 5, 10, 650
    basis = fermat_basis_mod(3, W, p, M)
    rep = frobenius_matrix(basis, CuspContext.build(2, p, M), 3, (1, W))
    prod, P = rep.alpha_product()
    eig = eigen_congruence_check(3, p, rep, basis, 50)
    ok = (
        rep.alpha_valuations == {1: 2, 2: 0}
        and rep.permutation == {1: 2, 2: 1}
        and P >= 6
        and (prod - 25) % p**P == 0
        and eig.passed
    )
    report("4", ok, start, f"alpha1 alpha2 = 25 mod 5^{P}, eigen rows {len(eig.rows)}")
    assert ok
    assert time.perf_counter() - start < 30


# 5 ---------------------------------------------------------------------------
@pytest.mark.criterion("5", 30)
def test_c5_phi0_3_three_term():
    start = time.perf_counter()
    suite = fermat_suite(3, 30)
    f1, f2 = suite.forms[1], suite.forms[2]
    ok = True
    for p in (7, 13):
        lf = local_factor(3, p)
        res = resolve_twist(lf.poly, [f1, f2], p, 3, 60)
        ok = ok and res.resolved is not None
        A_p = res.resolved * -lf.poly[1]
        chi3 = 1 if p % 3 == 1 else -1
        H = [1, -A_p, chi3 * p * p]
        ok = ok and asd_check(f2, H, 3, p, 60).passed
        ok = ok and asd_check(f1, H, 3, p, 60, strengthen=True).passed
    report("5", ok, start, "A_7 = -2, A_13 = -22 after sign resolution")
    assert ok
    assert time.perf_counter() - start < 30


# 6 ---------------------------------------------------------------------------
@pytest.mark.criterion("6", 60)
def test_c6_trace_identity():
    start = time.perf_counter()
    ok = True
    for N, q in [(3, 7), (3, 13), (3, 19), (5, 11), (5, 31)]:
        F = FFCtx(q)
        ok = ok and lefschetz_trace(N, F) == jacobi_identity_sum(N, F)
    report("6", ok, start)
    assert ok
    assert time.perf_counter() - start < 60


# 7 ---------------------------------------------------------------------------
@pytest.mark.criterion("7a", 300)
@pytest.mark.parametrize("p", [3, 7])
def test_c7_local_factor_shape(p):
    start = time.perf_counter()
    lf = local_factor(5, p)
    ok = lf.poly[1:4] == [0, 0, 0] and abs(lf.poly[4]) == p**4 and lf.sign in (1, -1)
    ok = ok and lf.checks["shape_T4_pm_p4"]
    report("7a", ok, start, f"p={p}: T^4 {'+' if lf.sign > 0 else '-'} {p}^4")
    assert ok
    assert time.perf_counter() - start < 300


def _frobenius_phi0_5(p, M, W):
    basis = fermat_basis_mod(5, W, p, M)
    rep = frobenius_matrix(basis, CuspContext.build(2, p, M), 3, (1, W))
    prod, P = rep.alpha_product()
    lf = local_factor(5, p)
    ok = (
        rep.permutation == {i: i * p % 5 for i in range(1, 5)}
        and tuple(rep.alpha_valuations[i] for i in range(1, 5)) == (2, 2, 0, 0)
        and P > 0
        and ((prod - p**4) % p**P == 0 or (prod + p**4) % p**P == 0)
        and rep.charpoly == lf.poly
    )
    return ok, prod, P


@pytest.mark.criterion("7b", 300)
def test_c7_frobenius_phi0_5_p7():
    start = time.perf_counter()
    ok, prod, P = _frobenius_phi0_5(7, 10, 400)
    report("7b", ok, start, f"p=7, product of alphas = {prod} mod 7^{P}")
    assert ok
    assert time.perf_counter() - start < 300


@pytest.mark.criterion("7c", 300)
@pytest.mark.xfail(
    strict=True,
    reason="p = 3 lies outside the range p > 3 where the congruences are proved; "
    "alpha_4 has no 3-adic solution (see the decisions ledger)",
)
def test_c7_frobenius_phi0_5_p3():
    start = time.perf_counter()
    try:
        ok, _, _ = _frobenius_phi0_5(3, 12, 800)
    except ValueError as exc:
        report("7c", False, start, f"p=3: {exc}")
        raise
    report("7c", ok, start, "p=3")
    assert ok


# 8 ---------------------------------------------------------------------------
@pytest.mark.criterion("8", 120)
def test_c8_davenport_hasse():
    start = time.perf_counter()
    ok = all(davenport_hasse_check(*c).passed for c in [(3, 1, 7, 2), (3, 3, 7, 2), (5, 1, 11, 2)])
    report("8", ok, start)
    assert ok
    assert time.perf_counter() - start < 120


# 9 ---------------------------------------------------------------------------
coeff = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def series(draw):
    m = draw(st.sampled_from([1, 2, 3]))
    lo = draw(st.integers(-3, 3))
    n = draw(st.integers(1, 10))
    vals = draw(st.lists(coeff, min_size=n, max_size=n))
    vals[0] = vals[0] or Fraction(1)
    return FracSeries(vals, lo, m, lo + n - 1 + draw(st.integers(0, 3)))


@settings(max_examples=200, deadline=None, derandomize=True)
@given(series(), series(), series())
def _ring_and_leibniz(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert (a * (b + c)).agrees(a * b + a * c)
    assert (a * b).theta_deriv().agrees(a.theta_deriv() * b + a * b.theta_deriv())


@pytest.mark.criterion("9", 120)
def test_c9_property_suites():
    start = time.perf_counter()
    _ring_and_leibniz()
    e4, e6 = eisenstein(4, 50).series, eisenstein(6, 50).series
    ok = (e4**3 - e6**2).agrees(delta(50).scale(1728), upto_q=50)
    for N in (3, 5, 7):
        s = fermat_suite(N, 30)
        ok = ok and (s.lam - (FracSeries.one(2) - s.t**N)).truncate_q(30).is_zero()
        ok = ok and (s.x() ** N - s.y() ** N).truncate_q(30).agrees(FracSeries([-16], 0, 1, 30))
    rng = random.Random(9)
    fields = [(p, k) for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 97, 101, 151, 199)
              for k in (1, 2, 3, 4) if p**k <= 200]
    done = 0
    while done < 100:
        p, k = rng.choice(fields)
        F = FFCtx(p, k)
        m = rng.choice([d for d in range(2, F.q) if (F.q - 1) % d == 0])
        a = [rng.randrange(1, m), rng.randrange(1, m)]
        res = jacobi_sum(F, a, m)
        if res.degenerate:
            continue
        ok = ok and res.value * res.value.conj() == F.q
        ok = ok and all(abs(abs(z) ** 2 - F.q) <= 1e-9 * F.q for z in res.value.embeddings())
        done += 1
    report("9", ok, start, "200 ring/Leibniz cases, 100 Jacobi sums")
    assert ok
    assert time.perf_counter() - start < 120
