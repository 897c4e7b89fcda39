import pytest

from asdcong.crossval import fermat_basis_mod
from asdcong.derham import (
    CongruenceError,
    PrecisionShortfall,
    asd_check,
    eigen_congruence_check,
    frobenius_constraints,
    frobenius_matrix,
    functional_equation_holds,
    reconstruct_charpoly,
    trace_from_root,
    weakly_exact_check,
    weil_check,
)
from asdcong.linalg import solve_congruences
from asdcong.modforms import FormRecord, delta, fermat_suite, ramanujan_tau, weak_e4_delta
from asdcong.padic import valuation
from asdcong.qseries import CuspContext, FracSeries


@pytest.fixture(scope="module")
def weak12():
    return weak_e4_delta(170)


@pytest.fixture(scope="module")
def delta_rec():
    return FormRecord(delta(300), 12, "SL2(Z)", None, "cusp", "delta")


def test_weakly_exact(weak12):
    assert weakly_exact_check(weak12).passed
    bad = FracSeries([1, 0, 0], -2, 1, 5)
    res = weakly_exact_check(bad, 12)
    assert not res.passed and res.witnesses == [-2]
    ok = FracSeries([2**11, 0, 0], -2, 1, 5)
    assert weakly_exact_check(ok, 12).passed


@pytest.mark.parametrize("p", [11, 13])
def test_asd_weight12(weak12, delta_rec, p):
    tau = ramanujan_tau(p)[p]
    H = [1, -tau, p**11]
    assert asd_check(weak12, H, 12, p, p * p).passed
    assert asd_check(delta_rec, H, 12, p, p * p, strengthen=True).passed
    wrong = asd_check(weak12, [1, -tau - 1, p**11], 12, p, p * p)
    assert not wrong.passed
    assert all(r.n % p == 0 for r in wrong.failures())


def test_asd_index_p_squared(weak12):
    # at n = p^2 the sum is p^11 (a(p^2) - tau(p) a(p) + p^11 a(1))
    p, tau = 11, 534612
    f = weak12.series
    inner = f.coeff(p * p) - tau * f.coeff(p) + p**11 * f.coeff(1)
    assert valuation(inner, p) >= 11
    row = [r for r in asd_check(weak12, [1, -tau, p**11], 12, p, p * p).rows if r.n == p * p][0]
    assert row.required == 22 and row.passed


def test_asd_requires_expansion(weak12):
    with pytest.raises(CongruenceError):
        asd_check(weak12, [1, 0, 11**11], 12, 11, 500)


def test_asd_mod_path_shortfall():
    f = FormRecord(delta(150).reduce_mod(11, 15), 12, "SL2(Z)", None, "cusp")
    with pytest.raises(PrecisionShortfall):
        asd_check(f, [1, -534612, 11**11], 12, 11, 130)


def test_frobenius_phi0_3_at_5():
    ctx = CuspContext.build(2, 5, 10)
    basis = fermat_basis_mod(3, 650, 5, 10)
    rep = frobenius_matrix(basis, ctx, 3, (1, 650))
    assert rep.permutation == {1: 2, 2: 1}
    assert rep.alpha_valuations == {1: 2, 2: 0}
    assert rep.alpha_product() == (25, 6)
    assert rep.charpoly == [1, 0, -25]
    assert rep.passed
    assert eigen_congruence_check(3, 5, rep, basis, 50).passed


def test_eigen_check_refuses_beyond_precision():
    # mod 5^6 the row j = 25 of f1 needs valuation 8
    ctx = CuspContext.build(2, 5, 6)
    basis = fermat_basis_mod(3, 650, 5, 6)
    rep = frobenius_matrix(basis, ctx, 3, (1, 650))
    with pytest.raises(PrecisionShortfall):
        eigen_congruence_check(3, 5, rep, basis, 25)


def test_exact_and_fast_bases_agree_on_frobenius():
    ctx = CuspContext.build(2, 5, 8)
    exact = fermat_suite(3, 100).basis()
    fast = fermat_basis_mod(3, 200, 5, 8)
    a = frobenius_matrix(exact, ctx, 3, (1, 200))
    b = frobenius_matrix(fast, ctx, 3, (1, 200))
    assert a.alphas == b.alphas and a.charpoly == b.charpoly


def test_weakly_exact_forms_locally_exact_when_ordinary():
    # p = 1 mod 3: f2 has a(n) in n^2 Z_p, so phi~(f2) carries no information
    f2 = fermat_suite(3, 100).forms[2].series
    for n, c in f2.items():
        assert valuation(c, 7) >= 2 * valuation(n, 7)
    ctx = CuspContext.build(2, 7, 8)
    basis = fermat_basis_mod(3, 400, 7, 8)
    with pytest.raises(CongruenceError):
        frobenius_matrix(basis, ctx, 3, (1, 200))
    rep = frobenius_matrix(basis, ctx, 3, (1, 200), complete_pairs=True)
    assert rep.completed == [2]
    assert rep.charpoly == [1, 2, 49]


def test_strengthen_off_uses_only_p_divisible_rows():
    p, M = 5, 8
    ctx = CuspContext.build(2, p, M)
    basis = [b.series for b in fermat_basis_mod(3, 300, p, M)]
    phi = basis[0].frob_twist(ctx, 3)
    rows = frobenius_constraints(phi, basis, 3, p, M, (1, 300))
    assert rows and all(r.tag % p == 0 for r in rows)
    # mutating phi~(f) at indices prime to p leaves the system untouched
    mutated = dict(phi.items())
    for n in range(1, 301):
        if n % p:
            mutated[n] = (mutated.get(n, 0) + 17 * n) % p**M
    phi2 = FracSeries.from_dict(mutated, phi.m, phi.hi, phi.ring)
    rows2 = frobenius_constraints(phi2, basis, 3, p, M, (1, 300))
    assert [(r.coeffs, r.rhs, r.exponent) for r in rows] == [(r.coeffs, r.rhs, r.exponent) for r in rows2]
    s1 = solve_congruences(rows, 2, p, M)
    s2 = solve_congruences(rows2, 2, p, M)
    assert s1.values == s2.values
    # with the extra holomorphic digits, rows prime to p do appear
    strong = frobenius_constraints(phi, basis, 3, p, M, (1, 300), extra=2)
    assert any(r.tag % p for r in strong)


@pytest.mark.parametrize("p,tau", [(11, 534612), (13, -577738)])
def test_delta_trace_from_nonunit_root(delta_rec, p, tau):
    ctx = CuspContext.build(1, p, 30)
    rep = frobenius_matrix([delta_rec], ctx, 12, (1, 300), integral_charpoly=False)
    alpha, P = rep.matrix[0][0], rep.attained
    value, prec = trace_from_root(alpha, P, p, 12)
    assert prec >= 12 and value == tau


def test_charpoly_reconstruction():
    p, prec, w = 7, 6, 49
    h = [1, 2, 49]
    res = [c % p**prec for c in h]
    assert reconstruct_charpoly(res, p, prec, w) == [h]
    h4 = [1, 0, 0, 0, -2401]
    assert reconstruct_charpoly([c % 7**6 for c in h4], 7, 6, 49) == [h4]
    assert functional_equation_holds([1, 4, -74, 484, 14641], 121)
    assert not functional_equation_holds([1, 4, -74, 480, 14641], 121)
    assert weil_check([1, 2, 49], 49)
    assert not weil_check([1, 20, 49], 49)
