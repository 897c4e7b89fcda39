from fractions import Fraction

import pytest

from asdcong.fastmod import FastModError, fermat_forms_mod, invmod, mulmod
from asdcong.modforms import (
    FormError,
    FormRecord,
    delta,
    dim_s3,
    eisenstein,
    eta_quotient,
    fermat_suite,
    phi0_3_eta_forms,
    ramanujan_tau,
    sigma,
    weak_e4_delta,
)
from asdcong.qseries import FracSeries


def naive_delta(n_max):
    """q prod (1 - q^n)^24 by repeated schoolbook multiplication."""
    poly = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        for _ in range(24):
            for i in range(n_max, n - 1, -1):
                poly[i] -= poly[i - n]
    return [0] + poly[:n_max]


def test_tau_against_naive_product():
    want = naive_delta(40)
    got = ramanujan_tau(40)
    assert got[1:] == want[1:41]
    assert got[2] == -24 and got[3] == 252 and got[11] == 534612


def test_tau_multiplicative():
    t = ramanujan_tau(60)
    assert t[6] == t[2] * t[3]
    assert t[4] == t[2] ** 2 - 2**11
    assert t[50] == t[2] * t[25]


def test_e4_cubed_minus_e6_squared():
    e4 = eisenstein(4, 50).series
    e6 = eisenstein(6, 50).series
    lhs = e4**3 - e6**2
    assert lhs.agrees(delta(50).scale(1728), upto_q=50)


def test_eisenstein_coefficients():
    e4 = eisenstein(4, 10).series
    assert [int(e4.coeff(n)) for n in range(4)] == [1, 240, 2160, 6720]
    assert sigma(12, 3) == 1 + 8 + 27 + 64 + 216 + 1728
    with pytest.raises(FormError):
        eisenstein(5, 10)


def test_weak_form_golden():
    f = weak_e4_delta(3).series
    assert [f.coeff(n) for n in (-1, 0, 1, 2, 3)] == [1, 0, -142236, 51123200, 39826861650]


def test_eta_quotient_phi0_3_golden():
    f1, f2 = phi0_3_eta_forms(2)
    half = [Fraction(k, 2) for k in range(1, 5)]
    assert [f1.series.coeff_q(e) for e in half] == [1, Fraction(-4, 3), Fraction(8, 9), Fraction(-176, 81)]
    assert [f2.series.coeff_q(e) for e in half] == [1, Fraction(-20, 3), Fraction(200, 9), Fraction(-4720, 81)]
    assert f1.series.m == 2 and f1.holo_class == "cusp"


def test_eta_quotient_rejects_bad_scale():
    with pytest.raises(FormError):
        eta_quotient([(0, 1)], 5)


def test_fermat_matches_eta_quotients():
    suite = fermat_suite(3, 25)
    f1, f2 = phi0_3_eta_forms(25)
    assert suite.forms[1].series.agrees(f1.series, upto_q=25)
    assert suite.forms[2].series.agrees(f2.series, upto_q=25)


@pytest.mark.parametrize("N", [3, 5, 7])
def test_lambda_is_one_minus_tN(N):
    s = fermat_suite(N, 30)
    diff = s.lam - (FracSeries.one(2) - s.t**N)
    assert diff.truncate_q(30).is_zero()
    assert [s.lam.coeff(n) for n in (1, 2, 3)] == [16, -128, 704]


@pytest.mark.parametrize("N", [3, 5, 7])
def test_fermat_relation(N):
    s = fermat_suite(N, 30)
    rel = (s.x() ** N - s.y() ** N).truncate_q(30)
    assert rel.agrees(FracSeries([-16], 0, 1, 30))


def test_basis_classes_and_dimension():
    s = fermat_suite(5, 5)
    assert dim_s3(5) == 2
    assert [f.holo_class for f in s.basis()] == ["cusp", "cusp", "weakly-exact", "weakly-exact"]
    assert [f.b_eigen for f in s.basis()] == [1, 2, 3, 4]


def test_form_record_validation():
    with pytest.raises(FormError):
        FormRecord(FracSeries([1], 0, 1, 5), 3, "Phi0(3)", 1, "cusp")
    with pytest.raises(FormError):
        FormRecord(FracSeries([1], 1, 1, 5), 3, "SL2(Z)", 1, "cusp")


@pytest.mark.parametrize("N,p,M", [(3, 5, 6), (3, 7, 5), (5, 7, 5), (5, 11, 4)])
def test_fast_mod_path_matches_exact(N, p, M):
    suite = fermat_suite(N, 60)
    fast = fermat_forms_mod(N, 120, p, M)
    for i, rec in suite.forms.items():
        assert fast[i] == rec.series.reduce_mod(p, M)


def test_fast_mod_primitives():
    import numpy as np

    mod = 7**5
    a = np.array([1, 3, 5, 0, 2], dtype=np.int64)
    b = np.array([2, 0, 1, 4, 6], dtype=np.int64)
    want = [sum(int(a[i]) * int(b[n - i]) for i in range(n + 1)) % mod for n in range(5)]
    assert list(mulmod(a, b, 5, mod)) == want
    inv = invmod(a, 5, mod)
    assert list(mulmod(a, inv, 5, mod)) == [1, 0, 0, 0, 0]
    with pytest.raises(FastModError):
        fermat_forms_mod(3, 10, 3, 4)
    with pytest.raises(FastModError):
        fermat_forms_mod(3, 10, 7, 12)
