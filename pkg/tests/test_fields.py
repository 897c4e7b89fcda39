import cmath
import random

import numpy as np
import pytest

from asdcong.cyclotomic import CycInt, CyclotomicError, cyclotomic_poly
from asdcong.finitefield import FFCtx, FieldError, is_prime


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_poly(15)) - 1 == 8


def test_cycint_arithmetic():
    z = CycInt.zeta(6)
    assert z**6 == 1
    assert z**3 == -1
    assert z * z - z + 1 == 0
    a = CycInt(12, [3, -1, 2, 5])
    b = CycInt(12, [0, 4, -2, 1])
    for t in (1, 5, 7, 11):
        ea = a.galois(t).embeddings()[0]
        eb = b.galois(t).embeddings()[0]
        assert abs((a * b).galois(t).embeddings()[0] - ea * eb) < 1e-9


def test_cycint_embed_and_conj():
    z3 = CycInt.zeta(3)
    assert z3.embed(12) == CycInt.zeta(12, 4)
    assert (z3 * z3.conj()) == 1
    with pytest.raises(CyclotomicError):
        z3.embed(10)
    with pytest.raises(CyclotomicError):
        CycInt.zeta(3).to_int()


@pytest.mark.parametrize("p,k", [(3, 1), (7, 1), (3, 2), (5, 2), (7, 2), (3, 3), (11, 2)])
def test_field_axioms(p, k):
    F = FFCtx(p, k)
    q = F.q
    x = F.elements()
    # the generator has full order and log/exp are inverse
    assert len(set(F.exp.tolist())) == q - 1
    assert np.all(F.exp[F.log[1:]] == x[1:])
    rng = np.random.default_rng(p * 10 + k)
    a, b, c = (rng.integers(0, q, 200) for _ in range(3))
    assert np.all(F.add(a, b) == F.add(b, a))
    assert np.all(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)))
    assert np.all(F.add(a, F.neg(a)) == 0)
    assert np.all(F.mul(F.power(a[a > 0], q - 1), 1) == 1)
    # Frobenius is additive
    assert np.all(F.power(F.add(a, b), p) == F.add(F.power(a, p), F.power(b, p)))


def test_quadratic_character_and_norm():
    F = FFCtx(7)
    chi = F.quadratic()
    assert sorted(int(x) for x in np.nonzero(chi == 1)[0]) == [1, 2, 4]
    G = FFCtx(7, 2)
    g = int(G.digits[G.norm_generator()][0])
    assert G.digits[G.norm_generator()][1:].sum() == 0
    assert all(pow(g, (7 - 1) // r, 7) != 1 for r in (2, 3))


def test_field_errors():
    assert is_prime(13) and not is_prime(15)
    with pytest.raises(FieldError):
        FFCtx(9)
    with pytest.raises(FieldError):
        FFCtx(2)
    with pytest.raises(FieldError):
        FFCtx(7, 1, twist=2)
