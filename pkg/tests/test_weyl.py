"""Normal ordering, Fourier transform and the module action on polynomials."""

import random
from fractions import Fraction

import pytest

from heisenverma.coeff import ParamScalar
from heisenverma.weyl import (
    PolyVector,
    WeylElement,
    box,
    dual,
    euler_x,
    euler_z,
    hatted,
    q_poly,
)

VS = dual(2)
VH = hatted(2)


def X(vs, slot):
    return WeylElement.variable(vs, slot)


def D(vs, slot):
    return WeylElement.derivative(vs, slot)


def test_defining_commutation_relation():
    lhs = D(VS, VS.x(1)) * X(VS, VS.x(1))
    rhs = X(VS, VS.x(1)) * D(VS, VS.x(1)) + WeylElement.constant(VS, 1)
    assert lhs == rhs


def test_disjoint_variables_commute():
    assert X(VS, VS.z) * D(VS, VS.x(1)) == D(VS, VS.x(1)) * X(VS, VS.z)


def test_degree_two_word_product():
    # (x1 Dy1)(y1 Dx1) = x1 y1 Dx1 Dy1 + x1 Dx1
    p = X(VS, VS.x(1)) * D(VS, VS.y(1))
    q = X(VS, VS.y(1)) * D(VS, VS.x(1))
    expected = (
        X(VS, VS.x(1)) * X(VS, VS.y(1)) * D(VS, VS.x(1)) * D(VS, VS.y(1))
        + X(VS, VS.x(1)) * D(VS, VS.x(1))
    )
    assert p * q == expected


def test_commutator_examples():
    one = WeylElement.constant(VS, 1)
    assert D(VS, VS.x(1)).commutator(X(VS, VS.x(1))) == one
    x1 = X(VS, VS.x(1))
    assert euler_x(VS).commutator(x1) == x1
    assert box(VS).commutator(euler_x(VS)) == box(VS)


def test_fourier_generators():
    assert X(VH, VH.x(1)).fourier() == -D(VS, VS.x(1))
    assert D(VH, VH.z).fourier() == X(VS, VS.z)


def test_fourier_normal_reordering():
    # F(x^ Dx^) = -Dx x = -x Dx - 1
    p = X(VH, VH.x(1)) * D(VH, VH.x(1))
    expected = -(X(VS, VS.x(1)) * D(VS, VS.x(1))) - WeylElement.constant(VS, 1)
    assert p.fourier() == expected


def test_fourier_side_checks():
    with pytest.raises(ValueError):
        X(VS, VS.x(1)).fourier()
    with pytest.raises(ValueError):
        X(VH, VH.x(1)).fourier_inverse()


def test_apply_examples():
    x1sq = PolyVector.monomial(VS, (2, 0, 0, 0, 0))
    out = D(VS, VS.x(1)).apply(x1sq)
    assert out == PolyVector.monomial(VS, (1, 0, 0, 0, 0), 2)

    z3 = PolyVector.monomial(VS, (0, 0, 0, 0, 3))
    assert euler_z(VS).apply(z3) == z3.scale(3)

    assert box(VS).apply(q_poly(VS)) == PolyVector.constant(VS, VS.n)


def test_euler_bidegree_examples():
    # x1 y1 z at n=2, r=1
    f = PolyVector.monomial(VS, (1, 0, 1, 0, 1))
    [(key, comp)] = f.euler_bidegree(1)
    assert key == (4, 0)
    assert comp == f

    one = PolyVector.constant(VS, 1)
    assert one.euler_bidegree(1) == [((0, 0), one)]

    # x_n lies in the double-primed block for r >= 1: t = n - r
    xn = PolyVector.variable(VS, VS.x(2))
    [(key, _)] = xn.euler_bidegree(1)
    assert key == (1, VS.n - 1)


def test_euler_bidegree_components_sum_back():
    rng = random.Random(3)
    terms = {}
    for _ in range(8):
        mono = tuple(rng.randint(0, 2) for _ in range(VS.nvars))
        terms[mono] = Fraction(rng.randint(-5, 5))
    f = PolyVector(VS, terms)
    total = PolyVector.zero(VS)
    for _, comp in f.euler_bidegree(1):
        total = total + comp
    assert total == f


def _random_element(rng, vs, nterms=3, maxdeg=2):
    terms = {}
    for _ in range(nterms):
        alpha = tuple(rng.randint(0, maxdeg) for _ in range(vs.nvars))
        beta = tuple(rng.randint(0, maxdeg) for _ in range(vs.nvars))
        terms[(alpha, beta)] = Fraction(rng.randint(-4, 4))
    return WeylElement(vs, terms)


def test_mul_associative_randomized():
    rng = random.Random(11)
    for _ in range(25):
        p = _random_element(rng, VS, 2, 1)
        q = _random_element(rng, VS, 2, 1)
        s = _random_element(rng, VS, 2, 1)
        assert (p * q) * s == p * (q * s)


def test_fourier_is_algebra_isomorphism():
    rng = random.Random(5)
    for _ in range(25):
        p = _random_element(rng, VH, 2, 2)
        q = _random_element(rng, VH, 2, 2)
        assert (p * q).fourier() == p.fourier() * q.fourier()
        assert p.fourier().fourier_inverse() == p


def test_apply_is_module_action():
    rng = random.Random(9)
    for _ in range(25):
        p = _random_element(rng, VS, 2, 2)
        q = _random_element(rng, VS, 2, 2)
        mono = tuple(rng.randint(0, 2) for _ in range(VS.nvars))
        f = PolyVector.monomial(VS, mono)
        assert (p * q).apply(f) == p.apply(q.apply(f))


def test_varset_mismatch_rejected():
    other = dual(3)
    with pytest.raises(ValueError):
        X(VS, 0) * WeylElement.variable(other, 0)
    with pytest.raises(ValueError):
        X(VS, 0).apply(PolyVector.constant(other, 1))


def test_degree_cap():
    with pytest.raises(OverflowError):
        PolyVector.monomial(VS, (65, 0, 0, 0, 0))


def test_json_round_trip():
    p = _random_element(random.Random(2), VS, 3, 2)
    assert WeylElement.from_json(VS, p.to_json()) == p
    f = q_poly(VS).scale(ParamScalar.lam1()) + PolyVector.constant(VS, Fraction(1, 3))
    assert PolyVector.from_json(VS, f.to_json()) == f
