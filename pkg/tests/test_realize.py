"""Closed-form operators, the series oracle, mod-I_e reduction, PBW bridge."""

import random
from fractions import Fraction

import pytest

from heisenverma import realize
from heisenverma.coeff import ParamScalar
from heisenverma.lie import (
    Character,
    basis_a,
    basis_c,
    basis_f,
    basis_g,
    basis_h1,
    structured_basis,
)
from heisenverma.weyl import PolyVector, WeylElement, dual, hatted
from heisenverma.verma import PbwVector


def real_for(n, lam=None):
    return realize.realization_for(n, lam or Character.generic(n))


def test_pi_closed_forms():
    n = 3
    real = real_for(n)
    vh = real.vs_hat
    D = lambda s: WeylElement.derivative(vh, s)
    X = lambda s: WeylElement.variable(vh, s)
    assert real.pi(basis_c()) == -D(vh.z)
    assert real.pi(basis_f(1)) == -D(vh.x(1)) + (X(vh.y(1)) * D(vh.z)).scale(
        Fraction(1, 2)
    )
    # pi(h1) carries the constant lam1 + lam2 + n + 1
    const_term = real.pi(basis_h1()).terms[(vh.zero_expo(), vh.zero_expo())]
    assert const_term == ParamScalar.lam1() + ParamScalar.lam2() + (n + 1)


def test_pi_hat_closed_forms():
    n = 3
    real = real_for(n)
    vd = real.vs_dual
    D = lambda s: WeylElement.derivative(vd, s)
    X = lambda s: WeylElement.variable(vd, s)
    assert real.pi_hat(basis_c()) == -X(vd.z)
    assert real.pi_hat(basis_g(1)) == -X(vd.y(1)) + (X(vd.z) * D(vd.x(1))).scale(
        Fraction(1, 2)
    )
    # the a-operator starts with Dz * (Euler sum - lam1 - lam2 + n)
    op = real.pi_hat(basis_a())
    dz_const = op.terms.get((vd.zero_expo(), vd.unit_expo(vd.z)))
    assert dz_const == -ParamScalar.lam1() - ParamScalar.lam2() + n


@pytest.mark.parametrize("n", [1, 2, 3])
def test_homomorphism_certification_small(n):
    assert realize.homomorphism_failures(n, "pi_hat") == []
    assert realize.homomorphism_failures(n, "pi") == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fourier_transports_pi_to_pi_hat(n):
    assert realize.fourier_match_failures(n) == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generic_realization_matches_closed_forms(n):
    assert realize.generic_oracle_failures(n) == []


def test_pi_generic_central_element():
    real = real_for(2)
    assert real.pi_generic(basis_c()) == real.pi(basis_c())
    assert real.pi_generic(basis_c()) == -WeylElement.derivative(real.vs_hat, real.vs_hat.z)


def test_reduce_mod_Ie_convention():
    # x Dx = Dx.x - 1, so its class is the constant -1; the product Dx.x lies
    # in the ideal and reduces to 0.
    n = 2
    vh = hatted(n)
    x1 = WeylElement.variable(vh, vh.x(1))
    dx1 = WeylElement.derivative(vh, vh.x(1))
    assert realize.reduce_mod_Ie(x1 * dx1) == WeylElement.constant(vh, -1)
    assert realize.reduce_mod_Ie(dx1 * x1).is_zero()
    # x Dx^2 = Dx^2 x - 2 Dx
    assert realize.reduce_mod_Ie(x1 * dx1 * dx1) == dx1.scale(-2)
    # pure polynomial part with no matching derivatives dies
    assert realize.reduce_mod_Ie(x1).is_zero()


def test_reduce_recovers_shifted_highest_weight():
    # pi(h1) acts on the class of 1 by (lam - rho)(h1) = lam1 + lam2 - (n + 1)
    n = 3
    real = real_for(n)
    red = realize.reduce_mod_Ie(real.pi(basis_h1()))
    want = ParamScalar.lam1() + ParamScalar.lam2() - (n + 1)
    assert red == WeylElement.constant(real.vs_hat, want)


def test_reduce_left_module_property():
    # reduce(P * reduce(Q)) == reduce(P * Q) on random low-degree words
    rng = random.Random(4)
    n = 2
    real = real_for(n)
    basis = structured_basis(n)
    for _ in range(30):
        word = [rng.choice(basis) for _ in range(3)]
        ops = [real.pi(x) for x in word]
        direct = realize.reduce_mod_Ie(ops[0] * ops[1] * ops[2])
        stepwise = realize.reduce_mod_Ie(
            ops[0] * realize.reduce_mod_Ie(ops[1] * realize.reduce_mod_Ie(ops[2]))
        )
        assert direct == stepwise


def test_symmetrize_examples():
    n = 2
    # commuting letters: sym(f1 f2) = f1 f2
    word = ((1, 1), (0, 0), 0)
    assert realize.symmetrize(word, n) == {word: ParamScalar.of(1)}
    # sym(f1 g1) = f1 g1 + c/2
    word = ((1, 0), (1, 0), 0)
    out = realize.symmetrize(word, n)
    assert out == {
        ((1, 0), (1, 0), 0): ParamScalar.of(1),
        ((0, 0), (0, 0), 1): ParamScalar.of(Fraction(1, 2)),
    }
    # sym(c) = c
    word = ((0, 0), (0, 0), 1)
    assert realize.symmetrize(word, n) == {word: ParamScalar.of(1)}


def test_poly_to_pbw_examples():
    n = 3
    lam = Character.of(n, -1, -2)
    vs = dual(n)
    z = PolyVector.variable(vs, vs.z)
    v = realize.poly_to_pbw(z, lam)
    assert v == PbwVector(n, lam, {((0, 0, 0), (0, 0, 0), 1): -1})
    one = PolyVector.constant(vs, 1)
    assert realize.poly_to_pbw(one, lam) == PbwVector.highest_weight(n, lam)


def test_poly_to_pbw_matches_quadratic_example():
    # q - (lam1-lam2)/2 z maps exactly onto sum f_i g_i + (lam1-lam2+n)/2 c
    from heisenverma.verma import example_r0_degree2
    from heisenverma.weyl import q_poly

    n = 3
    lam = Character.of(n, -1, -2)
    vs = dual(n)
    lam1, lam2 = lam.evaluated()
    poly = q_poly(vs) - PolyVector.variable(vs, vs.z).scale((lam1 - lam2) / 2)
    assert realize.poly_to_pbw(poly, lam) == example_r0_degree2(n, lam)


def test_pbw_to_poly_and_operator_route_agree():
    rng = random.Random(12)
    n = 2
    lam = Character.of(n, Fraction(1, 3), Fraction(-5, 2))
    for _ in range(20):
        terms = {}
        for _ in range(4):
            a = tuple(rng.randint(0, 2) for _ in range(n))
            b = tuple(rng.randint(0, 2) for _ in range(n))
            g = rng.randint(0, 1)
            if sum(a) + sum(b) + g <= 4:
                terms[(a, b, g)] = Fraction(rng.randint(-3, 3))
        v = PbwVector(n, lam, terms)
        p1 = realize.pbw_to_poly(v)
        p2 = realize.phi_fourier(v)
        assert p1 == p2
        assert realize.poly_to_pbw(p1, lam) == v


def test_generic_vs_evaluated_realization():
    # scaling invariance: evaluate-then-build equals build-then-evaluate
    n = 3
    v1, v2 = Fraction(2, 7), Fraction(-3)
    generic = real_for(n)
    concrete = real_for(n, Character.of(n, v1, v2))
    for x in structured_basis(n):
        gop = generic.pi_hat(x)
        cop = concrete.pi_hat(x)
        evaluated = WeylElement(
            gop.varset,
            {k: ParamScalar.of(c.evaluate(v1, v2)) for k, c in gop.terms.items()},
        )
        assert evaluated == cop
