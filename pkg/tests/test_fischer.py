"""Harmonic spaces, Fischer projection, radial operators and T-coefficients."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisenverma import fischer
from heisenverma.coeff import ParamScalar
from heisenverma.weyl import PolyVector, box, dual, q_poly


def test_harmonic_trivial_space():
    hs = fischer.harmonic_basis(0, 0, 3)
    assert hs.dim == 1
    assert hs.basis[0] == PolyVector.constant(dual(3), 1)


def test_harmonic_dimension_example():
    assert fischer.harmonic_basis(1, 1, 2).dim == 3


@pytest.mark.parametrize("n_vars", [1, 2, 3])
def test_harmonic_nullspace_matches_formula(n_vars):
    for a in range(3):
        for b in range(3):
            hs = fischer.harmonic_basis(a, b, n_vars)
            assert hs.dim == fischer.dim_harmonic(a, b, n_vars)
            bx = box(dual(n_vars))
            for h in hs.basis:
                assert bx.apply(h).is_zero()


def test_highest_weight_vector_is_harmonic():
    # x_1^a y_n^b lies in H_{a,b}
    n_vars = 3
    vs = dual(n_vars)
    for a, b in [(2, 1), (3, 3), (1, 0)]:
        mono = [0] * vs.nvars
        mono[vs.x(1)] = a
        mono[vs.y(n_vars)] = b
        hw = PolyVector.monomial(vs, tuple(mono))
        assert box(vs).apply(hw).is_zero()
        # and it is in the span of the computed basis
        from heisenverma import _linalg

        hs = fischer.harmonic_basis(a, b, n_vars)
        cols = sorted({m for h in hs.basis for m in h.terms} | set(hw.terms))
        idx = {m: i for i, m in enumerate(cols)}
        rows = []
        for h in hs.basis:
            row = [Fraction(0)] * len(cols)
            for m, c in h.terms.items():
                row[idx[m]] = c.constant()
            rows.append(row)
        target = [Fraction(0)] * len(cols)
        for m, c in hw.terms.items():
            target[idx[m]] = c.constant()
        assert _linalg.in_span(rows, target)


def test_fischer_project_examples():
    vs = dual(2)
    q = q_poly(vs)
    # q = q * 1
    assert fischer.fischer_project(q) == [(1, PolyVector.constant(vs, 1))]
    # x1 y1 = q/2 + (x1 y1 - q/2)
    x1y1 = PolyVector.monomial(vs, (1, 0, 1, 0, 0))
    dec = fischer.fischer_project(x1y1)
    assert dict(dec)[1] == PolyVector.constant(vs, Fraction(1, 2))
    assert dict(dec)[0] == x1y1 - q.scale(Fraction(1, 2))
    # idempotence on harmonics
    h = fischer.harmonic_basis(1, 1, 2).basis[0]
    assert fischer.fischer_project(h) == [(0, h)]


def test_fischer_reconstruction_random():
    rng = random.Random(17)
    vs = dual(3)
    q = q_poly(vs)
    bx = box(vs)
    for _ in range(30):
        terms = {}
        for _ in range(5):
            mono = [rng.randint(0, 2) for _ in range(vs.nvars)]
            mono[vs.z] = 0
            terms[tuple(mono)] = Fraction(rng.randint(-6, 6))
        f = PolyVector(vs, terms)
        dec = fischer.fischer_project(f)
        total = PolyVector.zero(vs)
        for k, h in dec:
            assert bx.apply(h).is_zero()
            piece = h
            for _ in range(k):
                piece = piece * q
            total = total + piece
        assert total == f


def test_q_apply_examples():
    Q = fischer.QOperator(Fraction(2), Fraction(-1), n=4, r=1)
    assert fischer.q_apply(Q, {(0, 0): Fraction(1)}) == {}
    # q' -> (n - r + alpha), q'' -> (r + beta)
    assert fischer.q_apply(Q, {(1, 0): Fraction(1)}) == {(0, 0): Fraction(5)}
    assert fischer.q_apply(Q, {(0, 1): Fraction(1)}) == {}  # r + beta = 0 here
    Q2 = fischer.QOperator(Fraction(0), Fraction(2), n=4, r=1)
    assert fischer.q_apply(Q2, {(0, 1): Fraction(1)}) == {(0, 0): Fraction(3)}


def test_solve_S_degree_zero_and_one():
    # constants always solve
    assert fischer.solve_S(0, 5, Fraction(1), Fraction(2), 4, 1) == [
        {(0, 0): Fraction(1)}
    ]
    # degree one, generic lambda: the single direction (r+beta) q' - (n-r+alpha) q''
    lam1, lam2 = Fraction(1, 3), Fraction(1, 5)
    s = 3
    basis = fischer.solve_S(1, s, lam1, lam2, 4, 1)
    assert len(basis) == 1
    alpha = -s + lam1 + lam2 + 2
    beta = Fraction(s - 2)
    u = basis[0]
    # kernel direction satisfies (n-r+alpha) u_{q'} + (r+beta) u_{q''} = 0
    got = fischer.q_apply(fischer.QOperator(alpha, beta, 4, 1), u)
    assert got == {}


def test_solve_S_dimension_at_least_one():
    rng = random.Random(23)
    for _ in range(25):
        ell = rng.randint(0, 4)
        s = rng.randint(0, 6)
        lam1 = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        lam2 = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        basis = fischer.solve_S(ell, s, lam1, lam2, 5, 2)
        assert len(basis) >= 1


def test_t_coeffs_first_terms():
    lam1, lam2 = Fraction(1, 2), Fraction(3)
    r1, r2 = 4, 2
    alphas = fischer.t_coeffs(r1, r2, lam1, lam2, 3)
    assert alphas[0] == ParamScalar.of(1)
    assert alphas[1] == ParamScalar.of(Fraction(r1 - r2) - lam1 + lam2)


rat = st.fractions(min_value=Fraction(-8), max_value=Fraction(8), max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), rat, rat)
def test_t_coeffs_match_generating_function(r1, r2, lam1, lam2):
    assert fischer.t_coeffs(r1, r2, lam1, lam2, 12) == fischer.t_series_coeffs(
        r1, r2, lam1, lam2, 12
    )


def test_t_coeffs_generic_lambda():
    gen = fischer.t_coeffs(3, 1, ParamScalar.lam1(), ParamScalar.lam2(), 6)
    ser = fischer.t_series_coeffs(3, 1, ParamScalar.lam1(), ParamScalar.lam2(), 6)
    assert gen == ser


def test_t_apply_examples():
    n, r = 4, 1
    vs = dual(n)
    lam1, lam2 = Fraction(0), Fraction(0)
    T = fischer.TOperator.create(2, 1, lam1, lam2)
    # harmonic inputs (no q' factor) are fixed
    h = PolyVector.variable(vs, vs.x(1))
    assert fischer.t_apply(T, h, r) == h
    # q' picks up alpha_1/2 z
    from heisenverma.weyl import q_primed

    qp = q_primed(vs, r)
    z = PolyVector.variable(vs, vs.z)
    a1 = T.coeffs[1]
    assert fischer.t_apply(T, qp, r) == qp + z.scale(a1 / 2)


def test_phi_decompose_round_trip():
    rng = random.Random(31)
    n, r = 3, 1
    vs = dual(n)
    for _ in range(20):
        terms = {}
        for _ in range(5):
            mono = tuple(rng.randint(0, 2) for _ in range(vs.nvars))
            terms[mono] = Fraction(rng.randint(-5, 5))
        f = PolyVector(vs, terms)
        parts = fischer.phi_decompose(f, r)
        from heisenverma.weyl import box_primed, box_doubleprimed

        for _, h in parts.items():
            assert box_primed(vs, r).apply(h).is_zero()
            assert box_doubleprimed(vs, r).apply(h).is_zero()
        assert fischer.phi_compose(parts, vs, r) == f


def test_laplace_transport_through_phi():
    # phi . box . phi^{-1} acts as Q_{a+b, c+d} on the radial factor
    n, r = 4, 1
    vs = dual(n)
    a, b, c, d = 1, 1, 1, 0
    hp = fischer.harmonic_basis(a, b, n - r).basis[0]
    hpp = fischer.harmonic_basis(c, d, r).basis[0]
    from heisenverma.weyl import embed_xy, q_primed, q_doubleprimed

    hp_big = embed_xy(hp, vs, 0)
    hpp_big = embed_xy(hpp, vs, n - r)
    for (i, j) in [(1, 0), (0, 1), (2, 1)]:
        radial = {(i, j): Fraction(1)}
        piece = hp_big * hpp_big
        for _ in range(i):
            piece = piece * q_primed(vs, r)
        for _ in range(j):
            piece = piece * q_doubleprimed(vs, r)
        lhs = box(vs).apply(piece)
        Q = fischer.QOperator(Fraction(a + b), Fraction(c + d), n, r)
        expected = PolyVector.zero(vs)
        for (ii, jj), cc in fischer.q_apply(Q, radial).items():
            term = (hp_big * hpp_big).scale(cc)
            for _ in range(ii):
                term = term * q_primed(vs, r)
            for _ in range(jj):
                term = term * q_doubleprimed(vs, r)
            expected = expected + term
        assert lhs == expected
