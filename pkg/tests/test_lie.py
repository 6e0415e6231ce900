"""Structure constants, grading, embeddings and the subalgebra data."""

from fractions import Fraction

import pytest

from heisenverma.lie import (
    Character,
    LieElement,
    basis_a,
    basis_c,
    basis_d,
    basis_e,
    basis_f,
    basis_g,
    basis_h1,
    basis_h2,
    basis_hmat,
    bracket,
    center_basis,
    embed_sub,
    mat_trace,
    nilradical_basis,
    structured_basis,
)


def as_el(n, x):
    return LieElement.from_basis(n, x)


def test_heisenberg_relations():
    n = 3
    assert bracket(basis_f(1), basis_g(1), n) == -as_el(n, basis_c())
    assert bracket(basis_d(1), basis_e(1), n) == as_el(n, basis_a())
    assert bracket(basis_f(1), basis_f(2), n).is_zero()
    assert bracket(basis_f(1), basis_g(2), n).is_zero()


def test_matrix_round_trip():
    n = 3
    for x in structured_basis(n):
        el = as_el(n, x)
        assert LieElement.from_matrix(n, el.matrix) == el


def _pair_table(n):
    basis = structured_basis(n)
    table = {}
    for x in basis:
        for y in basis:
            table[(x, y)] = bracket(x, y, n)
    return basis, table


def _bracket_lin(n, el, y, table):
    out = LieElement.zero(n)
    for x, cv in el.terms.items():
        out = out + table[(x, y)].scale(cv)
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_jacobi_identity(n):
    basis, table = _pair_table(n)
    for x in basis:
        for y in basis:
            xy = table[(x, y)]
            for z in basis:
                yz = table[(y, z)]
                zx = table[(z, x)]
                total = (
                    _bracket_lin(n, xy, z, table)
                    + _bracket_lin(n, yz, x, table)
                    + _bracket_lin(n, zx, y, table)
                )
                assert total.is_zero(), (x, y, z)


def test_grading_respected():
    n = 3
    basis = structured_basis(n)
    for x in basis:
        for y in basis:
            br = bracket(x, y, n)
            for w in br.terms:
                assert w.grade == x.grade + y.grade, (x, y, w)


@pytest.mark.parametrize("n,r", [(3, 0), (3, 1), (4, 1), (4, 2), (5, 2)])
def test_embed_is_lie_homomorphism(n, r):
    m = n - r
    for x in structured_basis(m):
        for y in structured_basis(m):
            lhs = embed_sub(n, r, bracket(x, y, m))
            rhs = bracket(embed_sub(n, r, x), embed_sub(n, r, y), n)
            assert lhs == rhs, (x, y)


def test_embed_block_placement():
    n, r = 4, 1
    for i in range(1, n - r + 1):
        assert embed_sub(n, r, basis_f(i)) == as_el(n, basis_f(i))
    assert embed_sub(n, r, basis_c()) == as_el(n, basis_c())
    assert embed_sub(n, 0, basis_d(2)) == as_el(n, basis_d(2))


def test_center_basis_r0():
    n = 3
    h1p, h2p = center_basis(n, 0)
    assert h1p == as_el(n, basis_h1())
    assert h2p == as_el(n, basis_h2())


def test_center_basis_block():
    # n = 4, r = 1: the correction block is diag(-1/6, -1/6, -1/6, 1/2)
    n, r = 4, 1
    _, h2p = center_basis(n, r)
    diff = h2p - as_el(n, basis_h2())
    want = as_el(
        n,
        basis_hmat(
            [
                [Fraction(-1, 6), 0, 0, 0],
                [0, Fraction(-1, 6), 0, 0],
                [0, 0, Fraction(-1, 6), 0],
                [0, 0, 0, Fraction(1, 2)],
            ]
        ),
    )
    assert diff == want


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (4, 3), (5, 2)])
def test_center_correction_traceless(n, r):
    _, h2p = center_basis(n, r)
    block = [
        [h2p.matrix[1 + i][1 + j] for j in range(n)] for i in range(n)
    ]
    # remove the h2 part and check the rest is traceless
    corr = [row[:] for row in block]
    for i in range(n):
        corr[i][i] += Fraction(2, n)
    assert sum(corr[i][i] for i in range(n)) == 0


def test_center_commutes_with_levi_part():
    n, r = 4, 1
    h1p, h2p = center_basis(n, r)
    # central elements commute with the embedded subalgebra's Levi block
    for x in (basis_f(1), basis_g(2), basis_d(3), basis_hmat(
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    )):
        emb = embed_sub(n, r, x) if x.kind == "hmat" else as_el(n, x)
        br1 = bracket(h1p, emb)
        br2 = bracket(h2p, emb)
        if x.kind == "hmat":
            assert br1.is_zero() and br2.is_zero()


def test_nilradical_basis():
    n = 4
    full = nilradical_basis(n, 0)
    assert full == [basis_d(i) for i in range(1, 5)] + [
        basis_e(i) for i in range(1, 5)
    ] + [basis_a()]
    small = nilradical_basis(n, n - 1)
    assert small == [basis_d(1), basis_e(1), basis_a()]
    # a is generated: a = [d_1, e_1]
    assert bracket(basis_d(1), basis_e(1), n) == as_el(n, basis_a())


def test_hmat_requires_traceless():
    with pytest.raises(ValueError):
        basis_hmat([[1, 0], [0, 1]])


def test_character_values():
    lam = Character.of(3, -1, -2)
    h1 = basis_h1().realize(3)
    h2 = basis_h2().realize(3)
    assert lam.value_on_matrix(h1).constant() == -3
    assert lam.value_on_matrix(h2).constant() == 1
    assert lam.rho == Fraction(2)
    shifted = lam.shifted_by_rho()
    assert shifted.evaluated() == (Fraction(1), Fraction(0))


def test_trace_helper():
    assert mat_trace(basis_h1().realize(5)) == 0
