"""Classification of singular vectors and the brute-force kernel oracle.

Components V_{a0,b0,c0,d0} of the u'_r-annihilated subspace are enumerated by
the four mutually exclusive case constraints on (a0, b0, c0, d0); each carries
the subspaces T(S_{l, c0+d0}) tensor H'_{a0,b0} tensor H''_{c0-l,d0-l} whose
elements are assembled into explicit singular vectors.  Everything is
cross-validated per bigraded slice (m, t) against an independent oracle: the
exact rational nullspace of the stacked pi_hat(d_i), pi_hat(e_i) matrices.

This module speaks the theorem-level module parameter lambda; the single
rho-shift to the operator realization happens here (``_solver_realization``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import _linalg, fischer, realize, verma
from .coeff import ParamScalar
from .lie import Character, basis_d, basis_e, hmat_elementary
from .weyl import PolyVector, VarSet, dual, embed_xy


def multiplicity(a: int, b: int, r: int) -> int:
    """Branching multiplicity C(a+r-1, a) * C(b+r-1, b) for r >= 1."""
    if r < 1:
        raise ValueError("the multiplicity formula is stated for r >= 1")
    if a < 0 or b < 0:
        return 0
    return comb(a + r - 1, a) * comb(b + r - 1, b)


def _is_nat(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 0


@dataclass(frozen=True)
class ComponentDescriptor:
    """Label (a0, b0, c0, d0) of one isotypical component, with its slice data."""

    a0: int
    b0: int
    c0: int
    d0: int
    case_tag: str
    lam: Character
    n: int
    r: int

    def __post_init__(self):
        lam1, lam2 = self.lam.evaluated()
        tag = self.case_tag
        if tag == "Case1":
            ok = self.a0 > 0 and self.b0 > 0 and self.a0 + self.c0 == lam1 + 1 and self.b0 + self.d0 == lam2 + 1
        elif tag == "Case2":
            ok = self.a0 > 0 and self.b0 == 0 and self.a0 + self.c0 == lam1 + 1
        elif tag == "Case3":
            ok = self.a0 == 0 and self.b0 > 0 and self.b0 + self.d0 == lam2 + 1
        elif tag == "Case4":
            ok = self.a0 == 0 and self.b0 == 0
        else:
            raise ValueError(f"unknown case tag {tag}")
        if not ok:
            raise ValueError(f"case constraints violated for {self}")

    @property
    def m(self) -> int:
        return self.a0 + self.b0 + self.c0 + self.d0

    @property
    def t(self) -> int:
        nr = self.n - self.r
        return (nr + 2) * (self.a0 - self.b0) + nr * (self.c0 - self.d0)

    def mu(self) -> tuple[Fraction, Fraction]:
        """Module-level coefficients of the component highest weight on
        omega_1 and omega_{n-r+1} (the omega_2 / omega_{n-r} parts are a0, b0)."""
        lam1, lam2 = self.lam.evaluated()
        return lam1 - 2 * self.a0 - self.c0, lam2 - 2 * self.b0 - self.d0

    def mu_shifted(self) -> tuple[Fraction, Fraction]:
        """The same weight in the rho-shifted convention of the operator layer."""
        rho = Fraction(self.n + 1, 2)
        m1, m2 = self.mu()
        return m1 + rho, m2 + rho

    def ell_data(self) -> list[tuple[int, int, int, int]]:
        """Per-l structure: (l, dim S, dim H', dim H'') with all factors nonzero."""
        lam1, lam2 = self.lam.evaluated()
        nr = self.n - self.r
        dhp = fischer.harmonic_basis(self.a0, self.b0, nr).dim
        out = []
        for ell in range(min(self.c0, self.d0) + 1):
            if self.r == 0:
                dhpp = 1 if (self.c0 == ell and self.d0 == ell) else 0
            else:
                dhpp = fischer.harmonic_basis(self.c0 - ell, self.d0 - ell, self.r).dim
            if not dhpp:
                continue
            ds = len(fischer.solve_S(ell, self.c0 + self.d0, lam1, lam2, self.n, self.r))
            if not ds:
                continue
            out.append((ell, ds, dhp, dhpp))
        return out

    def dimension(self) -> int:
        return sum(ds * dhp * dhpp for (_, ds, dhp, dhpp) in self.ell_data())

    def hw_count(self) -> int:
        """Highest-weight-vector count: one leg of H' contributes per cell."""
        return sum(ds * dhpp for (_, ds, _, dhpp) in self.ell_data())

    def to_json(self) -> dict:
        m1, m2 = self.mu()
        s1, s2 = self.mu_shifted()
        return {
            "a0": self.a0,
            "b0": self.b0,
            "c0": self.c0,
            "d0": self.d0,
            "case": self.case_tag,
            "m": self.m,
            "t": self.t,
            "dimension": self.dimension(),
            "mu": [str(m1), str(m2)],
            "mu_rho_shifted": [str(s1), str(s2)],
        }

    def __str__(self) -> str:
        return f"V({self.a0},{self.b0},{self.c0},{self.d0})[{self.case_tag}]"


def enumerate_components(lam: Character, n: int, r: int, m_max: int) -> list[ComponentDescriptor]:
    """All components with a0+b0+c0+d0 <= m_max, per the case constraints.

    Degenerate ranks are refused: the isotypical decomposition behind the case
    analysis needs n - r > 2.
    """
    if n - r <= 2:
        raise ValueError(
            f"classification requires n - r > 2 (got n={n}, r={r}); "
            "the oracle brute_force_solve has no such restriction"
        )
    lam1, lam2 = lam.evaluated()
    out = []
    for m in range(m_max + 1):
        for a0 in range(m + 1):
            for b0 in range(m - a0 + 1):
                for c0 in range(m - a0 - b0 + 1):
                    d0 = m - a0 - b0 - c0
                    if a0 > 0 and b0 > 0:
                        tag = "Case1"
                        if a0 + c0 != lam1 + 1 or b0 + d0 != lam2 + 1:
                            continue
                    elif a0 > 0:
                        tag = "Case2"
                        if a0 + c0 != lam1 + 1:
                            continue
                    elif b0 > 0:
                        tag = "Case3"
                        if b0 + d0 != lam2 + 1:
                            continue
                    else:
                        tag = "Case4"
                    comp = ComponentDescriptor(a0, b0, c0, d0, tag, lam, n, r)
                    if comp.ell_data():
                        out.append(comp)
    return out


@dataclass
class SingularVector:
    """One explicit singular vector: polynomial model, PBW image, provenance."""

    polynomial: PolyVector
    pbw: verma.PbwVector
    component: ComponentDescriptor
    euler: tuple[int, int]


def _solver_realization(lam: Character, n: int):
    """The one rho-shift site: module parameter -> operator realization."""
    return realize.realization_for(n, lam.shifted_by_rho())


def _radial_expand(vs: VarSet, r: int, radial: fischer.RadialZPoly) -> dict:
    """q'^i q''^j z^k monomial expansions as PolyVectors, cached per varset."""
    qp = fischer._q_primed_poly(vs, r)
    qpp = fischer._q_doubleprimed_poly(vs, r) if r else None
    out = {}
    for (i, j, k), c in radial.items():
        piece = PolyVector.constant(vs, 1)
        for _ in range(i):
            piece = piece * qp
        for _ in range(j):
            piece = piece * qpp
        if k:
            mono = [0] * vs.nvars
            mono[vs.z] = k
            piece = piece * PolyVector.monomial(vs, tuple(mono))
        out[(i, j, k)] = piece.scale(c)
    return out


def build_R(
    comp: ComponentDescriptor,
    hprime: PolyVector,
    hdprime: PolyVector,
    u: fischer.RadialPoly,
) -> SingularVector:
    """Assemble the singular vector T(u) tensor h' tensor h'' of one cell.

    hprime and hdprime are given on the full variable set (already embedded in
    their blocks); u is a degree-l radial polynomial from S^lam_{l, c0+d0}.
    """
    n, r = comp.n, comp.r
    vs = dual(n)
    lam1, lam2 = comp.lam.evaluated()

    ell = max((i + j for (i, j) in u), default=0)
    _check_membership(comp, hprime, hdprime, u, ell)

    T = fischer.TOperator.create(comp.a0 + comp.c0, comp.b0 + comp.d0, lam1, lam2)
    radial = {(i, j, 0): c for (i, j), c in u.items()}
    transformed = fischer.t_apply_radial(T, radial)
    harmonic = hprime * hdprime
    poly = PolyVector.zero(vs)
    for _, piece in _radial_expand(vs, r, transformed).items():
        poly = poly + piece * harmonic
    pbw = realize.poly_to_pbw(poly, comp.lam)
    return SingularVector(poly, pbw, comp, (comp.m, comp.t))


def _check_membership(comp, hprime, hdprime, u, ell):
    from .weyl import box_primed, box_doubleprimed

    n, r = comp.n, comp.r
    vs = hprime.varset
    lam1, lam2 = comp.lam.evaluated()
    if not box_primed(vs, r).apply(hprime).is_zero():
        raise ValueError("h' is not primed-harmonic")
    if r and not box_doubleprimed(vs, r).apply(hdprime).is_zero():
        raise ValueError("h'' is not double-primed-harmonic")
    if any(i + j != ell for (i, j) in u):
        raise ValueError("u is not homogeneous")
    alpha = -(comp.c0 + comp.d0) + lam1 + lam2 + 2
    beta = Fraction(comp.c0 + comp.d0 - 2 * ell)
    Q = fischer.QOperator(alpha, beta, n, r)
    if fischer.q_apply(Q, u):
        raise ValueError("u is not in the S kernel")


def component_basis(comp: ComponentDescriptor) -> list[SingularVector]:
    """A basis of the component, built cell by cell."""
    n, r = comp.n, comp.r
    vs = dual(n)
    lam1, lam2 = comp.lam.evaluated()
    hp_small = fischer.harmonic_basis(comp.a0, comp.b0, n - r)
    hp_list = [embed_xy(h, vs, 0) for h in hp_small.basis]
    out = []
    for ell, _, _, _ in comp.ell_data():
        if r == 0:
            hpp_list = [PolyVector.constant(vs, 1)]
        else:
            hpp_small = fischer.harmonic_basis(comp.c0 - ell, comp.d0 - ell, r)
            hpp_list = [embed_xy(h, vs, n - r) for h in hpp_small.basis]
        for u in fischer.solve_S(ell, comp.c0 + comp.d0, lam1, lam2, n, r):
            for hp in hp_list:
                for hpp in hpp_list:
                    out.append(build_R(comp, hp, hpp, u))
    return out


# -- recurrence consistency gate --------------------------------------------------


def recurrence_check(sv: SingularVector) -> bool:
    """Verify the z-layer recurrences of the annihilation system, exactly."""
    return recurrence_check_poly(sv.polynomial, sv.component.lam, sv.component.n, sv.component.r)


def recurrence_check_poly(R: PolyVector, lam: Character, n: int, r: int) -> bool:
    from .weyl import box, euler_x, euler_y

    vs = R.varset
    lam1, lam2 = lam.evaluated()
    rho = Fraction(n + 1, 2)
    l1d, l2d = lam1 + rho, lam2 + rho

    # split R = sum_k R_{m-2k} z^k into z-free layers
    layers: dict[int, PolyVector] = {}
    for mono, c in R.terms.items():
        k = mono[vs.z]
        stripped = mono[: vs.z] + (0,)
        layers.setdefault(k, PolyVector.zero(vs))
        layers[k] = layers[k] + PolyVector(vs, {stripped: c})
    if not layers:
        return True
    kmax = max(layers)
    get = lambda k: layers.get(k, PolyVector.zero(vs))
    bx = box(vs)
    Ex, Ey = euler_x(vs), euler_y(vs)
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    for k in range(kmax + 1):
        for i in range(1, n - r + 1):
            xi = PolyVector.variable(vs, vs.x(i))
            yi = PolyVector.variable(vs, vs.y(i))
            dx = lambda f: _partial(f, vs.x(i))
            dy = lambda f: _partial(f, vs.y(i))
            wx = Ex.apply(get(k)) + get(k).scale(Fraction(k, 2) - l1d + Fraction(n - 1, 2))
            lhs_p = (
                yi.scale(-(k + 1)) * get(k + 1)
                + dx(wx)
                - (yi * bx.apply(get(k))).scale(half)
                - dx(bx.apply(get(k - 1))).scale(quarter)
            )
            if not lhs_p.is_zero():
                return False
            wy = Ey.apply(get(k)) + get(k).scale(Fraction(k, 2) - l2d + Fraction(n - 1, 2))
            lhs_q = (
                xi.scale(k + 1) * get(k + 1)
                + dy(wy)
                - (xi * bx.apply(get(k))).scale(half)
                + dy(bx.apply(get(k - 1))).scale(quarter)
            )
            if not lhs_q.is_zero():
                return False
    return True


def _partial(f: PolyVector, slot: int) -> PolyVector:
    out = {}
    for mono, c in f.terms.items():
        e = mono[slot]
        if e:
            m = list(mono)
            m[slot] = e - 1
            out[tuple(m)] = c.scale(e)
    return PolyVector(f.varset, out)


# -- brute-force oracle ------------------------------------------------------------


def slice_monomials(n: int, r: int, m: int, t: int) -> list[tuple[int, ...]]:
    """Monomial basis of the (m, t) bigraded slice of C[x, y, z]."""
    vs = dual(n)
    out = []
    for zexp in range(m // 2 + 1):
        rest = m - 2 * zexp
        for ax in fischer._compositions(rest, 2 * n):
            tval = 0
            for i in range(n):
                w = (n - r + 2) if i < n - r else (n - r)
                tval += w * (ax[i] - ax[n + i])
            if tval != t:
                continue
            out.append(ax + (zexp,))
    return sorted(out)


def admissible_t(n: int, r: int, m: int) -> list[int]:
    values = set()
    for zexp in range(m // 2 + 1):
        rest = m - 2 * zexp
        for ax in fischer._compositions(rest, 2 * n):
            tval = 0
            for i in range(n):
                w = (n - r + 2) if i < n - r else (n - r)
                tval += w * (ax[i] - ax[n + i])
            values.add(tval)
    return sorted(values)


def brute_force_solve(lam: Character, n: int, r: int, m: int, t: int) -> list[PolyVector]:
    """Exact kernel basis of the stacked pi_hat(d_i), pi_hat(e_i) on the slice."""
    if not 0 <= r < n:
        raise ValueError(f"r={r} out of range for n={n}")
    if m < 0:
        raise ValueError("m must be >= 0")
    real = _solver_realization(lam, n)
    ops = []
    for i in range(1, n - r + 1):
        ops.append(real.pi_hat(basis_d(i)))
        ops.append(real.pi_hat(basis_e(i)))
    vs = real.vs_dual
    cols = slice_monomials(n, r, m, t)
    if not cols:
        return []
    rows: list[list[Fraction]] = []
    for op in ops:
        row_index: dict[tuple, int] = {}
        op_rows: list[list[Fraction]] = []
        for j, mono in enumerate(cols):
            image = op.apply(PolyVector.monomial(vs, mono))
            for tm, c in image.terms.items():
                idx = row_index.get(tm)
                if idx is None:
                    idx = len(op_rows)
                    row_index[tm] = idx
                    op_rows.append([Fraction(0)] * len(cols))
                op_rows[idx][j] = c.constant()
        rows.extend(op_rows)
    kernel = _linalg.nullspace(rows, len(cols))
    return [
        PolyVector(vs, {cols[j]: v for j, v in enumerate(vec) if v})
        for vec in kernel
    ]


# -- highest-weight analysis --------------------------------------------------------


def highest_weight_filter(basis: list[PolyVector], n: int, r: int) -> list[PolyVector]:
    """Sub-basis additionally killed by the raising operators of [l'_r, l'_r]."""
    if n - r < 2:
        raise ValueError("needs n - r >= 2 (no raising operators otherwise)")
    if not basis:
        return []
    real = realize.realization_for(n, Character.generic(n))
    raising = [
        real.pi_hat(hmat_elementary(n, i, j))
        for i in range(1, n - r + 1)
        for j in range(i + 1, n - r + 1)
    ]
    vs = basis[0].varset
    rows: list[list[Fraction]] = []
    for op in raising:
        row_index: dict[tuple, int] = {}
        op_rows: list[list[Fraction]] = []
        for j, vec in enumerate(basis):
            image = op.apply(vec)
            for tm, c in image.terms.items():
                idx = row_index.get(tm)
                if idx is None:
                    idx = len(op_rows)
                    row_index[tm] = idx
                    op_rows.append([Fraction(0)] * len(basis))
                op_rows[idx][j] = c.constant()
        rows.extend(op_rows)
    kernel = _linalg.nullspace(rows, len(basis))
    out = []
    for vec in kernel:
        acc = PolyVector.zero(vs)
        for j, v in enumerate(vec):
            if v:
                acc = acc + basis[j].scale(v)
        out.append(acc)
    return out


def monomial_torus_weight(mono: tuple[int, ...], n: int, r: int) -> tuple[int, ...]:
    """Eigenvalues under the Cartan of [l'_r, l'_r] (differences of x-y degrees)."""
    diffs = [mono[i] - mono[n + i] for i in range(n - r)]
    return tuple(diffs[i] - diffs[i + 1] for i in range(n - r - 1))


def hw_weight_counts(filtered: list[PolyVector], n: int, r: int) -> dict[tuple, int]:
    """Dimension of the filtered span per full [l',l']-torus weight.

    The span is torus-invariant, so it is the direct sum of its weight pieces;
    each piece is cut out by zeroing the complementary monomial coordinates.
    """
    if not filtered:
        return {}
    monos = sorted({m for v in filtered for m in v.terms})
    col = {m: i for i, m in enumerate(monos)}
    mat = [[Fraction(0)] * len(monos) for _ in filtered]
    for i, v in enumerate(filtered):
        for m, c in v.terms.items():
            mat[i][col[m]] = c.constant()
    weights = sorted({monomial_torus_weight(m, n, r) for m in monos})
    total = _linalg.rank(mat)
    out = {}
    for w in weights:
        keep = {col[m] for m in monos if monomial_torus_weight(m, n, r) == w}
        zeroed = [
            [v if j not in keep else Fraction(0) for j, v in enumerate(row)]
            for row in mat
        ]
        dim = total - _linalg.rank(zeroed)
        if dim:
            out[w] = dim
    return out


def scalar_weight_drop(n: int, r: int, m: int, t: int) -> tuple[int, int] | None:
    """(a, b) with mu = (lam1-a, lam2-b) for a scalar-type slice, if integral."""
    nr = n - r
    if t % nr:
        return None
    diff = t // nr
    if (m + diff) % 2:
        return None
    a = (m + diff) // 2
    b = (m - diff) // 2
    if a < 0 or b < 0:
        return None
    return a, b


# -- the conjectural factorization --------------------------------------------------


def factorization_check(lam: Character, a: int, n: int) -> bool:
    """Build the ordered degree-2a product vector and test u-annihilation (r = 0).

    The verdict is reported, never assumed: callers decide what a failure means.
    """
    lam1, lam2 = lam.evaluated()
    if lam1 + lam2 + n != a - 1:
        raise ValueError("factorization_check needs lam1 + lam2 + n = a - 1")
    v = verma.factorization_product(n, lam, a)
    return verma.is_singular(v, 0)


# -- slice-by-slice cross-validation -------------------------------------------------


def _poly_rows(vectors: list[PolyVector], cols: list[tuple]) -> list[list[Fraction]]:
    col = {m: i for i, m in enumerate(cols)}
    rows = []
    for v in vectors:
        row = [Fraction(0)] * len(cols)
        for m, c in v.terms.items():
            row[col[m]] = c.constant()
        rows.append(row)
    return rows


def slice_report(lam: Character, n: int, r: int, m: int, t: int, comps) -> dict:
    """Oracle-vs-classification comparison for one (m, t) slice."""
    oracle = brute_force_solve(lam, n, r, m, t)
    at_slice = [c for c in comps if (c.m, c.t) == (m, t)]
    predicted = sum(c.dimension() for c in at_slice)
    built = [sv.polynomial for c in at_slice for sv in component_basis(c)]
    cols = slice_monomials(n, r, m, t)
    oracle_rows = _poly_rows(oracle, cols)
    built_rows = _poly_rows(built, cols)
    built_rank = _linalg.rank(built_rows) if built_rows else 0
    concat_rank = (
        _linalg.rank(oracle_rows + built_rows) if (oracle_rows or built_rows) else 0
    )
    match = (
        len(oracle) == predicted
        and built_rank == predicted
        and concat_rank == len(oracle)
    )
    return {
        "m": m,
        "t": t,
        "oracle_dim": len(oracle),
        "predicted_dim": predicted,
        "built_rank": built_rank,
        "match": match,
        "components": [c.to_json() for c in at_slice],
        "basis": [p.to_json() for p in oracle],
    }


def verify_slices(lam: Character, n: int, r: int, m_max: int, max_workers: int = 1) -> dict:
    """Oracle-vs-classification comparison for every slice m <= m_max.

    For each admissible (m, t): the brute-force kernel dimension must equal the
    predicted component dimension, and the span of the built vectors must equal
    the oracle span (checked by exact ranks of the concatenated bases).
    Slices are independent; results are assembled in slice order regardless of
    the worker count.
    """
    comps = enumerate_components(lam, n, r, m_max)
    tasks = [(m, t) for m in range(m_max + 1) for t in admissible_t(n, r, m)]
    if max_workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            slices = list(
                pool.map(lambda mt: slice_report(lam, n, r, mt[0], mt[1], comps), tasks)
            )
    else:
        slices = [slice_report(lam, n, r, m, t, comps) for m, t in tasks]
    ok = all(s["match"] for s in slices)
    return {"ok": ok, "slices": slices, "components": [c.to_json() for c in comps]}
