"""Harmonic decomposition and the radial special-function layer.

The pair (q, box) with q = sum x_j y_j and box = sum d/dx_j d/dy_j splits the
polynomial algebra as C[q] tensor H, with H the box-harmonics; bihomogeneous
pieces H_{a,b} are computed as exact nullspaces (the closed-form dimension is a
test oracle only).  On the radial side live the Q_{alpha,beta} operators on
C[q', q''], their kernels S^lam_{l,s}, and the z-extension operators
T^lam_{r1,r2} with generating function (1+w)^(r1-lam1-1) (1-w)^(r2-lam2-1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import _linalg
from .coeff import ParamScalar
from .weyl import DUAL, PolyVector, VarSet, box, box_primed, box_doubleprimed, dual, q_poly

RadialPoly = dict[tuple[int, int], Fraction]
RadialZPoly = dict[tuple[int, int, int], Fraction]


def _compositions(total: int, parts: int):
    """All tuples of `parts` naturals summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def bihomogeneous_monomials(a: int, b: int, n_vars: int) -> list[tuple[int, ...]]:
    """Exponent tuples for P_{a,b}: x-degree a, y-degree b, no z."""
    vs = dual(n_vars)
    out = []
    for ax in _compositions(a, n_vars):
        for ay in _compositions(b, n_vars):
            out.append(ax + ay + (0,))
    return out


def dim_bihomogeneous(a: int, b: int, n_vars: int) -> int:
    if a < 0 or b < 0:
        return 0
    return comb(a + n_vars - 1, n_vars - 1) * comb(b + n_vars - 1, n_vars - 1)


def dim_harmonic(a: int, b: int, n_vars: int) -> int:
    """Closed-form dimension of H_{a,b}; used as an oracle against the nullspace."""
    return dim_bihomogeneous(a, b, n_vars) - dim_bihomogeneous(a - 1, b - 1, n_vars)


@dataclass
class HarmonicSpace:
    a: int
    b: int
    n_vars: int
    basis: list[PolyVector]

    @property
    def dim(self) -> int:
        return len(self.basis)


_harmonic_cache: dict[tuple[int, int, int], HarmonicSpace] = {}


def harmonic_basis(a: int, b: int, n_vars: int) -> HarmonicSpace:
    """Exact nullspace of box on the bihomogeneous space P_{a,b}."""
    if a < 0 or b < 0:
        raise ValueError("bidegrees must be non-negative")
    key = (a, b, n_vars)
    hit = _harmonic_cache.get(key)
    if hit is not None:
        return hit
    vs = dual(n_vars)
    cols = bihomogeneous_monomials(a, b, n_vars)
    if a == 0 or b == 0:
        basis = [PolyVector.monomial(vs, m) for m in cols]
        space = HarmonicSpace(a, b, n_vars, basis)
        _harmonic_cache[key] = space
        return space
    rows_index = {m: i for i, m in enumerate(bihomogeneous_monomials(a - 1, b - 1, n_vars))}
    bx = box(vs)
    matrix = [[Fraction(0)] * len(cols) for _ in rows_index]
    for j, mono in enumerate(cols):
        image = bx.apply(PolyVector.monomial(vs, mono))
        for m, c in image.terms.items():
            matrix[rows_index[m]][j] = c.constant()
    kernel = _linalg.nullspace(matrix, len(cols))
    basis = [
        PolyVector(vs, {cols[j]: v for j, v in enumerate(vec) if v})
        for vec in kernel
    ]
    space = HarmonicSpace(a, b, n_vars, basis)
    _harmonic_cache[key] = space
    return space


# -- Fischer projection ----------------------------------------------------------


def _block_bidegree(mono, vs: VarSet, lo: int, hi: int) -> tuple[int, int]:
    ax = sum(mono[vs.x(i)] for i in range(lo, hi + 1))
    ay = sum(mono[vs.y(i)] for i in range(lo, hi + 1))
    return ax, ay


def _fischer_bihom(f: PolyVector, a: int, b: int, bx, q, nv: int) -> dict[int, PolyVector]:
    """Decompose a block-(a,b)-bihomogeneous f as sum_k q^k h_k, h_k harmonic.

    Works with spectator variables untouched by the block operators; the
    inversion constants depend only on the block bidegree.
    """
    if f.is_zero():
        return {}
    if a == 0 or b == 0:
        return {0: f}
    image = bx.apply(f)
    if image.is_zero():
        return {0: f}
    sub = _fischer_bihom(image, a - 1, b - 1, bx, q, nv)
    parts: dict[int, PolyVector] = {}
    total = PolyVector.zero(f.varset)
    for k in sorted(sub):
        h = sub[k].scale(Fraction(1, (k + 1) * (nv + a + b - k - 2)))
        parts[k + 1] = h
        piece = h
        for _ in range(k + 1):
            piece = piece * q
        total = total + piece
    h0 = f - total
    if not h0.is_zero():
        parts[0] = h0
    return parts


def fischer_project(f: PolyVector, n_vars: int | None = None) -> list[tuple[int, PolyVector]]:
    """Unique decomposition f = sum_k q^k h_k with box-harmonic h_k.

    The input must live in the x/y block only (no z)."""
    vs = f.varset
    if n_vars is not None and n_vars != vs.n:
        raise ValueError("n_vars does not match the variable set")
    bx = box(vs)
    q = q_poly(vs)
    out: dict[int, PolyVector] = {}
    buckets: dict[tuple[int, int], dict] = {}
    for mono, c in f.terms.items():
        if mono[vs.z]:
            raise ValueError("fischer_project expects a z-free polynomial")
        buckets.setdefault(_block_bidegree(mono, vs, 1, vs.n), {})[mono] = c
    for (a, b), terms in sorted(buckets.items()):
        for k, h in _fischer_bihom(PolyVector(vs, terms), a, b, bx, q, vs.n).items():
            out[k] = out.get(k, PolyVector.zero(vs)) + h
    return sorted(((k, h) for k, h in out.items() if not h.is_zero()), key=lambda t: t[0])


def phi_decompose(f: PolyVector, r: int) -> dict[tuple[int, int, int], PolyVector]:
    """Write f as sum over q'^i q''^j z^k of doubly harmonic coefficients.

    Returns a map (i, j, k) -> h where h is killed by both block Laplacians.
    This realizes the inverse of the Fischer identification cell by cell.
    """
    vs = f.varset
    n = vs.n
    if not 0 <= r < n:
        raise ValueError(f"split index r={r} out of range for n={n}")
    bxp = box_primed(vs, r)
    qp = _q_primed_poly(vs, r)
    bxpp = box_doubleprimed(vs, r) if r else None
    qpp = _q_doubleprimed_poly(vs, r) if r else None
    out: dict[tuple[int, int, int], PolyVector] = {}

    by_z: dict[int, dict] = {}
    for mono, c in f.terms.items():
        zexp = mono[vs.z]
        stripped = mono[: vs.z] + (0,)
        by_z.setdefault(zexp, {})[stripped] = c
    for zexp, zterms in by_z.items():
        primed_buckets: dict[tuple[int, int], dict] = {}
        for mono, c in zterms.items():
            primed_buckets.setdefault(_block_bidegree(mono, vs, 1, n - r), {})[mono] = c
        for (a, b), terms in primed_buckets.items():
            for i, g in _fischer_bihom(
                PolyVector(vs, terms), a, b, bxp, qp, n - r
            ).items():
                if r == 0:
                    key = (i, 0, zexp)
                    out[key] = out.get(key, PolyVector.zero(vs)) + g
                    continue
                dp_buckets: dict[tuple[int, int], dict] = {}
                for mono, c in g.terms.items():
                    dp_buckets.setdefault(
                        _block_bidegree(mono, vs, n - r + 1, n), {}
                    )[mono] = c
                for (cdeg, ddeg), dterms in dp_buckets.items():
                    for j, h in _fischer_bihom(
                        PolyVector(vs, dterms), cdeg, ddeg, bxpp, qpp, r
                    ).items():
                        key = (i, j, zexp)
                        out[key] = out.get(key, PolyVector.zero(vs)) + h
    return {k: h for k, h in out.items() if not h.is_zero()}


def _q_primed_poly(vs: VarSet, r: int) -> PolyVector:
    from .weyl import q_primed

    return q_primed(vs, r)


def _q_doubleprimed_poly(vs: VarSet, r: int) -> PolyVector:
    from .weyl import q_doubleprimed

    return q_doubleprimed(vs, r)


def phi_compose(parts: dict[tuple[int, int, int], PolyVector], vs: VarSet, r: int) -> PolyVector:
    qp = _q_primed_poly(vs, r)
    qpp = _q_doubleprimed_poly(vs, r) if r else None
    out = PolyVector.zero(vs)
    zslot = vs.z
    for (i, j, k), h in parts.items():
        piece = h
        for _ in range(i):
            piece = piece * qp
        for _ in range(j):
            piece = piece * qpp
        if k:
            zmono = [0] * vs.nvars
            zmono[zslot] = k
            piece = piece * PolyVector.monomial(vs, tuple(zmono))
        out = out + piece
    return out


# -- the radial operators --------------------------------------------------------


@dataclass(frozen=True)
class QOperator:
    """q' d_{q'}^2 + (n-r+alpha) d_{q'} + q'' d_{q''}^2 + (r+beta) d_{q''}."""

    alpha: Fraction
    beta: Fraction
    n: int
    r: int


def q_apply(Q: QOperator, u: RadialPoly) -> RadialPoly:
    out: RadialPoly = {}
    for (i, j), c in u.items():
        if i:
            key = (i - 1, j)
            val = out.get(key, Fraction(0)) + c * i * (i - 1 + Q.n - Q.r + Q.alpha)
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        if j:
            key = (i, j - 1)
            val = out.get(key, Fraction(0)) + c * j * (j - 1 + Q.r + Q.beta)
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def radial_monomials(ell: int, r: int) -> list[tuple[int, int]]:
    """Monomials of C[q', q'']_ell; q'' collapses to zero when r = 0."""
    if r == 0:
        return [(ell, 0)]
    return [(ell - j, j) for j in range(ell + 1)]


def solve_S(ell: int, s: int, lam1: Fraction, lam2: Fraction, n: int, r: int) -> list[RadialPoly]:
    """Exact kernel basis of Q_{-s+lam1+lam2+2, s-2l} on degree-l radial polynomials."""
    if ell < 0 or s < 0:
        raise ValueError("ell and s must be non-negative")
    alpha = -s + Fraction(lam1) + Fraction(lam2) + 2
    beta = Fraction(s - 2 * ell)
    Q = QOperator(alpha, beta, n, r)
    cols = radial_monomials(ell, r)
    if ell == 0:
        return [{(0, 0): Fraction(1)}]
    rows = {m: i for i, m in enumerate(radial_monomials(ell - 1, r))}
    matrix = [[Fraction(0)] * len(cols) for _ in rows]
    for jcol, mono in enumerate(cols):
        for m, c in q_apply(Q, {mono: Fraction(1)}).items():
            matrix[rows[m]][jcol] = c
    kernel = _linalg.nullspace(matrix, len(cols))
    return [
        {cols[j]: v for j, v in enumerate(vec) if v}
        for vec in kernel
    ]


def t_coeffs(r1, r2, lam1, lam2, K: int) -> list[ParamScalar]:
    """alpha_0..alpha_K by the two-term recurrence, alpha_0 = 1, alpha_{-1} = 0."""
    if K < 0:
        raise ValueError("K must be >= 0")
    l1 = ParamScalar.of(lam1)
    l2 = ParamScalar.of(lam2)
    lin = ParamScalar.of(Fraction(r1) - Fraction(r2)) - l1 + l2
    out = [ParamScalar.of(1)]
    prev = ParamScalar.of(0)  # alpha_{-1}
    for k in range(-1, K - 1):
        drop = ParamScalar.of(Fraction(r1) + Fraction(r2) - 2 - k) - l1 - l2
        nxt = (lin * out[-1] - drop * prev).scale(Fraction(1, k + 2))
        prev = out[-1]
        out.append(nxt)
    return out


def t_series_coeffs(r1, r2, lam1, lam2, K: int) -> list[ParamScalar]:
    """Taylor coefficients of (1+w)^(r1-lam1-1) (1-w)^(r2-lam2-1), an independent oracle."""
    A = ParamScalar.of(Fraction(r1) - 1) - ParamScalar.of(lam1)
    B = ParamScalar.of(Fraction(r2) - 1) - ParamScalar.of(lam2)

    def gbinom(x: ParamScalar, k: int) -> ParamScalar:
        num = ParamScalar.of(1)
        for j in range(k):
            num = num * (x - j)
        return num.scale(Fraction(1, factorial(k)))

    out = []
    for k in range(K + 1):
        total = ParamScalar.of(0)
        for j in range(k + 1):
            sign = -1 if (k - j) % 2 else 1
            total = total + (gbinom(A, j) * gbinom(B, k - j)).scale(sign)
        out.append(total)
    return out


@dataclass(frozen=True)
class TOperator:
    """sum_k (alpha_k / 2^k) (z d_{q'})^k on the radial coordinate ring."""

    r1: int
    r2: int
    lam1: Fraction
    lam2: Fraction
    coeffs: tuple[Fraction, ...]

    @classmethod
    def create(cls, r1: int, r2: int, lam1, lam2, K: int | None = None) -> "TOperator":
        if K is None:
            K = (r1 + r2) // 2
        alphas = t_coeffs(r1, r2, lam1, lam2, K)
        return cls(r1, r2, Fraction(lam1), Fraction(lam2), tuple(a.constant() for a in alphas))


def t_apply_radial(T: TOperator, u: RadialZPoly) -> RadialZPoly:
    out: RadialZPoly = {}
    for (i, j, m), c in u.items():
        for k, alpha in enumerate(T.coeffs):
            if k > i:
                break
            if alpha == 0:
                continue
            fall = 1
            for step in range(k):
                fall *= i - step
            key = (i - k, j, m + k)
            val = out.get(key, Fraction(0)) + c * alpha * fall / (2**k)
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def t_apply(T: TOperator, f: PolyVector, r: int) -> PolyVector:
    """Apply T through the Fischer identification of the full polynomial ring."""
    parts = phi_decompose(f, r)
    out_parts: dict[tuple[int, int, int], PolyVector] = {}
    for (i, j, k), h in parts.items():
        for key, c in t_apply_radial(T, {(i, j, k): Fraction(1)}).items():
            acc = out_parts.get(key)
            add = h.scale(c)
            out_parts[key] = add if acc is None else acc + add
    return phi_compose(out_parts, f.varset, r)
