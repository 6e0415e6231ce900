"""Operator realizations of sl(n+2) in the Weyl algebras, and the PBW bridge.

``Realization(n, character)`` produces the closed-form operators on both sides
(pi on the hatted side, pi_hat on the dual side).  The character it receives is
the one appearing verbatim in those closed forms; internally they realize the
rho-shifted twist, so the quotient by I_e carries the module with highest
weight character - rho.  Callers working at the module level shift once,
centrally (see branching).

``pi_generic`` evaluates the nilpotency-truncated exponential/Bernoulli series
of the general realization directly on matrices with polynomial entries.  It
shares no formulas with the closed forms and serves as their oracle.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import ParamScalar, PS_ONE
from .lie import (
    Character,
    LieBasisElement,
    LieElement,
    Matrix,
    as_element,
    basis_c,
    basis_f,
    basis_g,
    mat_commutator,
)
from .weyl import (
    DUAL,
    HATTED,
    PolyVector,
    VarSet,
    WeylElement,
    dual,
    euler_x,
    euler_y,
    euler_z,
    hatted,
    q_poly,
    box,
)
from . import verma

# z/(e^z - 1) up to order 4; nilpotency of ad on the |2|-graded algebra makes
# the truncation exact (ad^5 = 0).
_BERNOULLI = [
    Fraction(1),
    Fraction(-1, 2),
    Fraction(1, 12),
    Fraction(0),
    Fraction(-1, 720),
]
_AD_ORDER = 4

_HALF = Fraction(1, 2)


class Realization:
    """Cached operator images of the structured basis for one character."""

    def __init__(self, n: int, character: Character):
        if character.n != n:
            raise ValueError("character rank mismatch")
        self.n = n
        self.character = character
        self.vs_hat = hatted(n)
        self.vs_dual = dual(n)
        self._pi: dict[LieBasisElement, WeylElement] = {}
        self._pi_hat: dict[LieBasisElement, WeylElement] = {}
        self._word_ops: dict[verma.PbwWord, WeylElement] = {}

    # -- public API -------------------------------------------------------

    def pi(self, x) -> WeylElement:
        return self._linear(x, self._pi, self._build_pi, self.vs_hat)

    def pi_hat(self, x) -> WeylElement:
        return self._linear(x, self._pi_hat, self._build_pi_hat, self.vs_dual)

    def _linear(self, x, cache, builder, vs) -> WeylElement:
        if isinstance(x, LieElement):
            out = WeylElement.zero(vs)
            for be, cv in x.terms.items():
                out = out + self._cached(be, cache, builder).scale(cv)
            return out
        return self._cached(x, cache, builder)

    def _cached(self, x: LieBasisElement, cache, builder) -> WeylElement:
        op = cache.get(x)
        if op is None:
            op = builder(x)
            cache[x] = op
        return op

    # -- closed forms, hatted side ------------------------------------------

    def _build_pi(self, el: LieBasisElement) -> WeylElement:
        vs = self.vs_hat
        n = self.n
        lam1, lam2 = self.character.lam1, self.character.lam2
        X = lambda s: WeylElement.variable(vs, s)
        D = lambda s: WeylElement.derivative(vs, s)
        const = lambda c: WeylElement.constant(vs, c)
        Ex, Ey, Ez = euler_x(vs), euler_y(vs), euler_z(vs)
        qhat = WeylElement(vs, {(k, vs.zero_expo()): c for k, c in q_poly(vs).terms.items()})
        kind, i = el.kind, el.i
        if kind == "f":
            return -D(vs.x(i)) + X(vs.y(i)) * D(vs.z).scale(_HALF)
        if kind == "g":
            return -D(vs.y(i)) - X(vs.x(i)) * D(vs.z).scale(_HALF)
        if kind == "c":
            return -D(vs.z)
        if kind == "h1":
            return Ex + Ey + Ez.scale(2) + const(lam1 + lam2 + (n + 1))
        if kind == "h2":
            w = Fraction(n + 2, n)
            return Ex.scale(w) - Ey.scale(w) + const(lam1 - lam2)
        if kind == "hmat":
            out = WeylElement.zero(vs)
            for a in range(n):
                for b in range(n):
                    ab = el.block[a][b]
                    if ab:
                        out = out - (X(vs.x(b + 1)) * D(vs.x(a + 1))).scale(ab)
                        out = out + (X(vs.y(a + 1)) * D(vs.y(b + 1))).scale(ab)
            return out
        if kind == "d":
            weight = Ex + Ez.scale(_HALF) + const(lam1 + Fraction(n + 1, 2))
            return (
                X(vs.z) * D(vs.y(i))
                + X(vs.x(i)) * weight
                - (qhat * (D(vs.y(i)) - X(vs.x(i)) * D(vs.z).scale(_HALF))).scale(_HALF)
            )
        if kind == "e":
            weight = Ey + Ez.scale(_HALF) + const(lam2 + Fraction(n + 1, 2))
            return (
                -(X(vs.z) * D(vs.x(i)))
                + X(vs.y(i)) * weight
                - (qhat * (D(vs.x(i)) + X(vs.y(i)) * D(vs.z).scale(_HALF))).scale(_HALF)
            )
        if kind == "a":
            inner = Ex - Ey + const(lam1 - lam2) + (qhat * D(vs.z)).scale(_HALF)
            return (
                X(vs.z) * (Ex + Ey + Ez + const(lam1 + lam2 + (n + 1)))
                + (qhat * inner).scale(_HALF)
            )
        raise ValueError(f"unknown element {el}")

    # -- closed forms, dual side -----------------------------------------------

    def _build_pi_hat(self, el: LieBasisElement) -> WeylElement:
        vs = self.vs_dual
        n = self.n
        lam1, lam2 = self.character.lam1, self.character.lam2
        X = lambda s: WeylElement.variable(vs, s)
        D = lambda s: WeylElement.derivative(vs, s)
        const = lambda c: WeylElement.constant(vs, c)
        Ex, Ey, Ez = euler_x(vs), euler_y(vs), euler_z(vs)
        bx = box(vs)
        kind, i = el.kind, el.i
        if kind == "f":
            return -X(vs.x(i)) - (X(vs.z) * D(vs.y(i))).scale(_HALF)
        if kind == "g":
            return -X(vs.y(i)) + (X(vs.z) * D(vs.x(i))).scale(_HALF)
        if kind == "c":
            return -X(vs.z)
        if kind == "h1":
            return -Ex - Ey - Ez.scale(2) + const(lam1 + lam2 - (n + 1))
        if kind == "h2":
            w = Fraction(n + 2, n)
            return -Ex.scale(w) + Ey.scale(w) + const(lam1 - lam2)
        if kind == "hmat":
            out = WeylElement.zero(vs)
            for a in range(n):
                for b in range(n):
                    ab = el.block[a][b]
                    if ab:
                        out = out + (X(vs.x(a + 1)) * D(vs.x(b + 1))).scale(ab)
                        out = out - (X(vs.y(b + 1)) * D(vs.y(a + 1))).scale(ab)
            return out
        if kind == "d":
            weight = Ex + Ez.scale(_HALF) + const(-lam1 + Fraction(n - 1, 2))
            return (
                -(X(vs.y(i)) * D(vs.z))
                + D(vs.x(i)) * weight
                - ((X(vs.y(i)) + (X(vs.z) * D(vs.x(i))).scale(_HALF)) * bx).scale(_HALF)
            )
        if kind == "e":
            weight = Ey + Ez.scale(_HALF) + const(-lam2 + Fraction(n - 1, 2))
            return (
                X(vs.x(i)) * D(vs.z)
                + D(vs.y(i)) * weight
                - ((X(vs.x(i)) - (X(vs.z) * D(vs.y(i))).scale(_HALF)) * bx).scale(_HALF)
            )
        if kind == "a":
            inner = Ex - Ey + const(-lam1 + lam2) - (X(vs.z) * bx).scale(_HALF)
            return (
                D(vs.z) * (Ex + Ey + Ez + const(-lam1 - lam2 + n))
                - (inner * bx).scale(_HALF)
            )
        raise ValueError(f"unknown element {el}")

    # -- generic series realization (oracle) -------------------------------------

    def pi_generic(self, x) -> WeylElement:
        """Identity-chart series realization; must coincide with pi."""
        el = as_element(self.n, x)
        n = self.n
        vs = self.vs_hat
        shifted = self.character.shifted_by_rho()

        # matrices with polynomial coefficients: monomial -> (n+2)x(n+2) matrix
        u_terms = {}
        for i in range(1, n + 1):
            u_terms[vs.unit_expo(vs.x(i))] = basis_f(i).realize(n)
            u_terms[vs.unit_expo(vs.y(i))] = basis_g(i).realize(n)
        u_terms[vs.unit_expo(vs.z)] = basis_c().realize(n)

        def ad_u(pm: dict) -> dict:
            out: dict = {}
            for mono, m in pm.items():
                for umono, um in u_terms.items():
                    key = tuple(a + b for a, b in zip(mono, umono))
                    comm = mat_commutator(um, m)
                    if any(any(row) for row in comm):
                        if key in out:
                            out[key] = tuple(
                                tuple(a + b for a, b in zip(r1, r2))
                                for r1, r2 in zip(out[key], comm)
                            )
                        else:
                            out[key] = comm
            return out

        def scaled(pm: dict, c: Fraction) -> dict:
            return {
                mono: tuple(tuple(v * c for v in row) for row in m)
                for mono, m in pm.items()
            }

        def accumulate(acc: dict, pm: dict):
            for mono, m in pm.items():
                if mono in acc:
                    acc[mono] = tuple(
                        tuple(a + b for a, b in zip(r1, r2))
                        for r1, r2 in zip(acc[mono], m)
                    )
                else:
                    acc[mono] = m

        # e^{-ad u} applied to the element
        expneg: dict = {}
        cur = {vs.zero_expo(): el.matrix}
        accumulate(expneg, cur)
        fact = Fraction(1)
        for k in range(1, _AD_ORDER + 1):
            cur = ad_u(cur)
            if not cur:
                break
            fact *= -Fraction(1, k)
            accumulate(expneg, scaled(cur, fact))

        def split_ubar(m: Matrix) -> tuple[Matrix, Matrix]:
            size = n + 2
            ub = [[Fraction(0)] * size for _ in range(size)]
            rest = [list(row) for row in m]
            for i in range(1, n + 1):
                ub[i][0], rest[i][0] = m[i][0], Fraction(0)
                ub[n + 1][i], rest[n + 1][i] = m[n + 1][i], Fraction(0)
            ub[n + 1][0], rest[n + 1][0] = m[n + 1][0], Fraction(0)
            return (
                tuple(tuple(r) for r in ub),
                tuple(tuple(r) for r in rest),
            )

        vpart: dict = {}
        ppart: dict = {}
        for mono, m in expneg.items():
            ub, rest = split_ubar(m)
            if any(any(row) for row in ub):
                vpart[mono] = ub
            if any(any(row) for row in rest):
                ppart[mono] = rest

        # prefactor series ad(u) e^{ad u} / (e^{ad u} - id) = sum (-1)^k B_k ad^k
        w: dict = {}
        cur = vpart
        accumulate(w, scaled(cur, _BERNOULLI[0]))
        for k in range(1, _AD_ORDER + 1):
            cur = ad_u(cur)
            if not cur:
                break
            coeff = _BERNOULLI[k] if k % 2 == 0 else -_BERNOULLI[k]
            if coeff:
                accumulate(w, scaled(cur, coeff))

        terms: dict = {}
        zero = vs.zero_expo()
        for mono, m in w.items():
            for i in range(1, n + 1):
                if m[i][0]:
                    key = (mono, vs.unit_expo(vs.x(i)))
                    terms[key] = terms.get(key, ParamScalar()) + ParamScalar.of(-m[i][0])
                if m[n + 1][i]:
                    key = (mono, vs.unit_expo(vs.y(i)))
                    terms[key] = terms.get(key, ParamScalar()) + ParamScalar.of(-m[n + 1][i])
            if m[n + 1][0]:
                key = (mono, vs.unit_expo(vs.z))
                terms[key] = terms.get(key, ParamScalar()) + ParamScalar.of(-m[n + 1][0])
        for mono, m in ppart.items():
            val = shifted.value_on_matrix(m)
            if not val.is_zero():
                key = (mono, zero)
                terms[key] = terms.get(key, ParamScalar()) + val
        return WeylElement(vs, terms)

    # -- words of the opposite nilradical ---------------------------------------

    def word_operator(self, word: verma.PbwWord) -> WeylElement:
        """pi of the PBW monomial f^alpha g^beta c^gamma (ordered product)."""
        op = self._word_ops.get(word)
        if op is not None:
            return op
        alpha, beta, gamma = word
        if verma.word_degree(word) == 0:
            op = WeylElement.constant(self.vs_hat, 1)
        else:
            # peel the last letter: c, else the largest g, else the largest f
            if gamma:
                rest = (alpha, beta, gamma - 1)
                letter = basis_c()
            else:
                j = max((i for i, e in enumerate(beta) if e), default=None)
                if j is not None:
                    b = list(beta)
                    b[j] -= 1
                    rest = (alpha, tuple(b), gamma)
                    letter = basis_g(j + 1)
                else:
                    j = max(i for i, e in enumerate(alpha) if e)
                    a = list(alpha)
                    a[j] -= 1
                    rest = (tuple(a), beta, gamma)
                    letter = basis_f(j + 1)
            op = self.word_operator(rest) * self.pi(letter)
        self._word_ops[word] = op
        return op


_realizations: dict[tuple, Realization] = {}


def realization_for(n: int, character: Character) -> Realization:
    key = (n, character.key())
    real = _realizations.get(key)
    if real is None:
        real = Realization(n, character)
        _realizations[key] = real
    return real


# -- reduction modulo I_e ------------------------------------------------------


def reduce_mod_Ie(p: WeylElement) -> WeylElement:
    """Canonical constant-coefficient representative of p modulo I_e.

    Right-normal-ordering x^a d^b = sum_k (-1)^|k| C(a,k)C(b,k)k! d^(b-k) x^(a-k)
    and evaluating the right factors at 0 keeps only k = a, so a term survives
    iff its variable exponents are dominated by its derivative exponents.
    """
    if p.varset.side != HATTED:
        raise ValueError("reduce_mod_Ie expects a hatted-side element")
    out: dict = {}
    zero = p.varset.zero_expo()
    for (alpha, beta), c in p.terms.items():
        if any(a > b for a, b in zip(alpha, beta)):
            continue
        factor = 1
        for a, b in zip(alpha, beta):
            for j in range(a):
                factor *= b - j
        if sum(alpha) % 2:
            factor = -factor
        key = (zero, tuple(b - a for a, b in zip(alpha, beta)))
        add = c.scale(factor)
        s = out.get(key)
        s = add if s is None else s + add
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return WeylElement(p.varset, out)


# -- symmetrization and the polynomial <-> PBW bridge ----------------------------

_symmetrize_cache: dict[tuple, dict] = {}


def symmetrize(word: verma.PbwWord, n: int) -> dict:
    """PBW expansion of the symmetrized word (1/k!) sum over permutations.

    Computed by the recursion  sym(w) = (1/k) sum_L m_L * L . sym(w - L)
    over the distinct letters L of multiplicity m_L.
    """
    key = (n, word)
    hit = _symmetrize_cache.get(key)
    if hit is not None:
        return hit
    alpha, beta, gamma = word
    k = verma.word_degree(word)
    if k == 0:
        out = {word: PS_ONE}
        _symmetrize_cache[key] = out
        return out
    acc: dict = {}
    for i, e in enumerate(alpha):
        if e:
            a = list(alpha)
            a[i] -= 1
            sub = verma.mult_f(symmetrize((tuple(a), beta, gamma), n), i + 1)
            for w, c in sub.items():
                verma._merge(acc, w, c.scale(e))
    for i, e in enumerate(beta):
        if e:
            b = list(beta)
            b[i] -= 1
            sub = verma.mult_g(symmetrize((alpha, tuple(b), gamma), n), i + 1)
            for w, c in sub.items():
                verma._merge(acc, w, c.scale(e))
    if gamma:
        sub = verma.mult_c(symmetrize((alpha, beta, gamma - 1), n))
        for w, c in sub.items():
            verma._merge(acc, w, c.scale(gamma))
    out = {w: c.scale(Fraction(1, k)) for w, c in acc.items()}
    _symmetrize_cache[key] = out
    return out


def poly_to_pbw(R: PolyVector, lam: Character) -> verma.PbwVector:
    """Pull a dual-side polynomial back to the Verma module.

    Each monomial x^a y^b z^g of letter count k maps to (-1)^k times the
    symmetrized word f^a g^b c^g applied to the highest-weight vector.
    """
    if R.varset.side != DUAL:
        raise ValueError("poly_to_pbw expects a dual-side polynomial")
    n = R.varset.n
    out: dict = {}
    for mono, coeff in R.terms.items():
        word = (mono[:n], mono[n : 2 * n], mono[2 * n])
        k = verma.word_degree(word)
        sign = -1 if k % 2 else 1
        for w, c in symmetrize(word, n).items():
            verma._merge(out, w, (coeff * c).scale(sign))
    return verma.PbwVector(n, lam, out)


def pbw_to_poly(v: verma.PbwVector) -> PolyVector:
    """Inverse of poly_to_pbw, by triangular elimination along the degree filtration."""
    n = v.n
    vs = dual(n)
    remaining = dict(v.terms)
    out: dict = {}
    while remaining:
        word = max(remaining, key=lambda w: (verma.word_degree(w), w))
        coeff = remaining.pop(word)
        alpha, beta, gamma = word
        k = verma.word_degree(word)
        sign = -1 if k % 2 else 1
        mono = alpha + beta + (gamma,)
        s = out.get(mono, ParamScalar()) + coeff.scale(sign)
        if s.is_zero():
            out.pop(mono, None)
        else:
            out[mono] = s
        for w, c in symmetrize(word, n).items():
            if w == word:
                continue
            verma._merge(remaining, w, -(coeff * c))
    return PolyVector(vs, out)


def phi_fourier(v: verma.PbwVector) -> PolyVector:
    """The operator-route image of v in the polynomial model.

    Multiplies out pi of each PBW word, reduces modulo I_e and transports the
    surviving constant-coefficient part through the Fourier transform.
    """
    real = realization_for(v.n, v.lam.shifted_by_rho())
    vs = real.vs_dual
    out: dict = {}
    for word, coeff in v.terms.items():
        red = reduce_mod_Ie(real.word_operator(word))
        for (_, beta), c in red.terms.items():
            s = out.get(beta, ParamScalar()) + coeff * c
            if s.is_zero():
                out.pop(beta, None)
            else:
                out[beta] = s
    return PolyVector(vs, out)


# -- certification loops --------------------------------------------------------


def homomorphism_failures(n: int, side: str = "pi_hat", character: Character | None = None):
    """Unordered basis pairs where [op(X), op(Y)] != op([X, Y]); empty = certified.

    Antisymmetry of both sides extends the check to all ordered pairs.
    """
    from .lie import structured_basis, bracket as lie_bracket

    char = character or Character.generic(n)
    real = realization_for(n, char)
    image = real.pi_hat if side == "pi_hat" else real.pi
    basis = structured_basis(n)
    failures = []
    ops = [image(x) for x in basis]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            lhs = ops[i].commutator(ops[j])
            rhs = image(lie_bracket(basis[i], basis[j], n))
            if lhs != rhs:
                failures.append((basis[i], basis[j]))
    return failures


def fourier_match_failures(n: int, character: Character | None = None):
    """Basis elements where fourier(pi(X)) != pi_hat(X); empty = certified."""
    from .lie import structured_basis

    char = character or Character.generic(n)
    real = realization_for(n, char)
    return [
        x
        for x in structured_basis(n)
        if real.pi(x).fourier() != real.pi_hat(x)
    ]


def generic_oracle_failures(n: int, character: Character | None = None):
    """Basis elements where the series realization disagrees with the closed form."""
    from .lie import structured_basis

    char = character or Character.generic(n)
    real = realization_for(n, char)
    return [x for x in structured_basis(n) if real.pi_generic(x) != real.pi(x)]
