"""The generalized Verma module M(lambda) = U(ubar) . v as PBW vectors.

Words are stored in the fixed PBW order f^alpha g^beta c^gamma (f's ascending,
then g's ascending, then the central c), applied to the highest-weight vector.
The action of any structured basis element is computed by moving it rightward
through a word with lie.bracket until it hits v, where the nilradical kills it,
[l, l] kills it, and h_1, h_2 act by lambda1+lambda2 and lambda1-lambda2.
Those two pairings are the sign convention of this artifact: they are certified
by the action axiom and the known low-degree singular vectors, not assumed.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import ParamScalar, PS_ONE
from .lie import Character, LieBasisElement, LieElement, basis_d, basis_e, bracket

PbwWord = tuple[tuple[int, ...], tuple[int, ...], int]

_bracket_cache: dict[tuple, LieElement] = {}


def _cached_bracket(n: int, x: LieBasisElement, y: LieBasisElement) -> LieElement:
    key = (n, x, y)
    out = _bracket_cache.get(key)
    if out is None:
        out = bracket(x, y, n)
        _bracket_cache[key] = out
    return out


def word_degree(word: PbwWord) -> int:
    alpha, beta, gamma = word
    return sum(alpha) + sum(beta) + gamma


def unit_word(n: int) -> PbwWord:
    return ((0,) * n, (0,) * n, 0)


def _merge(into: dict, word: PbwWord, coeff: ParamScalar):
    if coeff.is_zero():
        return
    s = into.get(word)
    s = coeff if s is None else s + coeff
    if s.is_zero():
        into.pop(word, None)
    else:
        into[word] = s


def mult_f(terms: dict, i: int) -> dict:
    """Left multiplication by f_i on PBW terms (f's commute into place)."""
    out: dict = {}
    for (alpha, beta, gamma), c in terms.items():
        a = list(alpha)
        a[i - 1] += 1
        _merge(out, (tuple(a), beta, gamma), c)
    return out


def mult_g(terms: dict, i: int) -> dict:
    """Left multiplication by g_i: g_i f^alpha = f^alpha g_i + alpha_i f^(alpha-e_i) c."""
    out: dict = {}
    for (alpha, beta, gamma), c in terms.items():
        b = list(beta)
        b[i - 1] += 1
        _merge(out, (alpha, tuple(b), gamma), c)
        ai = alpha[i - 1]
        if ai:
            a = list(alpha)
            a[i - 1] -= 1
            _merge(out, (tuple(a), beta, gamma + 1), c.scale(ai))
    return out


def mult_c(terms: dict) -> dict:
    out: dict = {}
    for (alpha, beta, gamma), c in terms.items():
        _merge(out, (alpha, beta, gamma + 1), c)
    return out


_act_cache: dict[tuple, dict] = {}


def _act_word(x: LieBasisElement, word: PbwWord, n: int, lam: Character) -> dict:
    """X . (word . v) as PBW terms."""
    key = (n, lam.key(), x, word)
    hit = _act_cache.get(key)
    if hit is not None:
        return hit

    alpha, beta, gamma = word
    if word_degree(word) == 0:
        kind = x.kind
        if kind == "f":
            out = mult_f({word: PS_ONE}, x.i)
        elif kind == "g":
            out = mult_g({word: PS_ONE}, x.i)
        elif kind == "c":
            out = mult_c({word: PS_ONE})
        elif kind == "h1":
            out = {word: lam.lam1 + lam.lam2}
        elif kind == "h2":
            out = {word: lam.lam1 - lam.lam2}
        else:  # hmat, d, e, a all annihilate the highest-weight vector
            out = {}
        out = {w: c for w, c in out.items() if not c.is_zero()}
        _act_cache[key] = out
        return out

    # peel the leftmost letter L of the word
    lead_i = next((i for i, e in enumerate(alpha) if e), None)
    if lead_i is not None:
        a = list(alpha)
        a[lead_i] -= 1
        rest = (tuple(a), beta, gamma)
        mult = lambda t: mult_f(t, lead_i + 1)
        letter = LieBasisElement("f", i=lead_i + 1)
    else:
        lead_i = next((i for i, e in enumerate(beta) if e), None)
        if lead_i is not None:
            b = list(beta)
            b[lead_i] -= 1
            rest = (alpha, tuple(b), gamma)
            mult = lambda t: mult_g(t, lead_i + 1)
            letter = LieBasisElement("g", i=lead_i + 1)
        else:
            rest = (alpha, beta, gamma - 1)
            mult = mult_c
            letter = LieBasisElement("c")

    out = dict(mult(_act_word(x, rest, n, lam)))
    br = _cached_bracket(n, x, letter)
    for y, cv in br.terms.items():
        for w, c in _act_word(y, rest, n, lam).items():
            _merge(out, w, c.scale(cv))
    _act_cache[key] = out
    return out


class PbwVector:
    """Element of M(lambda) as a combination of PBW words applied to v."""

    __slots__ = ("n", "lam", "terms")

    def __init__(self, n: int, lam: Character, terms=None):
        if lam.n != n:
            raise ValueError("character rank mismatch")
        self.n = n
        self.lam = lam
        clean: dict[PbwWord, ParamScalar] = {}
        for word, c in (terms or {}).items():
            c = ParamScalar.of(c)
            if not c.is_zero():
                clean[word] = c
        self.terms = clean

    @classmethod
    def highest_weight(cls, n: int, lam: Character) -> "PbwVector":
        return cls(n, lam, {unit_word(n): PS_ONE})

    @classmethod
    def zero(cls, n: int, lam: Character) -> "PbwVector":
        return cls(n, lam)

    def _wrap(self, terms: dict) -> "PbwVector":
        return PbwVector(self.n, self.lam, terms)

    def __add__(self, other: "PbwVector") -> "PbwVector":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _merge(out, w, c)
        return self._wrap(out)

    def __neg__(self) -> "PbwVector":
        return self._wrap({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "PbwVector") -> "PbwVector":
        return self + (-other)

    def scale(self, c) -> "PbwVector":
        c = ParamScalar.of(c)
        return self._wrap({w: v * c for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, PbwVector):
            return NotImplemented
        return (self.n, self.lam, self.terms) == (other.n, other.lam, other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "PbwVector"):
        if self.n != other.n or self.lam != other.lam:
            raise ValueError("mixing vectors from different modules")

    def mult_f(self, i: int) -> "PbwVector":
        return self._wrap(mult_f(self.terms, i))

    def mult_g(self, i: int) -> "PbwVector":
        return self._wrap(mult_g(self.terms, i))

    def mult_c(self) -> "PbwVector":
        return self._wrap(mult_c(self.terms))

    def act(self, x) -> "PbwVector":
        """Action of a structured basis element or LieElement."""
        if isinstance(x, LieElement):
            out: dict = {}
            for be, cv in x.terms.items():
                for w, c in self._act_basis(be).terms.items():
                    _merge(out, w, c.scale(cv))
            return self._wrap(out)
        return self._act_basis(x)

    def _act_basis(self, x: LieBasisElement) -> "PbwVector":
        out: dict = {}
        for word, c in self.terms.items():
            for w, cw in _act_word(x, word, self.n, self.lam).items():
                _merge(out, w, cw * c)
        return self._wrap(out)

    def degree(self) -> int:
        return max((word_degree(w) for w in self.terms), default=0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for word in sorted(self.terms, key=lambda w: (word_degree(w), w)):
            alpha, beta, gamma = word
            c = self.terms[word]
            letters = []
            for i, e in enumerate(alpha):
                if e:
                    letters.append(f"f{i + 1}" if e == 1 else f"f{i + 1}^{e}")
            for i, e in enumerate(beta):
                if e:
                    letters.append(f"g{i + 1}" if e == 1 else f"g{i + 1}^{e}")
            if gamma:
                letters.append("c" if gamma == 1 else f"c^{gamma}")
            body = " ".join(letters) if letters else ""
            cs = str(c)
            if len(c.terms) > 1:
                prefix = f"({cs})"
            elif c == PS_ONE and body:
                prefix = ""
            else:
                prefix = cs
            sep = " " if prefix and body else ""
            word_s = f"{prefix}{sep}{body}".strip() or "1"
            pieces.append(f"{word_s} . v")
        return " + ".join(pieces)

    __repr__ = __str__

    def to_json(self) -> list:
        return [
            [list(w[0]), list(w[1]), w[2], str(self.terms[w])]
            for w in sorted(self.terms, key=lambda w: (word_degree(w), w))
        ]


def is_singular(v: PbwVector, r: int) -> bool:
    """True iff v is annihilated by the nilradical u'_r.

    Only the generators d_i, e_i (i <= n-r) are tested; a = [d_1, e_1] follows.
    """
    if not 0 <= r <= v.n - 1:
        raise ValueError(f"r={r} out of range for n={v.n}")
    for i in range(1, v.n - r + 1):
        if not v.act(basis_d(i)).is_zero():
            return False
        if not v.act(basis_e(i)).is_zero():
            return False
    return True


def crosscheck_phi(v: PbwVector) -> bool:
    """Verify the two verification routes agree on v.

    Pushing v to the polynomial model and acting by pi_hat must agree with
    acting first and pushing then, for every structured basis element.
    """
    from . import realize
    from .lie import structured_basis

    real = realize.realization_for(v.n, v.lam.shifted_by_rho())
    base = realize.phi_fourier(v)
    for x in structured_basis(v.n):
        lhs = realize.phi_fourier(v.act(x))
        rhs = real.pi_hat(x).apply(base)
        if lhs != rhs:
            return False
    return True


# -- the explicit low-degree singular vectors -----------------------------------


def quadratic_factor(v: PbwVector, const: ParamScalar) -> PbwVector:
    """(sum_i f_i g_i + const*c) applied to v by left multiplication."""
    out = PbwVector.zero(v.n, v.lam)
    for i in range(1, v.n + 1):
        out = out + v.mult_g(i).mult_f(i)
    return out + v.mult_c().scale(const)


def factorization_product(n: int, lam: Character, a: int) -> PbwVector:
    """The ordered degree-2a product vector behind the r=0 examples.

    Factor j carries the constant (lam1 - lam2 + n - a + 2j + 1)/2; the j = a-1
    factor is applied first (it sits next to v).
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    v = PbwVector.highest_weight(n, lam)
    base = lam.lam1 - lam.lam2 + ParamScalar.of(n - a + 1)
    for j in reversed(range(a)):
        const = (base + 2 * j).scale(Fraction(1, 2))
        v = quadratic_factor(v, const)
    return v


def example_r0_degree2(n: int, lam: Character) -> PbwVector:
    """Graded-homogeneity-two singular vector; valid when lam1+lam2+n = 0."""
    return factorization_product(n, lam, 1)


def example_r0_degree4(n: int, lam: Character) -> PbwVector:
    """Graded-homogeneity-four singular vector; valid when lam1+lam2+n = 1."""
    return factorization_product(n, lam, 2)


def example_r0_vector_valued(n: int) -> PbwVector:
    """f_1 g_n . v at lam = 0, the vector-valued-target example."""
    lam = Character.of(n, 0, 0)
    return PbwVector.highest_weight(n, lam).mult_g(n).mult_f(1)


def examples_r1(n: int, lam: Character, a: int) -> dict[str, PbwVector]:
    """The four r = 1 singular-vector families at graded homogeneity a / a+2."""
    if n < 2:
        raise ValueError("need n >= 2 for the r = 1 families")
    hw = PbwVector.highest_weight(n, lam)
    fna = hw
    gna = hw
    for _ in range(a):
        fna = fna.mult_f(n)
        gna = gna.mult_g(n)

    kappa = (lam.lam1 + lam.lam2 + ParamScalar.of(n - 1 - a)).scale(
        Fraction(1, a + 1)
    )

    e3 = PbwVector.zero(n, lam)
    for i in range(1, n):
        e3 = e3 + fna.mult_f(i).mult_g(i)
    e3 = e3 + fna.mult_c().scale(lam.lam1 - a)
    e3 = e3 - fna.mult_f(n).mult_g(n).scale(kappa)

    e4 = PbwVector.zero(n, lam)
    for i in range(1, n):
        e4 = e4 + gna.mult_g(i).mult_f(i)
    e4 = e4 - gna.mult_c().scale(lam.lam2 - a)
    e4 = e4 - gna.mult_g(n).mult_f(n).scale(kappa)

    return {"f_n^a": fna, "g_n^a": gna, "mixed_f": e3, "mixed_g": e4}
