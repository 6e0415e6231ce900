"""Structure constants and conventions for sl(n+2, C) with Heisenberg parabolic.

The graded basis is f_i, g_i, c (opposite nilradical), d_i, e_i, a (nilradical)
and h_1, h_2, h_A (Levi factor, tr A = 0).  Every bracket is computed through
the (n+2)x(n+2) matrix realization and decomposed back into this basis, so the
matrices are the single source of truth; the textbook relations like
[f_i, g_i] = -c become test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import ParamScalar, format_rational

Matrix = tuple[tuple[Fraction, ...], ...]

_KINDS = ("f", "g", "c", "d", "e", "a", "h1", "h2", "hmat")
_INDEXED = ("f", "g", "d", "e")


def _mat(rows) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def _zeros(size: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * size for _ in range(size)]


def mat_commutator(A: Matrix, B: Matrix) -> Matrix:
    size = len(A)
    out = _zeros(size)
    for i in range(size):
        for k in range(size):
            aik = A[i][k]
            bik = B[i][k]
            if aik:
                row = B[k]
                for j in range(size):
                    if row[j]:
                        out[i][j] += aik * row[j]
            if bik:
                row = A[k]
                for j in range(size):
                    if row[j]:
                        out[i][j] -= bik * row[j]
    return _mat(out)


def mat_trace(A: Matrix) -> Fraction:
    return sum((A[i][i] for i in range(len(A))), Fraction(0))


@dataclass(frozen=True)
class LieBasisElement:
    """A named basis vector: f_i, g_i, c, d_i, e_i, a, h_1, h_2 or h_A.

    For kind "hmat" the traceless middle block is stored explicitly (as a
    tuple-of-tuples of Fractions, so elements stay hashable).
    """

    kind: str
    i: int = 0
    block: Matrix | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind in _INDEXED and self.i < 1:
            raise ValueError(f"{self.kind} needs a positive index")
        if self.kind == "hmat":
            if self.block is None:
                raise ValueError("hmat needs its middle block")
            if mat_trace(self.block) != 0:
                raise ValueError("hmat block must be traceless")

    def realize(self, n: int) -> Matrix:
        size = n + 2
        m = _zeros(size)
        k = self.kind
        if k in _INDEXED and self.i > n:
            raise IndexError(f"{self}: index out of range for n={n}")
        if k == "f":
            m[self.i][0] = Fraction(1)
        elif k == "g":
            m[n + 1][self.i] = Fraction(1)
        elif k == "c":
            m[n + 1][0] = Fraction(1)
        elif k == "d":
            m[0][self.i] = Fraction(1)
        elif k == "e":
            m[self.i][n + 1] = Fraction(1)
        elif k == "a":
            m[0][n + 1] = Fraction(1)
        elif k == "h1":
            m[0][0] = Fraction(1)
            m[n + 1][n + 1] = Fraction(-1)
        elif k == "h2":
            m[0][0] = Fraction(1)
            m[n + 1][n + 1] = Fraction(1)
            for i in range(1, n + 1):
                m[i][i] = Fraction(-2, n)
        else:  # hmat
            if len(self.block) != n:
                raise ValueError(f"hmat block is {len(self.block)}x{len(self.block)}, need {n}")
            for i in range(n):
                for j in range(n):
                    m[1 + i][1 + j] = self.block[i][j]
        return _mat(m)

    @property
    def grade(self) -> int:
        return {"f": -1, "g": -1, "c": -2, "d": 1, "e": 1, "a": 2}.get(self.kind, 0)

    def __str__(self) -> str:
        if self.kind in _INDEXED:
            return f"{self.kind}{self.i}"
        if self.kind == "hmat":
            rows = ";".join(
                ",".join(format_rational(v) for v in row) for row in self.block
            )
            return f"h[{rows}]"
        return self.kind

    __repr__ = __str__

    def to_json(self) -> dict:
        if self.kind in _INDEXED:
            return {"kind": self.kind, "i": self.i}
        if self.kind == "hmat":
            return {
                "kind": "hmat",
                "block": [[format_rational(v) for v in row] for row in self.block],
            }
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, data: dict) -> "LieBasisElement":
        kind = data["kind"]
        if kind in _INDEXED:
            return cls(kind, i=data["i"])
        if kind == "hmat":
            return cls(kind, block=_mat(data["block"]))
        return cls(kind)


def basis_f(i: int) -> LieBasisElement:
    return LieBasisElement("f", i=i)


def basis_g(i: int) -> LieBasisElement:
    return LieBasisElement("g", i=i)


def basis_c() -> LieBasisElement:
    return LieBasisElement("c")


def basis_d(i: int) -> LieBasisElement:
    return LieBasisElement("d", i=i)


def basis_e(i: int) -> LieBasisElement:
    return LieBasisElement("e", i=i)


def basis_a() -> LieBasisElement:
    return LieBasisElement("a")


def basis_h1() -> LieBasisElement:
    return LieBasisElement("h1")


def basis_h2() -> LieBasisElement:
    return LieBasisElement("h2")


def basis_hmat(block) -> LieBasisElement:
    return LieBasisElement("hmat", block=_mat(block))


def hmat_elementary(n: int, i: int, j: int) -> LieBasisElement:
    """Middle-block E_ij for i != j (1-based block indices)."""
    if i == j:
        raise ValueError("use hmat_diagdiff for diagonal directions")
    m = _zeros(n)
    m[i - 1][j - 1] = Fraction(1)
    return basis_hmat(m)


def hmat_diagdiff(n: int, i: int) -> LieBasisElement:
    """Middle-block E_ii - E_{i+1,i+1} (1 <= i <= n-1)."""
    m = _zeros(n)
    m[i - 1][i - 1] = Fraction(1)
    m[i][i] = Fraction(-1)
    return basis_hmat(m)


def hmat_spanning(n: int) -> list[LieBasisElement]:
    """The concrete spanning set of [l, l] used for certification loops."""
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                out.append(hmat_elementary(n, i, j))
    for i in range(1, n):
        out.append(hmat_diagdiff(n, i))
    return out


def structured_basis(n: int) -> list[LieBasisElement]:
    out = [basis_f(i) for i in range(1, n + 1)]
    out += [basis_g(i) for i in range(1, n + 1)]
    out.append(basis_c())
    out += [basis_d(i) for i in range(1, n + 1)]
    out += [basis_e(i) for i in range(1, n + 1)]
    out.append(basis_a())
    out += [basis_h1(), basis_h2()]
    out += hmat_spanning(n)
    return out


class LieElement:
    """Formal rational combination of structured basis elements, with its matrix."""

    __slots__ = ("n", "terms", "_matrix")

    def __init__(self, n: int, terms: dict[LieBasisElement, Fraction] | None = None):
        self.n = n
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}
        self._matrix = None

    @classmethod
    def zero(cls, n: int) -> "LieElement":
        return cls(n)

    @classmethod
    def from_basis(cls, n: int, x: LieBasisElement, coeff=1) -> "LieElement":
        return cls(n, {x: Fraction(coeff)})

    @classmethod
    def from_matrix(cls, n: int, m: Matrix) -> "LieElement":
        """Decompose a traceless matrix along the g = ubar + l + u split."""
        if mat_trace(m) != 0:
            raise ValueError("matrix is not traceless")
        terms: dict[LieBasisElement, Fraction] = {}
        for i in range(1, n + 1):
            if m[i][0]:
                terms[basis_f(i)] = m[i][0]
            if m[n + 1][i]:
                terms[basis_g(i)] = m[n + 1][i]
            if m[0][i]:
                terms[basis_d(i)] = m[0][i]
            if m[i][n + 1]:
                terms[basis_e(i)] = m[i][n + 1]
        if m[n + 1][0]:
            terms[basis_c()] = m[n + 1][0]
        if m[0][n + 1]:
            terms[basis_a()] = m[0][n + 1]
        alpha = (m[0][0] - m[n + 1][n + 1]) / 2
        beta = (m[0][0] + m[n + 1][n + 1]) / 2
        if alpha:
            terms[basis_h1()] = alpha
        if beta:
            terms[basis_h2()] = beta
        # middle block minus the h2 contribution is traceless
        block = [
            [m[1 + i][1 + j] for j in range(n)] for i in range(n)
        ]
        shift = beta * Fraction(2, n)
        for i in range(n):
            block[i][i] += shift
        for i in range(n):
            for j in range(n):
                if i != j and block[i][j]:
                    terms[hmat_elementary(n, i + 1, j + 1)] = block[i][j]
        partial = Fraction(0)
        for i in range(1, n):
            partial += block[i - 1][i - 1]
            if partial:
                terms[hmat_diagdiff(n, i)] = partial
        return cls(n, terms)

    @property
    def matrix(self) -> Matrix:
        if self._matrix is None:
            size = self.n + 2
            acc = _zeros(size)
            for x, coeff in self.terms.items():
                mx = x.realize(self.n)
                for i in range(size):
                    for j in range(size):
                        if mx[i][j]:
                            acc[i][j] += coeff * mx[i][j]
            self._matrix = _mat(acc)
        return self._matrix

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LieElement(self.n, out)

    def __neg__(self) -> "LieElement":
        return LieElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, c) -> "LieElement":
        c = Fraction(c)
        return LieElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.n == other.n and self.matrix == other.matrix

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "LieElement"):
        if self.n != other.n:
            raise ValueError("rank mismatch")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for x in sorted(self.terms, key=str):
            cv = self.terms[x]
            if cv == 1:
                parts.append(str(x))
            elif cv == -1:
                parts.append(f"-{x}")
            else:
                parts.append(f"{format_rational(cv)}*{x}")
        return " + ".join(parts)

    __repr__ = __str__

    def matrix_json(self) -> list[list[str]]:
        return [[format_rational(v) for v in row] for row in self.matrix]


def as_element(n: int, x) -> LieElement:
    if isinstance(x, LieElement):
        if x.n != n:
            raise ValueError("rank mismatch")
        return x
    return LieElement.from_basis(n, x)


def bracket(x, y, n: int | None = None) -> LieElement:
    """Lie bracket, computed via the matrix realization."""
    if n is None:
        if isinstance(x, LieElement):
            n = x.n
        elif isinstance(y, LieElement):
            n = y.n
        else:
            raise ValueError("pass n when both arguments are bare basis elements")
    xe = as_element(n, x)
    ye = as_element(n, y)
    return LieElement.from_matrix(n, mat_commutator(xe.matrix, ye.matrix))


def embed_sub(n: int, r: int, x) -> LieElement:
    """Image of an element of sl(n-r+2) under the block embedding i_r."""
    if not 0 <= r <= n - 1:
        raise ValueError(f"r={r} out of range for n={n}")
    m = n - r
    small = as_element(m, x).matrix
    size = n + 2
    big = _zeros(size)
    # blocks of the small algebra: corner rows/cols 0 and m+1 map to 0 and n+1
    def tgt(idx: int) -> int:
        return idx if idx <= m else n + 1

    for i in range(m + 2):
        for j in range(m + 2):
            if small[i][j]:
                big[tgt(i)][tgt(j)] = small[i][j]
    return LieElement.from_matrix(n, _mat(big))


def center_basis(n: int, r: int) -> tuple[LieElement, LieElement]:
    """The two central elements h'_1, h'_2 of the Levi factor of p'_r."""
    if not 0 <= r <= n - 1:
        raise ValueError(f"r={r} out of range for n={n}")
    h1p = LieElement.from_basis(n, basis_h1())
    if r == 0:
        return h1p, LieElement.from_basis(n, basis_h2())
    block = _zeros(n)
    for i in range(n - r):
        block[i][i] = Fraction(-2 * r, n * (n - r))
    for i in range(n - r, n):
        block[i][i] = Fraction(2, n)
    h2p = LieElement.from_basis(n, basis_h2()) + LieElement.from_basis(
        n, basis_hmat(block)
    )
    return h1p, h2p


def nilradical_basis(n: int, r: int) -> list[LieBasisElement]:
    """Basis of the nilradical u'_r: d_i, e_i for i <= n-r, and a."""
    if not 0 <= r <= n - 1:
        raise ValueError(f"r={r} out of range for n={n}")
    out = [basis_d(i) for i in range(1, n - r + 1)]
    out += [basis_e(i) for i in range(1, n - r + 1)]
    out.append(basis_a())
    return out


@dataclass(frozen=True)
class Character:
    """Scalar character lam1*w~_1 + lam2*w~_{n+1} of the parabolic."""

    lam1: ParamScalar
    lam2: ParamScalar
    n: int

    @classmethod
    def generic(cls, n: int) -> "Character":
        return cls(ParamScalar.lam1(), ParamScalar.lam2(), n)

    @classmethod
    def of(cls, n: int, v1, v2) -> "Character":
        return cls(ParamScalar.of(Fraction(v1)), ParamScalar.of(Fraction(v2)), n)

    @property
    def rho(self) -> Fraction:
        return Fraction(self.n + 1, 2)

    def shifted_by_rho(self) -> "Character":
        return Character(self.lam1 + self.rho, self.lam2 + self.rho, self.n)

    def is_generic(self) -> bool:
        return not (self.lam1.is_constant() and self.lam2.is_constant())

    def evaluated(self) -> tuple[Fraction, Fraction]:
        return self.lam1.constant(), self.lam2.constant()

    def value_on_matrix(self, m: Matrix) -> ParamScalar:
        """Value on an element of p: lam1*m[0][0] - lam2*m[n+1][n+1]."""
        return self.lam1.scale(m[0][0]) + self.lam2.scale(-m[self.n + 1][self.n + 1])

    def key(self) -> tuple:
        return (self.n, self.lam1.key(), self.lam2.key())

    def __str__(self) -> str:
        return f"({self.lam1}, {self.lam2})"
