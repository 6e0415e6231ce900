"""Normal-ordered Weyl algebra arithmetic on 2n+1 variables and polynomials.

Coordinates are (x_1..x_n, y_1..y_n, z) with weighted degrees
deg x_i = deg y_i = 1 and deg z = 2.  A :class:`VarSet` distinguishes the
"hatted" side (coordinates on the opposite nilradical) from the "dual" side
(coordinates on its dual, where operators act on polynomials).  Normal order
is fixed as variables-left / derivatives-right; products are computed by
iterated Leibniz reordering with exact coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .coeff import ParamScalar, PS_ONE, format_rational

# All computations in scope are low degree; a runaway product is a bug.
DEGREE_CAP = 64

HATTED = "hatted"
DUAL = "dual"


@dataclass(frozen=True)
class VarSet:
    """The variable set of one Weyl algebra: n x/y pairs plus the single z."""

    n: int
    side: str

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.side not in (HATTED, DUAL):
            raise ValueError(f"unknown side {self.side!r}")

    @property
    def nvars(self) -> int:
        return 2 * self.n + 1

    # slot layout: 0..n-1 = x_1..x_n, n..2n-1 = y_1..y_n, 2n = z
    def x(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"x index {i} out of range for n={self.n}")
        return i - 1

    def y(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"y index {i} out of range for n={self.n}")
        return self.n + i - 1

    @property
    def z(self) -> int:
        return 2 * self.n

    def var_name(self, slot: int) -> str:
        if slot < self.n:
            return f"x{slot + 1}"
        if slot < 2 * self.n:
            return f"y{slot - self.n + 1}"
        return "z"

    def zero_expo(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    def unit_expo(self, slot: int) -> tuple[int, ...]:
        e = [0] * self.nvars
        e[slot] = 1
        return tuple(e)

    def weighted_degree(self, expo: tuple[int, ...]) -> int:
        return sum(expo[: 2 * self.n]) + 2 * expo[2 * self.n]

    def opposite(self) -> "VarSet":
        return VarSet(self.n, DUAL if self.side == HATTED else HATTED)


def hatted(n: int) -> VarSet:
    return VarSet(n, HATTED)


def dual(n: int) -> VarSet:
    return VarSet(n, DUAL)


def _check_cap(expo: tuple[int, ...]):
    for e in expo:
        if e > DEGREE_CAP:
            raise OverflowError(f"exponent {e} exceeds degree cap {DEGREE_CAP}")


def _add_expo(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(u + v for u, v in zip(a, b))


def _term_sort_key(term):
    alpha, beta = term
    return (sum(alpha) + sum(beta), alpha, beta)


def _reorder_d_then_x(alpha, beta):
    """Expand the product (derivatives^alpha)·(variables^beta) in normal order.

    Yields (k, factor) with the resulting term variables^(beta-k) ·
    derivatives^(alpha-k) carrying the integer factor
    prod_i C(alpha_i,k_i)·C(beta_i,k_i)·k_i!.
    """
    overlap = [s for s in range(len(alpha)) if alpha[s] and beta[s]]
    ranges = [range(min(alpha[s], beta[s]) + 1) for s in overlap]
    for ks in itertools.product(*ranges):
        factor = 1
        k = [0] * len(alpha)
        for s, kk in zip(overlap, ks):
            factor *= comb(alpha[s], kk) * comb(beta[s], kk) * factorial(kk)
            k[s] = kk
        yield tuple(k), factor


class WeylElement:
    """Sparse normal-ordered differential operator with ParamScalar coefficients."""

    __slots__ = ("varset", "terms")

    def __init__(self, varset: VarSet, terms=None):
        self.varset = varset
        clean: dict[tuple, ParamScalar] = {}
        for key, c in (terms or {}).items():
            c = ParamScalar.of(c)
            if c.is_zero():
                continue
            _check_cap(key[0])
            _check_cap(key[1])
            clean[key] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vs: VarSet) -> "WeylElement":
        return cls(vs)

    @classmethod
    def constant(cls, vs: VarSet, c) -> "WeylElement":
        return cls(vs, {(vs.zero_expo(), vs.zero_expo()): ParamScalar.of(c)})

    @classmethod
    def variable(cls, vs: VarSet, slot: int) -> "WeylElement":
        return cls(vs, {(vs.unit_expo(slot), vs.zero_expo()): PS_ONE})

    @classmethod
    def derivative(cls, vs: VarSet, slot: int) -> "WeylElement":
        return cls(vs, {(vs.zero_expo(), vs.unit_expo(slot)): PS_ONE})

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._require_same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return WeylElement(self.varset, out)

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.varset, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def scale(self, c) -> "WeylElement":
        c = ParamScalar.of(c)
        return WeylElement(self.varset, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.varset == other.varset and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def _require_same(self, other: "WeylElement"):
        if self.varset != other.varset:
            raise ValueError("variable-set mismatch")

    # -- multiplicative structure ---------------------------------------------

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Normal-ordered product, exact."""
        self._require_same(other)
        out: dict[tuple, ParamScalar] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                c12 = c1 * c2
                for k, factor in _reorder_d_then_x(b1, a2):
                    alpha = tuple(u + v - w for u, v, w in zip(a1, a2, k))
                    beta = tuple(u + v - w for u, v, w in zip(b1, b2, k))
                    c = c12 if factor == 1 else c12.scale(factor)
                    key = (alpha, beta)
                    s = out.get(key)
                    s = c if s is None else s + c
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return WeylElement(self.varset, out)

    def commutator(self, other: "WeylElement") -> "WeylElement":
        return self * other - other * self

    # -- algebraic Fourier transform -----------------------------------------

    def fourier(self) -> "WeylElement":
        """Image under F: hatted -> dual, v -> -d/dv*, d/dv -> v*."""
        if self.varset.side != HATTED:
            raise ValueError("fourier expects a hatted-side element")
        target = self.varset.opposite()
        out: dict[tuple, ParamScalar] = {}
        for (alpha, beta), c in self.terms.items():
            sign = -1 if sum(alpha) % 2 else 1
            base = c.scale(sign)
            # F sends the term to (-d)^alpha · v^beta; reorder to normal form.
            for k, factor in _reorder_d_then_x(alpha, beta):
                new_alpha = tuple(b - kk for b, kk in zip(beta, k))
                new_beta = tuple(a - kk for a, kk in zip(alpha, k))
                key = (new_alpha, new_beta)
                add = base if factor == 1 else base.scale(factor)
                s = out.get(key)
                s = add if s is None else s + add
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return WeylElement(target, out)

    def fourier_inverse(self) -> "WeylElement":
        """Inverse transform: dual -> hatted, v* -> d/dv, d/dv* -> -v."""
        if self.varset.side != DUAL:
            raise ValueError("fourier_inverse expects a dual-side element")
        target = self.varset.opposite()
        out: dict[tuple, ParamScalar] = {}
        for (alpha, beta), c in self.terms.items():
            sign = -1 if sum(beta) % 2 else 1
            base = c.scale(sign)
            # the term maps to d^alpha · (-v)^beta on the hatted side
            for k, factor in _reorder_d_then_x(alpha, beta):
                new_alpha = tuple(b - kk for b, kk in zip(beta, k))
                new_beta = tuple(a - kk for a, kk in zip(alpha, k))
                key = (new_alpha, new_beta)
                add = base if factor == 1 else base.scale(factor)
                s = out.get(key)
                s = add if s is None else s + add
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return WeylElement(target, out)

    # -- module action ---------------------------------------------------------

    def apply(self, f: "PolyVector") -> "PolyVector":
        """Act on a polynomial of the same (dual-side) variable set."""
        if self.varset != f.varset:
            raise ValueError("variable-set mismatch")
        out: dict[tuple, ParamScalar] = {}
        for (alpha, beta), c in self.terms.items():
            for mono, s in f.terms.items():
                if any(b > m for b, m in zip(beta, mono)):
                    continue
                factor = 1
                for b, m in zip(beta, mono):
                    for j in range(b):
                        factor *= m - j
                key = _add_expo(alpha, tuple(m - b for m, b in zip(mono, beta)))
                add = (c * s).scale(factor)
                tot = out.get(key)
                tot = add if tot is None else tot + add
                if tot.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = tot
        return PolyVector(f.varset, out)

    # -- rendering / serialization ---------------------------------------------

    def _mono_str(self, alpha, beta) -> str:
        vs = self.varset
        parts = []
        for s, e in enumerate(alpha):
            if e:
                parts.append(vs.var_name(s) if e == 1 else f"{vs.var_name(s)}^{e}")
        for s, e in enumerate(beta):
            if e:
                name = "D" + vs.var_name(s)
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key in sorted(self.terms, key=_term_sort_key):
            c = self.terms[key]
            mono = self._mono_str(*key)
            cs = str(c)
            composite = len(c.terms) > 1
            if not mono:
                body, neg = (cs, False) if not cs.startswith("-") else (cs[1:], True)
                if composite:
                    body, neg = f"({str(c)})", False
            elif c == PS_ONE:
                body, neg = mono, False
            elif c == ParamScalar.of(-1):
                body, neg = mono, True
            elif composite:
                body, neg = f"({cs})*{mono}", False
            else:
                body, neg = (f"{cs}*{mono}", False) if not cs.startswith("-") else (f"{cs[1:]}*{mono}", True)
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    __repr__ = __str__

    def to_json(self) -> list:
        return [
            [list(k[0]), list(k[1]), str(self.terms[k])]
            for k in sorted(self.terms, key=_term_sort_key)
        ]

    @classmethod
    def from_json(cls, vs: VarSet, data: list) -> "WeylElement":
        terms = {}
        for alpha, beta, coeff in data:
            terms[(tuple(alpha), tuple(beta))] = ParamScalar.parse(coeff)
        return cls(vs, terms)


class PolyVector:
    """Sparse polynomial on the dual-side variables; the Fourier-side Verma model."""

    __slots__ = ("varset", "terms")

    def __init__(self, varset: VarSet, terms=None):
        self.varset = varset
        clean: dict[tuple, ParamScalar] = {}
        for key, c in (terms or {}).items():
            c = ParamScalar.of(c)
            if c.is_zero():
                continue
            _check_cap(key)
            clean[key] = c
        self.terms = clean

    @classmethod
    def zero(cls, vs: VarSet) -> "PolyVector":
        return cls(vs)

    @classmethod
    def constant(cls, vs: VarSet, c) -> "PolyVector":
        return cls(vs, {vs.zero_expo(): ParamScalar.of(c)})

    @classmethod
    def monomial(cls, vs: VarSet, expo: tuple[int, ...], c=1) -> "PolyVector":
        return cls(vs, {tuple(expo): ParamScalar.of(c)})

    @classmethod
    def variable(cls, vs: VarSet, slot: int) -> "PolyVector":
        return cls(vs, {vs.unit_expo(slot): PS_ONE})

    def __add__(self, other: "PolyVector") -> "PolyVector":
        if self.varset != other.varset:
            raise ValueError("variable-set mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return PolyVector(self.varset, out)

    def __neg__(self) -> "PolyVector":
        return PolyVector(self.varset, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return self + (-other)

    def scale(self, c) -> "PolyVector":
        c = ParamScalar.of(c)
        return PolyVector(self.varset, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "PolyVector") -> "PolyVector":
        if self.varset != other.varset:
            raise ValueError("variable-set mismatch")
        out: dict[tuple, ParamScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = _add_expo(m1, m2)
                add = c1 * c2
                s = out.get(key)
                s = add if s is None else s + add
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return PolyVector(self.varset, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.varset == other.varset and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate_params(self, v1, v2) -> "PolyVector":
        return PolyVector(
            self.varset, {k: ParamScalar.of(c.evaluate(v1, v2)) for k, c in self.terms.items()}
        )

    def weighted_degrees(self) -> set[int]:
        return {self.varset.weighted_degree(m) for m in self.terms}

    # -- joint Euler decomposition ------------------------------------------

    def euler_bidegree(self, r: int) -> list[tuple[tuple[int, int], "PolyVector"]]:
        """Split into joint eigencomponents of the two Euler-type operators.

        m is the weighted total degree; t weights the primed block (the first
        n-r x/y pairs) by n-r+2 and the double-primed block by n-r.
        """
        n = self.varset.n
        if not 0 <= r < n:
            raise ValueError(f"split index r={r} out of range for n={n}")
        buckets: dict[tuple[int, int], dict] = {}
        for mono, c in self.terms.items():
            m = self.varset.weighted_degree(mono)
            t = 0
            for i in range(n):
                w = (n - r + 2) if i < n - r else (n - r)
                t += w * (mono[i] - mono[n + i])
            buckets.setdefault((m, t), {})[mono] = c
        return [
            ((m, t), PolyVector(self.varset, terms))
            for (m, t), terms in sorted(buckets.items())
        ]

    # -- rendering / serialization ---------------------------------------------

    def _mono_str(self, mono) -> str:
        vs = self.varset
        parts = []
        for s, e in enumerate(mono):
            if e:
                parts.append(vs.var_name(s) if e == 1 else f"{vs.var_name(s)}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key in sorted(self.terms, key=lambda m: (sum(m), m)):
            c = self.terms[key]
            mono = self._mono_str(key)
            cs = str(c)
            composite = len(c.terms) > 1
            if not mono:
                body, neg = (cs, False) if not cs.startswith("-") else (cs[1:], True)
                if composite:
                    body, neg = f"({cs})", False
            elif c == PS_ONE:
                body, neg = mono, False
            elif c == ParamScalar.of(-1):
                body, neg = mono, True
            elif composite:
                body, neg = f"({cs})*{mono}", False
            else:
                body, neg = (f"{cs}*{mono}", False) if not cs.startswith("-") else (f"{cs[1:]}*{mono}", True)
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    __repr__ = __str__

    def to_json(self) -> list:
        return [
            [list(k), str(self.terms[k])]
            for k in sorted(self.terms, key=lambda m: (sum(m), m))
        ]

    @classmethod
    def from_json(cls, vs: VarSet, data: list) -> "PolyVector":
        return cls(vs, {tuple(mono): ParamScalar.parse(coeff) for mono, coeff in data})


# -- distinguished elements ---------------------------------------------------


def q_poly(vs: VarSet) -> PolyVector:
    """q = sum_j x_j y_j."""
    terms = {}
    for i in range(1, vs.n + 1):
        terms[_add_expo(vs.unit_expo(vs.x(i)), vs.unit_expo(vs.y(i)))] = PS_ONE
    return PolyVector(vs, terms)


def q_primed(vs: VarSet, r: int) -> PolyVector:
    terms = {}
    for i in range(1, vs.n - r + 1):
        terms[_add_expo(vs.unit_expo(vs.x(i)), vs.unit_expo(vs.y(i)))] = PS_ONE
    return PolyVector(vs, terms)


def q_doubleprimed(vs: VarSet, r: int) -> PolyVector:
    terms = {}
    for i in range(vs.n - r + 1, vs.n + 1):
        terms[_add_expo(vs.unit_expo(vs.x(i)), vs.unit_expo(vs.y(i)))] = PS_ONE
    return PolyVector(vs, terms)


def _euler_over(vs: VarSet, slots) -> WeylElement:
    terms = {}
    for s in slots:
        terms[(vs.unit_expo(s), vs.unit_expo(s))] = PS_ONE
    return WeylElement(vs, terms)


def euler_x(vs: VarSet) -> WeylElement:
    return _euler_over(vs, [vs.x(i) for i in range(1, vs.n + 1)])


def euler_y(vs: VarSet) -> WeylElement:
    return _euler_over(vs, [vs.y(i) for i in range(1, vs.n + 1)])


def euler_z(vs: VarSet) -> WeylElement:
    return _euler_over(vs, [vs.z])


def euler_x_primed(vs: VarSet, r: int) -> WeylElement:
    return _euler_over(vs, [vs.x(i) for i in range(1, vs.n - r + 1)])


def euler_x_doubleprimed(vs: VarSet, r: int) -> WeylElement:
    return _euler_over(vs, [vs.x(i) for i in range(vs.n - r + 1, vs.n + 1)])


def euler_y_primed(vs: VarSet, r: int) -> WeylElement:
    return _euler_over(vs, [vs.y(i) for i in range(1, vs.n - r + 1)])


def euler_y_doubleprimed(vs: VarSet, r: int) -> WeylElement:
    return _euler_over(vs, [vs.y(i) for i in range(vs.n - r + 1, vs.n + 1)])


def _box_over(vs: VarSet, pairs) -> WeylElement:
    terms = {}
    for i in pairs:
        beta = list(vs.zero_expo())
        beta[vs.x(i)] = 1
        beta[vs.y(i)] = 1
        terms[(vs.zero_expo(), tuple(beta))] = PS_ONE
    return WeylElement(vs, terms)


def box(vs: VarSet) -> WeylElement:
    """The Laplace-type operator sum_j d/dx_j d/dy_j."""
    return _box_over(vs, range(1, vs.n + 1))


def box_primed(vs: VarSet, r: int) -> WeylElement:
    return _box_over(vs, range(1, vs.n - r + 1))


def box_doubleprimed(vs: VarSet, r: int) -> WeylElement:
    return _box_over(vs, range(vs.n - r + 1, vs.n + 1))


def embed_xy(p: PolyVector, target: VarSet, offset: int) -> PolyVector:
    """Re-index a z-free polynomial on m x/y pairs into a larger variable set.

    x_i -> x_{i+offset}, y_i -> y_{i+offset}.
    """
    src = p.varset
    out = {}
    for mono, c in p.terms.items():
        if mono[src.z]:
            raise ValueError("embed_xy expects a z-free polynomial")
        e = [0] * target.nvars
        for i in range(1, src.n + 1):
            if mono[src.x(i)]:
                e[target.x(i + offset)] = mono[src.x(i)]
            if mono[src.y(i)]:
                e[target.y(i + offset)] = mono[src.y(i)]
        out[tuple(e)] = c
    return PolyVector(target, out)
