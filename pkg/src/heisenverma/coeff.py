"""Exact scalar arithmetic shared by every other module.

Two-level coefficient tower: arbitrary-precision rationals (``fractions.Fraction``)
and sparse polynomials in the two formal weight parameters l1, l2 with rational
coefficients (:class:`ParamScalar`).  There is deliberately no rational-function
field: every closed formula we realize is polynomial in l1, l2, and kernel solves
only ever happen after evaluating the parameters at concrete rationals.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rat(num, den=None) -> Fraction:
    """Build a Fraction from ints, strings like ``"2/3"``, or another Fraction."""
    if den is not None:
        return Fraction(num, den)
    return Fraction(num)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_TERM_RE = re.compile(
    r"^\s*(?P<coeff>[+-]?\d+(?:/\d+)?)?\s*\*?\s*"
    r"(?:l1(?:\^(?P<e1>\d+))?)?\s*\*?\s*"
    r"(?:l2(?:\^(?P<e2>\d+))?)?\s*$"
)


class ParamScalar:
    """Element of Q[l1, l2], stored as a sparse map (i, j) -> Fraction.

    Values are immutable after construction; all arithmetic returns fresh
    instances, so sharing across threads is safe.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], Fraction] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def of(cls, value) -> "ParamScalar":
        if isinstance(value, ParamScalar):
            return value
        v = Fraction(value)
        return cls({(0, 0): v} if v else {})

    @classmethod
    def lam1(cls) -> "ParamScalar":
        return cls({(1, 0): _ONE})

    @classmethod
    def lam2(cls) -> "ParamScalar":
        return cls({(0, 1): _ONE})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other) -> "ParamScalar":
        other = ParamScalar.of(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, _ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ParamScalar(out)

    __radd__ = __add__

    def __neg__(self) -> "ParamScalar":
        return ParamScalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "ParamScalar":
        return self + (-ParamScalar.of(other))

    def __rsub__(self, other) -> "ParamScalar":
        return ParamScalar.of(other) + (-self)

    def __mul__(self, other) -> "ParamScalar":
        other = ParamScalar.of(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                s = out.get(k, _ZERO) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return ParamScalar(out)

    __rmul__ = __mul__

    def scale(self, c) -> "ParamScalar":
        c = Fraction(c)
        if not c:
            return ParamScalar()
        return ParamScalar({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamScalar.of(other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant(self) -> Fraction:
        """The value as a plain rational; raises if l1/l2 actually occur."""
        if not self.terms:
            return _ZERO
        if set(self.terms) != {(0, 0)}:
            raise ValueError(f"not a constant: {self}")
        return self.terms[(0, 0)]

    def degree(self) -> int:
        return max((i + j for (i, j) in self.terms), default=0)

    def key(self) -> tuple:
        return tuple(sorted(self.terms.items()))

    def evaluate(self, v1, v2) -> Fraction:
        v1 = Fraction(v1)
        v2 = Fraction(v2)
        total = _ZERO
        for (i, j), c in self.terms.items():
            total += c * v1**i * v2**j
        return total

    def substituted(self, v1, v2) -> "ParamScalar":
        return ParamScalar.of(self.evaluate(v1, v2))

    # -- rendering / parsing -------------------------------------------------

    @staticmethod
    def _mono_str(i: int, j: int) -> str:
        parts = []
        if i:
            parts.append("l1" if i == 1 else f"l1^{i}")
        if j:
            parts.append("l2" if j == 1 else f"l2^{j}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        # graded lex, highest first: canonical printing order
        keys = sorted(self.terms, key=lambda k: (k[0] + k[1], k[0]), reverse=True)
        pieces = []
        for idx, k in enumerate(keys):
            c = self.terms[k]
            mono = self._mono_str(*k)
            mag = format_rational(abs(c))
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            if idx == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "ParamScalar":
        s = text.strip()
        if not s:
            raise ValueError("empty scalar")
        s = s.replace("- ", "-").replace("+ ", "+")
        chunks = [c for c in re.findall(r"[+-]?[^+-]+", s) if c.strip()]
        out = cls()
        for chunk in chunks:
            chunk = chunk.strip()
            sign = _ONE
            if chunk[0] in "+-":
                if chunk[0] == "-":
                    sign = -_ONE
                chunk = chunk[1:].strip()
            m = _TERM_RE.match(chunk)
            if not m or (m.group("coeff") is None and "l" not in chunk):
                raise ValueError(f"cannot parse scalar term {chunk!r} in {text!r}")
            coeff_s = m.group("coeff")
            c = sign * (Fraction(coeff_s) if coeff_s else _ONE)
            i = int(m.group("e1")) if m.group("e1") else (1 if "l1" in chunk else 0)
            j = int(m.group("e2")) if m.group("e2") else (1 if "l2" in chunk else 0)
            out = out + cls({(i, j): c})
        return out


PS_ZERO = ParamScalar()
PS_ONE = ParamScalar.of(1)
PS_HALF = ParamScalar.of(Fraction(1, 2))
