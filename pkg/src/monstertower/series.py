"""Exact truncated formal power series in one parameter t.

Coefficients are ``fractions.Fraction`` values, so every operation is exact;
there is no floating point anywhere in the package.  A series stores the
coefficients of t^0 .. t^(precision-1); terms of degree >= precision are
unknown, *not* zero.  Keeping the two notions separate is what lets the
lifting engines compare valuations honestly: a window of stored zeros is
reported as :class:`~monstertower.errors.IndeterminateValuation` instead of
being silently treated as the zero series.

Only the operations needed by the chart and blowup recursions are provided:
ring arithmetic, d/dt, series quotient, recentering, and integration against
another series.  There is deliberately no composition or substitution.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    IndeterminateValuation,
    InsufficientPrecision,
    NegativeValuation,
    ParseError,
)

DEFAULT_PRECISION = 64

_TERM_RE = re.compile(
    r"([+-]?)\s*(?:(\d+(?:\s*/\s*\d+)?)\s*\*?\s*)?(t(?:\^(\d+))?)?\s*$"
)


def _as_fraction(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class TruncatedSeries:
    """Immutable exact power series known modulo t^precision."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(_as_fraction(c) for c in self.coefficients)
        )

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_terms(terms, precision: int = DEFAULT_PRECISION) -> "TruncatedSeries":
        """Build a series from (coefficient, exponent) pairs.

        Polynomials are embedded at the full requested precision, not at
        degree + 1, so later quotients keep headroom.
        """
        coeffs = [Fraction(0)] * precision
        for coeff, exponent in terms:
            if exponent < 0:
                raise ValueError("exponents must be nonnegative")
            if exponent < precision:
                coeffs[exponent] += _as_fraction(coeff)
        return TruncatedSeries(tuple(coeffs))

    @staticmethod
    def zero(precision: int = DEFAULT_PRECISION) -> "TruncatedSeries":
        return TruncatedSeries((Fraction(0),) * precision)

    @staticmethod
    def constant(value, precision: int = DEFAULT_PRECISION) -> "TruncatedSeries":
        return TruncatedSeries.from_terms([(value, 0)], precision)

    @staticmethod
    def monomial(coeff, exponent: int, precision: int = DEFAULT_PRECISION) -> "TruncatedSeries":
        return TruncatedSeries.from_terms([(coeff, exponent)], precision)

    # -- basic queries -------------------------------------------------------

    @property
    def precision(self) -> int:
        return len(self.coefficients)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coefficients) if c)

    def valuation_or_none(self) -> int | None:
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return None

    def valuation(self) -> int:
        """Index of the first nonzero coefficient.

        Raises IndeterminateValuation when the series is zero to its stored
        precision; callers must never read a valuation out of truncated
        zeros.
        """
        v = self.valuation_or_none()
        if v is None:
            raise IndeterminateValuation(
                f"series is zero to precision {self.precision}"
            )
        return v

    def constant_term(self) -> Fraction:
        if self.precision == 0:
            raise InsufficientPrecision("no stored coefficients")
        return self.coefficients[0]

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Coefficient-wise equality up to the common precision."""
        n = min(self.precision, other.precision)
        return self.coefficients[:n] == other.coefficients[:n]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.precision, other.precision)
        return TruncatedSeries(
            tuple(self.coefficients[i] + other.coefficients[i] for i in range(n))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.precision, other.precision)
        return TruncatedSeries(
            tuple(self.coefficients[i] - other.coefficients[i] for i in range(n))
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coefficients))

    def scale(self, value) -> "TruncatedSeries":
        k = _as_fraction(value)
        return TruncatedSeries(tuple(k * c for c in self.coefficients))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        # a is exact mod t^pa, so a*b is exact mod t^min(pa+val(b), pb+val(a));
        # an all-zero window contributes its full precision as the bound.
        va = self.valuation_or_none()
        vb = other.valuation_or_none()
        bound_a = self.precision if va is None else va
        bound_b = other.precision if vb is None else vb
        n = min(self.precision + bound_b, other.precision + bound_a)
        out = [Fraction(0)] * n
        for i in self.support:
            ci = self.coefficients[i]
            top = min(other.precision, n - i)
            for j in range(top):
                cj = other.coefficients[j]
                if cj:
                    out[i + j] += ci * cj
        return TruncatedSeries(tuple(out))

    def derivative(self) -> "TruncatedSeries":
        """Formal d/dt; costs one term of precision."""
        if self.precision < 1:
            raise InsufficientPrecision("cannot differentiate an empty window")
        return TruncatedSeries(
            tuple(i * self.coefficients[i] for i in range(1, self.precision))
        )

    def quotient(self, den: "TruncatedSeries") -> "TruncatedSeries":
        """Exact series quotient self / den.

        Requires valuation(den) <= valuation(self).  A numerator that is zero
        to precision is accepted (the quotient is zero to the reduced
        precision) as long as its window reaches past valuation(den).
        """
        vd = den.valuation_or_none()
        if vd is None:
            raise IndeterminateValuation("denominator is zero to stored precision")
        vn = self.valuation_or_none()
        if vn is not None and vn < vd:
            raise NegativeValuation(
                f"valuation {vn} of numerator below valuation {vd} of denominator"
            )
        if vn is None and self.precision < vd:
            raise IndeterminateValuation(
                "numerator window too short to clear the denominator valuation"
            )
        n = min(self.precision, den.precision) - vd
        num_shift = self.coefficients[vd : vd + n]
        den_shift = den.coefficients[vd : vd + n]
        if n <= 0:
            return TruncatedSeries(())
        lead = den_shift[0]
        den_support = [j for j in range(1, n) if den_shift[j]]
        out: list[Fraction] = []
        for k in range(n):
            acc = num_shift[k] if k < len(num_shift) else Fraction(0)
            for j in den_support:
                if j > k:
                    break
                acc -= den_shift[j] * out[k - j]
            out.append(acc / lead)
        return TruncatedSeries(tuple(out))

    def recenter(self) -> tuple[Fraction, "TruncatedSeries"]:
        """Split off the value at t=0: returns (constant, self - constant)."""
        c = self.constant_term()
        tail = (Fraction(0),) + self.coefficients[1:]
        return c, TruncatedSeries(tail)

    def integrate(self, wrt: "TruncatedSeries", constant=Fraction(0)) -> "TruncatedSeries":
        """Solve d(result)/dt = self * d(wrt)/dt with result(0) = constant."""
        if wrt.valuation_or_none() is None:
            raise IndeterminateValuation("integration variable is zero to precision")
        g = self * wrt.derivative()
        out = [_as_fraction(constant)]
        for k in range(g.precision):
            out.append(g.coefficients[k] / (k + 1))
        return TruncatedSeries(tuple(out))

    # -- presentation --------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        for i in self.support:
            c = self.coefficients[i]
            if i == 0:
                parts.append(str(c))
            else:
                t = "t" if i == 1 else f"t^{i}"
                if c == 1:
                    parts.append(t)
                elif c == -1:
                    parts.append(f"-{t}")
                else:
                    parts.append(f"{c}*{t}")
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"{body} + O(t^{self.precision})"

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"


def parse_series(text: str, precision: int = DEFAULT_PRECISION) -> TruncatedSeries:
    """Parse a series literal: a sum of terms ``c*t^k``.

    ``c`` is an integer or a fraction ``p/q``; the ``*`` and the exponent are
    optional (``t`` means ``t^1``, a bare coefficient means ``c*t^0``).
    Whitespace is insignificant.  Example: ``7/5*t^2 + t^3``.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty series literal", 0)
    chunks = re.split(r"(?=[+-])", stripped)
    terms: list[tuple[Fraction, int]] = []
    pos = 0
    for chunk in chunks:
        if not chunk.strip():
            pos += len(chunk)
            continue
        m = _TERM_RE.fullmatch(chunk.strip())
        if m is None or (m.group(2) is None and m.group(3) is None):
            raise ParseError(f"bad series term {chunk.strip()!r}", pos)
        sign, coeff_text, t_part, exp_text = m.groups()
        coeff = Fraction(coeff_text.replace(" ", "")) if coeff_text else Fraction(1)
        if sign == "-":
            coeff = -coeff
        if t_part is None:
            exponent = 0
        elif exp_text is None:
            exponent = 1
        else:
            exponent = int(exp_text)
        terms.append((coeff, exponent))
        pos += len(chunk)
    return TruncatedSeries.from_terms(terms, precision)
