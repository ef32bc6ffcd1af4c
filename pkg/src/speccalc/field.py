"""Exact arithmetic in Q(t) with the t-adic valuation.

An element is stored as num/den with integer-coefficient polynomials
(tuples, lowest degree first, no trailing zeros).  The canonical form is

* num and den coprime in Q[t],
* the gcd of all integer coefficients of num and den together is 1,
* den has a positive leading coefficient; zero is 0/1.

Equal values therefore have identical representations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Tuple, Union

IntPoly = Tuple[int, ...]

_ZERO: IntPoly = ()
_ONE: IntPoly = (1,)


class DivisionByZero(ZeroDivisionError):
    """Raised when inverting (or dividing by) the zero element."""


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------

def _trim(coeffs: list[int]) -> IntPoly:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def poly_scale(a: IntPoly, c: int) -> IntPoly:
    if c == 0:
        return _ZERO
    return tuple(x * c for x in a)


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return _ZERO
    if len(a) == 1:
        return poly_scale(b, a[0])
    if len(b) == 1:
        return poly_scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def content(a: IntPoly) -> int:
    return math.gcd(*a)


def primitive(a: IntPoly) -> IntPoly:
    """Divide out the content and make the leading coefficient positive."""
    if not a:
        return a
    c = math.gcd(*a)
    if a[-1] < 0:
        c = -c
    return a if c == 1 else tuple(x // c for x in a)


def poly_prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of a by b, with its content removed."""
    r = list(a)
    n = len(b)
    lc = b[-1]
    while len(r) >= n:
        coeff = r[-1]
        shift = len(r) - n
        r = [x * lc for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= coeff * y
        r.pop()  # leading term cancels exactly
        while r and r[-1] == 0:
            r.pop()
        if r:
            g = math.gcd(*r)
            if g > 1:
                r = [x // g for x in r]
    return tuple(r)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd (positive leading coefficient) by primitive remainder sequence."""
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    if len(a) == 1 or len(b) == 1:
        return _ONE
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return _ONE
        a, b = b, primitive(poly_prem(a, b))
    return a


def poly_exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """a / b where b is primitive and divides a in Q[t] (so the quotient is integral)."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if b == _ONE:
        return a
    r = list(a)
    n = len(b)
    lc = b[-1]
    q = [0] * (len(r) - n + 1)
    for k in range(len(r) - n, -1, -1):
        c, rem = divmod(r[k + n - 1], lc)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    if any(r[: n - 1]):
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


def poly_order(a: IntPoly) -> int | float:
    """Multiplicity of t as a factor; ``inf`` for the zero polynomial."""
    for i, c in enumerate(a):
        if c:
            return i
    return math.inf


def _integral(coeffs: Iterable) -> tuple[IntPoly, int]:
    """Rational coefficients -> (integer poly, common denominator)."""
    fr = [Fraction(c) for c in coeffs]
    d = math.lcm(*(c.denominator for c in fr)) if fr else 1
    return _trim([int(c * d) for c in fr]), d


# ---------------------------------------------------------------------------
# magnitudes
# ---------------------------------------------------------------------------

@total_ordering
@dataclass(frozen=True)
class NormExp:
    """A magnitude ``2 ** (-exponent)``; ``exponent = inf`` is magnitude 0.

    Comparison operators order by *magnitude*, so larger exponents compare
    smaller.  The base 2 is only a display convention.
    """

    exponent: Union[Fraction, float]

    def __post_init__(self):
        e = self.exponent
        if not (isinstance(e, float) and math.isinf(e) and e > 0):
            object.__setattr__(self, "exponent", Fraction(e))

    @classmethod
    def zero(cls) -> "NormExp":
        return cls(math.inf)

    @property
    def is_zero(self) -> bool:
        return self.exponent == math.inf

    def __lt__(self, other: "NormExp") -> bool:
        return self.exponent > other.exponent

    def power(self, n: int) -> "NormExp":
        return NormExp(self.exponent * n)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"2^{-self.exponent}"


def max_magnitude(*norms: NormExp) -> NormExp:
    """Largest magnitude; the empty max is 0 (exponent +inf)."""
    return NormExp(min((n.exponent for n in norms), default=math.inf))


# ---------------------------------------------------------------------------
# Q(t)
# ---------------------------------------------------------------------------

Coercible = Union["FieldElem", int, Fraction]


def _finish(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Normalize content and sign of an already coprime pair."""
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return _ZERO, _ONE
    c = math.gcd(*num, *den)
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


def _reduce(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return _ZERO, _ONE
    if len(den) > 1 and len(num) > 1:
        g = poly_gcd(num, den)
        if g != _ONE:
            num, den = poly_exact_div(num, g), poly_exact_div(den, g)
    return _finish(num, den)


class FieldElem:
    """An element of Q(t) in canonical form (see module docstring)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Iterable = (), den: Iterable = (1,), *, _canonical: bool = False):
        if _canonical:
            self.num, self.den = num, den
        else:
            n, dn = _integral(num)
            d, dd = _integral(den)
            # num/den = (n/dn) / (d/dd) = (n*dd) / (d*dn)
            self.num, self.den = _reduce(poly_scale(n, dd), poly_scale(d, dn))
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "FieldElem":
        c = Fraction(c)
        if not c:
            return cls(_ZERO, _ONE, _canonical=True)
        return cls((c.numerator,), (c.denominator,), _canonical=True)

    @classmethod
    def t_power(cls, k: int) -> "FieldElem":
        mono = (0,) * abs(k) + (1,)
        if k >= 0:
            return cls(mono, _ONE, _canonical=True)
        return cls(_ONE, mono, _canonical=True)

    @classmethod
    def poly(cls, coeffs) -> "FieldElem":
        """Polynomial with rational coefficients, lowest degree first."""
        n, d = _integral(coeffs)
        return cls(*_finish(n, (d,)), _canonical=True)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def valuation(self) -> int | float:
        if not self.num:
            return math.inf
        return poly_order(self.num) - poly_order(self.den)

    def norm(self) -> NormExp:
        return NormExp(self.valuation())

    def coefficients(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        """(num, den) with den monic, as rational coefficient tuples."""
        lc = self.den[-1]
        return (tuple(Fraction(c, lc) for c in self.num), tuple(Fraction(c, lc) for c in self.den))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Coercible) -> "FieldElem":
        b = _coerce(other)
        if b is NotImplemented:
            return b
        a = self
        if not a.num:
            return b
        if not b.num:
            return a
        if a.den == b.den:
            return FieldElem(*_reduce(poly_add(a.num, b.num), a.den), _canonical=True)
        if len(a.den) == 1 and len(b.den) == 1:
            da, db = a.den[0], b.den[0]
            num = poly_add(poly_scale(a.num, db), poly_scale(b.num, da))
            return FieldElem(*_finish(num, (da * db,)), _canonical=True)
        g = poly_gcd(a.den, b.den)
        if g == _ONE:
            # coprime denominators give a coprime result
            num = poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den))
            return FieldElem(*_finish(num, poly_mul(a.den, b.den)), _canonical=True)
        da = poly_exact_div(a.den, g)
        db = poly_exact_div(b.den, g)
        num = poly_add(poly_mul(a.num, db), poly_mul(b.num, da))
        return FieldElem(*_reduce(num, poly_mul(a.den, db)), _canonical=True)

    __radd__ = __add__

    def __neg__(self) -> "FieldElem":
        return FieldElem(tuple(-c for c in self.num), self.den, _canonical=True)

    def __sub__(self, other: Coercible) -> "FieldElem":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "FieldElem":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other: Coercible) -> "FieldElem":
        b = _coerce(other)
        if b is NotImplemented:
            return b
        a = self
        if not a.num or not b.num:
            return ZERO
        an, ad, bn, bd = a.num, a.den, b.num, b.den
        if len(bd) > 1 and len(an) > 1:
            g = poly_gcd(an, bd)
            if g != _ONE:
                an, bd = poly_exact_div(an, g), poly_exact_div(bd, g)
        if len(ad) > 1 and len(bn) > 1:
            g = poly_gcd(bn, ad)
            if g != _ONE:
                bn, ad = poly_exact_div(bn, g), poly_exact_div(ad, g)
        return FieldElem(*_finish(poly_mul(an, bn), poly_mul(ad, bd)), _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self.num:
            raise DivisionByZero("inverse of zero in Q(t)")
        return FieldElem(*_finish(self.den, self.num), _canonical=True)

    def __truediv__(self, other: Coercible) -> "FieldElem":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other: Coercible) -> "FieldElem":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int) -> "FieldElem":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"FieldElem({str(self)!r})"

    def __str__(self) -> str:
        return format_field_elem(self)

    def __reduce__(self):
        return (_rebuild, (self.num, self.den))


def _rebuild(num: IntPoly, den: IntPoly) -> FieldElem:
    return FieldElem(num, den, _canonical=True)


def _coerce(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElem.const(x)
    return NotImplemented


ZERO = FieldElem.const(0)
ONE = FieldElem.const(1)
T = FieldElem.t_power(1)


def fe_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def fe_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def fe_inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def valuation(a: FieldElem) -> int | float:
    """t-adic valuation ord_t(num) - ord_t(den); ``inf`` for zero."""
    return a.valuation()


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def _monomial(c: int, k: int) -> str:
    if k == 0:
        return str(c)
    var = "t" if k == 1 else f"t^{k}"
    return var if c == 1 else f"{c}*{var}"


def _format_int_poly(coeffs) -> tuple[str, int]:
    """Render an ascending-degree integer polynomial; also return the term count."""
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if not parts:
            parts.append(("-" if c < 0 else "") + _monomial(abs(c), k))
        else:
            parts.append((" - " if c < 0 else " + ") + _monomial(abs(c), k))
    return "".join(parts), len(parts)


def format_field_elem(a: FieldElem) -> str:
    """Deterministic text that ``parse_field_expr`` reads back to ``a``.

    Printed with the lowest-order denominator coefficient positive, e.g.
    ``-t/(1 - t)`` rather than ``t/(-1 + t)``.
    """
    if not a.num:
        return "0"
    n, d = a.num, a.den
    if next(c for c in d if c) < 0:
        n, d = tuple(-c for c in n), tuple(-c for c in d)
    num_text, num_terms = _format_int_poly(n)
    if d == _ONE:
        return num_text
    den_text, den_terms = _format_int_poly(d)
    if num_terms > 1:
        num_text = f"({num_text})"
    if den_terms > 1 or "*" in den_text:
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"
