"""Exact arithmetic in Q(tau), tau = (1 + sqrt 5) / 2.

Values are stored as ``rat + gold*tau`` with :class:`fractions.Fraction`
coefficients, so equality is structural and no floating point is involved.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union

Coercible = Union[int, Fraction, "GoldenNumber"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as a rational coefficient")


@total_ordering
class GoldenNumber:
    __slots__ = ("_rat", "_gold")

    def __init__(self, rat=0, gold=0) -> None:
        object.__setattr__(self, "_rat", _frac(rat))
        object.__setattr__(self, "_gold", _frac(gold))

    def __setattr__(self, name, value):
        raise AttributeError("GoldenNumber is immutable")

    @property
    def rat(self) -> Fraction:
        """Coefficient of 1."""
        return self._rat

    @property
    def gold(self) -> Fraction:
        """Coefficient of tau."""
        return self._gold

    @classmethod
    def coerce(cls, x: Coercible) -> GoldenNumber:
        if isinstance(x, GoldenNumber):
            return x
        return cls(x, 0)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (GoldenNumber, int, Fraction)):
            return NotImplemented
        o = GoldenNumber.coerce(other)
        return GoldenNumber(self._rat + o._rat, self._gold + o._gold)

    __radd__ = __add__

    def __neg__(self) -> GoldenNumber:
        return GoldenNumber(-self._rat, -self._gold)

    def __pos__(self) -> GoldenNumber:
        return self

    def __sub__(self, other):
        if not isinstance(other, (GoldenNumber, int, Fraction)):
            return NotImplemented
        return self + (-GoldenNumber.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return GoldenNumber.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GoldenNumber(self._rat * other, self._gold * other)
        if not isinstance(other, GoldenNumber):
            return NotImplemented
        a, b = self._rat, self._gold
        c, d = other._rat, other._gold
        # tau^2 = tau + 1
        bd = b * d
        return GoldenNumber(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def conj(self) -> GoldenNumber:
        """Galois conjugate: tau -> 1 - tau."""
        return GoldenNumber(self._rat + self._gold, -self._gold)

    def norm(self) -> Fraction:
        """x * conj(x), always rational."""
        a, b = self._rat, self._gold
        return a * a + a * b - b * b

    def inverse(self) -> GoldenNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(tau)")
        c = self.conj()
        return GoldenNumber(c._rat / n, c._gold / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(tau)")
            return GoldenNumber(self._rat / other, self._gold / other)
        if not isinstance(other, GoldenNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return GoldenNumber.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> GoldenNumber:
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

    # -- order -------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign (-1, 0, 1) of the real number rat + gold*tau."""
        # 2x = (2a + b) + b*sqrt5
        p = 2 * self._rat + self._gold
        q = self._gold
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sp == sq or sq == 0:
            return sp
        if sp == 0:
            return sq
        # opposite signs: the larger magnitude wins
        diff = p * p - 5 * q * q
        return sp if diff > 0 else sq

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._gold == 0 and self._rat == other
        if isinstance(other, GoldenNumber):
            return self._rat == other._rat and self._gold == other._gold
        return NotImplemented

    def __lt__(self, other) -> bool:
        if not isinstance(other, (GoldenNumber, int, Fraction)):
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        if self._gold == 0:
            return hash(self._rat)
        return hash((self._rat, self._gold))

    def __bool__(self) -> bool:
        return self._rat != 0 or self._gold != 0

    def is_rational(self) -> bool:
        return self._gold == 0

    def __float__(self) -> float:
        return float(self._rat) + float(self._gold) * TAU_FLOAT

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        return format_golden(self)

    def __repr__(self) -> str:
        return f"GoldenNumber({format_golden(self)!r})"


TAU_FLOAT = (1 + 5 ** 0.5) / 2

ZERO = GoldenNumber(0, 0)
ONE = GoldenNumber(1, 0)
TAU = GoldenNumber(0, 1)


def format_golden(x: GoldenNumber) -> str:
    """Render as ``a/b + c/d*tau``; coefficient 1 on tau is written ``tau``."""
    a, b = x.rat, x.gold
    if b == 0:
        return str(a)
    if abs(b) == 1:
        tau_part = "tau"
    else:
        tau_part = f"{abs(b)}*tau"
    if a == 0:
        return tau_part if b > 0 else f"-{tau_part}"
    op = "+" if b > 0 else "-"
    return f"{a} {op} {tau_part}"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*\s*tau)?
          | (?P<bare>tau)
        )\s*""",
    re.VERBOSE,
)

_DIVIDED = re.compile(r"^\((.*)\)\s*/\s*(\d+)$")


def parse_golden(text: str) -> GoldenNumber:
    """Parse a sum of terms like ``-5 - 5*tau`` or ``1/6 + 1/3*tau``.

    A term is a signed rational, optionally followed by ``*tau``, or a bare
    ``tau``. Terms may repeat and are summed. A whole sum may be wrapped as
    ``(4*tau + 2)/12``.
    """
    if not isinstance(text, str):
        raise TypeError("golden number text must be a string")
    s = text.strip()
    if not s:
        raise ValueError("empty golden number")
    m = _DIVIDED.match(s)
    if m:
        divisor = int(m.group(2))
        if divisor == 0:
            raise ValueError(f"zero divisor in golden number {text!r}")
        return parse_golden(m.group(1)) / divisor
    rat = Fraction(0)
    gold = Fraction(0)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse golden number {text!r} at offset {pos}")
        if m.group("sign") is None and not first:
            raise ValueError(f"missing operator in golden number {text!r}")
        sgn = -1 if m.group("sign") == "-" else 1
        if m.group("bare"):
            gold += sgn
        else:
            c = Fraction(m.group("coef")) * sgn
            if m.group("star"):
                gold += c
            else:
                rat += c
        pos = m.end()
        first = False
    return GoldenNumber(rat, gold)


def as_golden(x) -> GoldenNumber:
    """Coerce ints, Fractions, strings and GoldenNumbers."""
    if isinstance(x, str):
        return parse_golden(x)
    return GoldenNumber.coerce(x)
