"""Exact arithmetic in real quadratic fields.

A value is ``rational + surd*sqrt(radicand)`` with ``Fraction`` components
and a square-free integer radicand >= 2; the radicand is dropped whenever
the surd part vanishes, so every value has exactly one representation.
Signs, comparisons and floors are decided by integer arithmetic alone
(cross-multiplication and squaring) -- floats never enter the core.
Values from distinct quadratic fields refuse to combine rather than
coerce.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

__all__ = [
    "FieldMismatchError",
    "ExpressionSyntaxError",
    "QuadraticNumber",
    "as_quadratic",
    "parse_quadratic",
    "sqrt_int",
]

_RationalLike = Union[int, Fraction]


class FieldMismatchError(ValueError):
    """Two values from distinct quadratic fields were combined."""


class ExpressionSyntaxError(ValueError):
    """Malformed textual expression; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write n = k*k*m with m square-free; return (k, m)."""
    if n < 1:
        raise ValueError("radicand must be a positive integer")
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    k, m, p = 1, 1, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            k *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    return k, m * n


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass int, Fraction or str")
    return Fraction(value)


class QuadraticNumber:
    """An element a + b*sqrt(d) of a real quadratic field (or of Q)."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, rational=0, surd=0, radicand: int | None = None):
        a = _as_fraction(rational)
        b = _as_fraction(surd)
        d = None
        if b:
            if radicand is None:
                raise ValueError("surd part given without a radicand")
            k, m = _squarefree_split(int(radicand))
            b *= k
            if m == 1:
                a += b
                b = Fraction(0)
            else:
                d = m
        else:
            b = Fraction(0)
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, d: int | None) -> "QuadraticNumber":
        # internal fast path: d is already square-free
        self = object.__new__(cls)
        self._a = a
        if b:
            self._b, self._d = b, d
        else:
            self._b, self._d = Fraction(0), None
        return self

    # -- field components -------------------------------------------------

    @property
    def rational_part(self) -> Fraction:
        return self._a

    @property
    def surd_part(self) -> Fraction:
        return self._b

    @property
    def radicand(self) -> int | None:
        return self._d

    @property
    def is_rational(self) -> bool:
        return self._d is None

    @property
    def rational_value(self) -> Fraction:
        if self._d is not None:
            raise ValueError(f"{self} is irrational")
        return self._a

    # -- coercion ----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber._make(Fraction(other), Fraction(0), None)
        return None

    def _common_radicand(self, other: "QuadraticNumber") -> int | None:
        if self._d is None:
            return other._d
        if other._d is None or other._d == self._d:
            return self._d
        raise FieldMismatchError(
            f"cannot mix sqrt({self._d}) with sqrt({other._d})"
        )

    # -- ring/field operations ----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_radicand(o)
        return QuadraticNumber._make(self._a + o._a, self._b + o._b, d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_radicand(o)
        return QuadraticNumber._make(self._a - o._a, self._b - o._b, d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_radicand(o)
        if d is None:
            return QuadraticNumber._make(self._a * o._a, Fraction(0), None)
        a = self._a * o._a + self._b * o._b * d
        b = self._a * o._b + self._b * o._a
        return QuadraticNumber._make(a, b, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_radicand(o)
        if not o:
            raise ZeroDivisionError("division by zero")
        norm = o._a * o._a - o._b * o._b * (d or 0)
        inv = QuadraticNumber._make(o._a / norm, -o._b / norm, d)
        return self * inv

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return QuadraticNumber._make(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = QuadraticNumber._make(Fraction(1), Fraction(0), None)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "QuadraticNumber":
        """Image under the field automorphism sqrt(d) -> -sqrt(d)."""
        return QuadraticNumber._make(self._a, -self._b, self._d)

    # -- exact order --------------------------------------------------------

    def sign(self) -> int:
        """Sign in {-1, 0, +1}, decided by comparing integer squares."""
        a, b = self._a, self._b
        if not b:
            return (a > 0) - (a < 0)
        if not a:
            return 1 if b > 0 else -1
        sa = 1 if a > 0 else -1
        sb = 1 if b > 0 else -1
        if sa == sb:
            return sa
        # a and b*sqrt(d) pull in opposite directions: the larger square wins.
        lhs = a.numerator * a.numerator * b.denominator * b.denominator
        rhs = b.numerator * b.numerator * self._d * a.denominator * a.denominator
        if lhs == rhs:  # impossible for square-free d >= 2 unless a = b = 0
            return 0
        return sa if lhs > rhs else sb

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._d is None:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadraticNumber with {type(other)!r}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- floor ---------------------------------------------------------------

    def floor(self) -> int:
        """Greatest integer <= self, computed exactly."""
        a, b = self._a, self._b
        q = math.lcm(a.denominator, b.denominator)
        big_a = a.numerator * (q // a.denominator)
        big_b = b.numerator * (q // b.denominator)
        if big_b == 0:
            return big_a // q
        s = math.isqrt(big_b * big_b * self._d)
        # floor(B*sqrt(d)) = s for B > 0, and -s - 1 for B < 0 (never exact).
        m = s if big_b > 0 else -s - 1
        return (big_a + m) // q

    __floor__ = floor

    def __float__(self):
        # display only; never used for decisions
        value = self._a.numerator / self._a.denominator
        if self._b:
            value += self._b.numerator / self._b.denominator * math.sqrt(self._d)
        return value

    # -- text form -------------------------------------------------------------

    def _canonical_triple(self) -> tuple[int, int, int]:
        """Return (A, B, Q) with self = (A + B*sqrt(d))/Q, gcd(A, B, Q) = 1."""
        a, b = self._a, self._b
        q = math.lcm(a.denominator, b.denominator)
        big_a = a.numerator * (q // a.denominator)
        big_b = b.numerator * (q // b.denominator)
        g = math.gcd(math.gcd(abs(big_a), abs(big_b)), q)
        return big_a // g, big_b // g, q // g

    def __str__(self):
        big_a, big_b, q = self._canonical_triple()
        d = self._d
        if big_b == 0:
            return str(big_a) if q == 1 else f"{big_a}/{q}"
        root = f"sqrt({d})"
        if big_a == 0:
            coeff = Fraction(big_b, q)
            if coeff == 1:
                return root
            if coeff == -1:
                return f"-{root}"
            num = f"{abs(coeff.numerator)}"
            if coeff.denominator != 1:
                num += f"/{coeff.denominator}"
            sign = "-" if coeff < 0 else ""
            return f"{sign}{num}*{root}"
        surd = root if abs(big_b) == 1 else f"{abs(big_b)}*{root}"
        body = f"{big_a}{'+' if big_b > 0 else '-'}{surd}"
        return body if q == 1 else f"({body})/{q}"

    def __repr__(self):
        return f"QuadraticNumber({str(self)!r})"


def sqrt_int(n: int) -> QuadraticNumber:
    """Exact square root of a positive integer."""
    return QuadraticNumber(0, 1, n)


def as_quadratic(value) -> QuadraticNumber:
    """Coerce an int, Fraction, QuadraticNumber or expression string."""
    if isinstance(value, QuadraticNumber):
        return value
    if isinstance(value, str):
        return parse_quadratic(value)
    return QuadraticNumber(_as_fraction(value))


# ---------------------------------------------------------------------------
# parsing
#
#   expr     := sum | '(' sum ')' '/' uint
#   sum      := signed (('+'|'-') unsigned)*
#   signed   := ['-'] unsigned
#   unsigned := rat | [rat '*'] 'sqrt(' uint ')'
#   rat      := int ['/' uint]
#
# Whitespace is ignored everywhere.  Printing always emits a canonical
# member of this grammar, and parse(print(x)) == x.
# ---------------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.take(token):
            raise ExpressionSyntaxError(f"expected {token!r}", self.pos)

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ExpressionSyntaxError("expected an unsigned integer", start)
        return int(self.text[start:self.pos])

    def rat(self) -> Fraction:
        self.skip_ws()
        neg = self.take("-")
        num = self.uint()
        den = 1
        if self.take("/"):
            at = self.pos
            den = self.uint()
            if den == 0:
                raise ZeroDivisionError(f"zero denominator (at position {at})")
        value = Fraction(num, den)
        return -value if neg else value

    def sqrt_tail(self) -> int:
        # caller consumed 'sqrt('
        at = self.pos
        n = self.uint()
        self.expect(")")
        if n == 0:
            raise ExpressionSyntaxError("radicand must be a positive integer", at)
        return n

    def unsigned(self) -> QuadraticNumber:
        if self.take("sqrt("):
            return sqrt_int(self.sqrt_tail())
        coeff = self.rat()
        save = self.pos
        if self.take("*"):
            if self.take("sqrt("):
                return QuadraticNumber(0, coeff, self.sqrt_tail())
            self.pos = save
        return QuadraticNumber(coeff)

    def signed(self) -> QuadraticNumber:
        if self.take("-"):
            # covers '-sqrt(5)' as well as '-1/2*sqrt(5)' and '-3'
            return -self.unsigned()
        return self.unsigned()

    def sum(self) -> QuadraticNumber:
        total = self.signed()
        while True:
            if self.take("+"):
                total = total + self.unsigned()
            elif self.take("-"):
                total = total - self.unsigned()
            else:
                return total

    def expr(self) -> QuadraticNumber:
        if self.take("("):
            inner = self.sum()
            self.expect(")")
            self.expect("/")
            at = self.pos
            den = self.uint()
            if den == 0:
                raise ZeroDivisionError(f"zero denominator (at position {at})")
            return inner / den
        return self.sum()


def parse_quadratic(text: str) -> QuadraticNumber:
    """Parse an exact expression such as ``(-1+sqrt(5))/2`` or ``3/4``."""
    scanner = _Scanner(text)
    value = scanner.expr()
    scanner.skip_ws()
    if scanner.pos != len(text):
        raise ExpressionSyntaxError("trailing characters", scanner.pos)
    return value
