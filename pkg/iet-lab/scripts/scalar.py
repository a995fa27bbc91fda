#!/usr/bin/env python3
"""
Exact Scalar Arithmetic

Ordered-field elements used by every geometric predicate in the toolkit:
rationals and elements a + b*sqrt(D) of a single real quadratic field.
Signs and comparisons are decided exactly; floats never appear on a
correctness path (mpmath approximations exist for oracles only).

Text syntax: "2/3", "(sqrt(5)-1)/2", "7/4 - 3/4*sqrt(5)", "0.125".
"""

import math
import operator
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

import mpmath


class ScalarError(ValueError):
    """Base class for scalar arithmetic and parsing failures."""


class IncompatibleRadicands(ScalarError):
    """Two quadratic irrationals from different fields were combined."""


class DivisionByZero(ScalarError, ZeroDivisionError):
    """Division by an exact zero."""


class ScalarParseError(ScalarError):
    """Malformed scalar text; `position` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


Number = Union["Scalar", int, Fraction]


def _squarefree_split(n: int) -> Tuple[int, int]:
    """Write n = k^2 * D with D square-free; returns (k, D)."""
    k, rest, p = 1, n, 2
    while p * p <= rest:
        while rest % (p * p) == 0:
            rest //= p * p
            k *= p
        p += 1 if p == 2 else 2
    return k, rest


def _fsign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


class Scalar:
    """
    Immutable exact real number a + b*sqrt(D).

    Rationals are stored with b = 0 and D = 0. A quadratic value always has
    b != 0 and a square-free D > 1.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, a: Union[int, Fraction, str] = 0, b: Union[int, Fraction, str] = 0,
                 radicand: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        if b and radicand < 0:
            raise ScalarError(f"negative radicand {radicand}")
        if b and radicand not in (0, 1):
            k, radicand = _squarefree_split(radicand)
            b *= k
        if not b or radicand in (0, 1):
            a += b if radicand == 1 else 0
            b, radicand = Fraction(0), 0
        self._a = a
        self._b = b
        self._d = radicand

    def __reduce__(self):
        return (self.__class__, (self._a, self._b, self._d))

    # -- accessors --------------------------------------------------------

    @property
    def rational_part(self) -> Fraction:
        return self._a

    @property
    def irrational_part(self) -> Fraction:
        return self._b

    @property
    def radicand(self) -> Optional[int]:
        """The radicand D, or None for a rational."""
        return self._d or None

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    @property
    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}."""
        a, b = self._a, self._b
        if not b:
            return _fsign(a)
        sa, sb = _fsign(a), _fsign(b)
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and b^2 D wins; equality is impossible
        return sa if a * a > b * b * self._d else sb

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(value) -> Optional["Scalar"]:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(value)
        return None

    def _join(self, other: "Scalar") -> int:
        if self._d and other._d and self._d != other._d:
            raise IncompatibleRadicands(
                f"cannot combine sqrt({self._d}) with sqrt({other._d})")
        return self._d or other._d

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        return Scalar(self._a + other._a, self._b + other._b, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        return Scalar(self._a - other._a, self._b - other._b, d)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        a, b, c, e = self._a, self._b, other._a, other._b
        return Scalar(a * c + b * e * d, a * e + b * c, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.sign == 0:
            raise DivisionByZero(f"division of {self} by zero")
        d = self._join(other)
        c, e = other._a, other._b
        norm = c * c - e * e * d
        a, b = self._a, self._b
        # multiply through by the conjugate c - e sqrt(D)
        return Scalar((a * c - b * e * d) / norm, (b * c - a * e) / norm, d)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return Scalar(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign < 0 else self

    # -- ordering ---------------------------------------------------------

    def _cmp(self, other) -> int:
        value = self._coerce(other)
        if value is None:
            raise TypeError(f"cannot compare Scalar with {type(other).__name__}")
        return (self - value).sign

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self._a, self._b, self._d) == (other._a, other._b, other._d)

    def __hash__(self):
        if not self._b:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return self.sign != 0

    # -- integer part -----------------------------------------------------

    def __floor__(self) -> int:
        if not self._b:
            return math.floor(self._a)
        r = self._b * self._b * self._d
        s = math.isqrt(r.numerator * r.denominator) // r.denominator
        guess = math.floor(self._a + (s if self._b > 0 else -s))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    # -- rendering --------------------------------------------------------

    def __str__(self):
        a, b = self._a, self._b
        if not b:
            return str(a)
        coeff = "" if abs(b) == 1 else f"{abs(b)}*"
        root = f"{coeff}sqrt({self._d})"
        if not a:
            return root if b > 0 else f"-{root}"
        return f"{a}{'+' if b > 0 else '-'}{root}"

    def __repr__(self):
        return f"Scalar('{self}')"

    def to_decimal(self, digits: int = 12) -> str:
        """Decimal string with `digits` fractional digits, rounded toward -infinity."""
        scale = 10 ** digits
        f = math.floor(self * scale)
        neg = f < 0
        whole, part = divmod(abs(f), scale)
        text = f"{whole}.{part:0{digits}d}" if digits else str(whole)
        return f"-{text}" if neg else text

    def approx(self, dps: int = 50) -> mpmath.mpf:
        """High-precision floating approximation (oracle use only)."""
        with mpmath.workdps(dps):
            value = mpmath.mpf(self._a.numerator) / self._a.denominator
            if self._b:
                value += mpmath.mpf(self._b.numerator) / self._b.denominator * mpmath.sqrt(self._d)
            return +value


ZERO = Scalar(0)
ONE = Scalar(1)


# -- field operations ----------------------------------------------------

_ARITH = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def arith(lhs: Number, op: str, rhs: Optional[Number] = None) -> Scalar:
    """
    Apply one field operation exactly.

    Args:
        lhs: Left operand
        op: One of add, sub, mul, div, neg, abs (neg/abs ignore rhs)
        rhs: Right operand for binary operations

    Returns:
        Normalized Scalar result

    Raises:
        DivisionByZero: div by an exact zero
        IncompatibleRadicands: quadratic operands from different fields
    """
    lhs = Scalar._coerce(lhs)
    if op == "neg":
        return -lhs
    if op == "abs":
        return abs(lhs)
    if op not in _ARITH:
        raise ScalarError(f"unknown operation {op!r}")
    return _ARITH[op](lhs, Scalar._coerce(rhs))


def compare(lhs: Number, rhs: Number) -> Ordering:
    """Exact three-way comparison."""
    return Ordering(Scalar._coerce(lhs)._cmp(rhs))


def frac_floor(x: Number) -> Tuple[int, Scalar]:
    """Split x into floor(x) and a fractional part in [0, 1)."""
    x = Scalar._coerce(x)
    n = math.floor(x)
    return n, x - n


def common_radicand(values: Iterable[Scalar]) -> Optional[int]:
    """
    Return the single radicand shared by all quadratic values (None if all rational).

    Raises:
        IncompatibleRadicands: if two values use different radicands
    """
    found = None
    for value in values:
        d = Scalar._coerce(value).radicand
        if d is None:
            continue
        if found is not None and d != found:
            raise IncompatibleRadicands(f"values mix sqrt({found}) and sqrt({d})")
        found = d
    return found


# -- parsing -------------------------------------------------------------------

class _Parser:
    """Recursive-descent parser: expr := term (+|- term)*, term := unary (*|/ unary)*."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: Optional[int] = None):
        raise ScalarParseError(message, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Scalar:
        if not self.text.strip():
            self.error("empty scalar", 0)
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op, at = self.text[self.pos], self.pos
            self.pos += 1
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            elif rhs.sign == 0:
                self.error("division by zero", at)
            else:
                value = value / rhs
        return value

    def unary(self) -> Scalar:
        ch = self.peek()
        if ch in ("+", "-"):
            self.pos += 1
            value = self.unary()
            return -value if ch == "-" else value
        return self.atom()

    def atom(self) -> Scalar:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if ch.isdigit() or ch == ".":
            while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "."):
                self.pos += 1
            literal = self.text[start:self.pos]
            if literal.count(".") > 1 or literal == ".":
                self.error(f"bad number {literal!r}", start)
            return Scalar(Fraction(literal))
        if self.text.startswith("sqrt", self.pos):
            self.pos += 4
            self.expect("(")
            arg_pos = self.pos
            arg = self.expr()
            self.expect(")")
            if not arg.is_rational or arg.sign < 0:
                self.error("sqrt needs a nonnegative rational argument", arg_pos)
            q = arg.rational_part
            # sqrt(p/q) = sqrt(p*q)/q
            return Scalar(0, Fraction(1, q.denominator), q.numerator * q.denominator)
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")


def parse_scalar(text: str) -> Scalar:
    """
    Parse the scalar text syntax (whitespace-insensitive).

    Raises:
        ScalarParseError: with the offending position
    """
    if isinstance(text, Scalar):
        return text
    return _Parser(str(text)).parse()


if __name__ == "__main__":
    import sys

    if len(sys.argv) < 2:
        print("Usage: python scalar.py <expression> [digits]")
        sys.exit(1)
    try:
        value = parse_scalar(sys.argv[1])
    except ScalarParseError as e:
        print(f"✗ {e}")
        sys.exit(2)
    digits = int(sys.argv[2]) if len(sys.argv) > 2 else 12
    floor, frac = frac_floor(value)
    print(f"exact:   {value}")
    print(f"decimal: {value.to_decimal(digits)}")
    print(f"floor:   {floor}  frac: {frac}")
