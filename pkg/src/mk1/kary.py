"""Exact arithmetic over the k-ary rationals Z[1/k].

A value is stored as ``num * base**(-exp)`` with ``num, exp >= 0``.  The
canonical form keeps ``num`` coprime to ``base`` whenever ``exp > 0`` (so
7/8 in base 2 is ``(7, 3)``), stores zero as ``(0, 0)``, and leaves plain
integers with ``exp == 0``.  Everything is integer arithmetic; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BaseMismatch, BaseTooSmall, NegativeResult, ParseError, ZeroValue


@dataclass(frozen=True, slots=True)
class KRational:
    """A non-negative element of Z[1/k], kept in canonical form.

    Use :func:`kq` to build values; the raw constructor rejects anything
    that is not already canonical.
    """

    base: int
    num: int
    exp: int

    def __post_init__(self):
        if self.base < 2:
            raise BaseTooSmall(f"base must be at least 2, got {self.base}")
        if self.num < 0 or self.exp < 0:
            raise ValueError("numerator and exponent must be non-negative")
        if self.num == 0 and self.exp != 0:
            raise ValueError("zero must be stored as (0, 0)")
        if self.exp > 0 and self.num % self.base == 0:
            raise ValueError("numerator not k-reduced; use kq()")

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num == 0

    def is_one(self) -> bool:
        return self.num == 1 and self.exp == 0

    def digits(self) -> tuple[int, tuple[int, ...]]:
        """Integer part and fractional base-k digits (most significant first).

        The canonical form guarantees the digit list never ends in 0.
        """
        k = self.base
        int_part, rem = divmod(self.num, k**self.exp)
        frac = []
        for _ in range(self.exp):
            rem, d = divmod(rem, k)
            frac.append(d)
        return int_part, tuple(reversed(frac))

    def digit_sum_mod(self) -> int:
        """Sum of all base-k digits, reduced into {1, ..., base-1}.

        Congruent to ``num`` modulo ``base - 1`` (casting out k-1's), which
        is what makes it usable as a D-class index.  Undefined for zero.
        """
        if self.is_zero():
            raise ZeroValue("digit sum index of zero is undefined")
        int_part, frac = self.digits()
        total = sum(frac)
        while int_part:
            int_part, d = divmod(int_part, self.base)
            total += d
        if self.base == 2:
            return 1
        return (total - 1) % (self.base - 1) + 1

    def scale_pow(self, j: int) -> "KRational":
        """Exact multiplication by base**j (j may be negative)."""
        if self.num == 0:
            return self
        return kq(self.base, self.num, self.exp - j)

    def as_integer(self) -> int:
        """The value as an int, or raise if it has a fractional part."""
        if self.exp != 0:
            raise ValueError(f"{self} is not an integer")
        return self.num

    # -- arithmetic -----------------------------------------------------------

    def _check_base(self, other: "KRational"):
        if not isinstance(other, KRational):
            raise TypeError(f"expected KRational, got {type(other).__name__}")
        if self.base != other.base:
            raise BaseMismatch(f"cannot mix bases {self.base} and {other.base}")

    def __add__(self, other: "KRational") -> "KRational":
        self._check_base(other)
        k, e = self.base, max(self.exp, other.exp)
        a = self.num * k ** (e - self.exp) + other.num * k ** (e - other.exp)
        return kq(k, a, e)

    def __sub__(self, other: "KRational") -> "KRational":
        self._check_base(other)
        k, e = self.base, max(self.exp, other.exp)
        a = self.num * k ** (e - self.exp) - other.num * k ** (e - other.exp)
        if a < 0:
            raise NegativeResult(f"{self} - {other} would be negative")
        return kq(k, a, e)

    def cmp(self, other: "KRational") -> int:
        self._check_base(other)
        e = max(self.exp, other.exp)
        lhs = self.num * self.base ** (e - self.exp)
        rhs = other.num * other.base ** (e - other.exp)
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    # -- text -----------------------------------------------------------------

    def __str__(self) -> str:
        return format_krational(self)

    def __repr__(self) -> str:
        return f"KRational(base={self.base}, num={self.num}, exp={self.exp})"


def kq(base: int, num: int, exp: int = 0) -> KRational:
    """Canonical k-ary rational num * base**(-exp).

    Common factors of ``base`` are cancelled until the exponent hits 0 or
    the numerator is no longer divisible by the base.  A negative ``exp``
    scales the numerator up instead.
    """
    if base < 2:
        raise BaseTooSmall(f"base must be at least 2, got {base}")
    if num < 0:
        raise NegativeResult("k-ary rationals here are non-negative")
    if num == 0:
        return KRational(base, 0, 0)
    if exp < 0:
        num *= base ** (-exp)
        exp = 0
    while exp > 0 and num % base == 0:
        num //= base
        exp -= 1
    return KRational(base, num, exp)


def kq_zero(base: int) -> KRational:
    return kq(base, 0)


def kq_one(base: int) -> KRational:
    return kq(base, 1)


def kq_from_digits(base: int, int_part: int, frac_digits) -> KRational:
    """Value int_part.d1 d2 ... dn in base k."""
    frac_digits = tuple(frac_digits)
    if int_part < 0:
        raise NegativeResult("integer part must be non-negative")
    for d in frac_digits:
        if not 0 <= d < base:
            raise ParseError(f"digit {d} out of range for base {base}")
    num = int_part
    for d in frac_digits:
        num = num * base + d
    return kq(base, num, len(frac_digits))


def format_krational(x: KRational) -> str:
    """Canonical text form.

    Bases up to 10 print base-k digit strings (``0.111`` for 7/8 in base 2);
    larger bases print the integer part in decimal and the fractional digits
    as a bracketed decimal list (``0.[10,0,3]``).
    """
    int_part, frac = x.digits()
    if x.base <= 10:
        ip = _int_to_base(int_part, x.base)
        if not frac:
            return ip
        return ip + "." + "".join(str(d) for d in frac)
    if not frac:
        return str(int_part)
    return f"{int_part}.[" + ",".join(str(d) for d in frac) + "]"


def parse_krational(base: int, text: str) -> KRational:
    """Inverse of :func:`format_krational` for the given base."""
    text = text.strip()
    if not text:
        raise ParseError("empty k-ary rational")
    if "." in text:
        ip_text, _, frac_text = text.partition(".")
    else:
        ip_text, frac_text = text, ""
    try:
        if base <= 10:
            int_part = _int_from_base(ip_text, base)
            frac = tuple(int(c) for c in frac_text)
            if any(d >= base for d in frac):
                raise ValueError
        else:
            int_part = int(ip_text)
            if frac_text:
                if not (frac_text.startswith("[") and frac_text.endswith("]")):
                    raise ValueError
                frac = tuple(int(p) for p in frac_text[1:-1].split(","))
                if any(not 0 <= d < base for d in frac):
                    raise ValueError
            else:
                frac = ()
    except ValueError:
        raise ParseError(f"bad base-{base} rational: {text!r}") from None
    if int_part < 0:
        raise ParseError(f"bad base-{base} rational: {text!r}")
    return kq_from_digits(base, int_part, frac)


def _int_to_base(value: int, base: int) -> str:
    if value == 0:
        return "0"
    out = []
    while value:
        value, d = divmod(value, base)
        out.append(str(d))
    return "".join(reversed(out))


def _int_from_base(text: str, base: int) -> int:
    if not text or not text.isdigit():
        raise ValueError(text)
    value = 0
    for c in text:
        d = int(c)
        if d >= base:
            raise ValueError(text)
        value = value * base + d
    return value
