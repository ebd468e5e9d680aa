"""Digit expansions producing finite representations.

All four expansion procedures work with an exactly represented remainder
(a rational, or ``c0 + c1*beta`` with rational coefficients when beta is a
real quadratic irrational), so digit choices are decided without any
floating point.  Floors of quadratic-field elements are found by
bisecting the base's isolating interval with exact sign tests against the
defining polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    BaseSpec, DigitString, INTEGER, NEGATIVE_INTEGER, RATIONAL_NEG,
    RATIONAL_POS, normalize,
)
from .errors import (
    NegativeInputError,
    NotInWindowError,
    PrecisionExhaustedError,
    UnsupportedBaseError,
)

_BISECTION_CAP = 20000


@dataclass(frozen=True)
class Expansion:
    """Result of an expansion: the digit string plus an exactness flag.

    ``exact`` is False when the digit budget ran out before the remainder
    hit zero; the string is then a truncation of the full expansion.
    """

    string: DigitString
    exact: bool

    def __str__(self) -> str:
        return str(self.string)


class _FieldElement:
    """Exact element c0 + c1*beta of Q(beta), beta real of degree <= 2."""

    __slots__ = ("c0", "c1", "base", "_quad")

    def __init__(self, c0, c1, base: BaseSpec, quad):
        self.c0 = Fraction(c0)
        self.c1 = Fraction(c1)
        self.base = base
        self._quad = quad  # (A, B) with beta^2 = A*beta + B, or None

    @classmethod
    def rational(cls, x, base):
        return cls(x, 0, base, base.quadratic_coeffs)

    @classmethod
    def beta(cls, base):
        frac = base.beta_fraction
        if frac is not None:
            return cls(frac, 0, base, base.quadratic_coeffs)
        quad = base.quadratic_coeffs
        if quad is None:
            raise UnsupportedBaseError(
                "expansions need a rational or real quadratic base, got "
                f"kind {base.kind!r} of degree {base.degree}",
                kind=base.kind)
        return cls(0, 1, base, quad)

    @property
    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def __add__(self, other):
        if isinstance(other, _FieldElement):
            return _FieldElement(self.c0 + other.c0, self.c1 + other.c1,
                                 self.base, self._quad)
        return _FieldElement(self.c0 + Fraction(other), self.c1,
                             self.base, self._quad)

    def __sub__(self, other):
        if isinstance(other, _FieldElement):
            return _FieldElement(self.c0 - other.c0, self.c1 - other.c1,
                                 self.base, self._quad)
        return _FieldElement(self.c0 - Fraction(other), self.c1,
                             self.base, self._quad)

    def __mul__(self, other):
        if not isinstance(other, _FieldElement):
            f = Fraction(other)
            return _FieldElement(self.c0 * f, self.c1 * f, self.base, self._quad)
        if self.c1 and other.c1 and self._quad is None:
            raise UnsupportedBaseError("degree > 2 product")
        a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
        cross = a1 * b1
        if cross:
            A, B = self._quad
            return _FieldElement(a0 * b0 + cross * B,
                                 a0 * b1 + a1 * b0 + cross * A,
                                 self.base, self._quad)
        return _FieldElement(a0 * b0, a0 * b1 + a1 * b0, self.base, self._quad)

    def inverse(self):
        """1 / (c0 + c1*beta) via the field conjugate."""
        if self.c1 == 0:
            if self.c0 == 0:
                raise ZeroDivisionError("inverse of zero field element")
            return _FieldElement(1 / self.c0, 0, self.base, self._quad)
        A, B = self._quad
        # conj(beta) = A - beta; norm = (c0 + c1 b)(c0 + c1 (A - b))
        norm = self.c0 * self.c0 + self.c0 * self.c1 * A - self.c1 * self.c1 * B
        return _FieldElement((self.c0 + self.c1 * A) / norm,
                             -self.c1 / norm, self.base, self._quad)

    # -- exact order structure -----------------------------------------

    def floor(self) -> int:
        if self.c1 == 0:
            return self.c0.numerator // self.c0.denominator
        lo, hi = self.base.isolating_interval()
        poly = self.base.defining_poly
        for _ in range(_BISECTION_CAP):
            vlo = self.c0 + self.c1 * lo
            vhi = self.c0 + self.c1 * hi
            if vlo > vhi:
                vlo, vhi = vhi, vlo
            flo = vlo.numerator // vlo.denominator
            fhi = vhi.numerator // vhi.denominator
            if flo == fhi:
                return flo
            mid = (lo + hi) / 2
            if _sign_at(poly, mid) * _sign_at(poly, lo) <= 0:
                hi = mid
            else:
                lo = mid
        raise PrecisionExhaustedError(
            "floor bisection did not converge", c0=str(self.c0), c1=str(self.c1))

    def sign(self) -> int:
        if self.c1 == 0:
            return (self.c0 > 0) - (self.c0 < 0)
        lo, hi = self.base.isolating_interval()
        poly = self.base.defining_poly
        for _ in range(_BISECTION_CAP):
            vlo = self.c0 + self.c1 * lo
            vhi = self.c0 + self.c1 * hi
            if vlo > vhi:
                vlo, vhi = vhi, vlo
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            mid = (lo + hi) / 2
            if _sign_at(poly, mid) * _sign_at(poly, lo) <= 0:
                hi = mid
            else:
                lo = mid
        raise PrecisionExhaustedError(
            "sign bisection did not converge", c0=str(self.c0), c1=str(self.c1))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __ge__(self, other):
        return (self - other).sign() >= 0


def _sign_at(poly, x: Fraction) -> int:
    acc = Fraction(0)
    for c in poly:
        acc = acc * x + c
    return (acc > 0) - (acc < 0)


def _as_field(x, base) -> _FieldElement:
    beta = _FieldElement.beta(base)  # validates the base kind
    return _FieldElement.rational(Fraction(x), base), beta


def _descale(x: _FieldElement, beta: _FieldElement, lower, upper,
             max_scale: int = 512):
    """Smallest ell >= 0 with x * beta**-ell in [lower, upper); scaled x."""
    inv = beta.inverse()
    y = x
    for ell in range(max_scale):
        if y >= lower and y < upper:
            return y, ell
        y = y * inv
    raise NotInWindowError(
        "input cannot be scaled into the digit window", max_scale=max_scale)


def _expand(x, base: BaseSpec, max_digits: int, lower, digit_of) -> Expansion:
    """Shared driver: scale into [lower, lower+1), then peel digits.

    ``digit_of(z)`` picks the digit for the rescaled remainder z (already
    multiplied by beta); the new remainder is z - digit.
    """
    x, beta = _as_field(x, base)
    if x.is_zero:
        return Expansion(DigitString.zero(), True)
    y, ell = _descale(x, beta, lower, lower + 1)
    digits = []
    exact = False
    for _ in range(max_digits):
        z = y * beta
        d = digit_of(z)
        digits.append(d)
        y = z - d
        if y.is_zero:
            exact = True
            break
    ds = normalize(DigitString(tuple(digits), ell - len(digits)))
    return Expansion(ds, exact)


def greedy_expansion(x, base: BaseSpec, max_digits: int = 64) -> Expansion:
    """Most-significant-first expansion with digit floor(beta * remainder).

    Requires a real base > 1 and x >= 0.  Digits land in {0..ceil(beta)-1}.
    """
    if not base.is_real_gt1:
        raise UnsupportedBaseError(
            f"greedy expansion needs a real base > 1, got {base.describe()}")
    x = Fraction(x)
    if x < 0:
        raise NegativeInputError("greedy expansion requires x >= 0")
    zero = _FieldElement.rational(0, base)
    return _expand(x, base, max_digits, zero, lambda z: z.floor())


def tm_expansion(x, m: int, base: BaseSpec, max_digits: int = 64) -> Expansion:
    """Expansion over the shifted alphabet {m .. m + ceil(beta) - 1}.

    The remainder window is [m/(beta-1), m/(beta-1) + 1); the input is
    scaled down by powers of beta until it fits, and each digit is
    floor(beta*z - m/(beta-1)).  With m = 0 this is exactly the greedy
    expansion.
    """
    if not base.is_real_gt1:
        raise UnsupportedBaseError(
            f"windowed expansion needs a real base > 1, got {base.describe()}")
    width = base.ceil_beta()
    if not (m <= 0 <= m + width - 1):
        raise NotInWindowError(
            f"alphabet {{{m}..{m + width - 1}}} must contain 0", m=m)
    beta = _FieldElement.beta(base)
    lower = (beta - 1).inverse() * m
    alphabet = range(m, m + width)

    def digit_of(z):
        d = (z - lower).floor()
        assert d in alphabet, (d, m, width)
        return d

    return _expand(x, base, max_digits, lower, digit_of)


def symmetric_expansion(x, base: BaseSpec, max_digits: int = 64) -> Expansion:
    """Nearest-integer expansion on the window [-1/2, 1/2).

    Digits are round-half-up of beta*remainder and lie in the symmetric
    set of integers below (beta+1)/2 in absolute value.
    """
    if not base.is_real_gt1:
        raise UnsupportedBaseError(
            f"symmetric expansion needs a real base > 1, got {base.describe()}")
    half = Fraction(1, 2)
    lower = _FieldElement.rational(-half, base)
    return _expand(x, base, max_digits, lower,
                   lambda z: (z + half).floor())


def euclid_expansion(n: int, base: BaseSpec) -> DigitString:
    """Expansion of an integer by repeated division with remainder.

    For beta = +-a/b (integer bases are the b = 1 case): peel the digit
    n mod a, then continue with -+b*(n - d)/a.  Positive bases require
    n >= 0; negative bases accept any integer.  Always exact, digits in
    {0..a-1}, least significant digit at exponent 0.
    """
    kind = base.kind
    if kind == INTEGER:
        a, b, neg = base.param("b"), 1, False
    elif kind == NEGATIVE_INTEGER:
        a, b, neg = base.param("b"), 1, True
    elif kind == RATIONAL_POS:
        a, b, neg = base.param("a"), base.param("b"), False
    elif kind == RATIONAL_NEG:
        a, b, neg = base.param("a"), base.param("b"), True
    else:
        raise UnsupportedBaseError(
            f"integer expansion needs an integer or rational base, got "
            f"{base.describe()}")
    n = int(n)
    if n < 0 and not neg:
        raise NegativeInputError(
            "positive bases cannot represent negative integers with "
            "nonnegative digits")
    digits_lsd = []
    while n != 0:
        d = n % a
        digits_lsd.append(d)
        n = b * (n - d) // a
        if neg:
            n = -n
    return normalize(DigitString(tuple(reversed(digits_lsd)), 0))
