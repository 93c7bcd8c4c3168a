"""
Exact arithmetic in the eighth cyclotomic field Q(w), w = exp(i*pi/4), w^4 = -1.

Every weight, determinant, Pfaffian and Gauss sum in the toolkit is a Scalar.
A Scalar is four reduced Fractions over the basis (1, w, w^2, w^3); equality is
coefficient equality, so it is decidable.
"""
import cmath
import re
from fractions import Fraction
from math import gcd

from errors import ParseError, ValidationError

# Basis index -> literal suffix used by __str__ / parse
_SUFFIX = {1: "w^1", 2: "i", 3: "w^3"}


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


def _solve_rational(matrix, rhs):
    """Gaussian elimination over Fractions; returns None for a singular system."""
    n = len(matrix)
    rows = [list(matrix[r]) + [rhs[r]] for r in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * pv for v, pv in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


class Scalar:
    """Immutable element c0 + c1*w + c2*w^2 + c3*w^3 of Q(zeta_8)."""

    __slots__ = ("_c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        object.__setattr__(self, "_c", (_as_fraction(c0), _as_fraction(c1),
                                        _as_fraction(c2), _as_fraction(c3)))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, self._c)

    # --- Konstruktor ---
    @classmethod
    def coerce(cls, value):
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def zeta(cls, k):
        """w^k for any integer k."""
        k %= 8
        coeffs = [0, 0, 0, 0]
        coeffs[k % 4] = -1 if k >= 4 else 1
        return cls(*coeffs)

    @classmethod
    def sqrt2(cls):
        # w + w^-1 = w - w^3
        return cls(0, 1, 0, -1)

    @classmethod
    def real_subfield(cls, p, q):
        """p + q*sqrt(2)."""
        p, q = _as_fraction(p), _as_fraction(q)
        return cls(p, q, 0, -q)

    @property
    def coefficients(self):
        return self._c

    # --- Aritmatika ---
    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(*(s + o for s, o in zip(self._c, other._c)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(*(-s for s in self._c))

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(*(s - o for s, o in zip(self._c, other._c)))

    def __rsub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(*(s * other for s in self._c))
        if not isinstance(other, Scalar):
            return NotImplemented
        out = [Fraction(0)] * 4
        for i, si in enumerate(self._c):
            if not si:
                continue
            for j, oj in enumerate(other._c):
                if not oj:
                    continue
                k = i + j
                # w^4 = -1
                if k >= 4:
                    out[k - 4] -= si * oj
                else:
                    out[k] += si * oj
        return Scalar(*out)

    __rmul__ = __mul__

    def inv(self):
        """Multiplicative inverse via the 4x4 rational system s * t = 1."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        # Kolom j = koefisien dari s * w^j
        columns = [(self * Scalar.zeta(j))._c for j in range(4)]
        matrix = [[columns[j][i] for j in range(4)] for i in range(4)]
        solution = _solve_rational(matrix, [Fraction(1), Fraction(0), Fraction(0), Fraction(0)])
        if solution is None:
            raise ZeroDivisionError("singular multiplication matrix")
        return Scalar(*solution)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of Scalar by zero")
            return Scalar(*(s / other for s in self._c))
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inv() ** (-exponent)
        result, base = Scalar(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- Perbandingan ---
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == (Fraction(other), 0, 0, 0)
        return NotImplemented

    def __hash__(self):
        if self._c[1] == self._c[2] == self._c[3] == 0:
            return hash(self._c[0])
        return hash(self._c)

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self):
        return not any(self._c)

    def is_rational(self):
        return self._c[1] == self._c[2] == self._c[3] == 0

    # --- Struktur medan ---
    def conjugate(self):
        """Complex conjugation w -> w^7 = -w^3."""
        c0, c1, c2, c3 = self._c
        return Scalar(c0, -c3, -c2, -c1)

    def abs2(self):
        """|s|^2, an element of the real subfield Q(sqrt 2)."""
        return self * self.conjugate()

    def in_real_subfield(self):
        c0, c1, c2, c3 = self._c
        return c2 == 0 and c1 == -c3

    def real_subfield_parts(self):
        """(p, q) with self = p + q*sqrt(2); raises for non-real elements."""
        if not self.in_real_subfield():
            raise ValidationError(f"{self} is not in the real subfield Q(sqrt 2)")
        return self._c[0], self._c[1]

    def real_subfield_sign(self):
        """Exact sign (-1, 0, +1) of p + q*sqrt(2)."""
        p, q = self.real_subfield_parts()
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (q > 0) - (q < 0)
        if (p > 0) == (q > 0):
            return 1 if p > 0 else -1
        # Tanda berlawanan: bandingkan p^2 dengan 2q^2
        dominant = p * p - 2 * q * q
        if dominant == 0:
            return 0
        sign_p = 1 if p > 0 else -1
        return sign_p if dominant > 0 else -sign_p

    def root_of_unity_exponent(self):
        """k with self == w^k (0 <= k < 8), or None."""
        for k in range(8):
            if self == Scalar.zeta(k):
                return k
        return None

    def is_root_of_unity(self):
        """Order of self in mu_8, or None when it is not a root of unity."""
        k = self.root_of_unity_exponent()
        if k is None:
            return None
        return 8 // gcd(k, 8)

    # --- Tampilan ---
    def approx(self):
        """Complex approximation, for human-facing display only."""
        return sum(complex(float(c)) * cmath.exp(1j * cmath.pi * k / 4)
                   for k, c in enumerate(self._c))

    def __str__(self):
        terms = []
        for k, coeff in enumerate(self._c):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if k == 0:
                body = str(magnitude)
            elif magnitude == 1:
                body = _SUFFIX[k]
            else:
                body = f"{magnitude}*{_SUFFIX[k]}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Scalar({self})"

    @classmethod
    def parse(cls, text):
        """Parse the scalar literal grammar, e.g. "1/2 + 3*w^1", "i", "-2"."""
        if not isinstance(text, str):
            raise ParseError(f"scalar literal must be text, got {type(text).__name__}")
        compact = text.replace(" ", "")
        if not compact:
            raise ParseError("empty scalar literal")
        total = Scalar(0)
        for match in _TERM.finditer(compact):
            sign, body = match.group(1), match.group(2)
            if not sign and not body:
                continue
            if not body:
                raise ParseError(f"dangling sign in scalar literal {text!r}")
            term = _parse_term(body, text)
            total = total - term if sign.count("-") % 2 else total + term
        return total


_TERM = re.compile(r"([+-]*)([^+-]*)")
_RATIONAL = re.compile(r"^(\d+)(?:/(\d+))?$")
_POWER = re.compile(r"^w(?:\^(\d+))?$")


def _parse_rational(token, source):
    match = _RATIONAL.match(token)
    if not match:
        raise ParseError(f"bad rational {token!r} in scalar literal {source!r}")
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise ParseError(f"zero denominator in scalar literal {source!r}")
    return Fraction(int(match.group(1)), denominator)


def _parse_unit(token, source):
    if token == "i":
        return Scalar.zeta(2)
    if token == "sqrt2":
        return Scalar.sqrt2()
    match = _POWER.match(token)
    if match:
        return Scalar.zeta(int(match.group(1)) if match.group(1) else 1)
    raise ParseError(f"unknown unit {token!r} in scalar literal {source!r}")


def _parse_term(body, source):
    if "*" in body:
        coeff, unit = body.split("*", 1)
        return _parse_unit(unit, source) * _parse_rational(coeff, source)
    if body[0].isdigit():
        return Scalar(_parse_rational(body, source))
    return _parse_unit(body, source)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar.zeta(2)
W = Scalar.zeta(1)
