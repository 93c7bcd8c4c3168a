"""
Moebius transformations z -> (a z + b) / (c z + d) over Q(zeta_8).

Points live on the Riemann sphere: a Scalar or INFINITY. Maps are compared
projectively (up to a common nonzero factor of the coefficients).
"""
import logging
from dataclasses import dataclass

from algebra.scalar import ONE, ZERO, I, Scalar
from errors import InvariantViolation, SingularMatrix, ValidationError
from signatures.signature import to_six_vertex

logger = logging.getLogger(__name__)


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__


INFINITY = _Infinity()
INFINITE_ORDER = "infinite"

# 2 + rho + 1/rho untuk akar satuan rho yang jejaknya ada di Q(sqrt2)
_ORDER_VALUES = (
    (2, Scalar(0)),
    (3, Scalar(1)),
    (4, Scalar(2)),
    (6, Scalar(3)),
    (8, Scalar(2) + Scalar.sqrt2()),
    (8, Scalar(2) - Scalar.sqrt2()),
)


@dataclass(frozen=True)
class MobiusTransform:
    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Scalar.coerce(getattr(self, name)))
        if not self.det:
            raise SingularMatrix(f"Moebius coefficients ({self.a}, {self.b}, {self.c}, {self.d}) have ad - bc = 0")

    @classmethod
    def identity(cls):
        return cls(ONE, ZERO, ZERO, ONE)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def trace(self):
        return self.a + self.d

    def compose(self, other):
        """self after other, as the 2x2 matrix product."""
        return MobiusTransform(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                               self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def inverse(self):
        return MobiusTransform(self.d, -self.b, -self.c, self.a)

    def power(self, n):
        base = self if n >= 0 else self.inverse()
        result = MobiusTransform.identity()
        n = abs(n)
        while n:
            if n & 1:
                result = result.compose(base)
            base = base.compose(base)
            n >>= 1
        return result

    def apply(self, point):
        if point is INFINITY:
            return self.a / self.c if self.c else INFINITY
        point = Scalar.coerce(point)
        denominator = self.c * point + self.d
        if not denominator:
            return INFINITY
        return (self.a * point + self.b) / denominator

    __call__ = apply

    def proportional(self, other):
        """Same map: (a, b, c, d) and the other coefficients are parallel."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        return all(mine[i] * theirs[j] == mine[j] * theirs[i] for i in range(4) for j in range(i + 1, 4))

    def is_identity(self):
        return not self.b and not self.c and self.a == self.d

    def __str__(self):
        return f"z -> ({self.a}*z + {self.b}) / ({self.c}*z + {self.d})"


def from_signature(f, which="inner"):
    """inner: (z + y w)/(b + c w); cross: (c + x w)/(a + z w), as maps of w."""
    f = to_six_vertex(f)
    if which == "inner":
        return MobiusTransform(f.y, f.z, f.c, f.b)
    if which == "cross":
        return MobiusTransform(f.x, f.c, f.z, f.a)
    raise ValidationError(f"unknown map {which!r}; use inner or cross")


# ---------------------------------------------------------------
# Lingkaran satuan
# ---------------------------------------------------------------
@dataclass(frozen=True)
class UnitCircleForm:
    """u (z + alpha) / (1 + conj(alpha) z), or u / z when `inversion`."""
    alpha: Scalar
    unit: Scalar
    inversion: bool = False

    def __str__(self):
        if self.inversion:
            return f"u={self.unit} form=inversion"
        return f"alpha={self.alpha} u={self.unit}"


def _on_circle(point):
    return point is not INFINITY and point.abs2() == ONE


def unit_circle_form(phi):
    """The normalized form if phi maps the unit circle onto itself, else None."""
    if not all(_on_circle(phi.apply(p)) for p in (ONE, -ONE, I)):
        return None
    if not phi.d:
        if phi.a:
            raise InvariantViolation(f"{phi} sends three circle points to the circle but has no circle form")
        return UnitCircleForm(ZERO, phi.b / phi.c, inversion=True)
    unit, shift, tilt = phi.a / phi.d, phi.b / phi.d, phi.c / phi.d
    if not unit:
        raise InvariantViolation(f"{phi} sends three circle points to the circle but has no circle form")
    alpha = shift / unit
    if tilt != alpha.conjugate() or unit.abs2() != ONE:
        raise InvariantViolation(f"{phi} sends three circle points to the circle but has no circle form")
    return UnitCircleForm(alpha, unit)


# ---------------------------------------------------------------
# Orde
# ---------------------------------------------------------------
def order(phi):
    """
    Order of phi in the Moebius group: an int, or INFINITE_ORDER.

    With eigenvalue ratio rho, trace^2/det = 2 + rho + 1/rho. Inside Q(zeta_8)
    that value can only match roots of unity of order 1, 2, 3, 4, 6 or 8.
    """
    if phi.is_identity():
        return 1
    ratio = phi.trace * phi.trace / phi.det
    for n, value in _ORDER_VALUES:
        if ratio == value:
            return n
    return INFINITE_ORDER


@dataclass
class IterationResult:
    values: list
    period: int = None
    pole_at: int = None

    @property
    def distinct(self):
        return len(set(self.values))


def iterate_distinct(phi, t0, count):
    """phi^k(t0) for k = 0..count-1, stopping early when the orbit closes."""
    point = INFINITY if t0 is INFINITY else Scalar.coerce(t0)
    seen = {}
    result = IterationResult([])
    for k in range(count):
        if point in seen:
            result.period = k - seen[point]
            break
        seen[point] = k
        result.values.append(point)
        if point is INFINITY and result.pole_at is None:
            result.pole_at = k
            logger.warning("iterate_distinct: orbit reaches infinity at step %d", k)
        point = phi.apply(point)
    return result


def fixed_points_count(phi):
    """Fixed points on the Riemann sphere; None for the identity."""
    if phi.is_identity():
        return None
    if phi.c:
        discriminant = (phi.d - phi.a) ** 2 + 4 * phi.b * phi.c
        return 1 if not discriminant else 2
    # c = 0: tak hingga tetap
    return 2 if phi.a != phi.d else 1
