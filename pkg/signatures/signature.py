"""
Signatures of arity <= 4 and the matrix/gadget algebra on them.

Entries are indexed with x1 as the most significant bit, so a signature of
arity k is a tuple of 2**k Scalars. The matrix view of an arity-4 signature is
M_{x1x2,x4x3}(f): rows (x1, x2), columns (x4, x3) -- note the reversal.
"""
from dataclasses import dataclass
from itertools import product

from algebra import linalg
from algebra.scalar import Scalar, ZERO
from errors import NotInClass, ParseError, ValidationError

# Posisi (indeks) enam pola berbobot dua
SIX_SLOTS = {"a": 0b0011, "b": 0b0110, "c": 0b0101, "x": 0b1100, "y": 0b1001, "z": 0b1010}
SLOT_ORDER = ("a", "b", "c", "x", "y", "z")


def index_of(bits):
    index = 0
    for bit in bits:
        index = (index << 1) | (bit & 1)
    return index


def bits_of(index, arity):
    return tuple((index >> (arity - 1 - k)) & 1 for k in range(arity))


@dataclass(frozen=True)
class Signature:
    """Generic signature of arity 1..4 as a tuple of 2**arity Scalars."""
    entries: tuple

    def __post_init__(self):
        entries = tuple(Scalar.coerce(e) for e in self.entries)
        if len(entries) not in (2, 4, 8, 16):
            raise ValidationError(f"signature needs 2, 4, 8 or 16 entries, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    @property
    def arity(self):
        return len(self.entries).bit_length() - 1

    def value(self, bits):
        return self.entries[index_of(bits)]

    def __getitem__(self, index):
        return self.entries[index]

    def is_zero(self):
        return not any(self.entries)

    def support(self):
        return [i for i, e in enumerate(self.entries) if e]

    def scaled(self, factor):
        factor = Scalar.coerce(factor)
        return type(self)(tuple(e * factor for e in self.entries))

    def literal(self):
        return ",".join(str(e) for e in self.entries)

    def matrix(self, view=0):
        """2x2 view for binaries, 4x4 view M_view for arity 4."""
        if self.arity == 2:
            return linalg.as_matrix([[self.entries[0], self.entries[1]],
                                     [self.entries[2], self.entries[3]]])
        if self.arity == 4:
            return signature_matrix(self, view)
        raise ValidationError(f"no matrix view for arity {self.arity}")


class UnarySignature(Signature):
    @classmethod
    def of(cls, u0, u1):
        return cls((u0, u1))


class BinarySignature(Signature):
    @classmethod
    def of(cls, g00, g01, g10, g11):
        return cls((g00, g01, g10, g11))

    def transposed(self):
        g = self.entries
        return BinarySignature((g[0], g[2], g[1], g[3]))


class GeneralSignature4(Signature):
    def __post_init__(self):
        super().__post_init__()
        if len(self.entries) != 16:
            raise ValidationError("GeneralSignature4 needs exactly 16 entries")


@dataclass(frozen=True)
class SixVertexSignature:
    """The six weights (a, b, c, x, y, z) on the patterns 0011, 0110, 0101, 1100, 1001, 1010."""
    a: Scalar
    b: Scalar
    c: Scalar
    x: Scalar
    y: Scalar
    z: Scalar

    def __post_init__(self):
        for name in SLOT_ORDER:
            object.__setattr__(self, name, Scalar.coerce(getattr(self, name)))

    arity = 4

    @classmethod
    def of(cls, *weights):
        if len(weights) != 6:
            raise ValidationError(f"six-vertex signature needs 6 weights, got {len(weights)}")
        return cls(*weights)

    @classmethod
    def parse(cls, text):
        parts = [p for p in text.split(",")]
        if len(parts) != 6:
            raise ParseError(f"six-vertex literal needs 6 comma separated scalars: {text!r}")
        return cls(*(Scalar.parse(p) for p in parts))

    @property
    def weights(self):
        return tuple(getattr(self, name) for name in SLOT_ORDER)

    @property
    def entries(self):
        entries = [ZERO] * 16
        for name, index in SIX_SLOTS.items():
            entries[index] = getattr(self, name)
        return tuple(entries)

    def value(self, bits):
        return self.entries[index_of(bits)]

    def __getitem__(self, index):
        return self.entries[index]

    def general(self):
        return GeneralSignature4(self.entries)

    def matrix(self, view=0):
        return signature_matrix(self, view)

    def is_zero(self):
        return not any(self.weights)

    def support(self):
        return sorted(SIX_SLOTS[name] for name in SLOT_ORDER if getattr(self, name))

    def scaled(self, factor):
        factor = Scalar.coerce(factor)
        return SixVertexSignature(*(w * factor for w in self.weights))

    def literal(self):
        return ",".join(str(w) for w in self.weights)

    def __str__(self):
        return "(" + ", ".join(str(w) for w in self.weights) + ")"


def parse_signature(text):
    """Signature literal by entry count: 2 unary, 4 binary, 6 six-vertex, 16 general."""
    parts = text.split(",")
    if len(parts) == 6:
        return SixVertexSignature.parse(text)
    values = tuple(Scalar.parse(p) for p in parts)
    kinds = {2: UnarySignature, 4: BinarySignature, 16: GeneralSignature4}
    if len(values) not in kinds:
        raise ParseError(f"signature literal must have 2, 4, 6 or 16 entries, got {len(values)}")
    return kinds[len(values)](values)


# ---------------------------------------------------------------
# Konstanta
# ---------------------------------------------------------------
NEQ2 = BinarySignature.of(0, 1, 1, 0)
EQ2 = BinarySignature.of(1, 0, 0, 1)
CHI1 = SixVertexSignature(1, 1, 0, 1, 1, 0)
CHI2 = SixVertexSignature(1, 1, 0, -1, 1, 0)
ZERO_SIX = SixVertexSignature(0, 0, 0, 0, 0, 0)
N_MATRIX = linalg.as_matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
H_MATRIX = linalg.as_matrix([[1, 1], [1, -1]])


# ---------------------------------------------------------------
# Matrix views
# ---------------------------------------------------------------
def view_variables(view):
    """0-based variable positions (row_hi, row_lo, col_hi, col_lo) of view M_{x(1+r)x(2+r), x(4+r)x(3+r)}."""
    r = view % 4
    return r % 4, (1 + r) % 4, (3 + r) % 4, (2 + r) % 4


def signature_matrix(f, view=0):
    rh, rl, ch, cl = view_variables(view)
    matrix = linalg.zeros(4)
    for bits in product((0, 1), repeat=4):
        matrix[2 * bits[rh] + bits[rl], 2 * bits[ch] + bits[cl]] = f.value(bits)
    return matrix


def from_matrix(matrix):
    """Arity-4 signature whose standard view M_{x1x2,x4x3} is `matrix`."""
    entries = [ZERO] * 16
    for x1, x2, x3, x4 in product((0, 1), repeat=4):
        entries[index_of((x1, x2, x3, x4))] = matrix[2 * x1 + x2, 2 * x4 + x3]
    return GeneralSignature4(tuple(entries))


def to_six_vertex(f):
    """Down-cast after checking the support lies on the six weight-2 patterns."""
    if isinstance(f, SixVertexSignature):
        return f
    if f.arity != 4:
        raise NotInClass(f"arity {f.arity} signature is not six-vertex")
    slots = set(SIX_SLOTS.values())
    stray = [i for i in f.support() if i not in slots]
    if stray:
        raise NotInClass(f"support leaves the six-vertex patterns at {[format(i, '04b') for i in stray]}")
    return SixVertexSignature(*(f.entries[SIX_SLOTS[name]] for name in SLOT_ORDER))


def is_six_vertex_shaped(f):
    slots = set(SIX_SLOTS.values())
    return all(i in slots for i in f.support())


# ---------------------------------------------------------------
# Operasi gadget
# ---------------------------------------------------------------
def rotate(f, quarter_turns):
    """Rotated form g(t1,t2,t3,t4) = f(t4,t1,t2,t3), applied `quarter_turns` times."""
    k = quarter_turns % 4
    if isinstance(f, SixVertexSignature):
        a, b, c, x, y, z = f.weights
        for _ in range(k):
            a, b, c, x, y, z = y, a, z, b, x, c
        return SixVertexSignature(a, b, c, x, y, z)
    entries = list(f.entries)
    for _ in range(k):
        entries = [entries[index_of((t[3], t[0], t[1], t[2]))]
                   for t in (bits_of(i, 4) for i in range(16))]
    return GeneralSignature4(tuple(entries))


def compose_matrix(f1, f2, view1=0, view2=0):
    return linalg.matmul(signature_matrix(f1, view1), N_MATRIX, signature_matrix(f2, view2))


def compose_N(f1, f2, view1=0, view2=0):
    """M_view1(f1) . N . M_view2(f2) as a general signature."""
    return from_matrix(compose_matrix(f1, f2, view1, view2))


def scale_on(f, variable, t):
    """Multiply by t exactly the entries with x_variable = 1."""
    if variable not in (1, 2, 3, 4):
        raise ValidationError(f"variable must be 1..4, got {variable}")
    t = Scalar.coerce(t)
    entries = [e * t if bits_of(i, 4)[variable - 1] else e for i, e in enumerate(f.entries)]
    if isinstance(f, SixVertexSignature):
        return to_six_vertex(GeneralSignature4(tuple(entries)))
    return GeneralSignature4(tuple(entries))


def _adjacent_pairs():
    pairs = {}
    for r in range(4):
        rh, rl, ch, cl = view_variables(r)
        pairs[(ch + 1, cl + 1)] = (r, "columns")
        pairs[(rh + 1, rl + 1)] = (r, "rows")
    return pairs


_ADJACENT = _adjacent_pairs()


def attach_binary(f, g, sites):
    """
    Connect variables of f to g through disequality edges.

    sites=(k, l) links x_k to g's first and x_l to g's second variable. When
    (k, l) is the column pair (x4+r, x3+r) of view r the result is
    M_r(f) N g, indexed by the row pair; when it is the row pair (x1+r, x2+r)
    the result is (g^T N M_r(f))^T, indexed by the column pair.
    sites=(k,) hangs g on x_k: f'(x_k = v) = sum_u g(v, 1-u) f(x_k = u).
    """
    g_vec = g.entries
    if len(sites) == 1:
        k = sites[0] - 1
        if k not in range(4):
            raise ValidationError(f"site must be 1..4, got {sites[0]}")
        entries = []
        for index in range(16):
            t = list(bits_of(index, 4))
            v, acc = t[k], ZERO
            for u in (0, 1):
                t[k] = u
                acc = acc + g_vec[index_of((v, 1 - u))] * f.value(t)
            entries.append(acc)
        return GeneralSignature4(tuple(entries))
    key = tuple(sites)
    if key not in _ADJACENT:
        raise ValidationError(f"sites {sites} are not an ordered adjacent pair of a matrix view")
    view, side = _ADJACENT[key]
    matrix = signature_matrix(f, view)
    out = []
    for outer in range(4):
        acc = ZERO
        for inner in range(4):
            entry = matrix[outer, inner] if side == "columns" else matrix[inner, outer]
            if entry:
                acc = acc + entry * g_vec[3 - inner]
        out.append(acc)
    return BinarySignature(tuple(out))


def hadamard_image(f):
    """f^(y) = sum_x (-1)^<x,y> f(x), i.e. H tensored arity times, unnormalized."""
    n = f.arity
    size = 1 << n
    out = []
    for y in range(size):
        acc = ZERO
        for x in range(size):
            e = f.entries[x]
            if e:
                acc = acc - e if bin(x & y).count("1") % 2 else acc + e
        out.append(acc)
    kinds = {1: UnarySignature, 2: BinarySignature, 4: GeneralSignature4}
    if n not in kinds:
        return Signature(tuple(out))
    return kinds[n](tuple(out))


def inner_outer_dets(f):
    """(det M_In, det M_Out) = (by - cz, -ax)."""
    return f.b * f.y - f.c * f.z, -(f.a * f.x)


def inner_matrix(f):
    return linalg.as_matrix([[f.b, f.c], [f.z, f.y]])


def outer_matrix(f):
    return linalg.as_matrix([[ZERO, f.a], [f.x, ZERO]])


def flip_variable(f, variable):
    """Compose x_variable with a disequality edge: f'(t) = f(t with x_variable negated)."""
    k = variable - 1
    entries = [f.entries[index ^ (1 << (3 - k))] for index in range(16)]
    return GeneralSignature4(tuple(entries))
