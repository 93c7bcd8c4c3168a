"""Small fixture instances for the interpolation and gadget harnesses."""
import logging

import numpy as np

from algebra.scalar import ONE, Scalar
from errors import ValidationError
from planar.generators import cycle_medial
from planar.instance import PlanarInstance, subdivide
from reductions import interpolation
from reductions.square import square_gadget
from signatures.signature import BinarySignature, SixVertexSignature

logger = logging.getLogger(__name__)


def labelled_cycle(n, labels, signatures):
    """Medial of C_n with the given per-vertex labels."""
    rotation = cycle_medial(n)
    if len(labels) != rotation.num_vertices:
        raise ValidationError(f"need {rotation.num_vertices} labels, got {len(labels)}")
    return PlanarInstance(rotation, labels, signatures).validate()


def chi_fixture(f, m, which="chi1"):
    """m chi vertices and one f vertex on the medial of C_(m+1)."""
    chi = interpolation.TARGETS[which]
    return labelled_cycle(m + 1, [which] * m + ["f"], {which: chi, "f": f})


def binary_fixture(f, target, m):
    """All-f medial of C_2 with m edges subdivided by the binary target."""
    instance = labelled_cycle(2, ["f", "f"], {"f": f})
    for k in range(m):
        instance = subdivide(instance, 2 * k, target, name="target")
    return instance


def jordan_fixture(f, m):
    """m copies of the inner-antidiagonal g next to one f on the medial of C_(m+1)."""
    return labelled_cycle(m + 1, ["g"] * m + ["f"], {"g": interpolation.JORDAN_TARGET, "f": f})


def run_chi(f, m=1, which="chi1", jobs=1):
    return interpolation.interpolate_chi(chi_fixture(f, m, which), f, which, jobs=jobs)


def run_binary(f, g, target, m=1, jobs=1):
    return interpolation.interpolate_binary(binary_fixture(f, target, m), g, "target", jobs=jobs)


def run_jordan(f, m=1, jobs=1):
    return interpolation.jordan_interp(jordan_fixture(f, m), f, jobs=jobs)


def run_lattice(alpha, beta, m, phi=None, psi=None, seed=0, bound=None):
    """
    Lattice recovery on random integer unknowns x_{j,k}.

    Returns (recovered, direct, spec); phi, psi default to alpha, beta.
    """
    rng = np.random.default_rng(seed)
    alpha, beta = Scalar.coerce(alpha), Scalar.coerce(beta)
    phi = alpha if phi is None else Scalar.coerce(phi)
    psi = beta if psi is None else Scalar.coerce(psi)
    unknowns = {(j, k): Scalar(int(rng.integers(-5, 6)))
                for j in range(m + 1) for k in range(m + 1 - j)}
    spec = interpolation.find_lattice_basis(alpha, beta, bound)
    values = interpolation.lattice_queries(alpha, beta, unknowns, m)
    recovered = interpolation.lattice_solve(spec, values, phi, psi, m)
    direct = sum((phi ** j * psi ** k * x for (j, k), x in unknowns.items()), Scalar(0))
    return recovered, direct, spec


def square_family(b, signed=False):
    """a = 1, x = -1 when signed else 1, b = y, c = z = 0."""
    return SixVertexSignature(1, b, 0, -1 if signed else 1, b, 0)


def run_square(b, signed=False):
    """(gadget signature, expected outer 1+b^4, expected inner 2b^3)."""
    b = Scalar.coerce(b)
    sig = square_gadget(square_family(b, signed))
    return sig, ONE + b ** 4, 2 * b ** 3


def default_binary(t=2, target=5):
    return BinarySignature.of(0, 1, t, 0), BinarySignature.of(0, 1, target, 0)
