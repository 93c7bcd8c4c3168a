"""
The Square gadget: four corner copies of f on a square circuit plus a centre copy.

Corners v1..v4 sit counterclockwise (NE, NW, SW, SE) with external x_i on the
outer diagonal of v_i; the two diagonals meet at the centre v5. Corners v3 and
v4 carry f rotated three quarter turns, so under (x1, x2, x3, x4) = (0, 0, 1, 1)
every vertex reads the `a` pattern for one of the two square states.

The gadget has eight internal edges (four square sides and four diagonal
halves to the centre) and four dangling external edges, twelve in all.
"""
import logging

from counting.oracle import gadget_signature
from planar.gadget import DANGLING, Gadget
from signatures.signature import rotate

logger = logging.getLogger(__name__)

# Per simpul: [eksternal/ke pusat berseberangan, sisi persegi berseberangan]
_VERTICES = [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11), (12, 13, 14, 15), (16, 17, 18, 19)]
_EDGES = [(1, 7), (5, 11), (9, 15), (13, 3),      # persegi
          (2, 16), (6, 17), (10, 18), (14, 19)]   # diagonal
_EXTERNALS = (0, 4, 8, 12)
_ROTATIONS = (0, 0, 3, 3, 0)


def square_layout(f):
    twin = [DANGLING] * 20
    for h, t in _EDGES:
        twin[h], twin[t] = t, h
    names = {q: "f" if q == 0 else f"f{q}" for q in set(_ROTATIONS)}
    signatures = {names[q]: rotate(f, q) for q in names}
    labels = [names[q] for q in _ROTATIONS]
    return Gadget(_VERTICES, twin, labels, signatures, _EXTERNALS)


def square_gadget(f):
    """Signature of the Square gadget, by brute force over its 8 internal edges."""
    result = gadget_signature(square_layout(f))
    logger.debug("square gadget of %s evaluated", f)
    return result
