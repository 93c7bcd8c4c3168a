"""
Plane gadgets: fragments of an instance with dangling half-edges.

A gadget uses the same rotation-list encoding as RotationMap, except that
`twin[h] == DANGLING` for its external half-edges. `externals` lists those in
the order x1..xk, which must be their ccw order around the outer face, so a
gadget can stand in for one vertex of a plane instance.
"""
import logging
from dataclasses import dataclass, field

from errors import ValidationError
from planar.instance import PlanarInstance
from planar.rotation_map import RotationMap

logger = logging.getLogger(__name__)

DANGLING = -1


@dataclass(frozen=True)
class Gadget:
    vertices: tuple
    twin: tuple
    labels: tuple
    signatures: dict = field(hash=False)
    externals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        object.__setattr__(self, "twin", tuple(self.twin))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "signatures", dict(self.signatures))
        object.__setattr__(self, "externals", tuple(self.externals))

    @property
    def arity(self):
        return len(self.externals)

    @property
    def num_half_edges(self):
        return len(self.twin)

    def internal_edges(self):
        return [(h, t) for h, t in enumerate(self.twin) if t != DANGLING and h < t]

    def signature_of(self, v):
        return self.signatures[self.labels[v]]

    def closure(self):
        """The gadget plugged into one outer vertex, as a RotationMap."""
        base = self.num_half_edges
        twin = list(self.twin) + [0] * self.arity
        outer = []
        for k, h in enumerate(reversed(self.externals)):
            twin[h], twin[base + k] = base + k, h
            outer.append(base + k)
        return RotationMap(list(self.vertices) + [outer], twin)

    def check(self):
        dangling = sorted(h for h, t in enumerate(self.twin) if t == DANGLING)
        if dangling != sorted(self.externals):
            raise ValidationError(f"externals {list(self.externals)} differ from dangling half-edges {dangling}")
        if len(self.labels) != len(self.vertices):
            raise ValidationError("one label per gadget vertex required")
        for v, name in enumerate(self.labels):
            if self.signatures[name].arity != len(self.vertices[v]):
                raise ValidationError(f"gadget vertex {v}: arity of {name!r} differs from its degree")
        self.closure().check_planar()
        return self


def substitute_gadget(instance, vertex, gadget):
    """
    Replace `vertex` of the instance by the gadget.

    External k of the gadget takes over the vertex's k-th half-edge id, so the
    edges around the vertex stay as they are; internal half-edges are renumbered
    after the existing ones. The gadget's first vertex reuses the slot of
    `vertex`, the others are appended.
    """
    rotation = instance.map
    old = rotation.vertices[vertex]
    if len(old) != gadget.arity:
        raise ValidationError(f"vertex v{vertex} has degree {len(old)}, gadget arity is {gadget.arity}")
    if not gadget.vertices:
        raise ValidationError("cannot substitute an empty gadget")

    # Peta id half-edge gadget -> id baru
    rename = {e: h for e, h in zip(gadget.externals, old)}
    fresh = rotation.num_half_edges
    for h in range(gadget.num_half_edges):
        if h not in rename:
            rename[h] = fresh
            fresh += 1
    twin = list(rotation.twin) + [0] * (fresh - rotation.num_half_edges)
    for h, t in gadget.internal_edges():
        twin[rename[h]], twin[rename[t]] = rename[t], rename[h]

    mapped = [[rename[h] for h in hs] for hs in gadget.vertices]
    vertices = list(rotation.vertices)
    vertices[vertex] = mapped[0]
    vertices.extend(mapped[1:])
    labels = list(instance.labels)
    labels[vertex] = gadget.labels[0]
    labels.extend(gadget.labels[1:])

    signatures = dict(instance.signatures)
    for name, sig in gadget.signatures.items():
        if name in signatures and signatures[name] != sig:
            raise ValidationError(f"gadget signature {name!r} clashes with the instance")
        signatures[name] = sig
    used = set(labels)
    result = PlanarInstance(RotationMap(vertices, twin), labels,
                            {k: s for k, s in signatures.items() if k in used})
    logger.debug("substituted %d-vertex gadget at v%d", len(gadget.vertices), vertex)
    return result


def single_vertex_gadget(f, name="f"):
    """f itself as a gadget (externals x1..x4 in order)."""
    arity = f.arity
    return Gadget([tuple(range(arity))], [DANGLING] * arity, [name], {name: f}, tuple(range(arity)))


def chain_gadget(f, copies, name="f"):
    """
    `copies` copies of f in a row, x4 and x3 of copy i joined to x1 and x2 of copy i+1.

    Its signature has matrix M(f) (N M(f))^(copies-1); externals are
    (x1, x2) of the first copy and (x3, x4) of the last.
    """
    if copies < 1:
        raise ValidationError("a chain needs at least one copy")
    twin = [DANGLING] * (4 * copies)
    for i in range(copies - 1):
        nxt = 4 * (i + 1)
        twin[4 * i + 3], twin[nxt] = nxt, 4 * i + 3
        twin[4 * i + 2], twin[nxt + 1] = nxt + 1, 4 * i + 2
    vertices = [tuple(range(4 * i, 4 * i + 4)) for i in range(copies)]
    last = 4 * (copies - 1)
    return Gadget(vertices, twin, [name] * copies, {name: f}, (0, 1, last + 2, last + 3))


def binary_chain_gadget(g, copies, name="g"):
    """`copies` binary signatures in series; x2 of copy i joined to x1 of copy i+1."""
    if copies < 1:
        raise ValidationError("a chain needs at least one copy")
    twin = [DANGLING] * (2 * copies)
    for i in range(copies - 1):
        twin[2 * i + 1], twin[2 * i + 2] = 2 * i + 2, 2 * i + 1
    vertices = [(2 * i, 2 * i + 1) for i in range(copies)]
    return Gadget(vertices, twin, [name] * copies, {name: g}, (0, 2 * copies - 1))
