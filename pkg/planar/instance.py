"""Planar Holant(!=2 | F) instances: a rotation map plus a signature name per vertex."""
import logging
from dataclasses import dataclass, field

from errors import ValidationError
from planar.rotation_map import RotationMap

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=True)
class PlanarInstance:
    """Every edge implicitly carries disequality; label arity must equal vertex degree."""
    map: RotationMap
    labels: tuple                       # signature name per vertex
    signatures: dict = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "signatures", dict(self.signatures))

    @property
    def num_edges(self):
        return self.map.num_edges

    @property
    def num_vertices(self):
        return self.map.num_vertices

    def signature_of(self, v):
        return self.signatures[self.labels[v]]

    def validate(self, planar=True):
        if len(self.labels) != self.map.num_vertices:
            raise ValidationError(f"{len(self.labels)} labels for {self.map.num_vertices} vertices")
        for v, name in enumerate(self.labels):
            if name not in self.signatures:
                raise ValidationError(f"vertex v{v} uses unknown signature {name!r}")
            arity = self.signatures[name].arity
            if arity != self.map.degree(v):
                raise ValidationError(
                    f"vertex v{v}: signature {name!r} has arity {arity} but degree {self.map.degree(v)}")
        if planar:
            self.map.check_planar()
        else:
            self.map.check()
        return self

    def four_valent(self):
        return [v for v in range(self.num_vertices) if self.map.degree(v) == 4]

    def with_signature(self, f, name="f"):
        """Relabel every 4-valent vertex with f, keeping other labels."""
        signatures = {k: s for k, s in self.signatures.items()}
        signatures[name] = f
        labels = [name if self.map.degree(v) == 4 else label for v, label in enumerate(self.labels)]
        used = set(labels)
        return PlanarInstance(self.map, labels, {k: s for k, s in signatures.items() if k in used})

    def relabeled(self, permutation):
        return PlanarInstance(self.map.relabeled(permutation), self.labels, self.signatures)


def uniform_instance(rotation_map, f, name="f"):
    """Instance labelling every vertex with the same signature."""
    return PlanarInstance(rotation_map, [name] * rotation_map.num_vertices, {name: f})


def subdivide(instance, half_edge, signature, name="g"):
    """
    Insert a degree-2 vertex on the edge of `half_edge`.

    The new vertex lists (new_h, new_t) ccw, where new_h faces `half_edge` and
    new_t faces its old twin; so the binary label's first variable sits on the
    `half_edge` side.
    """
    rotation = instance.map
    h = half_edge
    t = rotation.twin[h]
    new_h, new_t = rotation.num_half_edges, rotation.num_half_edges + 1
    twin = list(rotation.twin) + [0, 0]
    twin[h], twin[new_h] = new_h, h
    twin[t], twin[new_t] = new_t, t
    vertices = list(rotation.vertices) + [(new_h, new_t)]
    signatures = dict(instance.signatures)
    if name in signatures and signatures[name] != signature:
        raise ValidationError(f"signature name {name!r} already bound to a different signature")
    signatures[name] = signature
    return PlanarInstance(RotationMap(vertices, twin), list(instance.labels) + [name], signatures)
