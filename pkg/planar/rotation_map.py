"""
Combinatorial maps (rotation systems) for plane multigraphs.

Half-edges are 0..2m-1. Each vertex lists its half-edges counterclockwise and
`twin` pairs half-edges into edges. Faces are the orbits of
h -> succ(twin(h)); an isolated vertex contributes one face on its own.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from errors import NonPlanarError, ValidationError

logger = logging.getLogger(__name__)


class MalformedMap(ValidationError):
    pass


@dataclass(frozen=True)
class RotationMap:
    vertices: tuple     # per vertex: half-edge ids, counterclockwise
    twin: tuple         # twin[h]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        object.__setattr__(self, "twin", tuple(self.twin))

    # --- Ukuran ---
    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_half_edges(self):
        return len(self.twin)

    @property
    def num_edges(self):
        return len(self.twin) // 2

    def degree(self, v):
        return len(self.vertices[v])

    @cached_property
    def _owner(self):
        owner = {}
        for v, hs in enumerate(self.vertices):
            for pos, h in enumerate(hs):
                owner[h] = (v, pos)
        return owner

    def owner(self, h):
        """(vertex, position in its ccw list) of half-edge h."""
        return self._owner[h]

    def vertex_of(self, h):
        return self._owner[h][0]

    def succ(self, h):
        v, pos = self._owner[h]
        hs = self.vertices[v]
        return hs[(pos + 1) % len(hs)]

    def pred(self, h):
        v, pos = self._owner[h]
        hs = self.vertices[v]
        return hs[(pos - 1) % len(hs)]

    def opposite(self, h):
        """The half-edge across the vertex (position + deg/2); defined for even degree."""
        v, pos = self._owner[h]
        hs = self.vertices[v]
        if len(hs) % 2:
            raise ValidationError(f"vertex {v} has odd degree {len(hs)}")
        return hs[(pos + len(hs) // 2) % len(hs)]

    def edges(self):
        return [(h, t) for h, t in enumerate(self.twin) if h < t]

    # --- Validasi ---
    def check(self):
        """Raise MalformedMap unless twin is a fixed-point-free involution covering every list entry once."""
        m = len(self.twin)
        if m % 2:
            raise MalformedMap(f"odd number of half-edges ({m})")
        for h, t in enumerate(self.twin):
            if not 0 <= t < m:
                raise MalformedMap(f"twin of h{h} out of range: {t}")
            if t == h:
                raise MalformedMap(f"h{h} is its own twin")
            if self.twin[t] != h:
                raise MalformedMap(f"twin is not an involution at h{h}")
        seen = [h for hs in self.vertices for h in hs]
        if sorted(seen) != list(range(m)):
            raise MalformedMap("every half-edge must appear in exactly one vertex list")
        return self

    def faces(self):
        """Face cycles as lists of half-edges (orbits of h -> succ(twin(h)))."""
        self.check()
        visited = [False] * self.num_half_edges
        faces = []
        for start in range(self.num_half_edges):
            if visited[start]:
                continue
            cycle, h = [], start
            while not visited[h]:
                visited[h] = True
                cycle.append(h)
                h = self.succ(self.twin[h])
            faces.append(cycle)
        return faces

    def components(self):
        """Vertex sets of the connected components."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_vertices))
        for h, t in self.edges():
            graph.add_edge(self.vertex_of(h), self.vertex_of(t))
        return [sorted(c) for c in nx.connected_components(graph)]

    def euler_report(self):
        """Per component: (V, E, F) with F counting isolated vertices as one face."""
        faces = self.faces()
        comp_of = {}
        components = self.components()
        for index, comp in enumerate(components):
            for v in comp:
                comp_of[v] = index
        counts = defaultdict(lambda: [0, 0, 0])
        for index, comp in enumerate(components):
            counts[index][0] = len(comp)
            if all(self.degree(v) == 0 for v in comp):
                counts[index][2] += 1
        for h, t in self.edges():
            counts[comp_of[self.vertex_of(h)]][1] += 1
        for face in faces:
            counts[comp_of[self.vertex_of(face[0])]][2] += 1
        return [tuple(counts[i]) for i in range(len(components))]

    def is_planar(self):
        return all(v - e + f == 2 for v, e, f in self.euler_report())

    def check_planar(self):
        self.check()
        report = self.euler_report()
        for v, e, f in report:
            if v - e + f != 2:
                raise NonPlanarError(
                    f"map is not planar: component with V={v} E={e} F={f} gives V-E+F={v - e + f}",
                    faces=len(self.faces()))
        return self

    def is_connected(self):
        return len(self.components()) <= 1

    def relabeled(self, permutation):
        """Same map with half-edge h renamed permutation[h]."""
        twin = [0] * self.num_half_edges
        for h, t in enumerate(self.twin):
            twin[permutation[h]] = permutation[t]
        vertices = [[permutation[h] for h in hs] for hs in self.vertices]
        return RotationMap(vertices, twin)

    def to_multigraph(self):
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.num_vertices))
        for h, t in self.edges():
            graph.add_edge(self.vertex_of(h), self.vertex_of(t), key=h)
        return graph


# ---------------------------------------------------------------
# Medial graph
# ---------------------------------------------------------------
def medial(g):
    """
    Medial map: one 4-valent vertex per edge of g, one edge per face corner.

    Corner (h, succ h) is the medial half-edge 2h at edge(h), twinned with
    2*succ(h) + 1 at edge(succ h). For an edge (h at u, h' at v) the ccw
    order is [2h'+1, 2h, 2h+1, 2h'].
    """
    g.check()
    if not g.is_connected():
        raise ValidationError("medial() needs a connected plane graph")
    twin = [0] * (4 * g.num_edges)
    for h in range(g.num_half_edges):
        s = g.succ(h)
        twin[2 * h] = 2 * s + 1
        twin[2 * s + 1] = 2 * h
    vertices = []
    for h, hp in g.edges():
        vertices.append((2 * hp + 1, 2 * h, 2 * h + 1, 2 * hp))
    result = RotationMap(vertices, twin)
    logger.debug("medial: %d edges -> %d vertices", g.num_edges, result.num_vertices)
    return result


def from_embedding(embedding, nodes=None):
    """RotationMap of a networkx PlanarEmbedding; ccw lists are the reversed cw neighbor order."""
    nodes = list(embedding.nodes()) if nodes is None else list(nodes)
    index = {node: k for k, node in enumerate(nodes)}
    half = {}
    for u, v in embedding.edges():
        if (u, v) not in half:
            half[(u, v)] = len(half)
    twin = [0] * len(half)
    for (u, v), h in half.items():
        twin[h] = half[(v, u)]
    vertices = [[] for _ in nodes]
    for node in nodes:
        cw = list(embedding.neighbors_cw_order(node))
        vertices[index[node]] = [half[(node, w)] for w in reversed(cw)]
    return RotationMap(vertices, twin)
