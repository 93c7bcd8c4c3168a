"""
Matchgate evaluation on planar instances (FKT).

Every vertex is replaced by a planar gadget whose perfect-matching signature
is its label, every instance edge by a gadget for its edge function, and the
weighted perfect-matching sum of the resulting plane graph is read off a
Pfaffian of a Kasteleyn-signed skew matrix.

Matching convention (shared with oracle.matching_signature): an external node
flagged 1 is removed, i.e. matched outward.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from algebra.scalar import Scalar, ZERO, ONE
from errors import InvariantViolation, NotInClass, ValidationError
from signatures.membership import is_matchgate, is_matchgate_general, is_matchgate_hat, parity_class
from signatures.signature import SixVertexSignature, bits_of, hadamard_image, rotate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightedPlaneGraph:
    """Nodes 0..num_nodes-1, weighted edges, externals in ccw order on the outer face."""
    num_nodes: int
    edges: tuple                    # (u, v, weight)
    externals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((u, v, Scalar.coerce(w)) for u, v, w in self.edges))
        object.__setattr__(self, "externals", tuple(self.externals))

    def weighted_edges(self):
        """Edges with nonzero weight; parallel edges are merged by adding weights."""
        merged = {}
        for u, v, w in self.edges:
            if u == v:
                raise ValidationError(f"self-loop at node {u}")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, ZERO) + w
        return [(u, v, w) for (u, v), w in merged.items() if w]

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_nodes))
        for u, v, w in self.weighted_edges():
            graph.add_edge(u, v, weight=w)
        return graph

    def check(self):
        """Planar with the externals on one face in their listed cyclic order."""
        graph = self.to_networkx()
        ring = list(self.externals)
        if len(ring) > 1:
            apex = self.num_nodes
            for k, e in enumerate(ring):
                graph.add_edge(apex, e)
                if len(ring) > 2:
                    graph.add_edge(e, ring[(k + 1) % len(ring)])
        planar, _ = nx.check_planarity(graph)
        if not planar:
            raise ValidationError("gadget is not planar with its externals on the outer face")
        return self


@dataclass
class KasteleynOrientation:
    """direction[(u, v)] with u < v is +1 for u -> v and -1 for v -> u."""
    direction: dict = field(default_factory=dict)
    outer_faces: list = field(default_factory=list)

    def sign(self, u, v):
        if u < v:
            return self.direction[(u, v)]
        return -self.direction[(v, u)]


# ---------------------------------------------------------------
# Pfaffian
# ---------------------------------------------------------------
def _sparse_pfaffian(rows, order):
    """
    Pfaffian of a sparse skew matrix {i: {j: a_ij}} with rows taken in `order`.

    Each step pairs the first remaining index with a partner of smallest row
    support and replaces the rest by the Schur complement.
    """
    rows = {i: dict(row) for i, row in rows.items()}
    remaining = list(order)
    result = None
    while remaining:
        i = remaining[0]
        row_i = rows.get(i, {})
        if not row_i:
            return 0
        j = min(row_i, key=lambda k: (len(rows.get(k, {})), remaining.index(k)))
        pos = remaining.index(j)
        a = row_i[j]
        factor = a if pos % 2 == 1 else -a
        result = factor if result is None else result * factor
        row_j = rows.get(j, {})
        # Komplemen Schur: A'[k][l] = A[k][l] + (A[j][k] A[i][l] - A[i][k] A[j][l]) / a
        touched = (set(row_i) | set(row_j)) - {i, j}
        col_i = {k: -row_i[k] for k in touched if k in row_i}     # A[k][i]
        col_j = {k: -row_j[k] for k in touched if k in row_j}     # A[k][j]
        for k in touched:
            aki, akj = col_i.get(k), col_j.get(k)
            row_k = rows.setdefault(k, {})
            for l in touched:
                if l == k:
                    continue
                ail, ajl = row_i.get(l), row_j.get(l)
                delta = None
                if akj is not None and ail is not None:
                    delta = -akj * ail
                if aki is not None and ajl is not None:
                    term = aki * ajl
                    delta = term if delta is None else delta + term
                if delta is None:
                    continue
                value = row_k.get(l, 0) + delta / a
                if value:
                    row_k[l] = value
                else:
                    row_k.pop(l, None)
            row_k.pop(i, None)
            row_k.pop(j, None)
        rows.pop(i, None)
        rows.pop(j, None)
        remaining.pop(pos)
        remaining.pop(0)
    return 1 if result is None else result


def pfaffian(matrix):
    """Exact Pfaffian of a skew-symmetric Scalar matrix (odd dimension gives 0)."""
    matrix = np.asarray(matrix, dtype=object)
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValidationError(f"pfaffian needs a square matrix, got shape {matrix.shape}")
    rows = {}
    for i in range(n):
        for j in range(n):
            value = Scalar.coerce(matrix[i, j])
            if value != -Scalar.coerce(matrix[j, i]):
                raise ValidationError(f"matrix is not skew-symmetric at ({i}, {j})")
            if value:
                rows.setdefault(i, {})[j] = value
    if n % 2:
        return ZERO
    if n == 0:
        return ONE
    return Scalar.coerce(_sparse_pfaffian(rows, range(n)))


# ---------------------------------------------------------------
# Orientasi Kasteleyn
# ---------------------------------------------------------------
def _faces(embedding):
    seen = set()
    faces = []
    for u in embedding.nodes:
        for v in embedding.neighbors_cw_order(u):
            if (u, v) not in seen:
                nodes = embedding.traverse_face(u, v, mark_half_edges=seen)
                faces.append(list(zip(nodes, nodes[1:] + nodes[:1])))
    return faces


def _orient_component(graph, direction, outer_choice=0):
    planar, embedding = nx.check_planarity(graph)
    if not planar:
        raise InvariantViolation("matching graph is not planar")
    nodes = sorted(graph.nodes)
    root = nodes[0]
    for parent, child in nx.dfs_edges(graph, root):
        direction[(parent, child) if parent < child else (child, parent)] = 1 if parent < child else -1
    faces = _faces(embedding)
    if len(faces) <= 1:
        return faces[0] if faces else None

    face_of = {}
    for index, walk in enumerate(faces):
        for half in walk:
            face_of[half] = index
    dual = nx.Graph()
    dual.add_nodes_from(range(len(faces)))
    for u, v in graph.edges:
        key = (u, v) if u < v else (v, u)
        if key not in direction:
            dual.add_edge(face_of[(u, v)], face_of[(v, u)], edge=key)
    outer = outer_choice % len(faces)

    def agrees(p, q):
        key = (p, q) if p < q else (q, p)
        d = direction.get(key)
        if d is None:
            return None
        return (d == 1) == (p < q)

    # Daun dulu: setiap muka non-luar memperbaiki sisi ke induknya
    for face, parent in reversed(list(nx.bfs_predecessors(dual, outer))):
        key = dual.edges[face, parent]["edge"]
        count = 0
        for p, q in faces[face]:
            if ((p, q) if p < q else (q, p)) == key:
                continue
            count += bool(agrees(p, q))
        p, q = next(h for h in faces[face] if ((h[0], h[1]) if h[0] < h[1] else (h[1], h[0])) == key)
        # Sisi (p, q) harus searah jalan muka jika hitungan sejauh ini genap
        want_agree = count % 2 == 0
        forward = 1 if p < q else -1
        direction[key] = forward if want_agree else -forward

    for index, walk in enumerate(faces):
        if index == outer:
            continue
        if sum(bool(agrees(p, q)) for p, q in walk) % 2 != 1:
            raise InvariantViolation(f"face {index} lost the odd clockwise property")
    return faces[outer]


def kasteleyn_orient(graph, outer_choice=0):
    """
    Kasteleyn orientation of a plane graph, one component at a time.

    `graph` is a WeightedPlaneGraph or a networkx graph. Tree edges follow a DFS;
    the remaining edges are fixed face by face, leaves of the dual tree first.
    `outer_choice` picks which face of each component is exempt.
    """
    if isinstance(graph, WeightedPlaneGraph):
        graph = graph.to_networkx()
    orientation = KasteleynOrientation()
    for component in nx.connected_components(graph):
        sub = graph.subgraph(component)
        if sub.number_of_edges() == 0:
            continue
        orientation.outer_faces.append(_orient_component(sub, orientation.direction, outer_choice))
    return orientation


def _skew_rows(graph, orientation, unit=False):
    rows = {}
    for u, v, data in graph.edges(data=True):
        w = Fraction(1) if unit else data["weight"]
        s = orientation.sign(u, v)
        rows.setdefault(u, {})[v] = w if s == 1 else -w
        rows.setdefault(v, {})[u] = -w if s == 1 else w
    return rows


def perfect_matching_sum(graph, outer_choice=0):
    """Weighted perfect-matching sum of a planar graph through Pfaffians."""
    if isinstance(graph, WeightedPlaneGraph):
        graph = graph.to_networkx()
    total = ONE
    for component in nx.connected_components(graph):
        if len(component) % 2:
            return ZERO
        sub = graph.subgraph(component)
        orientation = kasteleyn_orient(sub, outer_choice)
        order = list(nx.utils.reverse_cuthill_mckee_ordering(sub))
        # Tanda global: Pfaffian bobot satu = (+/-) jumlah matching
        count = _sparse_pfaffian(_skew_rows(sub, orientation, unit=True), order)
        if not count:
            return ZERO
        value = _sparse_pfaffian(_skew_rows(sub, orientation), order)
        total = total * (value if count > 0 else -value)
        if not total:
            return ZERO
    return total


# ---------------------------------------------------------------
# Sintesis gadget
# ---------------------------------------------------------------
def _wheel(f):
    """Wheel gadget for c != 0, with variable 1 flipped by a pendant node."""
    c = f.c
    edges = [(4, 1, f.a), (4, 2, c), (4, 3, f.b), (0, 1, f.y / c), (3, 0, f.x / c), (5, 0, ONE)]
    return WeightedPlaneGraph(6, edges, (5, 1, 2, 3))


def _template(f):
    """
    Two-hub template for any single-parity arity 2 or 4 matchgate signature.

    The inputs are flipped by the pattern F of the first nonzero entry so the
    empty pattern carries gamma0 = f(F) != 0; flipped variables use their square
    node as external, the others a pendant.
    """
    arity = f.arity
    support = f.support()
    if not support:
        # Simpul terisolasi: tidak ada matching sama sekali
        nodes = arity + 1
        return WeightedPlaneGraph(nodes, [], tuple(range(arity)))
    flip = support[0]
    flipped = bits_of(flip, arity)

    def gamma(*variables):
        bits = [0] * arity
        for k in variables:
            bits[k - 1] = 1
        index = 0
        for k in range(arity):
            index = (index << 1) | (bits[k] ^ flipped[k])
        return f.entries[index]

    g0 = gamma()
    if arity == 2:
        hubs = (2, 3)
        edges = [(2, 3, g0), (0, 1, gamma(1, 2) / g0)]
    else:
        hubs = (4, 5)
        g13, g24 = gamma(1, 3), gamma(2, 4)
        edges = [(4, 5, g0), (0, 4, g13), (1, 4, g24), (2, 5, ONE), (3, 5, ONE),
                 (0, 1, gamma(1, 2) / g0), (2, 3, gamma(3, 4) / g0),
                 (1, 2, (gamma(2, 3) - g24) / g0), (3, 0, (gamma(1, 4) - g13) / g0)]
    nodes = hubs[1] + 1
    externals = []
    for k in range(arity):
        if flipped[k]:
            externals.append(k)
        else:
            edges.append((nodes, k, ONE))
            externals.append(nodes)
            nodes += 1
    return WeightedPlaneGraph(nodes, edges, tuple(externals))


def synthesize(f):
    """
    Planar gadget with matching signature exactly f, and its scalar (always 1 here).

    Six-vertex f needs ax = cz - by. c != 0 uses the wheel, c = 0 with z != 0 the
    wheel of the rotated signature, anything else the two-hub template.
    """
    if isinstance(f, SixVertexSignature):
        if not is_matchgate(f):
            raise NotInClass(f"{f} is not a matchgate signature (ax != cz - by)")
        if f.c:
            return _wheel(f), ONE
        if f.z:
            inner = _wheel(rotate(f, 1))
            e = inner.externals
            return WeightedPlaneGraph(inner.num_nodes, inner.edges, (e[3], e[0], e[1], e[2])), ONE
        return _template(f.general()), ONE
    if f.arity not in (2, 4):
        raise NotInClass(f"no matchgate template for arity {f.arity}")
    if parity_class(f) is None or not is_matchgate_general(f):
        raise NotInClass(f"signature {f.literal()} is not a matchgate signature")
    return _template(f), ONE


# ---------------------------------------------------------------
# Perakitan instance
# ---------------------------------------------------------------
def _assemble(instance, vertex_signature, edge_mode):
    """
    Glue one gadget per vertex; edges become unit 2-paths ("neq") or a single
    -1 edge ("minus").
    """
    edges = []
    external_of = {}
    scalar = ONE
    offset = 0
    cache = {}
    for v in range(instance.num_vertices):
        label = instance.labels[v]
        if label not in cache:
            cache[label] = synthesize(vertex_signature(label))
        gadget, s = cache[label]
        scalar = scalar * s
        for u, w, weight in gadget.edges:
            edges.append((u + offset, w + offset, weight))
        for k, h in enumerate(instance.map.vertices[v]):
            external_of[h] = gadget.externals[k] + offset
        offset += gadget.num_nodes
    for h, t in instance.map.edges():
        if edge_mode == "neq":
            edges.append((external_of[h], offset, ONE))
            edges.append((offset, external_of[t], ONE))
            offset += 1
        else:
            edges.append((external_of[h], external_of[t], -ONE))
    logger.debug("assembled matching graph: %d nodes, %d edges", offset, len(edges))
    return WeightedPlaneGraph(offset, edges), scalar


def fkt_eval(instance, f=None, outer_choice=0):
    """Holant of an instance whose labels are all matchgate signatures."""
    if f is not None:
        instance = instance.with_signature(f)
    if instance.num_vertices == 0:
        return ONE
    graph, scalar = _assemble(instance, instance.signatures.__getitem__, "neq")
    value = perfect_matching_sum(graph, outer_choice) / scalar
    logger.debug("fkt_eval: %d matching nodes -> %s", graph.num_nodes, value)
    return value


def fkt_eval_hat(instance, f=None, outer_choice=0):
    """
    Holant after the Hadamard change of basis.

    With H = [[1, 1], [1, -1]], the disequality edge becomes 2*[1, 0, 0, -1] and
    a degree-d vertex label g becomes hat(g) / 2^d, so the Holant equals
    2^-E times the matching sum with hat labels and -1 edges.
    """
    if f is not None:
        instance = instance.with_signature(f)
    if instance.num_vertices == 0:
        return ONE
    hats = {}
    for label, sig in instance.signatures.items():
        general = sig.general() if isinstance(sig, SixVertexSignature) else sig
        if not is_matchgate_hat(general):
            raise NotInClass(f"signature {label!r} is not in the Hadamard matchgate class")
        hats[label] = hadamard_image(general)
    graph, scalar = _assemble(instance, hats.__getitem__, "minus")
    value = perfect_matching_sum(graph, outer_choice) / scalar
    value = value / Scalar(2) ** instance.num_edges
    logger.debug("fkt_eval_hat: %d matching nodes -> %s", graph.num_nodes, value)
    return value
