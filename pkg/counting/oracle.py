"""
Brute-force ground truth.

Everything here is exponential and guarded by a size cap from config; the
polynomial-time evaluators are tested against these functions.
"""
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import product

import networkx as nx
from joblib import Parallel, delayed

import config
from algebra.scalar import Scalar, ZERO, ONE
from errors import CapExceeded, ValidationError
from planar.gadget import DANGLING
from signatures.signature import SIX_SLOTS, GeneralSignature4, Signature, SixVertexSignature, index_of

logger = logging.getLogger(__name__)

ICE = SixVertexSignature(1, 1, 1, 1, 1, 1)
SADDLE_PATTERNS = frozenset((SIX_SLOTS["c"], SIX_SLOTS["z"]))


# ---------------------------------------------------------------
# Mesin pencarian (backtracking atas orientasi sisi)
# ---------------------------------------------------------------
class _Search:
    """
    Backtracking plan over the internal edges of a map or gadget.

    Edges are visited in DFS order of their endpoints so each vertex is
    completed early; after every assignment the touched vertices must still
    admit a supported pattern.
    """

    def __init__(self, vertices, twin, tables, fixed=None):
        self.vertices = [tuple(hs) for hs in vertices]
        self.tables = [tuple(t.entries) for t in tables]
        self.arity = [len(hs) for hs in self.vertices]
        self.supports = [[i for i, e in enumerate(t) if e] for t in self.tables]
        self.owner = {}
        for v, hs in enumerate(self.vertices):
            for pos, h in enumerate(hs):
                self.owner[h] = (v, pos)
        self.fixed = dict(fixed or {})
        self.edges = self._edge_order(twin)
        last_step = {}
        for step, (h, t) in enumerate(self.edges):
            for k in (h, t):
                last_step[self.owner[k][0]] = step
        self.complete_at = [[] for _ in self.edges]
        self.initial = []
        for v in range(len(self.vertices)):
            if v in last_step:
                self.complete_at[last_step[v]].append(v)
            else:
                self.initial.append(v)

    def _edge_order(self, twin):
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(len(self.vertices)))
        for h, t in enumerate(twin):
            if t != DANGLING and h < t:
                graph.add_edge(self.owner[h][0], self.owner[t][0])
        order, seen = [], set()
        for comp in sorted(nx.connected_components(graph), key=min):
            for v in nx.dfs_preorder_nodes(graph, source=min(comp)):
                for h in self.vertices[v]:
                    t = twin[h]
                    if t == DANGLING or h in seen:
                        continue
                    seen.update((h, t))
                    order.append((h, t))
        return order

    # --- State ---
    def fresh_state(self):
        bits = [0] * len(self.vertices)
        mask = [0] * len(self.vertices)
        state = (bits, mask)
        for h, value in self.fixed.items():
            self._set(state, h, value)
        return state

    def _set(self, state, h, value):
        bits, mask = state
        v, pos = self.owner[h]
        shift = self.arity[v] - 1 - pos
        mask[v] |= 1 << shift
        if value:
            bits[v] |= 1 << shift
        else:
            bits[v] &= ~(1 << shift)

    def _unset(self, state, h):
        bits, mask = state
        v, pos = self.owner[h]
        shift = self.arity[v] - 1 - pos
        mask[v] &= ~(1 << shift)
        bits[v] &= ~(1 << shift)

    def _consistent(self, state, v):
        bits, mask = state
        m, b = mask[v], bits[v]
        return any((s & m) == b for s in self.supports[v])

    # --- Jalan ---
    def start(self, state):
        """Product of the vertices with no internal edges, or None if some vertex is already dead."""
        acc = ONE
        for v in range(len(self.vertices)):
            if not self._consistent(state, v):
                return None
        for v in self.initial:
            acc = acc * self.tables[v][state[0][v]]
        return acc

    def walk(self, state, step, acc):
        """Yield (weight, state) for every completed assignment below `step`."""
        if step == len(self.edges):
            yield acc, state
            return
        h, t = self.edges[step]
        for s in (0, 1):
            self._set(state, h, s)
            self._set(state, t, 1 - s)
            touched = {self.owner[h][0], self.owner[t][0]}
            if all(self._consistent(state, v) for v in touched):
                weight = acc
                for v in self.complete_at[step]:
                    weight = weight * self.tables[v][state[0][v]]
                if weight:
                    yield from self.walk(state, step + 1, weight)
            self._unset(state, h)
            self._unset(state, t)

    def total_from_prefix(self, prefix):
        state = self.fresh_state()
        acc = self.start(state)
        if acc is None:
            return ZERO
        for step, s in enumerate(prefix):
            h, t = self.edges[step]
            self._set(state, h, s)
            self._set(state, t, 1 - s)
            if not all(self._consistent(state, v) for v in (self.owner[h][0], self.owner[t][0])):
                return ZERO
            for v in self.complete_at[step]:
                acc = acc * self.tables[v][state[0][v]]
        total = ZERO
        for weight, _ in self.walk(state, len(prefix), acc):
            total = total + weight
        return total


def _prefix_total(search, prefix):
    return search.total_from_prefix(prefix)


def _split_sum(search, jobs):
    """Sum over all assignments, split over 2^k fixed prefixes when jobs > 1."""
    if jobs <= 1 or len(search.edges) < 2:
        return search.total_from_prefix(())
    k = min(len(search.edges) - 1, max(1, (jobs - 1).bit_length() + 1))
    prefixes = list(product((0, 1), repeat=k))
    logger.debug("oracle split: %d prefixes over %d jobs", len(prefixes), jobs)
    parts = Parallel(n_jobs=jobs)(delayed(_prefix_total)(search, p) for p in prefixes)
    total = ZERO
    for part in parts:
        total = total + part
    return total


def _instance_search(instance):
    tables = [instance.signature_of(v) for v in range(instance.num_vertices)]
    return _Search(instance.map.vertices, instance.map.twin, tables)


# ---------------------------------------------------------------
# Holant
# ---------------------------------------------------------------
def holant_brute(instance, jobs=1, cap=None):
    """Exact Holant value by backtracking over edge orientations."""
    cap = config.oracle_cap() if cap is None else cap
    if instance.num_edges > cap:
        raise CapExceeded("holant_brute", instance.num_edges, cap)
    search = _instance_search(instance)
    value = _split_sum(search, jobs)
    logger.debug("holant_brute: %d edges -> %s", instance.num_edges, value)
    return value


@dataclass(frozen=True)
class OrientationStats:
    count: int
    histogram: dict = field(hash=False)     # saddle count beta -> number of orientations

    def saddle_sum(self, base=2):
        """sum over orientations of base^beta."""
        return sum(n * base ** beta for beta, n in self.histogram.items())


def eulerian_stats(rotation_map, cap=None):
    """Count Eulerian orientations of a 4-regular map and histogram their saddle counts."""
    cap = config.oracle_cap() if cap is None else cap
    if any(rotation_map.degree(v) != 4 for v in range(rotation_map.num_vertices)):
        raise ValidationError("eulerian_stats needs a 4-regular map")
    if rotation_map.num_edges > cap:
        raise CapExceeded("eulerian_stats", rotation_map.num_edges, cap)
    search = _Search(rotation_map.vertices, rotation_map.twin, [ICE] * rotation_map.num_vertices)
    histogram = Counter()
    state = search.fresh_state()
    if search.start(state) is not None:
        for _, done in search.walk(state, 0, ONE):
            bits = done[0]
            histogram[sum(1 for v in range(rotation_map.num_vertices) if bits[v] in SADDLE_PATTERNS)] += 1
    histogram = dict(sorted(histogram.items()))
    return OrientationStats(sum(histogram.values()), histogram)


# ---------------------------------------------------------------
# Gadget
# ---------------------------------------------------------------
def gadget_signature(gadget, cap=None):
    """Signature of a gadget: for every external pattern, the sum over its internal edges."""
    cap = config.oracle_cap() if cap is None else cap
    internal = len(gadget.internal_edges())
    if internal > cap:
        raise CapExceeded("gadget_signature", internal, cap)
    gadget.check()
    tables = [gadget.signature_of(v) for v in range(len(gadget.vertices))]
    entries = []
    for pattern in product((0, 1), repeat=gadget.arity):
        fixed = dict(zip(gadget.externals, pattern))
        search = _Search(gadget.vertices, gadget.twin, tables, fixed=fixed)
        entries.append(search.total_from_prefix(()))
    return Signature(tuple(entries)) if gadget.arity != 4 else GeneralSignature4(tuple(entries))


# ---------------------------------------------------------------
# Tutte polynomial (deletion-contraction)
# ---------------------------------------------------------------
def _as_multigraph(graph):
    if isinstance(graph, nx.MultiGraph):
        return graph.copy()
    if hasattr(graph, "to_multigraph"):
        return graph.to_multigraph()
    return nx.MultiGraph(graph)


def _is_bridge(graph, u, v, key):
    graph.remove_edge(u, v, key)
    try:
        return not nx.has_path(graph, u, v)
    finally:
        graph.add_edge(u, v, key=key)


def _contract(graph, u, v, key):
    """G/e for the non-loop edge e = (u, v, key): v merges into u."""
    result = nx.MultiGraph()
    result.add_nodes_from(n for n in graph.nodes if n != v)
    for a, b, k in graph.edges(keys=True):
        if (a, b, k) in ((u, v, key), (v, u, key)):
            continue
        result.add_edge(u if a == v else a, u if b == v else b)
    return result


def tutte(graph, x, y, cap=None):
    """T(G; x, y) at a point, for a RotationMap or networkx (multi)graph."""
    cap = config.TUTTE_CAP if cap is None else cap
    x, y = Scalar.coerce(x), Scalar.coerce(y)
    start = _as_multigraph(graph)
    if start.number_of_edges() > cap:
        raise CapExceeded("tutte", start.number_of_edges(), cap)
    total = ZERO
    stack = deque([start])
    while stack:
        g = stack.pop()
        chosen = None
        loops = bridges = 0
        for u, v, key in list(g.edges(keys=True)):
            if u == v:
                loops += 1
            elif _is_bridge(g, u, v, key):
                bridges += 1
            else:
                chosen = (u, v, key)
                break
        if chosen is None:
            total = total + x ** bridges * y ** loops
            continue
        deleted = g.copy()
        deleted.remove_edge(*chosen)
        stack.append(deleted)
        stack.append(_contract(g, *chosen))
    return total


# ---------------------------------------------------------------
# #CSP dan matching
# ---------------------------------------------------------------
def csp_brute(num_vars, constraints, cap=None):
    """
    Sum over {0,1}^num_vars of the product of constraint values.

    :param constraints: list of (scope, signature); scope is a tuple of variable
        indices, repeated indices allowed (a constraint applied to (w, w)).
    """
    cap = config.CSP_BRUTE_CAP if cap is None else cap
    if num_vars > cap:
        raise CapExceeded("csp_brute", num_vars, cap)
    for scope, sig in constraints:
        if len(scope) != sig.arity:
            raise ValidationError(f"scope {scope} does not match arity {sig.arity}")
        if any(not 0 <= v < num_vars for v in scope):
            raise ValidationError(f"scope {scope} out of range for {num_vars} variables")
    total = ZERO
    for assignment in product((0, 1), repeat=num_vars):
        acc = ONE
        for scope, sig in constraints:
            acc = acc * sig.entries[index_of(tuple(assignment[v] for v in scope))]
            if not acc:
                break
        total = total + acc
    return total


def _matching_sum(nodes, adjacency):
    """Weighted perfect-matching sum of the induced subgraph on `nodes` (frozenset)."""
    if not nodes:
        return ONE
    first = min(nodes)
    total = ZERO
    for other, weight in adjacency.get(first, {}).items():
        if other in nodes and other != first:
            rest = nodes - {first, other}
            total = total + weight * _matching_sum(rest, adjacency)
    return total


def matching_signature(graph, externals, cap=None):
    """
    Matchgate signature: entry at pattern S is the perfect-matching sum of the
    graph with the externals flagged 1 in S removed (matched outward).

    `graph` needs `num_nodes` and `weighted_edges()` yielding (u, v, weight);
    parallel edges add up.
    """
    if not externals:
        raise ValidationError("matching_signature needs at least one external node; "
                              "use perfect_matching_sum for a closed graph")
    cap = config.MATCHING_CAP if cap is None else cap
    if graph.num_nodes > cap:
        raise CapExceeded("matching_signature", graph.num_nodes, cap)
    adjacency = {}
    for u, v, w in graph.weighted_edges():
        if u == v:
            continue
        w = Scalar.coerce(w)
        for p, q in ((u, v), (v, u)):
            row = adjacency.setdefault(p, {})
            row[q] = row.get(q, ZERO) + w
    everything = frozenset(range(graph.num_nodes))
    entries = []
    for pattern in product((0, 1), repeat=len(externals)):
        removed = {e for e, bit in zip(externals, pattern) if bit}
        entries.append(_matching_sum(everything - removed, adjacency))
    if len(externals) == 4:
        return GeneralSignature4(tuple(entries))
    return Signature(tuple(entries))
