"""Deterministic generators for plane graphs and 4-regular medial maps."""
import logging

import networkx as nx
import numpy as np

from errors import ValidationError
from planar.rotation_map import RotationMap, from_embedding, medial

logger = logging.getLogger(__name__)

EAST, NORTH, WEST, SOUTH = range(4)


def cycle_graph(n):
    """Plane cycle C_n (n = 1 is a loop, n = 2 a digon)."""
    if n < 1:
        raise ValidationError("cycle needs n >= 1")
    # Half-edge 2i maju ke i+1, 2i+1 mundur ke i-1
    twin = [0] * (2 * n)
    for i in range(n):
        forward, back = 2 * i, 2 * ((i + 1) % n) + 1
        twin[forward], twin[back] = back, forward
    vertices = [(2 * i, 2 * i + 1) for i in range(n)]
    return RotationMap(vertices, twin)


def cycle_medial(n):
    """Medial of C_n; for n = 3 this is the doubled triangle."""
    return medial(cycle_graph(n))


def grid_patch(n, m):
    """
    n x m grid of 4-valent vertices, half-edge 4*(i*m+j)+dir with dir E,N,W,S.

    Boundary stubs are taken in their cyclic order around the patch and
    consecutive stubs are joined outside it, which keeps the map planar.
    """
    if n < 1 or m < 1:
        raise ValidationError("grid_patch needs n, m >= 1")

    def hid(i, j, d):
        return 4 * (i * m + j) + d

    twin = [None] * (4 * n * m)
    for i in range(n):
        for j in range(m):
            if j + 1 < m:
                twin[hid(i, j, EAST)], twin[hid(i, j + 1, WEST)] = hid(i, j + 1, WEST), hid(i, j, EAST)
            if i + 1 < n:
                twin[hid(i, j, NORTH)], twin[hid(i + 1, j, SOUTH)] = hid(i + 1, j, SOUTH), hid(i, j, NORTH)
    # Urutan siklik stub pada batas (berlawanan arah jarum jam)
    stubs = [hid(0, j, SOUTH) for j in range(m)]
    stubs += [hid(i, m - 1, EAST) for i in range(n)]
    stubs += [hid(n - 1, j, NORTH) for j in reversed(range(m))]
    stubs += [hid(i, 0, WEST) for i in reversed(range(n))]
    for k in range(0, len(stubs), 2):
        a, b = stubs[k], stubs[k + 1]
        twin[a], twin[b] = b, a
    vertices = [tuple(hid(i, j, d) for d in range(4)) for i in range(n) for j in range(m)]
    return RotationMap(vertices, twin)


def random_plane_graph(n, seed, extra_edge_prob=0.5):
    """Random connected simple plane graph on n vertices (tree plus planarity-preserving chords)."""
    if n < 1:
        raise ValidationError("random plane graph needs n >= 1")
    rng = np.random.default_rng(seed)
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for v in range(1, n):
        graph.add_edge(v, int(rng.integers(0, v)))
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if not graph.has_edge(u, v)]
    rng.shuffle(candidates)
    for u, v in candidates:
        if rng.random() >= extra_edge_prob:
            continue
        graph.add_edge(u, v)
        planar, _ = nx.check_planarity(graph)
        if not planar:
            graph.remove_edge(u, v)
    planar, embedding = nx.check_planarity(graph)
    return from_embedding(embedding, nodes=range(n))


def medial_of_random_plane_graph(n, seed):
    return medial(random_plane_graph(n, seed))


def random_plane_multigraph(num_edges, seed, loop_prob=0.2, bridge_prob=0.3):
    """
    Random connected plane multigraph with loops, bridges and parallel edges.

    Edges are inserted one at a time either as a pendant edge to a new vertex
    or as a chord between two corners of one face; both keep the map planar.
    """
    rng = np.random.default_rng(seed)
    vertices = [[]]
    twin = []

    def corners_of_face(face):
        # Sudut sebelum setiap half-edge pada orbit wajah
        return [(owner[h][0], owner[h][1]) for h in face]

    for _ in range(num_edges):
        current = RotationMap(vertices, twin)
        owner = {h: (v, pos) for v, hs in enumerate(vertices) for pos, h in enumerate(hs)}
        new_a, new_b = len(twin), len(twin) + 1
        twin.extend([new_b, new_a])
        if not twin[:-2]:
            # Sisi pertama pada satu simpul kosong
            if rng.random() < loop_prob:
                vertices[0] = [new_a, new_b]
            else:
                vertices[0] = [new_a]
                vertices.append([new_b])
            continue
        faces = current.faces()
        face = faces[int(rng.integers(0, len(faces)))]
        corners = corners_of_face(face)
        roll = rng.random()
        if roll < bridge_prob:
            v, pos = corners[int(rng.integers(0, len(corners)))]
            vertices[v].insert(pos, new_a)
            vertices.append([new_b])
        elif roll < bridge_prob + loop_prob:
            v, pos = corners[int(rng.integers(0, len(corners)))]
            vertices[v][pos:pos] = [new_a, new_b]
        else:
            first = int(rng.integers(0, len(corners)))
            second = int(rng.integers(0, len(corners)))
            (v1, p1), (v2, p2) = corners[first], corners[second]
            if (v1, p1) == (v2, p2):
                vertices[v1][p1:p1] = [new_a, new_b]
            elif v1 == v2:
                # Sisipkan dari posisi terbesar agar indeks lain tetap sah
                (hi_pos, hi_h), (lo_pos, lo_h) = sorted([(p1, new_a), (p2, new_b)], reverse=True)
                vertices[v1].insert(hi_pos, hi_h)
                vertices[v1].insert(lo_pos, lo_h)
            else:
                vertices[v1].insert(p1, new_a)
                vertices[v2].insert(p2, new_b)
    result = RotationMap(vertices, twin)
    result.check_planar()
    return result
