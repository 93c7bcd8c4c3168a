"""
Text format "sixvertex-instance v1".

    sixvertex-instance v1
    signatures:
      f = 1,1,2,1,1,1
    vertices:
      v0: f : h0 h1 h2 h3
    edges:
      h0 - h5

Vertex lists are counterclockwise. A half-edge value 1 means the edge is
directed away from that vertex, so the weights map to orientations as
a: in,in,out,out  b: in,out,out,in  c: in,out,in,out
x: out,out,in,in  y: out,in,in,out  z: out,in,out,in
(read along x1..x4).
"""
import logging
import os
import re

from errors import ParseError, SixVertexError
from planar.instance import PlanarInstance
from planar.rotation_map import RotationMap
from signatures.signature import parse_signature

logger = logging.getLogger(__name__)

HEADER = "sixvertex-instance v1"
_SIG_LINE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$")
_VERTEX_LINE = re.compile(r"^v(\d+)\s*:\s*([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.*)$")
_EDGE_LINE = re.compile(r"^h(\d+)\s*-\s*h(\d+)$")
_HALF = re.compile(r"^h(\d+)$")


def serialize(instance):
    lines = [HEADER, "signatures:"]
    for name in sorted(instance.signatures):
        lines.append(f"  {name} = {instance.signatures[name].literal()}")
    lines.append("vertices:")
    for v, hs in enumerate(instance.map.vertices):
        lines.append(f"  v{v}: {instance.labels[v]} : " + " ".join(f"h{h}" for h in hs))
    lines.append("edges:")
    for h, t in instance.map.edges():
        lines.append(f"  h{h} - h{t}")
    return "\n".join(lines) + "\n"


def parse(text, planar=True):
    """Parse and validate an instance; ParseError carries the offending line number."""
    section = None
    signatures, vertices, pairs = {}, {}, []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise ParseError(f"expected header {HEADER!r}", line=lineno)
            seen_header = True
            continue
        if line in ("signatures:", "vertices:", "edges:"):
            section = line[:-1]
            continue
        if section == "signatures":
            match = _SIG_LINE.match(line)
            if not match:
                raise ParseError(f"bad signature line {line!r}", line=lineno)
            name = match.group(1)
            if name in signatures:
                raise ParseError(f"duplicate signature {name!r}", line=lineno)
            try:
                signatures[name] = parse_signature(match.group(2))
            except ParseError as e:
                raise ParseError(str(e), line=lineno) from e
        elif section == "vertices":
            match = _VERTEX_LINE.match(line)
            if not match:
                raise ParseError(f"bad vertex line {line!r}", line=lineno)
            v = int(match.group(1))
            if v in vertices:
                raise ParseError(f"duplicate vertex v{v}", line=lineno)
            halves = []
            for token in match.group(3).split():
                h = _HALF.match(token)
                if not h:
                    raise ParseError(f"bad half-edge token {token!r}", line=lineno)
                halves.append(int(h.group(1)))
            if match.group(2) not in signatures:
                raise ParseError(f"unknown signature {match.group(2)!r}", line=lineno)
            vertices[v] = (match.group(2), halves, lineno)
        elif section == "edges":
            match = _EDGE_LINE.match(line)
            if not match:
                raise ParseError(f"bad edge line {line!r}", line=lineno)
            pairs.append((int(match.group(1)), int(match.group(2)), lineno))
        else:
            raise ParseError("content outside any section", line=lineno)
    if not seen_header:
        raise ParseError("empty instance file", line=1)
    if sorted(vertices) != list(range(len(vertices))):
        raise ParseError("vertex ids must be v0..v(n-1)")

    num_half = 2 * len(pairs)
    twin = [None] * num_half
    for h, t, lineno in pairs:
        for k in (h, t):
            if k >= num_half:
                raise ParseError(f"half-edge h{k} out of range for {len(pairs)} edges", line=lineno)
            if twin[k] is not None:
                raise ParseError(f"half-edge h{k} paired twice", line=lineno)
        if h == t:
            raise ParseError(f"half-edge h{h} paired with itself", line=lineno)
        twin[h], twin[t] = t, h
    for v in range(len(vertices)):
        name, halves, lineno = vertices[v]
        arity = signatures[name].arity
        if arity != len(halves):
            raise ParseError(f"v{v}: signature {name!r} has arity {arity} but {len(halves)} half-edges",
                             line=lineno)
    rotation = RotationMap([vertices[v][1] for v in range(len(vertices))], twin)
    instance = PlanarInstance(rotation, [vertices[v][0] for v in range(len(vertices))], signatures)
    instance.validate(planar=planar)
    return instance


def load_instance(path, planar=True):
    """(instance, None) or (None, message), the loader idiom used across the CLI."""
    if not os.path.exists(path):
        return None, f"file {path} not found"
    try:
        with open(path, encoding="utf-8") as handle:
            return parse(handle.read(), planar=planar), None
    except SixVertexError as e:
        return None, str(e)


def save_instance(instance, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize(instance))
    logger.info("wrote %s (%d vertices, %d edges)", path, instance.num_vertices, instance.num_edges)
