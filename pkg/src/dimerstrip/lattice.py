"""Bipartite square and hexagon graphs on the torus, their faces and dual digraph.

Nodes sit at (row, col) with colour (row + col) mod 2 (0 = black). The torus
is cut along the last row and the last column: a vertical edge from row m-1
to row 0 crosses the z-cut, a horizontal edge from column n-1 to column 0
crosses the w-cut. Crossing exponents are read along the black -> white
direction, +1 when that direction points up (z) or right (w).

Every node carries a rotation system (incident edges in counterclockwise
order E, N, W, S), which fixes the torus embedding and lets faces, the dual
digraph and zig-zag paths be traced combinatorially.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

BLACK, WHITE = "black", "white"
DIRECTIONS = ("E", "N", "W", "S")  # counterclockwise


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    id: int
    row: int
    col: int
    color: str


@dataclass(frozen=True)
class Edge:
    id: int
    black: int
    white: int
    ez: int
    ew: int
    kind: str  # "h" or "v"

    def other(self, v: int) -> int:
        return self.white if v == self.black else self.black


Dart = tuple[int, int]  # (edge id, tail node)


@dataclass(frozen=True, eq=False)
class StripGraph:
    shape: str
    m: int
    n: int
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    # node id -> ((direction, edge id), ...) counterclockwise
    rotation: dict = field(repr=False)

    @cached_property
    def blacks(self) -> list[int]:
        return [v.id for v in self.nodes if v.color == BLACK]

    @cached_property
    def whites(self) -> list[int]:
        return [v.id for v in self.nodes if v.color == WHITE]

    def node_at(self, row: int, col: int) -> int:
        return (row % self.m) * self.n + (col % self.n)

    def incident(self, v: int) -> list[int]:
        return [e for _, e in self.rotation[v]]

    def edge_in_direction(self, v: int, direction: str) -> int | None:
        for d, e in self.rotation[v]:
            if d == direction:
                return e
        return None

    def direction_of(self, v: int, edge_id: int) -> str:
        for d, e in self.rotation[v]:
            if e == edge_id:
                return d
        raise GraphError(f"edge {edge_id} is not incident to node {v}")

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def head(self, dart: Dart) -> int:
        e, tail = dart
        return self.edges[e].other(tail)

    def dart_crossing(self, dart: Dart) -> tuple[int, int]:
        """Crossing exponents picked up when traversing the dart."""
        e, tail = dart
        edge = self.edges[e]
        s = 1 if tail == edge.black else -1
        return s * edge.ez, s * edge.ew

    def _next_in_face(self, dart: Dart) -> Dart:
        # arriving at v, turn to the edge preceding the incoming one in ccw
        # order: keeps the traced face on the left
        e, _ = dart
        v = self.head(dart)
        rot = self.rotation[v]
        i = next(k for k, (_, f) in enumerate(rot) if f == e)
        return rot[(i - 1) % len(rot)][1], v

    @cached_property
    def faces(self) -> list[tuple[Dart, ...]]:
        """Faces as cyclic dart sequences, each face on the left of its darts."""
        seen: set[Dart] = set()
        faces = []
        for edge in self.edges:
            for tail in (edge.black, edge.white):
                start = (edge.id, tail)
                if start in seen:
                    continue
                face = []
                d = start
                while d not in seen:
                    seen.add(d)
                    face.append(d)
                    d = self._next_in_face(d)
                if d != start:
                    raise GraphError("rotation system does not define faces")
                faces.append(tuple(face))
        return faces

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        return {d: i for i, face in enumerate(self.faces) for d in face}

    def face_edges(self, f: int) -> list[int]:
        return [e for e, _ in self.faces[f]]

    def face_crossing_sum(self, f: int) -> tuple[int, int]:
        sz = sw = 0
        for d in self.faces[f]:
            a, b = self.dart_crossing(d)
            sz += a
            sw += b
        return sz, sw

    def euler_characteristic(self) -> int:
        return len(self.nodes) - len(self.edges) + len(self.faces)

    def is_bipartite(self) -> bool:
        col = {v.id: v.color for v in self.nodes}
        return all(col[e.black] == BLACK and col[e.white] == WHITE for e in self.edges)

    def weight(self, matching) -> tuple[int, int]:
        nz = nw = 0
        for e in matching:
            nz += self.edges[e].ez
            nw += self.edges[e].ew
        return nz, nw

    def check_perfect_matching(self, matching) -> None:
        covered: set[int] = set()
        for e in matching:
            edge = self.edges[e]
            for v in (edge.black, edge.white):
                if v in covered:
                    raise GraphError(f"node {v} covered twice")
                covered.add(v)
        if len(covered) != len(self.nodes):
            raise GraphError("matching is not perfect")

    def to_json_obj(self) -> dict:
        return {
            "shape": self.shape,
            "m": self.m,
            "n": self.n,
            "nodes": [{"id": v.id, "row": v.row, "col": v.col, "color": v.color} for v in self.nodes],
            "edges": [
                {"id": e.id, "black": e.black, "white": e.white, "ez": e.ez, "ew": e.ew, "kind": e.kind}
                for e in self.edges
            ],
            "faces": [self.face_edges(f) for f in range(len(self.faces))],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)


def _check_dims(*dims: int) -> None:
    for d in dims:
        if not isinstance(d, int) or isinstance(d, bool) or d < 2 or d % 2:
            raise GraphError(f"dimension must be an even integer >= 2, got {d!r}")


def _build(m: int, n: int, shape: str, keep_vertical=lambda r, c: True) -> StripGraph:
    nodes = tuple(
        Node(r * n + c, r, c, BLACK if (r + c) % 2 == 0 else WHITE) for r in range(m) for c in range(n)
    )
    edges: list[Edge] = []
    slots: dict[int, dict[str, int]] = {v.id: {} for v in nodes}

    def add(a: int, b: int, kind: str, wraps: bool, dir_a: str, dir_b: str):
        # a is the lower/left endpoint, b the upper/right one
        black, white = (a, b) if nodes[a].color == BLACK else (b, a)
        step = 1 if black == a else -1
        cross = step if wraps else 0
        ez, ew = (cross, 0) if kind == "v" else (0, cross)
        eid = len(edges)
        edges.append(Edge(eid, black, white, ez, ew, kind))
        slots[a][dir_a] = eid
        slots[b][dir_b] = eid

    for r in range(m):
        for c in range(n):
            a = r * n + c
            add(a, r * n + (c + 1) % n, "h", c == n - 1, "E", "W")
    for r in range(m):
        for c in range(n):
            if keep_vertical(r, c):
                a = r * n + c
                add(a, ((r + 1) % m) * n + c, "v", r == m - 1, "N", "S")

    rotation = {
        v: tuple((d, slots[v][d]) for d in DIRECTIONS if d in slots[v]) for v in slots
    }
    return StripGraph(shape, m, n, nodes, tuple(edges), rotation)


def build_square_strip(n: int) -> StripGraph:
    """2 x n strip of squares; n black nodes of degree 4 with doubled verticals."""
    _check_dims(n)
    return _build(2, n, "square-strip")


def build_hexagon_strip(n: int) -> StripGraph:
    """2 x n strip of hexagons: the square strip without the verticals below black nodes."""
    _check_dims(n)
    # vertical (r,c)-(r+1,c) is the N edge of (r,c): keep it only if (r,c) is black
    return _build(2, n, "hexagon-strip", keep_vertical=lambda r, c: (r + c) % 2 == 0)


def build_square_torus(m: int, n: int) -> StripGraph:
    _check_dims(m, n)
    return _build(m, n, "square-general")


def build_graph(shape: str, n: int, m: int = 2) -> StripGraph:
    if shape in ("square", "square-strip"):
        return build_square_strip(n) if m == 2 else build_square_torus(m, n)
    if shape in ("hex", "hexagon", "hexagon-strip"):
        if m != 2:
            raise GraphError("hexagon graphs are only built as 2 x n strips")
        return build_hexagon_strip(n)
    raise GraphError(f"unknown shape {shape!r}")


# ---------------------------------------------------------------------------
# dual digraph


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    edge: int


@dataclass(frozen=True, eq=False)
class DualDigraph:
    """Faces of the primal as nodes; one arc per primal edge.

    Arcs circle faces dual to black nodes clockwise and faces dual to white
    nodes counterclockwise.
    """

    graph: StripGraph
    num_nodes: int
    arcs: tuple[Arc, ...]

    def arc_of_edge(self, edge_id: int) -> Arc:
        return self.arcs[edge_id]

    def plaquette(self, v: int) -> list[Arc]:
        """Arcs around the face dual to primal node v, in cycle order."""
        g = self.graph
        rot = g.rotation[v]
        step = -1 if g.nodes[v].color == BLACK else 1  # cw around black, ccw around white
        out = []
        i = 0
        for _ in rot:
            out.append(self.arcs[rot[i][1]])
            i = (i + step) % len(rot)
        return out

    def without(self, removed) -> list[Arc]:
        removed = set(removed)
        return [a for a in self.arcs if a.edge not in removed]

    def is_acyclic_without(self, removed) -> bool:
        return is_acyclic(self.num_nodes, self.without(removed))

    def find_cycle_without(self, removed) -> list[Arc] | None:
        return find_cycle(self.num_nodes, self.without(removed))


def build_dual(g: StripGraph) -> DualDigraph:
    if g.euler_characteristic() != 0:
        raise GraphError("graph is not a torus embedding")
    arcs = []
    for e in g.edges:
        tail = g.dart_face[(e.id, e.black)]
        head = g.dart_face[(e.id, e.white)]
        arcs.append(Arc(tail, head, e.id))
    return DualDigraph(g, len(g.faces), tuple(arcs))


def _adjacency(num_nodes: int, arcs) -> list[list[Arc]]:
    adj: list[list[Arc]] = [[] for _ in range(num_nodes)]
    for a in arcs:
        adj[a.tail].append(a)
    return adj


def is_acyclic(num_nodes: int, arcs) -> bool:
    """Kahn's algorithm on a multidigraph given as an arc list."""
    indeg = [0] * num_nodes
    adj = _adjacency(num_nodes, arcs)
    for a in arcs:
        indeg[a.head] += 1
    stack = [v for v in range(num_nodes) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for a in adj[v]:
            indeg[a.head] -= 1
            if indeg[a.head] == 0:
                stack.append(a.head)
    return seen == num_nodes


def find_cycle(num_nodes: int, arcs) -> list[Arc] | None:
    """One directed cycle as an arc list, or None if the digraph is acyclic."""
    adj = _adjacency(num_nodes, arcs)
    state = [0] * num_nodes  # 0 new, 1 on the DFS stack, 2 finished
    via: list[Arc | None] = [None] * num_nodes
    for root in range(num_nodes):
        if state[root]:
            continue
        state[root] = 1
        stack = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            a = next(it, None)
            if a is None:
                state[v] = 2
                stack.pop()
                continue
            u = a.head
            if state[u] == 1:
                cyc = [a]
                x = v
                while x != u:
                    b = via[x]
                    cyc.append(b)
                    x = b.tail
                return cyc[::-1]
            if state[u] == 0:
                state[u] = 1
                via[u] = a
                stack.append((u, iter(adj[u])))
    return None


# ---------------------------------------------------------------------------
# zig-zag paths


@dataclass(frozen=True)
class ZigZagPath:
    darts: tuple[Dart, ...]
    winding: tuple[int, int]

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.darts)

    def intact_after(self, removed) -> bool:
        removed = set(removed)
        return not any(e in removed for e in self.edges)


def _zigzag_next(g: StripGraph, dart: Dart) -> Dart:
    e, _ = dart
    v = g.head(dart)
    rot = g.rotation[v]
    i = next(k for k, (_, f) in enumerate(rot) if f == e)
    step = -1 if g.nodes[v].color == BLACK else 1
    return rot[(i + step) % len(rot)][1], v


def zigzag_paths(d: DualDigraph) -> list[ZigZagPath]:
    """All zig-zag paths; each is a directed cycle of the dual digraph.

    A path turns to the clockwise-next edge at black nodes and the
    counterclockwise-next edge at white nodes, so it alternates maximal right
    and left turns; its dual arcs chain head to tail.
    """
    g = d.graph
    seen: set[Dart] = set()
    paths = []
    for edge in g.edges:
        for tail in (edge.black, edge.white):
            start = (edge.id, tail)
            if start in seen:
                continue
            darts = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                darts.append(cur)
                cur = _zigzag_next(g, cur)
            wz = sum(g.dart_crossing(x)[0] for x in darts)
            ww = sum(g.dart_crossing(x)[1] for x in darts)
            paths.append(ZigZagPath(tuple(darts), (wz, ww)))
    return paths


def intact_zigzag_paths(d: DualDigraph, removed) -> list[ZigZagPath]:
    return [p for p in zigzag_paths(d) if p.intact_after(removed)]
