"""Ground truth by exhaustive search: matchings, Newton polygons, feedback arc sets."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterator

from dimerstrip.laurent import LaurentPoly2
from dimerstrip.lattice import DualDigraph, GraphError, StripGraph, build_dual, intact_zigzag_paths, is_acyclic

MAX_NODES = 32


class SizeError(ValueError):
    """Exhaustive search requested beyond the guard."""


def _guard(g: StripGraph, limit: int = MAX_NODES) -> None:
    if len(g.nodes) > limit:
        raise SizeError(f"{len(g.nodes)} nodes exceeds the exhaustive-search guard of {limit}")


def convention_sign(nz: int, nw: int) -> int:
    return -1 if (nz + nw + nz * nw) % 2 else 1


@dataclass
class WeightHistogram:
    counts: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.counts.get(key, 0)

    def add(self, key, k: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + k

    def merge(self, other: WeightHistogram) -> WeightHistogram:
        out = WeightHistogram(dict(self.counts))
        for key, k in other.counts.items():
            out.add(key, k)
        return out

    def z_sector(self) -> dict[int, int]:
        return {nz: k for (nz, nw), k in sorted(self.counts.items()) if nw == 0}

    def z_row(self) -> list[int]:
        """Counts along w = 0 from the lowest to the highest z-weight."""
        zs = self.z_sector()
        return [zs.get(k, 0) for k in range(min(zs), max(zs) + 1)] if zs else []

    def is_symmetric(self) -> bool:
        return all(self[(-a, -b)] == k for (a, b), k in self.counts.items())

    def to_polynomial(self, signed: bool = True) -> LaurentPoly2:
        return LaurentPoly2(
            {key: (convention_sign(*key) if signed else 1) * k for key, k in self.counts.items()}
        )

    def to_csv(self) -> str:
        rows = ["nz,nw,count"] + [f"{a},{b},{k}" for (a, b), k in sorted(self.counts.items())]
        return "\n".join(rows) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> WeightHistogram:
        lines = [ln for ln in text.strip().splitlines() if ln]
        if lines[0].replace(" ", "") != "nz,nw,count":
            raise ValueError("missing nz,nw,count header")
        h = cls()
        for ln in lines[1:]:
            a, b, k = (int(x) for x in ln.split(","))
            h.add((a, b), k)
        return h


# ---------------------------------------------------------------------------
# enumeration


def iter_matchings(g: StripGraph) -> Iterator[tuple[int, ...]]:
    """Every perfect matching as a tuple of edge ids (one per black node)."""
    _guard(g)
    blacks = g.blacks
    if len(blacks) != len(g.whites):
        return
    windex = {w: i for i, w in enumerate(g.whites)}
    chosen: list[int] = []

    def rec(i: int, mask: int):
        if i == len(blacks):
            yield tuple(chosen)
            return
        for e in g.incident(blacks[i]):
            bit = 1 << windex[g.edges[e].white]
            if mask & bit:
                continue
            chosen.append(e)
            yield from rec(i + 1, mask | bit)
            chosen.pop()

    yield from rec(0, 0)


def _histogram_from(g: StripGraph, start: int, mask0: int) -> dict:
    blacks = g.blacks
    windex = {w: i for i, w in enumerate(g.whites)}
    options = [
        [(1 << windex[g.edges[e].white], g.edges[e].ez, g.edges[e].ew) for e in g.incident(b)]
        for b in blacks
    ]

    @lru_cache(maxsize=None)
    def rec(i: int, mask: int):
        if i == len(blacks):
            return {(0, 0): 1}
        out: dict = {}
        for bit, ez, ew in options[i]:
            if mask & bit:
                continue
            for (a, b), k in rec(i + 1, mask | bit).items():
                key = (a + ez, b + ew)
                out[key] = out.get(key, 0) + k
        return out

    return rec(start, mask0)


def _branch(g: StripGraph, e: int) -> dict:
    edge = g.edges[e]
    bit = 1 << g.whites.index(edge.white)
    sub = _histogram_from(g, 1, bit)
    return {(a + edge.ez, b + edge.ew): k for (a, b), k in sub.items()}


def enumerate_matchings(g: StripGraph, workers: int = 1) -> WeightHistogram:
    """Exact weight histogram of all perfect matchings.

    Branches on the lowest unmatched black node with a bitmask of saturated
    white nodes; subproblems are memoised on (black index, mask). With
    ``workers > 1`` the first branching level runs in separate processes.
    """
    _guard(g)
    if len(g.blacks) != len(g.whites):
        return WeightHistogram()
    if not g.blacks:
        return WeightHistogram({(0, 0): 1})
    if workers <= 1:
        return WeightHistogram(dict(sorted(_histogram_from(g, 0, 0).items())))
    first = g.incident(g.blacks[0])
    hist = WeightHistogram()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_branch, itertools.repeat(g), first):
            hist = hist.merge(WeightHistogram(part))
    return WeightHistogram(dict(sorted(hist.counts.items())))


# ---------------------------------------------------------------------------
# Newton polygon


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[tuple[int, int]]:
    """Vertices in counterclockwise order (monotone chain, collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def _on_segment(p, a, b) -> bool:
    return (
        _cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


@dataclass
class NewtonPolygon:
    points: list[tuple[int, int]]
    vertices: list[tuple[int, int]]
    classification: dict[tuple[int, int], str]

    @property
    def internal(self) -> list[tuple[int, int]]:
        return sorted(p for p, c in self.classification.items() if c == "internal")

    @property
    def boundary(self) -> list[tuple[int, int]]:
        return sorted(p for p, c in self.classification.items() if c == "boundary")

    def boundary_lattice_count(self) -> int:
        """Lattice points on the hull boundary (occupied or not), by edge gcds."""
        v = self.vertices
        if len(v) == 1:
            return 1
        if len(v) == 2:
            return gcd(abs(v[1][0] - v[0][0]), abs(v[1][1] - v[0][1])) + 1
        return sum(
            gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) for a, b in zip(v, v[1:] + v[:1])
        )


def newton_polygon(h: WeightHistogram, square_strip_n: int | None = None) -> NewtonPolygon:
    points = sorted(h.counts)
    if not points:
        raise ValueError("empty histogram")
    hull = convex_hull(points)
    cls = {}
    edges = list(zip(hull, hull[1:] + hull[:1])) if len(hull) > 2 else [(hull[0], hull[-1])]
    for p in points:
        on_hull = len(hull) <= 2 or any(_on_segment(p, a, b) for a, b in edges)
        cls[p] = "boundary" if on_hull else "internal"
    poly = NewtonPolygon(points, hull, cls)
    if square_strip_n is not None:
        k = square_strip_n // 2
        expected = {(k, 0), (0, 1), (-k, 0), (0, -1)}
        if set(hull) != expected:
            raise AssertionError(f"square strip hull {hull} is not the rhombus {sorted(expected)}")
    return poly


# ---------------------------------------------------------------------------
# feedback arc sets


def is_fas(d: DualDigraph, matching) -> bool:
    """Whether deleting the dual arcs of a perfect matching leaves d acyclic."""
    try:
        d.graph.check_perfect_matching(matching)
    except GraphError as exc:
        raise ValueError(f"not a perfect matching: {exc}") from None
    return d.is_acyclic_without(matching)


def count_fas(g: StripGraph) -> int:
    _guard(g)
    d = build_dual(g)
    return sum(1 for m in iter_matchings(g) if d.is_acyclic_without(m))


@dataclass
class FasReport:
    total: int
    fas: int
    polygon: NewtonPolygon
    non_fas: list[tuple[tuple[int, int], int]]  # (weight, intact zig-zag paths) per matching
    internal_not_fas: int
    boundary_fas: int


def fas_report(g: StripGraph) -> FasReport:
    """Classify every perfect matching as FAS or not, against the Newton polygon."""
    _guard(g)
    d = build_dual(g)
    poly = newton_polygon(enumerate_matchings(g))
    total = fas = internal_not_fas = boundary_fas = 0
    non_fas = []
    for m in iter_matchings(g):
        total += 1
        wt = g.weight(m)
        ok = d.is_acyclic_without(m)
        internal = poly.classification[wt] == "internal"
        if ok:
            fas += 1
            boundary_fas += not internal
        else:
            non_fas.append((wt, len(intact_zigzag_paths(d, m))))
            internal_not_fas += internal
    return FasReport(total, fas, poly, sorted(non_fas), internal_not_fas, boundary_fas)


def count_min_fas_bruteforce(d: DualDigraph, max_arcs: int = 16) -> tuple[int, int]:
    """(number of acyclic-making arc subsets of the minimum size, that size).

    Searches subsets of size N/2 (N = primal node count) directly, without
    assuming they are perfect matchings. Exponential; guarded by ``max_arcs``.
    """
    if len(d.arcs) > max_arcs:
        raise SizeError(f"{len(d.arcs)} arcs exceeds the subset-search guard of {max_arcs}")
    size = len(d.graph.nodes) // 2
    for k in range(size):
        for subset in itertools.combinations(range(len(d.arcs)), k):
            if d.is_acyclic_without(subset):
                raise AssertionError(f"found a feedback arc set of size {k} < {size}")
    count = sum(
        1 for subset in itertools.combinations(range(len(d.arcs)), size)
        if is_acyclic(d.num_nodes, d.without(subset))
    )
    return count, size
