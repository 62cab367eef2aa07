"""Spin encoding of strip matchings and the lowering moves d_a, d_b.

Every black node carries a spin pointing at the white node it is matched to.
Black nodes are numbered 1..n: the top row (row 1 of the strip) left to right
as 1..n/2, the bottom row (row 0) as n/2+1..n, with node n/2+j sitting in
column 2j mod n. From the all-up state, d_a turns one up spin down and d_b
turns a top/bottom pair sideways in opposite directions; both lower the
z-weight by one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from dimerstrip.lattice import GraphError, StripGraph, build_graph
from dimerstrip.oracle import SizeError

UP, DOWN, LEFT, RIGHT = "u", "d", "l", "r"
SYMBOLS = {UP: "N", DOWN: "S", LEFT: "W", RIGHT: "E"}
ARROWS = {UP: "↑", DOWN: "↓", LEFT: "←", RIGHT: "→"}
_FROM_DIRECTION = {d: s for s, d in SYMBOLS.items()}

MAX_SPIN_N = 12


class MoveError(ValueError):
    """A d_a / d_b move whose precondition fails."""


@dataclass(frozen=True)
class SpinState:
    n: int
    word: tuple[str, ...]  # word[x-1] is the spin of black node x

    @classmethod
    def top(cls, n: int) -> SpinState:
        """The unique highest-weight state, all spins up."""
        return cls(n, (UP,) * n)

    def __getitem__(self, x: int) -> str:
        return self.word[x - 1]

    def replace(self, **changes: str) -> SpinState:
        w = list(self.word)
        for key, sym in changes.items():
            w[int(key[1:]) - 1] = sym
        return SpinState(self.n, tuple(w))

    @property
    def level(self) -> int:
        """p = #down + #left, the number of lowering moves from the top state."""
        return self.word.count(DOWN) + self.word.count(LEFT)

    @property
    def q(self) -> int:
        return self.word.count(LEFT)

    @property
    def weight(self) -> int:
        return self.n // 2 - self.level

    def is_balanced(self) -> bool:
        return self.word.count(LEFT) == self.word.count(RIGHT)

    def __str__(self) -> str:
        return "|" + "".join(ARROWS[s] for s in self.word) + "⟩"

    def ascii(self) -> str:
        return "".join(self.word)


def node_of(g: StripGraph, x: int) -> int:
    """Graph node id of black node number x."""
    n = g.n
    if not 1 <= x <= n:
        raise MoveError(f"node index {x} outside 1..{n}")
    if x <= n // 2:
        return g.node_at(1, 2 * x - 1)
    return g.node_at(0, (2 * (x - n // 2)) % n)


def partners(n: int, x: int) -> list[tuple[int, str]]:
    """Bottom partners of top node x with the direction x turns: [(y, dir_x), ...]."""
    h = n // 2
    left_partner = h + x - 1 if x > 1 else n
    return [(left_partner, LEFT), (h + x, RIGHT)]


def _strip_check(g: StripGraph) -> None:
    if g.m != 2 or g.shape not in ("square-strip", "hexagon-strip"):
        raise GraphError("spin states are defined on 2 x n strips only")


def spin_from_matching(g: StripGraph, matching) -> SpinState:
    _strip_check(g)
    g.check_perfect_matching(matching)
    by_black = {g.edges[e].black: e for e in matching}
    word = []
    for x in range(1, g.n + 1):
        v = node_of(g, x)
        word.append(_FROM_DIRECTION[g.direction_of(v, by_black[v])])
    return SpinState(g.n, tuple(word))


def matching_from_spin(g: StripGraph, s: SpinState) -> tuple[int, ...]:
    """Edge ids selected by the spins; raises GraphError unless perfect."""
    _strip_check(g)
    if s.n != g.n:
        raise GraphError(f"state has {s.n} spins, graph has {g.n} black nodes")
    edges = []
    for x in range(1, g.n + 1):
        e = g.edge_in_direction(node_of(g, x), SYMBOLS[s[x]])
        if e is None:
            raise GraphError(f"node {x} has no edge pointing {SYMBOLS[s[x]]}")
        edges.append(e)
    g.check_perfect_matching(edges)
    return tuple(edges)


def _validated(g: StripGraph, s: SpinState) -> SpinState:
    try:
        matching_from_spin(g, s)
    except GraphError as exc:
        raise MoveError(f"{s} is not a perfect matching: {exc}") from None
    return s


def apply_da(g: StripGraph, s: SpinState, x: int) -> SpinState:
    """Flip the up spin at x down."""
    if s[x] != UP:
        raise MoveError(f"d_a needs an up spin at node {x}, found {s[x]!r}")
    return _validated(g, s.replace(**{f"x{x}": DOWN}))


def apply_db(g: StripGraph, s: SpinState, x: int, y: int | None = None, x_dir: str | None = None) -> SpinState:
    """Turn the up spins at top node x and bottom partner y sideways.

    With y = n/2+x-1 (or n when x = 1) x turns left and y right; with
    y = n/2+x the other way round. y defaults to n/2+x. When both rules give
    the same partner (n = 2), ``x_dir`` picks the direction.
    """
    n = s.n
    if not 1 <= x <= n // 2:
        raise MoveError(f"d_b acts on a top-row node, got {x}")
    options = partners(n, x)
    if y is None:
        y = options[1][0]
    dirs = [d for yy, d in options if yy == y]
    if not dirs:
        raise MoveError(f"{y} is not a partner of {x}")
    if x_dir is not None:
        if x_dir not in dirs:
            raise MoveError(f"node {x} cannot turn {x_dir!r} with partner {y}")
        dirs = [x_dir]
    if len(dirs) > 1:
        raise MoveError(f"ambiguous d_b({x},{y}); pass x_dir")
    if s[x] != UP or s[y] != UP:
        raise MoveError(f"d_b needs up spins at {x} and {y}")
    dx = dirs[0]
    dy = RIGHT if dx == LEFT else LEFT
    return _validated(g, s.replace(**{f"x{x}": dx, f"x{y}": dy}))


def moves(g: StripGraph, s: SpinState) -> Iterator[tuple[str, SpinState]]:
    """All valid single moves from s as (label, result)."""
    for x in range(1, s.n + 1):
        if s[x] == UP:
            try:
                yield f"a{x}", apply_da(g, s, x)
            except MoveError:
                pass
    for x in range(1, s.n // 2 + 1):
        for y, dx in partners(s.n, x):
            try:
                yield f"b{x},{y}{dx}", apply_db(g, s, x, y, dx)
            except MoveError:
                pass


@dataclass
class Closure:
    graph: StripGraph
    states: dict[SpinState, int]  # state -> BFS discovery order
    arrows: list[tuple[SpinState, str, SpinState]]

    def by_level(self) -> dict[int, list[SpinState]]:
        out: dict[int, list[SpinState]] = {}
        for s in self.states:
            out.setdefault(s.level, []).append(s)
        return out

    def path_counts(self) -> dict[SpinState, int]:
        """Number of move sequences from the top state to each state."""
        count = {SpinState.top(self.graph.n): 1}
        for src, _, dst in sorted(self.arrows, key=lambda a: a[0].level):
            count[dst] = count.get(dst, 0) + count[src]
        return count


def closure(shape: str, n: int) -> Closure:
    """Breadth-first closure of the top state under all valid moves."""
    if n > MAX_SPIN_N:
        raise SizeError(f"spin generation is limited to n <= {MAX_SPIN_N}")
    g = build_graph(shape, n)
    top = SpinState.top(n)
    seen = {top: 0}
    arrows = []
    queue = deque([top])
    while queue:
        s = queue.popleft()
        for label, t in moves(g, s):
            arrows.append((s, label, t))
            if t not in seen:
                seen[t] = len(seen)
                queue.append(t)
    return Closure(g, seen, arrows)


@dataclass(frozen=True)
class LevelCount:
    p: int
    count: int
    by_q: dict  # q -> count


def level_counts(shape: str, n: int) -> list[LevelCount]:
    levels = closure(shape, n).by_level()
    out = []
    for p in sorted(levels):
        by_q: dict[int, int] = {}
        for s in levels[p]:
            by_q[s.q] = by_q.get(s.q, 0) + 1
        out.append(LevelCount(p, len(levels[p]), dict(sorted(by_q.items()))))
    return out


def to_dot(c: Closure) -> str:
    """Level diagram in DOT: states as nodes ranked by level, moves as arrows."""
    lines = ["digraph levels {", "  rankdir=TB;"]
    name = {s: f"s{i}" for s, i in c.states.items()}
    for p, states in sorted(c.by_level().items()):
        ids = " ".join(name[s] for s in sorted(states, key=c.states.get))
        lines.append(f"  {{ rank=same; {ids} }}")
    for s, i in sorted(c.states.items(), key=lambda kv: kv[1]):
        lines.append(f'  {name[s]} [label="{s}"];')
    for src, label, dst in c.arrows:
        kind = label[0]
        lines.append(f'  {name[src]} -> {name[dst]} [label="d_{kind}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
