"""Kasteleyn signs, the symbolic Kasteleyn determinant and the product formula.

Only the black x white block B of the Kasteleyn matrix is formed; for a
bipartite graph det K = +-(det B)^2, so det B is the Newton polynomial up to
the sign normalisation done in :func:`normalize_signs`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import mpmath

from dimerstrip.laurent import LaurentPoly2
from dimerstrip.lattice import StripGraph
from dimerstrip.oracle import convention_sign

MAX_STRIP_N = 64
MINORS_LIMIT = 12


class ConventionError(ValueError):
    """A polynomial does not follow the (-1)^(nz+nw+nz*nw) sign convention."""


@dataclass(frozen=True)
class KasteleynOrientation:
    signs: tuple[int, ...]  # per edge id, +1 or -1

    def face_product(self, g: StripGraph, f: int) -> int:
        p = 1
        for e in g.face_edges(f):
            p *= self.signs[e]
        return p

    def is_valid(self, g: StripGraph) -> bool:
        return all(self.face_product(g, f) == required_face_sign(len(g.faces[f])) for f in range(len(g.faces)))


def required_face_sign(length: int) -> int:
    return -1 if length % 4 == 0 else 1


def _spanning_tree(g: StripGraph) -> set[int]:
    tree: set[int] = set()
    if not g.nodes:
        return tree
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for e in sorted(g.incident(v)):
            u = g.edges[e].other(v)
            if u not in seen:
                seen.add(u)
                tree.add(e)
                queue.append(u)
    return tree


def find_orientation(g: StripGraph) -> KasteleynOrientation:
    """Kasteleyn signs satisfying the face rule on every face.

    Tree edges get +1; the co-tree signs solve the face equations over GF(2)
    by Gaussian elimination with free variables set to +1, so the result is
    deterministic.
    """
    tree = _spanning_tree(g)
    free = [e.id for e in g.edges if e.id not in tree]
    col = {e: i for i, e in enumerate(free)}
    rows = []
    for f in range(len(g.faces)):
        mask = 0
        for e in g.face_edges(f):
            if e in col:
                mask ^= 1 << col[e]
        rhs = 1 if required_face_sign(len(g.faces[f])) == -1 else 0
        rows.append([mask, rhs])

    pivots: list[tuple[int, int]] = []  # (column, row index)
    r = 0
    for c in range(len(free)):
        bit = 1 << c
        k = next((i for i in range(r, len(rows)) if rows[i][0] & bit), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][0] & bit:
                rows[i][0] ^= rows[r][0]
                rows[i][1] ^= rows[r][1]
        pivots.append((c, r))
        r += 1
    if any(mask == 0 and rhs for mask, rhs in rows):
        raise ValueError("face constraints are inconsistent; no Kasteleyn orientation")

    x = [0] * len(free)
    for c, i in pivots:
        x[c] = rows[i][1]  # free columns are 0, so the pivot row reads off directly
    signs = [1] * len(g.edges)
    for e, i in col.items():
        signs[e] = -1 if x[i] else 1
    return KasteleynOrientation(tuple(signs))


def kasteleyn_matrix(g: StripGraph, orientation: KasteleynOrientation | None = None) -> list[list[LaurentPoly2]]:
    """Black x white matrix; parallel edges are summed into one entry."""
    if orientation is None:
        orientation = find_orientation(g)
    bi = {b: i for i, b in enumerate(g.blacks)}
    wi = {w: i for i, w in enumerate(g.whites)}
    entries: list[list[dict]] = [[{} for _ in g.whites] for _ in g.blacks]
    for e in g.edges:
        cell = entries[bi[e.black]][wi[e.white]]
        key = (e.ez, e.ew)
        cell[key] = cell.get(key, 0) + orientation.signs[e.id]
    return [[LaurentPoly2(c) for c in row] for row in entries]


def det_bareiss(matrix: Sequence[Sequence[LaurentPoly2]]) -> LaurentPoly2:
    """Fraction-free Gaussian elimination over the Laurent ring."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return LaurentPoly2(1)
    sign = 1
    prev = LaurentPoly2(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly2()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = piv * row_i[j]
                if aik and row_k[j]:
                    num = num - aik * row_k[j]
                row_i[j] = num.exact_div(prev)
            row_i[k] = LaurentPoly2()
        prev = piv
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def det_minors(matrix: Sequence[Sequence[LaurentPoly2]]) -> LaurentPoly2:
    """Laplace expansion along the first row; exponential, for small matrices only."""
    n = len(matrix)
    if n > MINORS_LIMIT:
        raise ValueError(f"expansion by minors is limited to {MINORS_LIMIT} x {MINORS_LIMIT}")
    if n == 0:
        return LaurentPoly2(1)

    def rec(rows: tuple[int, ...], cols: tuple[int, ...]) -> LaurentPoly2:
        if len(rows) == 1:
            return matrix[rows[0]][cols[0]]
        total = LaurentPoly2()
        r = rows[0]
        for idx, c in enumerate(cols):
            entry = matrix[r][c]
            if entry.is_zero():
                continue
            minor = rec(rows[1:], cols[:idx] + cols[idx + 1:])
            term = entry * minor
            total = total + term if idx % 2 == 0 else total - term
        return total

    return rec(tuple(range(n)), tuple(range(n)))


def determinant(matrix: Sequence[Sequence[LaurentPoly2]]) -> LaurentPoly2:
    try:
        return det_bareiss(matrix)
    except ArithmeticError:
        if len(matrix) <= MINORS_LIMIT:
            return det_minors(matrix)
        raise


def normalize_signs(p: LaurentPoly2) -> LaurentPoly2:
    """Bring a Kasteleyn determinant into the (-1)^(nz+nw+nz*nw) convention.

    The sign of a term of det B depends on the parity class of its weight
    through eps * (-1)^(a*nz + b*nw + nz*nw); the substitutions z -> +-z,
    w -> +-w and a global sign remove a, b and eps.
    """
    for sz, sw, eps in product((1, -1), (1, -1), (1, -1)):
        q = p.substitute_signs(sz, sw)
        if eps < 0:
            q = -q
        if all((c > 0) == (convention_sign(*e) > 0) for e, c in q.items()):
            return q
    raise ConventionError("determinant signs are not of Kasteleyn type")


def newton_polynomial_det(g: StripGraph, orientation: KasteleynOrientation | None = None) -> LaurentPoly2:
    if g.shape != "square-general" and g.n > MAX_STRIP_N:
        raise ValueError(f"symbolic determinant is limited to n <= {MAX_STRIP_N}")
    return normalize_signs(determinant(kasteleyn_matrix(g, orientation)))


# ---------------------------------------------------------------------------
# totals


def total_matchings(p: LaurentPoly2, strict: bool = True) -> int:
    """Z = (-P(1,1) + P(1,-1) + P(-1,1) + P(-1,-1)) / 2.

    With ``strict`` the first evaluation must vanish, as it does for every
    square-lattice Newton polynomial in this convention.
    """
    p11 = p.eval(1, 1)
    if strict and p11 != 0:
        raise ConventionError(f"P(1,1) = {p11}, expected 0")
    z2 = -p11 + p.eval(1, -1) + p.eval(-1, 1) + p.eval(-1, -1)
    if z2.denominator != 1 or z2.numerator % 2:
        raise ConventionError("evaluations do not combine to an integer total")
    return z2.numerator // 2


def identify_A_values(p: LaurentPoly2):
    """(A1, A2, A3, A4) = P(1,1)/2, P(1,-1)/2, P(-1,1)/2, P(-1,-1)/2."""
    return tuple(p.eval(a, b) / 2 for a, b in ((1, 1), (1, -1), (-1, 1), (-1, -1)))


@dataclass(frozen=True)
class ProductFormulaResult:
    A: tuple  # four mpmath values
    Z: int
    drift: mpmath.mpf
    dps: int


def _product_terms(m: int, n: int) -> tuple:
    vals = []
    for a, b in ((0, 0), (0, 1), (1, 0), (1, 1)):
        prod = mpmath.mpf(1)
        for k in range(1, m // 2 + 1):
            sk = mpmath.sin((2 * k - a) * mpmath.pi / m) ** 2
            for l in range(1, n + 1):
                prod *= 2 * mpmath.sqrt(sk + mpmath.sin((2 * l - b) * mpmath.pi / n) ** 2)
        vals.append(prod / 2)
    return tuple(vals)


def product_formula(m: int, n: int, dps: int = 30, max_dps: int = 480, tol: float = 1e-6) -> ProductFormulaResult:
    """Kasteleyn's trigonometric product for the m x n torus (unit edge weights).

    A1..A4 are the four half-products with signs (-1)^(a+b+ab) stripped, so
    Z = -A1 + A2 + A3 + A4. Working precision doubles until Z lands within
    ``tol`` of an integer and agrees with the previous precision.
    """
    for d in (m, n):
        if d < 2 or d % 2:
            raise ValueError("m and n must be even and >= 2")
    prev = None
    cur = dps
    while cur <= max_dps:
        with mpmath.workdps(cur):
            A = _product_terms(m, n)
            z = -A[0] + A[1] + A[2] + A[3]
            zi = int(mpmath.nint(z))
            drift = abs(z - zi)
            if drift < tol and prev == zi:
                return ProductFormulaResult(A, zi, drift, cur)
        prev = zi if drift < tol else None
        cur *= 2
    raise ArithmeticError(f"product formula did not round unambiguously up to {max_dps} digits")
