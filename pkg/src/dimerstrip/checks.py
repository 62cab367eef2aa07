"""Cross-method agreement and the self-test report behind ``dimerstrip check``."""

from __future__ import annotations

from fractions import Fraction

from dimerstrip import formulas as F
from dimerstrip.formulas import CheckResult, _result
from dimerstrip.kasteleyn import MAX_STRIP_N, newton_polynomial_det, total_matchings
from dimerstrip.laurent import LaurentPoly2
from dimerstrip.lattice import build_graph
from dimerstrip.oracle import MAX_NODES, enumerate_matchings, fas_report, newton_polygon

METHODS = ("formula", "recursion", "kasteleyn", "brute")
CONVENTION = "(-1)^(nz+nw+nz*nw)"
PRINTED_CONVENTION = "(-1)^(n/2) * (-1)^(nz+nw+nz*nw) on the z-part"
SAMPLE_POINTS = (Fraction(2), Fraction(-1), Fraction(3), Fraction(1, 2), Fraction(-5, 3), Fraction(7))


def canonical_shape(shape: str) -> str:
    if shape in ("square", "square-strip"):
        return "square"
    if shape in ("hex", "hexagon", "hexagon-strip"):
        return "hex"
    raise ValueError(f"unknown shape {shape!r}")


def to_printed_signs(p: LaurentPoly2, n: int) -> LaurentPoly2:
    """Flip the z-part by (-1)^(n/2), leaving the w-terms alone."""
    if (n // 2) % 2 == 0:
        return p
    z = p.z_part()
    return (p - z) - z


def newton_by(method: str, shape: str, n: int, m: int = 2) -> LaurentPoly2:
    """Newton polynomial in the canonical convention by one method."""
    shape = canonical_shape(shape)
    if method == "formula":
        if m != 2:
            raise ValueError("closed formulas exist only for 2 x n strips")
        return F.newton(shape, n)
    if method == "recursion":
        if m != 2:
            raise ValueError("recursions exist only for 2 x n strips")
        z = F.newton_sq_recursive(n) if shape == "square" else F.newton_hex_recursive(n)
        return z + F.W_TERMS
    g = build_graph(shape, n, m)
    if method == "kasteleyn":
        if m == 2 and n > MAX_STRIP_N:
            raise ValueError(f"symbolic determinant is limited to n <= {MAX_STRIP_N}")
        return newton_polynomial_det(g)
    if method == "brute":
        return enumerate_matchings(g).to_polynomial()
    raise ValueError(f"unknown method {method!r}")


def available_methods(shape: str, n: int, m: int = 2) -> list[str]:
    out = []
    for meth in METHODS:
        if m != 2 and meth in ("formula", "recursion"):
            continue
        if meth == "brute" and m * n > MAX_NODES:
            continue
        if meth == "kasteleyn" and m == 2 and n > MAX_STRIP_N:
            continue
        out.append(meth)
    return out


def compare_methods(shape: str, n: int, methods=None, m: int = 2) -> dict[str, LaurentPoly2]:
    if methods is None:
        methods = available_methods(shape, n, m)
    return {meth: newton_by(meth, shape, n, m) for meth in methods}


def closed_form_agrees(shape: str, n: int, p: LaurentPoly2, points=SAMPLE_POINTS) -> bool:
    z = p.z_part()
    return all(F.newton_closed_form_eval(canonical_shape(shape), n, z0) == z.eval(z0) for z0 in points)


# ---------------------------------------------------------------------------
# report


def _oracle_z(shape: str, n: int) -> LaurentPoly2:
    return enumerate_matchings(build_graph(shape, n)).to_polynomial().z_part()


def agreement_checks(max_n: int = 8) -> list[CheckResult]:
    out = []
    for shape in ("square", "hex"):
        for n in range(2, max_n + 1, 2):
            polys = compare_methods(shape, n)
            same = len(set(polys.values())) == 1
            closed = closed_form_agrees(shape, n, polys["formula"])
            out.append(_result(
                f"{shape} n={n}: {' = '.join(polys)} = closed form",
                same and closed, polys["formula"].pretty(),
            ))
    return out


def ledger_checks() -> list[CheckResult]:
    """Each documented deviation, phrased as the outcome that should hold."""
    out = []
    q = LaurentPoly2.z()
    hex4 = _oracle_z("hex", 4)
    sq4 = _oracle_z("square", 4)

    # the hex z-part is z^(n/2) Q_n(-1/z); evaluate the chain value at q = -1/z
    minus_inv = -LaurentPoly2.z(-1)
    printed_q = F.md_cycle_single_even(4, minus_inv, q0=1)
    fixed_q = F.md_cycle_single_even(4, minus_inv)
    out.append(_result(
        "single-fugacity seed Q_0 = 1 fails at n=4, Q_0 = 2 agrees with enumeration (documented deviation)",
        LaurentPoly2.z(2) * printed_q != hex4 and LaurentPoly2.z(2) * fixed_q == hex4,
        f"printed Q_4 = {F.md_cycle_single_even(4, q, q0=1).pretty().replace('z', 'q')}, "
        f"corrected Q_4 = {F.md_cycle_single_even(4, q).pretty().replace('z', 'q')}",
    ))
    u, v = -LaurentPoly2.z(), -LaurentPoly2.z(-1)
    printed3 = F.md_cycle_three(4, u, v, 1, printed_seeds=True)
    fixed3 = F.md_cycle_three(4, u, v, 1)
    out.append(_result(
        "three-weight seed Q_2 = (1+u)(1+v) + t fails at n=4, + 2t agrees (documented deviation)",
        printed3 != sq4 and fixed3 == sq4,
        f"u=-z, v=-1/z, t=1: printed {printed3.pretty()}, corrected {fixed3.pretty()}",
    ))
    out.append(_result(
        "square recursion seed P_0 = 1 fails at n=4, P_0 = 2 agrees (documented deviation)",
        F.newton_sq_recursive(4, p0=1) != sq4 and F.newton_sq_recursive(4) == sq4,
        f"printed seed gives {F.newton_sq_recursive(4, p0=1).pretty()}",
    ))
    sign_ok = all(
        F.newton(shape, n, printed_signs=True).z_part() == (-1) ** (n // 2) * F.newton(shape, n).z_part()
        for shape in ("square", "hex") for n in range(2, 13, 2)
    )
    out.append(_result(
        "printed sum formula differs from the sign convention by exactly (-1)^(n/2), n <= 12 (documented deviation)",
        sign_ok, "canonical output uses " + CONVENTION,
    ))
    out.append(_result(
        "product form of a_{n,p} gives n instead of 1 at p = 0; binomial form used (documented deviation)",
        all(F.a_hex_printed_product(n, 0) == n and F.a_hex(n, 0) == 1 for n in range(2, 21, 2))
        and all(F.a_hex_printed_product(n, p) == F.a_hex(n, p) for n in range(2, 21, 2) for p in range(1, n // 2 + 1)),
        "forms agree for p >= 1",
    ))
    g4 = build_graph("square", 4)
    rep = fas_report(g4)
    zz = sorted({k for _, k in rep.non_fas})
    out.append(_result(
        "non-FAS boundary matchings at n=4 each preserve 2 zig-zag paths, not exactly one (documented deviation)",
        len(rep.non_fas) == 4 and zz == [2],
        f"weights {[w for w, _ in rep.non_fas]}",
    ))
    poly = newton_polygon(enumerate_matchings(g4), square_strip_n=4)
    out.append(_result(
        "n=4 internal Newton polygon points are (0,0), (+-1,0); (+-2,0) are vertices (documented deviation)",
        poly.internal == [(-1, 0), (0, 0), (1, 0)], f"vertices {poly.vertices}",
    ))
    hexp = newton_polynomial_det(build_graph("hex", 4))
    out.append(_result(
        "hexagon P(1,1) != 0 yet the four-evaluation total still counts all matchings (resolution)",
        hexp.eval(1, 1) != 0 and total_matchings(hexp, strict=False) == enumerate_matchings(build_graph("hex", 4)).total,
        f"P(1,1) = {hexp.eval(1, 1)}",
    ))
    return out


def full_report(include_all: bool = False, max_n: int = 8) -> list[CheckResult]:
    out = agreement_checks(max_n)
    if include_all:
        for target in ("hex-Q", "hex-P", "sq-P", "fas"):
            out += F.generating_function_check(target, 10)
        out += ledger_checks()
    return out

