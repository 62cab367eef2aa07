from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dimerstrip import formulas as F
from dimerstrip.laurent import LaurentPoly2

even_n = st.integers(1, 20).map(lambda k: 2 * k)
Z = LaurentPoly2.z()


def test_a_hex_examples():
    assert [F.a_hex(10, p) for p in range(6)] == [1, 10, 35, 50, 25, 2]
    assert F.a_hex(4, 3) == 0
    with pytest.raises(ValueError):
        F.a_hex(5, 1)


def test_b_sq_examples():
    assert [F.b_sq(6, p) for p in range(7)] == [1, 12, 48, 76, 48, 12, 1]
    assert F.b_sq_refined(4, 2, 1) == 8


@settings(max_examples=80, deadline=None)
@given(even_n, st.data())
def test_refined_forms_agree(n, data):
    p = data.draw(st.integers(0, n))
    q = data.draw(st.integers(0, p))
    assert F.b_sq_refined(n, p, q) == F.b_sq_refined_binomial(n, p, q)


@settings(max_examples=60, deadline=None)
@given(even_n, st.data())
def test_hex_forms_agree_above_zero(n, data):
    p = data.draw(st.integers(1, n // 2))
    assert F.a_hex_printed_product(n, p) == F.a_hex(n, p)


@settings(max_examples=40, deadline=None)
@given(even_n)
def test_recursions_match_sums(n):
    assert F.newton_sq_recursive(n) == F.newton_sq_z(n)
    assert F.newton_hex_recursive(n) == F.newton_hex_z(n)


@settings(max_examples=40, deadline=None)
@given(even_n)
def test_totals_from_formula(n):
    # Z_{2,n} = t_n + 2 and the FAS count is t_n - 2
    total = sum(F.b_sq(n, p) for p in range(n + 1)) + 2
    assert total == F.fas_count_formula(n) + 4


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 30))
def test_cycle_from_free_chain(n):
    if n >= 2:
        assert F.md_cycle_single(n, Z) == F.md_free_single(n, Z) + Z * F.md_free_single(n - 2, Z)
    if n % 2 == 0:
        assert F.md_cycle_single(n, Z) == F.md_cycle_single_even(n, Z)
    if n % 2 == 0 and n >= 2:
        assert F.md_cycle_single(n, Z) == LaurentPoly2({(p, 0): F.a_hex(n, p) for p in range(n // 2 + 1)})


def test_single_fugacity_values():
    assert F.md_free_single(2, Z) == 1 + Z
    assert F.md_cycle_single(4, Z) == LaurentPoly2.parse("1 + 4z + 2z^2")
    assert F.md_cycle_single_even(4, Z, q0=1) == LaurentPoly2.parse("1 + 4z + 3z^2")


def test_three_weight_symbolic():
    u, v, t = sympy.symbols("u v t")
    assert sympy.expand(F.md_free_three(1, u, v, t) - (1 + u)) == 0
    assert sympy.expand(F.md_free_three(2, u, v, t) - ((1 + u) * (1 + v) + t)) == 0
    # reduces to the single fugacity chain
    q = sympy.symbols("q")
    for n in range(0, 12):
        assert sympy.expand(F.md_free_three(n, 0, 0, q) - F.md_free_single(n, q)) == 0
    for n in range(0, 12, 2):
        assert sympy.expand(F.md_cycle_three(n, 0, 0, q) - F.md_cycle_single(n, q)) == 0


@pytest.mark.parametrize("n", range(2, 21, 2))
def test_three_weight_square_mapping(n):
    u, v = -Z, -LaurentPoly2.z(-1)
    assert F.md_cycle_three(n, u, v, 1) == F.newton_sq_z(n)


def test_md_dispatch():
    assert F.md_free("single", 3, q=2) == F.md_free_single(3, 2)
    assert F.md_cycle("three", 4, u=1, v=1, t=1) == F.md_cycle_three(4, 1, 1, 1)
    with pytest.raises(ValueError):
        F.md_cycle("three", 3, u=1, v=1, t=1)
    with pytest.raises(ValueError):
        F.md_free("quad", 3)


@pytest.mark.parametrize("n", range(2, 17, 2))
@pytest.mark.parametrize("z0", [Fraction(2), Fraction(-1), Fraction(1, 3), Fraction(-7, 2), Fraction(5)])
def test_closed_forms(n, z0):
    for shape, fn in (("square", F.newton_sq_z), ("hex", F.newton_hex_z)):
        exact = fn(n).eval(z0)
        assert F.newton_closed_form_eval(shape, n, z0) == exact
        approx = F.newton_closed_form_eval(shape, n, z0, exact=False)
        assert abs(approx - complex(exact)) <= 1e-9 * max(1, abs(exact))


def test_closed_form_domain():
    with pytest.raises(ValueError):
        F.newton_closed_form_eval("square", 4, 0)
    with pytest.raises(ValueError):
        F.newton_closed_form_eval("square", 3, 2)


def test_fas_formula():
    assert [F.fas_count_formula(n) for n in (2, 4, 6, 8, 10)] == [4, 32, 196, 1152, 6724]
    with pytest.raises(ValueError):
        F.fas_count_formula(3)


@pytest.mark.parametrize("target", ["hex-Q", "hex-P", "sq-P", "fas"])
def test_generating_functions(target):
    results = F.generating_function_check(target, 12)
    assert results and all(r.ok for r in results), [r for r in results if not r.ok]


def test_generating_function_bad_target():
    with pytest.raises(ValueError):
        F.generating_function_check("cubes", 4)


def test_printed_sign_variant():
    assert F.newton_hex(2).pretty() == "2 - z - w - w^-1"
    assert F.newton_hex(2, printed_signs=True).pretty() == "-2 + z - w - w^-1"
    assert F.newton_sq(4, printed_signs=True) == F.newton_sq(4)
