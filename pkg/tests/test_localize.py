from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy

from hypertoric.localize import (
    LocalizeError,
    WeightedModel,
    box_square_sign_oracle,
    fiber_class_expr,
    integrate,
    integrate_base,
    nonequivariant_limit,
    orbifold_degrees,
    paper_table_p12,
    restrict_expr,
    sectors,
    standard_table,
    steinberg_operator,
)

U1, U2 = sympy.Symbol("u1"), sympy.Symbol("u2")
LAM1, LAM2, HBAR = sympy.Symbol("lam1"), sympy.Symbol("lam2"), sympy.Symbol("hbar")


def test_sectors_of_12():
    m = WeightedModel((1, 2))
    secs = sectors(m)
    assert [(s.f, s.order, s.support, s.age) for s in secs] == [
        (Fraction(0), 1, (0, 1), 0),
        (Fraction(1, 2), 2, (1,), 1),
    ]


def test_standard_tangents_plain_line():
    table = standard_table(WeightedModel((1, 1)))
    p0 = table.sector_points(Fraction(0))[0]
    assert p0.tangent_weights == (LAM2 - LAM1,)


def test_standard_tangent_weighted():
    table = standard_table(WeightedModel((1, 2)))
    p0 = table.sector_points(Fraction(0))[0]
    assert p0.tangent_weights == (LAM2 - 2 * LAM1,)
    p1 = table.sector_points(Fraction(0))[1]
    assert p1.multiplicity == Fraction(1, 2)


def test_fiber_plus_tangent_is_hbar():
    for weights in ((1, 1), (1, 2), (2, 3), (1, 1, 2)):
        table = standard_table(WeightedModel(weights))
        for f, points in table.points.items():
            for p in points:
                for t in p.tangent_weights:
                    fiber = HBAR - t
                    assert sympy.simplify((fiber + t) - HBAR) == 0


def test_paper_table_identities():
    table = paper_table_p12()
    pts = table.sector_points(Fraction(0))
    assert sympy.expand(pts[0].euler - LAM1 * (HBAR - LAM1 - LAM2)) == 0
    assert sympy.expand(pts[1].euler - LAM2 * (HBAR - LAM1 - LAM2)) == 0
    for p in pts:
        assert p.multiplicity == Fraction(1, 2)
        restricted = restrict_expr(U1 + U2, p)
        assert sympy.expand(restricted - (LAM1 + LAM2)) == 0
    val = integrate((HBAR - U1 - U2) ** 2, table, Fraction(0))
    expected = sympy.Rational(1, 2) * (
        (HBAR - LAM2) / LAM1 + (HBAR - LAM1) / LAM2 - 2
    )
    assert sympy.simplify(val - expected) == 0


def test_integrate_is_linear():
    table = standard_table(WeightedModel((1, 2)))
    a = integrate(U1, table)
    b = integrate(U2, table)
    ab = integrate(U1 + U2, table)
    assert sympy.simplify(ab - a - b) == 0
    assert sympy.simplify(integrate(3 * U1, table) - 3 * a) == 0


def test_point_class_delta_property():
    # the class supported at one fixed point integrates to its multiplicity
    table = standard_table(WeightedModel((1, 1)))
    point_class = U1 * (HBAR - U1)  # restriction is the Euler factor at P2
    val = integrate(point_class, table)
    assert sympy.simplify(val - 1) == 0
    table12 = standard_table(WeightedModel((1, 2)))
    val12 = integrate(U1 * (HBAR - U1), table12)
    assert sympy.simplify(val12 - sympy.Rational(1, 2)) == 0


def test_euler_characteristic_count():
    # integrating the top Chern class of the base counts fixed points with
    # their multiplicities
    for weights in ((1, 1), (1, 2), (2, 3), (1, 2, 2)):
        model = WeightedModel(weights)
        table = standard_table(model)
        us = [model.u_symbol(i) for i in range(len(weights))]
        top = sympy.expand(
            sum(
                sympy.prod(c)
                for c in itertools.combinations(us, len(weights) - 1)
            )
        )
        val = integrate_base(top, table)
        expected = sum(Fraction(1, w) for w in weights)
        assert sympy.simplify(val - sympy.Rational(expected)) == 0


def test_base_degrees():
    table = standard_table(WeightedModel((1, 2)))
    assert integrate_base(U1, table) == sympy.Rational(1, 2)
    assert integrate_base(U2, table) == 1
    assert integrate_base(fiber_class_expr(WeightedModel((1, 2))), table) == sympy.Rational(-3, 2)


def test_gkm_edge_divisibility():
    """Divisor restrictions at the two ends of an edge differ by a constant
    multiple of the edge weight."""
    for weights in ((1, 1), (1, 2), (2, 3), (1, 2, 3)):
        model = WeightedModel(weights)
        table = standard_table(model)
        pts = {p.slot: p for p in table.sector_points(Fraction(0))}
        for k, j in itertools.permutations(pts, 2):
            edge = pts[k].restrictions[f"u{j + 1}"]  # tangent weight toward j
            for i in range(len(weights)):
                diff = sympy.expand(
                    pts[k].restrictions[f"u{i + 1}"] - pts[j].restrictions[f"u{i + 1}"]
                )
                ratio = sympy.cancel(diff / edge)
                assert ratio.is_number, (weights, k, j, i, ratio)


def test_fiber_class_restrictions():
    for weights in ((1, 1), (1, 2), (1, 1, 2)):
        model = WeightedModel(weights)
        table = standard_table(model)
        phi = fiber_class_expr(model)
        for p in table.sector_points(Fraction(0)):
            expected = sympy.Integer(1)
            for t in p.tangent_weights:
                expected *= HBAR - t
            assert sympy.expand(restrict_expr(phi, p) - expected) == 0


def test_steinberg_paper_values():
    model = WeightedModel((1, 2))
    table = paper_table_p12()
    L = steinberg_operator(model, table, "forward")
    half = sympy.Rational(1, 2)
    assert L.apply_generator("u1") == {"fiber": half, "box": half}
    assert L.apply_generator("u2") == {"fiber": 1, "box": half}
    assert L.apply_generator("box") == {"fiber": half, "box": half}
    Linv = steinberg_operator(model, table, "inverse")
    assert Linv.apply_generator("box") == {"fiber": half, "box": half}
    I = integrate((HBAR - U1 - U2) ** 2, table, Fraction(0))
    img = Linv.apply_generator("fiber")
    assert sympy.simplify(img["fiber"] - I) == 0
    assert sympy.simplify(img["box"] - I) == 0
    assert L.is_injective()
    assert not L.is_identity_matrix(Linv.compose(L))


def test_steinberg_standard_matrix_shape():
    model = WeightedModel((1, 2))
    L = steinberg_operator(model, standard_table(model), "forward")
    assert len(L.matrix) == 2
    assert L.sector_order == (Fraction(0), Fraction(1, 2))


def test_orbifold_degrees_are_twice_n():
    for weights in ((1, 1), (1, 2), (2, 2), (1, 2, 3), (2, 4, 6), (1, 1, 1, 2)):
        model = WeightedModel(weights)
        for comp, deg in orbifold_degrees(model):
            assert deg == 2 * model.n, (weights, comp)


def test_nonequivariant_limit_rejects_dimension_mismatch():
    table = standard_table(WeightedModel((1, 2)))
    with pytest.raises(LocalizeError):
        nonequivariant_limit(integrate(sympy.Integer(1), table))
    # a class of complementary degree has a fine limit
    val = integrate(U2 * (HBAR - U2), table)
    assert nonequivariant_limit(val) == 1


def test_box_square_sign_oracle_positive():
    assert box_square_sign_oracle(WeightedModel((1, 2))) == "paper"


def test_conventions_agree_on_shared_quantities():
    """The standard and hard-coded tables agree on the quantities that are
    pinned in both: the sector decomposition and the twisted-sector unit
    integral.  Untwisted multiplicities and restrictions are convention
    islands and deliberately not compared."""
    model = WeightedModel((1, 2))
    std = standard_table(model)
    paper = paper_table_p12()
    assert set(std.points) == set(paper.points)
    std_half = integrate_base(sympy.Integer(1), std, Fraction(1, 2))
    paper_half = integrate_base(sympy.Integer(1), paper, Fraction(1, 2))
    assert std_half == paper_half == sympy.Rational(1, 2)
    for table in (std, paper):
        pts = table.sector_points(Fraction(1, 2))
        assert len(pts) == 1 and pts[0].multiplicity == Fraction(1, 2)
