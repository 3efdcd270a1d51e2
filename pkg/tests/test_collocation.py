from fractions import Fraction as F
from math import factorial

import pytest
import sympy
from hypothesis import given, settings

from collostab.collocation import (
    NodeError,
    butcher_by_integration,
    butcher_from_nodes,
    gauss_pi,
    gauss_tau_closed_form,
    method_from_nodes,
    method_from_pi,
    method_gauss,
    nodes_from_pi,
    parse_scalar_list,
    pi_from_nodes,
    structure_flags,
    uniform_closed_nodes,
    uniform_open_nodes,
    validate_nodes,
)
from collostab.exactmath import Poly, shift, tau_transform
from collostab.quadfield import QuadraticNumber
from collostab.rootloc import char_poly

from conftest import node_sets, symmetric_node_sets

X = Poly.x()


def test_parse_tokens():
    vals, exact = parse_scalar_list("1/3, 2/3,1")
    assert vals == [F(1, 3), F(2, 3), F(1)] and exact
    vals, exact = parse_scalar_list("0.25,0.5")
    assert vals == [F(1, 4), F(1, 2)] and not exact
    with pytest.raises(NodeError):
        parse_scalar_list("1/0")
    with pytest.raises(NodeError):
        parse_scalar_list("x")


def test_validate_examples():
    ns = validate_nodes([F(1, 3), F(2, 3)])
    assert ns.s == 2 and ns.exactness == "rational"
    assert structure_flags(ns).forward and structure_flags(ns).symmetric
    with pytest.raises(NodeError, match="duplicate"):
        validate_nodes([F(1, 2), F(1, 2)])
    ns = validate_nodes([F(3, 4), F(1, 4)])
    assert ns.nodes == (F(1, 4), F(3, 4))
    assert ns.original == (F(3, 4), F(1, 4))
    with pytest.raises(NodeError):
        validate_nodes([])


def test_decimal_nodes_flagged_numerical():
    m = method_from_nodes("0.25,0.75")
    assert m.nodes.exactness == "numerical" and not m.exact
    assert m.nodes.nodes == (F(1, 4), F(3, 4))


def test_pi_examples():
    assert pi_from_nodes(validate_nodes([0, 1])) == X**2 - X
    assert pi_from_nodes(validate_nodes([F(1, 3), F(2, 3)])) == X**2 - X + F(2, 9)
    pi5 = pi_from_nodes(validate_nodes([F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4)]))
    assert pi5.lc == 1 and pi5.degree == 5
    assert char_poly(pi5) * 34560 == Poly([-6, 71, -642, 4164, -17280, 34560])


def test_gauss_pi_small():
    assert gauss_pi(1) == X - F(1, 2)
    assert gauss_pi(2) == X**2 - X + F(1, 6)


@pytest.mark.parametrize("s", [3, 4, 5])
def test_gauss_pi_against_sympy(s):
    # independent oracle: symbolic differentiation
    x = sympy.symbols("x")
    expr = sympy.Poly(sympy.diff((x * (x - 1)) ** s, x, s), x)
    coeffs = [F(int(c.p), int(c.q)) for c in reversed(expr.all_coeffs())]
    ref = Poly(coeffs).monic()
    assert gauss_pi(s) == ref


@pytest.mark.parametrize("s", range(1, 7))
def test_gauss_tau_closed_form(s):
    closed = gauss_tau_closed_form(s)
    tau = tau_transform(gauss_pi(s))
    # same polynomial up to the constant (-1)^s (2s)!/s! from the monic normalization
    assert tau * (F(factorial(2 * s), factorial(s)) * (-1) ** s) == closed


def test_tableau_examples():
    tab = butcher_from_nodes(validate_nodes([0, 1]))
    assert tab.A == ((0, 0), (F(1, 2), F(1, 2))) and tab.b == (F(1, 2), F(1, 2))
    tab = butcher_from_nodes(validate_nodes([F(1, 4), F(1, 3)]))
    assert tab.A == ((F(5, 8), F(-3, 8)), (F(2, 3), F(-1, 3))) and tab.b == (-2, 3)
    tab = butcher_from_nodes(validate_nodes([0, F(1, 3), F(2, 3), 1]))
    assert tab.A[1] == (F(1, 8), F(19, 72), F(-5, 72), F(1, 72))
    assert tab.b == (F(1, 8), F(3, 8), F(3, 8), F(1, 8))


def test_gauss2_tableau_exact():
    tab = method_gauss(2).tableau
    r3 = QuadraticNumber(0, F(1, 6), 3)
    assert tab.A[0][0] == F(1, 4) and tab.A[0][1] == F(1, 4) - r3
    assert tab.A[1][0] == F(1, 4) + r3 and tab.A[1][1] == F(1, 4)
    assert tab.b == (F(1, 2), F(1, 2))


@settings(max_examples=40)
@given(node_sets(max_size=6))
def test_two_constructions_agree(nodes):
    ns = validate_nodes(nodes)
    a = butcher_from_nodes(ns)
    b = butcher_by_integration(ns)
    assert a.A == b.A and a.b == b.b
    for row, c in zip(a.A, ns.nodes):
        assert sum(row) == c
    assert sum(a.b) == 1


def test_structure_flags_examples():
    f = structure_flags(validate_nodes([F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4)]))
    assert f.forward and f.symmetric and not f.contains_zero_node
    f = structure_flags(validate_nodes([0, F(1, 3), F(2, 3), 1]))
    assert f.forward and f.symmetric and f.contains_zero_node
    f = structure_flags(validate_nodes([F(1, 4), F(1, 3)]))
    assert f.forward and not f.symmetric
    f = structure_flags(validate_nodes([F(-1, 4), F(1, 3)]))
    assert not f.forward


def test_nodes_from_pi_examples():
    ns = nodes_from_pi(X**2 - X + F(2, 9))
    assert ns.exactness == "numerical"
    assert abs(float(ns.nodes[0]) - 1 / 3) < 1e-20 and abs(float(ns.nodes[1]) - 2 / 3) < 1e-20
    p = Poly.from_roots([F(1, 4), F(1, 2), F(3, 4)]) * (X**2 - X + F(3, 14))
    ns = nodes_from_pi(p)
    approx = sorted(float(c) for c in ns.nodes)
    assert abs(approx[1] - (0.5 - 7**0.5 / 14)) < 1e-14 and abs(approx[3] - (0.5 + 7**0.5 / 14)) < 1e-14
    for c in (approx[1], approx[3]):
        assert abs(14 * c * c - 14 * c + 3) < 1e-12
    with pytest.raises(NodeError):
        nodes_from_pi(X**2 + 1)
    with pytest.raises(NodeError):
        nodes_from_pi((X - 1) ** 2)


def test_pi_mode_recovers_algebraic_nodes():
    p = Poly.from_roots([F(1, 4), F(1, 2), F(3, 4)]) * (X**2 - X + F(3, 14))
    m = method_from_pi(p)
    assert m.nodes.exactness == "algebraic"
    assert m.flags.symmetric and m.flags.forward
    assert m.tableau is not None and not m.tableau.is_rational
    with pytest.raises(NodeError):
        method_from_pi("1,0,1")


@settings(max_examples=40)
@given(node_sets(max_size=5))
def test_nodes_roundtrip_through_pi(nodes):
    ns = nodes_from_pi(pi_from_nodes(validate_nodes(nodes)), digits=40)
    for a, b in zip(ns.nodes, nodes):
        assert abs(float(a) - float(b)) < 1e-12


@settings(max_examples=60)
@given(symmetric_node_sets())
def test_symmetric_identity(nodes):
    pi = pi_from_nodes(validate_nodes(nodes))
    s = pi.degree
    assert shift(pi, 1) == pi.compose_neg() * (-1) ** s
    assert structure_flags(validate_nodes(nodes)).symmetric


def test_uniform_families():
    assert uniform_closed_nodes(4).nodes == (0, F(1, 3), F(2, 3), 1)
    assert uniform_closed_nodes(1).nodes == (1,)
    assert uniform_open_nodes(2).nodes == (F(1, 3), F(2, 3))
