"""Collocation nodes, the node polynomial pi and Butcher tableaux."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

import mpmath
import numpy as np
import sympy

from .exactmath import (
    ContractError,
    Poly,
    isolate_real_roots,
    radical,
    refine_root,
    solve_linear,
    sturm_real_root_count,
    to_mpf,
)
from .quadfield import QuadraticNumber, quadratic_roots


class NodeError(ValueError):
    """Invalid collocation node input."""


_INT_RE = re.compile(r"^[+-]?\d+$")
_RAT_RE = re.compile(r"^[+-]?\d+/\d+$")
_DEC_RE = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$")


def parse_scalar(token: str) -> tuple[Fraction, bool]:
    """Parse one node token; returns (value, exact).

    ``"p/q"`` and ``"n"`` are exact; decimal literals are taken at their
    exact decimal value but marked numerical.
    """
    tok = token.strip()
    if _INT_RE.match(tok) or _RAT_RE.match(tok):
        try:
            return Fraction(tok), True
        except ZeroDivisionError:
            raise NodeError(f"zero denominator in {token!r}") from None
    if _DEC_RE.match(tok):
        return Fraction(tok), False
    raise NodeError(f"malformed node token {token!r}")


def parse_scalar_list(text: str) -> tuple[list[Fraction], bool]:
    tokens = [t for t in text.split(",")]
    if not text.strip() or any(not t.strip() for t in tokens):
        raise NodeError(f"malformed list {text!r}")
    parsed = [parse_scalar(t) for t in tokens]
    return [v for v, _ in parsed], all(e for _, e in parsed)


# ---------------------------------------------------------------------------
# node sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NodeSet:
    """Strictly increasing collocation nodes.

    ``exactness`` is ``"rational"`` (Fractions), ``"algebraic"`` (exact
    elements of some Q(sqrt(d))) or ``"numerical"`` (decimal input, or mpmath
    approximations of irrational nodes).
    """

    nodes: tuple
    exactness: str = "rational"
    original: tuple = ()

    @property
    def s(self) -> int:
        return len(self.nodes)

    @property
    def is_exact(self) -> bool:
        return self.exactness in ("rational", "algebraic")

    def approx(self) -> list:
        return [to_mpf(c) for c in self.nodes]

    def __str__(self) -> str:
        if self.exactness == "numerical" and not all(isinstance(c, Fraction) for c in self.nodes):
            return ", ".join(mpmath.nstr(c, 15) for c in self.nodes)
        return ", ".join(str(c) for c in self.nodes)


def validate_nodes(raw: Sequence, exactness: str | None = None) -> NodeSet:
    """Sort and check a node list.

    ``raw`` may hold Fractions/ints, QuadraticNumbers, mpmath numbers or
    string tokens following the CLI grammar.
    """
    if len(raw) == 0:
        raise NodeError("empty node list")
    values = []
    exact = True
    for r in raw:
        if isinstance(r, str):
            v, e = parse_scalar(r)
            exact &= e
        elif isinstance(r, bool):
            raise NodeError("boolean is not a node")
        elif isinstance(r, int):
            v = Fraction(r)
        elif isinstance(r, (Fraction, QuadraticNumber)):
            v = r
        elif isinstance(r, float):
            v = Fraction(r)
            exact = False
        else:
            v = mpmath.mpf(r)
            exact = False
        values.append(v)
    if exactness is None:
        if not exact:
            exactness = "numerical"
        elif any(isinstance(v, QuadraticNumber) for v in values):
            exactness = "algebraic"
        else:
            exactness = "rational"
    ordered = sorted(values)
    for a, b in zip(ordered, ordered[1:]):
        if a == b:
            raise NodeError(f"duplicate nodes: {a} and {b}")
    return NodeSet(tuple(ordered), exactness, tuple(values))


def uniform_closed_nodes(s: int) -> NodeSet:
    """s equispaced nodes including 0 and 1 (s = 1 gives the single node 1)."""
    if s < 1:
        raise NodeError("stage count must be positive")
    if s == 1:
        return validate_nodes([Fraction(1)])
    return validate_nodes([Fraction(i, s - 1) for i in range(s)])


def uniform_open_nodes(s: int) -> NodeSet:
    """s equispaced interior nodes i/(s+1)."""
    if s < 1:
        raise NodeError("stage count must be positive")
    return validate_nodes([Fraction(i, s + 1) for i in range(1, s + 1)])


# ---------------------------------------------------------------------------
# node polynomial
# ---------------------------------------------------------------------------

def pi_from_nodes(ns: NodeSet, allow_numerical: bool = False) -> Poly:
    """Monic prod(X - c_i).

    Numerical node sets are refused unless ``allow_numerical`` (decimal
    inputs are then taken at their exact decimal value).
    """
    if ns.exactness == "numerical" and not allow_numerical:
        raise ContractError("numerical nodes have no exact node polynomial")
    if not all(isinstance(c, (Fraction, QuadraticNumber)) for c in ns.nodes):
        raise ContractError("node polynomial needs exact node values")
    return Poly.from_roots(ns.nodes)


def gauss_pi(s: int) -> Poly:
    """Monic s-th derivative of (X(X-1))**s (shifted Legendre polynomial)."""
    if s < 1:
        raise ContractError("stage count must be positive")
    p = Poly([0, -1, 1]) ** s
    for _ in range(s):
        p = p.derivative()
    return p.monic()


def has_distinct_real_roots(p: Poly) -> bool:
    if p.degree < 1:
        return False
    if radical(p).degree != p.degree:
        return False
    return sturm_real_root_count(p) == p.degree


def exact_nodes_from_pi(p: Poly):
    """Exact roots of p in Q or a single Q(sqrt(d)), or None if not expressible."""
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    roots = []
    fields = set()
    for f, mult in factors:
        if mult != 1:
            return None
        cs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in f.all_coeffs()]
        if len(cs) == 2:
            roots.append(-cs[1] / cs[0])
        elif len(cs) == 3:
            qr = quadratic_roots(*cs)
            if qr is None:
                return None
            for r in qr:
                if isinstance(r, QuadraticNumber):
                    fields.add(r.d)
            roots.extend(qr)
        else:
            return None
    if len(fields) > 1:
        return None
    return tuple(sorted(roots))


def nodes_from_pi(p: Poly, digits: int = 30) -> NodeSet:
    """Numerical nodes (mpmath, ``digits`` correct digits) of a node polynomial."""
    if p.degree < 1:
        raise NodeError("node polynomial must have degree >= 1")
    if radical(p).degree != p.degree:
        raise NodeError("node polynomial has repeated roots")
    n_real = sturm_real_root_count(p)
    if n_real != p.degree:
        raise NodeError(f"node polynomial has {p.degree - n_real} non-real roots")
    width = Fraction(1, 10 ** (digits + 2))
    with mpmath.workdps(digits + 10):
        nodes = []
        for lo, hi in isolate_real_roots(p):
            lo, hi = refine_root(p, lo, hi, width)
            nodes.append(to_mpf((lo + hi) / 2))
    return NodeSet(tuple(nodes), "numerical", tuple(nodes))


# ---------------------------------------------------------------------------
# structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureFlags:
    forward: bool
    symmetric: bool
    contains_zero_node: bool


def structure_flags(ns: NodeSet, tol=None) -> StructureFlags:
    """Forward / symmetric / zero-node flags; exact unless mpmath nodes are given."""
    c = ns.nodes
    if all(isinstance(v, (Fraction, QuadraticNumber)) for v in c):
        sym = all(c[i] + c[-1 - i] == 1 for i in range(len(c)))
        zero = any(v == 0 for v in c)
        forward = all(v >= 0 for v in c)
    else:
        tol = tol if tol is not None else mpmath.mpf(10) ** (-20)
        sym = all(abs(c[i] + c[-1 - i] - 1) <= tol for i in range(len(c)))
        zero = any(abs(v) <= tol for v in c)
        forward = all(v >= -tol for v in c)
    return StructureFlags(forward=forward, symmetric=sym, contains_zero_node=zero)


def structure_flags_from_pi(p: Poly) -> StructureFlags:
    """The same flags decided exactly from the node polynomial."""
    s = p.degree
    zero = p(Fraction(0)) == 0
    negative_roots = sturm_real_root_count(radical(p), None, 0) - (1 if zero else 0)
    reflected = Poly([1, -1])
    # p(1 - X) = (-1)^s p(X) iff the roots are symmetric about 1/2
    pr = Poly([0])
    for c in reversed(p.coeffs):
        pr = pr * reflected + c
    sym = pr == p * (-1) ** s
    return StructureFlags(forward=negative_roots == 0, symmetric=sym, contains_zero_node=zero)


# ---------------------------------------------------------------------------
# Butcher tableau
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ButcherTableau:
    A: tuple
    b: tuple
    c: NodeSet
    exactness: str = "rational"

    @property
    def s(self) -> int:
        return len(self.b)

    @property
    def is_rational(self) -> bool:
        return all(isinstance(v, Fraction) for row in self.A for v in row) and all(
            isinstance(v, Fraction) for v in self.b
        )

    def to_mp(self):
        """(A, b, c) as mpmath matrices at the current working precision."""
        A = mpmath.matrix([[to_mpf(v) for v in row] for row in self.A])
        b = mpmath.matrix([to_mpf(v) for v in self.b])
        c = mpmath.matrix([to_mpf(v) for v in self.c.nodes])
        return A, b, c

    def to_float(self):
        A = np.array([[float(to_mpf(v)) for v in row] for row in self.A])
        b = np.array([float(to_mpf(v)) for v in self.b])
        return A, b


def lagrange_basis(nodes: Sequence) -> list[Poly]:
    out = []
    for i, ci in enumerate(nodes):
        ell = Poly([1])
        for j, cj in enumerate(nodes):
            if j != i:
                ell = ell * Poly([-cj, 1]) * (1 / (ci - cj))
        out.append(ell)
    return out


def _weights_by_integration(nodes: Sequence) -> list:
    out = []
    for ell in lagrange_basis(nodes):
        F = ell.antiderivative()
        out.append(F(Fraction(1)) - F(Fraction(0)))
    return out


def butcher_by_integration(ns: NodeSet) -> ButcherTableau:
    """A and b by integrating the Lagrange basis exactly (the defining formulas)."""
    ells = lagrange_basis(ns.nodes)
    antis = [ell.antiderivative() for ell in ells]
    A = tuple(tuple(anti(ci) - anti(Fraction(0)) for anti in antis) for ci in ns.nodes)
    b = tuple(anti(Fraction(1)) - anti(Fraction(0)) for anti in antis)
    return ButcherTableau(A, b, ns, ns.exactness)


def quadrature_residual_ok(tab: ButcherTableau) -> bool:
    """sum_j a_ij c_j^(p-1) = c_i^p / p and sum_i b_i c_i^(p-1) = 1/p for p = 1..s."""
    c = tab.c.nodes
    s = tab.s
    for p in range(1, s + 1):
        for i in range(s):
            lhs = sum((tab.A[i][j] * c[j] ** (p - 1) for j in range(s)), Fraction(0))
            if lhs != c[i] ** p * Fraction(1, p):
                return False
        if sum((tab.b[j] * c[j] ** (p - 1) for j in range(s)), Fraction(0)) != Fraction(1, p):
            return False
    return True


def butcher_from_nodes(ns: NodeSet) -> ButcherTableau:
    """Exact collocation tableau: A = W V^-1, b by Lagrange integration.

    Works over Q and over Q(sqrt(d)).  Decimal node sets are computed exactly
    at their decimal values and keep the numerical flag.
    """
    c = ns.nodes
    if not all(isinstance(v, (Fraction, QuadraticNumber)) for v in c):
        raise ContractError("exact tableau needs exact node values; use numeric_tableau")
    s = len(c)
    one = Fraction(1)
    V = [[ci**j if j else one for j in range(s)] for ci in c]
    W = [[ci ** (j + 1) * Fraction(1, j + 1) for j in range(s)] for ci in c]
    Vt = [list(col) for col in zip(*V)]
    Wt = [list(col) for col in zip(*W)]
    At = solve_linear(Vt, Wt)
    A = tuple(tuple(At[j][i] for j in range(s)) for i in range(s))
    b = tuple(_weights_by_integration(c))
    tab = ButcherTableau(A, b, ns, ns.exactness)
    if not quadrature_residual_ok(tab):
        raise ArithmeticError("collocation tableau failed the quadrature identity")
    return tab


def numeric_tableau(nodes: Sequence, dps: int = 50):
    """(A, b) as mpmath matrices from approximate nodes via the moment equations."""
    with mpmath.workdps(dps):
        c = [mpmath.mpf(v) if not isinstance(v, Fraction) else to_mpf(v) for v in nodes]
        s = len(c)
        Vt = mpmath.matrix([[c[i] ** j for i in range(s)] for j in range(s)])
        Wt = mpmath.matrix([[c[i] ** (j + 1) / (j + 1) for i in range(s)] for j in range(s)])
        At = mpmath.inverse(Vt) * Wt
        A = At.T
        moments = mpmath.matrix([mpmath.mpf(1) / (j + 1) for j in range(s)])
        b = mpmath.lu_solve(Vt, moments)
    return A, b


# ---------------------------------------------------------------------------
# methods
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CollocationMethod:
    """A collocation method given by its node polynomial (and nodes, when known).

    ``family`` records how it was specified: ``"nodes"``, ``"gauss"``,
    ``"uniform-closed"``, ``"uniform-open"`` or ``"pi"``.
    """

    pi: Poly
    nodes: NodeSet
    family: str = "nodes"
    label: str = ""

    @property
    def s(self) -> int:
        return self.pi.degree

    @property
    def exact(self) -> bool:
        """Whether the method itself is known exactly (no decimal input)."""
        return self.nodes.exactness != "numerical" or self.family in ("gauss", "pi")

    @cached_property
    def flags(self) -> StructureFlags:
        return structure_flags_from_pi(self.pi)

    @cached_property
    def tableau(self) -> ButcherTableau | None:
        """Exact tableau over Q or Q(sqrt(d)); None when the nodes are only approximate."""
        if all(isinstance(v, (Fraction, QuadraticNumber)) for v in self.nodes.nodes):
            return butcher_from_nodes(self.nodes)
        return None

    @property
    def rational_tableau(self) -> ButcherTableau | None:
        tab = self.tableau
        return tab if tab is not None and tab.is_rational else None

    def numeric_tableau(self, dps: int = 50):
        if self.tableau is not None:
            with mpmath.workdps(dps):
                A, b, _ = self.tableau.to_mp()
            return A, b
        approx = nodes_from_pi(self.pi, digits=dps).nodes
        return numeric_tableau(approx, dps)

    def describe(self) -> str:
        return self.label or f"{self.family}: {self.nodes}"


def method_from_nodes(raw, label: str = "") -> CollocationMethod:
    if isinstance(raw, str):
        values, exact = parse_scalar_list(raw)
        ns = validate_nodes(values, None if exact else "numerical")
    elif isinstance(raw, NodeSet):
        ns = raw
    else:
        ns = validate_nodes(list(raw))
    pi = pi_from_nodes(ns, allow_numerical=True)
    return CollocationMethod(pi, ns, "nodes", label or f"nodes ({ns})")


def _method_from_exact_pi(p: Poly, family: str, label: str) -> CollocationMethod:
    roots = exact_nodes_from_pi(p)
    if roots is not None:
        ns = validate_nodes(list(roots))
    else:
        ns = nodes_from_pi(p)
    return CollocationMethod(p, ns, family, label)


def method_gauss(s: int) -> CollocationMethod:
    return _method_from_exact_pi(gauss_pi(s), "gauss", f"Gauss s={s}")


def method_uniform_closed(s: int) -> CollocationMethod:
    ns = uniform_closed_nodes(s)
    return CollocationMethod(pi_from_nodes(ns), ns, "uniform-closed", f"uniform closed s={s}")


def method_uniform_open(s: int) -> CollocationMethod:
    ns = uniform_open_nodes(s)
    return CollocationMethod(pi_from_nodes(ns), ns, "uniform-open", f"uniform open s={s}")


def method_from_pi(coeffs, label: str = "") -> CollocationMethod:
    """Method from node-polynomial coefficients, lowest degree first.

    The polynomial is normalized to be monic and must have distinct real roots.
    """
    if isinstance(coeffs, str):
        values, exact = parse_scalar_list(coeffs)
        if not exact:
            raise NodeError("node polynomial coefficients must be exact rationals")
        p = Poly(values)
    elif isinstance(coeffs, Poly):
        p = coeffs
    else:
        p = Poly([Fraction(c) for c in coeffs])
    if p.degree < 1:
        raise NodeError("node polynomial must have degree >= 1")
    p = p.monic()
    if not has_distinct_real_roots(p):
        raise NodeError("node polynomial must have distinct real roots")
    return _method_from_exact_pi(p, "pi", label or f"pi = {p}")


def gauss_tau_closed_form(s: int) -> Poly:
    """s! * sum_k (s+k)!/(k!(s-k)!) (-X)^k, the unnormalized tau of the Gauss polynomial."""
    return Poly(
        [factorial(s) * Fraction(factorial(s + k), factorial(k) * factorial(s - k)) * (-1) ** k for k in range(s + 1)]
    )
