"""Golden fixtures: the worked examples, checked end to end.

Each fixture lists what is known about one method (tableau, stability
function, characteristic polynomial, eigenvalues, verdicts).
``run_fixture_suite`` compares the computed values against them and reports
every mismatch; pass a modified fixture list to check that a perturbation is
caught.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F
from typing import Callable

from .collocation import (
    CollocationMethod,
    method_from_nodes,
    method_from_pi,
    method_gauss,
    method_uniform_closed,
)
from .exactmath import Poly, RatFunc
from .quadfield import QuadraticNumber
from .rootloc import axis_gcd, numeric_roots
from .stability import NOTIONS, classify, resolvent_entries, scaled_weight_row

ALL_TRUE = {k: True for k in NOTIONS}


def _q3(a, b):
    return QuadraticNumber(a, b, 3)


def _q7(a, b):
    return QuadraticNumber(a, b, 7)


_KM2 = _q7(56, -14)  # (7 - sqrt 7)^2
_KP2 = _q7(56, 14)  # (7 + sqrt 7)^2


def _lam_poly(*coeffs) -> Poly:
    return Poly([F(c) for c in coeffs])


@dataclass(frozen=True)
class Fixture:
    name: str
    build: Callable[[], CollocationMethod]
    tableau: tuple | None = None  # (A rows, b)
    stability: tuple | None = None  # (N, D) ascending in lambda, up to a common constant
    char_poly: tuple | None = None  # (scale, coefficients ascending): scale * chi_A
    eigenvalues: tuple = ()  # expected approximations (complex)
    eig_tol: float = 1e-8
    resolvent: tuple | None = None  # rows of (num, den) pairs
    weight_row: tuple | None = None
    axis_gcd: tuple | None = None  # ascending coefficients of the monic axis gcd of tau(pi)
    verdicts: dict = field(default_factory=dict)
    criteria: dict = field(default_factory=dict)  # notion -> (criterion, exact)


@dataclass
class FixtureResult:
    name: str
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def _same_ratio(n1: Poly, d1: Poly, n2: Poly, d2: Poly) -> bool:
    return n1 * d2 == n2 * d1


def _check(fx: Fixture) -> list[str]:
    bad: list[str] = []
    method = fx.build()
    if fx.tableau is not None:
        tab = method.tableau
        A, b = fx.tableau
        if tab is None:
            bad.append("no exact tableau")
        else:
            if len(A) != tab.s or any(
                not all(x == y for x, y in zip(row, trow)) for row, trow in zip(A, tab.A)
            ):
                bad.append("tableau A differs")
            if len(b) != tab.s or not all(x == y for x, y in zip(b, tab.b)):
                bad.append("tableau b differs")
    report = classify(method)
    sf = report.stability
    if fx.stability is not None:
        n, d = (Poly([F(c) for c in p]) for p in fx.stability)
        if not _same_ratio(sf.N_red, sf.D_red, n, d) or sf.N_red.degree != n.degree or sf.D_red.degree != d.degree:
            bad.append(f"stability function {sf.to_str()} differs")
    if fx.char_poly is not None:
        scale, coeffs = fx.char_poly
        if report.chi * scale != Poly([F(c) for c in coeffs]):
            bad.append(f"{scale}*chi_A = {(report.chi * scale).to_str()} differs")
    if fx.eigenvalues:
        roots = [complex(z) for z in numeric_roots(report.chi).roots]
        for e in fx.eigenvalues:
            if min(abs(z - e) for z in roots) > fx.eig_tol:
                bad.append(f"eigenvalue {e} not found")
    if fx.resolvent is not None:
        got = resolvent_entries(method.rational_tableau)
        for i, row in enumerate(fx.resolvent):
            for j, (num, den) in enumerate(row):
                f: RatFunc = got[i][j]
                if not _same_ratio(f.num, f.den, num, den):
                    bad.append(f"resolvent entry ({i},{j}) = {f.to_str('λ')} differs")
    if fx.weight_row is not None:
        got = scaled_weight_row(method.rational_tableau)
        for j, (num, den) in enumerate(fx.weight_row):
            if not _same_ratio(got[j].num, got[j].den, num, den):
                bad.append(f"weight row entry {j} = {got[j].to_str('λ')} differs")
    if fx.axis_gcd is not None:
        g = axis_gcd(report.tau)
        if g != Poly([F(c) for c in fx.axis_gcd]):
            bad.append(f"axis gcd {g.to_str('x')} differs")
    for k, want in fx.verdicts.items():
        if report[k] != want:
            bad.append(f"{k}: expected {want}, got {report[k]}")
    for k, (crit, exact) in fx.criteria.items():
        c = report.verdicts[k].certificate
        if c.criterion.value != crit or c.exact != exact:
            bad.append(f"{k} certificate: expected {crit} (exact={exact}), got {c.criterion.value} (exact={c.exact})")
    return bad


def run_fixture_suite(fixtures=None) -> list[FixtureResult]:
    results = []
    for fx in FIXTURES if fixtures is None else fixtures:
        try:
            failures = _check(fx)
        except Exception as exc:  # a crash is a failed fixture, reported with its cause
            failures = [f"error: {type(exc).__name__}: {exc}"]
        results.append(FixtureResult(fx.name, failures))
    return results


_SQRT7_PI = (
    Poly.from_roots([F(1, 4), F(1, 2), F(3, 4)]) * Poly([F(3, 14), F(-1), F(1)])
)

FIXTURES: tuple[Fixture, ...] = (
    Fixture(
        name="gauss-2",
        build=lambda: method_gauss(2),
        tableau=(
            ((F(1, 4), _q3(F(1, 4), F(-1, 6))), (_q3(F(1, 4), F(1, 6)), F(1, 4))),
            (F(1, 2), F(1, 2)),
        ),
        stability=((12, 6, 1), (12, -6, 1)),
        verdicts=ALL_TRUE,
        criteria={k: ("gauss-theorem", True) for k in NOTIONS},
    ),
    Fixture(
        name="equispaced-2 (1/3, 2/3)",
        build=lambda: method_from_nodes("1/3,2/3"),
        tableau=(((F(1, 2), F(-1, 6)), (F(2, 3), F(0))), (F(1, 2), F(1, 2))),
        eigenvalues=(complex(0.25, 7 ** 0.5 / 12), complex(0.25, -(7 ** 0.5) / 12)),
        verdicts=ALL_TRUE,
        criteria={"A_hat": ("symmetric-fastpath-A", True)},
    ),
    Fixture(
        name="lobatto-2 (0, 1)",
        build=lambda: method_from_nodes("0,1"),
        tableau=(((F(0), F(0)), (F(1, 2), F(1, 2))), (F(1, 2), F(1, 2))),
        stability=((-2, -1), (-2, 1)),
        resolvent=(
            ((_lam_poly(1), _lam_poly(1)), (_lam_poly(0), _lam_poly(1))),
            ((_lam_poly(0, 1), _lam_poly(2, -1)), (_lam_poly(2), _lam_poly(2, -1))),
        ),
        weight_row=((_lam_poly(0, 1), _lam_poly(2, -1)), (_lam_poly(0, 1), _lam_poly(2, -1))),
        verdicts=ALL_TRUE,
    ),
    Fixture(
        name="not-A-not-I (1/4, 1/3)",
        build=lambda: method_from_nodes("1/4,1/3"),
        tableau=(((F(5, 8), F(-3, 8)), (F(2, 3), F(-1, 3))), (F(-2), F(3))),
        stability=((24, 17, 6), (24, -7, 1)),
        verdicts={"A": False, "I": False, "A_hat": False, "I_hat": False},
    ),
    Fixture(
        name="uniform-4 (0, 1/3, 2/3, 1)",
        build=lambda: method_uniform_closed(4),
        tableau=(
            (
                (F(0), F(0), F(0), F(0)),
                (F(1, 8), F(19, 72), F(-5, 72), F(1, 72)),
                (F(1, 9), F(4, 9), F(1, 9), F(0)),
                (F(1, 8), F(3, 8), F(3, 8), F(1, 8)),
            ),
            (F(1, 8), F(3, 8), F(3, 8), F(1, 8)),
        ),
        stability=((-108, -54, -11, -1), (-108, 54, -11, 1)),
        verdicts=ALL_TRUE,
    ),
    Fixture(
        name="sqrt7 5-stage (pi input)",
        build=lambda: method_from_pi(_SQRT7_PI),
        tableau=(
            (
                (F(3259, 1440), _q7(F(-1421, 720), F(-21, 64)), F(163, 120), _q7(F(-1421, 720), F(21, 64)), F(829, 1440)),
                (
                    _KM2 * _q7(1120, 281) / 15435,
                    _q7(F(-343, 180), F(-107, 315)),
                    _KM2 * _q7(455, 106) / 10290,
                    -_KM2 * _q7(770, 97) / 17640,
                    _KM2 * _q7(280, 71) / 15435,
                ),
                (F(203, 90), _q7(F(-343, 180), F(-7, 24)), F(22, 15), _q7(F(-343, 180), F(7, 24)), F(53, 90)),
                (
                    -_KP2 * _q7(-1120, 281) / 15435,
                    _KP2 * _q7(-770, 97) / 17640,
                    -_KP2 * _q7(-455, 106) / 10290,
                    _q7(F(-343, 180), F(107, 315)),
                    -_KP2 * _q7(-280, 71) / 15435,
                ),
                (F(363, 160), _q7(F(-147, 80), F(-21, 64)), F(63, 40), _q7(F(-147, 80), F(21, 64)), F(93, 160)),
            ),
            (F(128, 45), F(-343, 90), F(44, 15), F(-343, 90), F(128, 45)),
        ),
        axis_gcd=(F(-63, 3136), 0, 1),
        verdicts={"A": True, "AS": True, "ASI": False, "ISI": False, "A_hat": False},
        criteria={"AS": ("resolvent-numerical", False), "A": ("full-decision", True)},
    ),
    Fixture(
        name="I-not-A 5-stage (1/4, 1/3, 1/2, 2/3, 3/4)",
        build=lambda: method_from_nodes("1/4,1/3,1/2,2/3,3/4"),
        tableau=(
            (
                (F(4453, 2400), F(-4347, 1600), F(221, 120), F(-1917, 1600), F(1123, 2400)),
                (F(3824, 2025), F(-133, 50), F(742, 405), F(-179, 150), F(944, 2025)),
                (F(281, 150), F(-513, 200), F(29, 15), F(-243, 200), F(71, 150)),
                (F(3808, 2025), F(-194, 75), F(824, 405), F(-28, 25), F(928, 2025)),
                (F(1503, 800), F(-4131, 1600), F(81, 40), F(-1701, 1600), F(393, 800)),
            ),
            (F(176, 75), F(-189, 50), F(58, 15), F(-189, 50), F(176, 75)),
        ),
        char_poly=(34560, (-6, 71, -642, 4164, -17280, 34560)),
        eigenvalues=(complex(-0.0008959473813, 0.1432367668), complex(-0.0008959473813, -0.1432367668)),
        verdicts={"I": True, "IS": True, "ISI": True, "I_hat": True, "A": False, "A_hat": False},
    ),
)


def format_results(results: list[FixtureResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.ok else 'FAIL'}  {r.name}")
        lines.extend(f"      {msg}" for msg in r.failures)
    n_ok = sum(r.ok for r in results)
    lines.append(f"{n_ok}/{len(results)} fixtures passed")
    return "\n".join(lines)

