"""Acceptance criteria 1-9.

Each test prints a single PASS/FAIL line (visible with ``-s``); the same
lines are repeated in the terminal summary.  Randomized suites use a fixed
seed so failures are reproducible.
"""

import io
import json
import random
from contextlib import contextmanager
from fractions import Fraction as F
from time import perf_counter

import numpy as np

from collostab.cli import main
from collostab.collocation import (
    butcher_from_nodes,
    gauss_pi,
    method_from_nodes,
    method_from_pi,
    method_gauss,
    pi_from_nodes,
    validate_nodes,
)
from collostab.exactmath import Poly, RatFunc, shift, tau_transform
from collostab.quadfield import QuadraticNumber
from collostab.rootloc import (
    all_open_rhp,
    char_poly,
    closed_form_rh,
    half_plane_verdict,
    numeric_roots,
    real_part_signs,
    routh_all_open_lhp,
    routh_array,
)
from collostab.stability import (
    Criterion,
    SingularStageSystem,
    boundary_deficit,
    classify,
    dahlquist_validate,
    laplace_cross_check,
    scaled_weight_row,
    stability_function,
    weight_orthogonality,
)

from conftest import ACCEPTANCE_LINES

X = Poly.x()
LAPLACE_POINTS = (1, 2, 1 + 1j)
SQRT7_PI = "-9/448,27/112,-247/224,269/112,-5/2,1"


@contextmanager
def criterion(num, title, budget=None):
    info = {}
    t0 = perf_counter()
    try:
        yield info
        elapsed = perf_counter() - t0
        if budget is not None and elapsed > budget:
            raise AssertionError(f"runtime {elapsed:.2f}s exceeds {budget}s")
    except BaseException as exc:
        line = f"criterion {num} FAIL  {title}: {type(exc).__name__}: {exc}"
        ACCEPTANCE_LINES.append(line)
        print("\n" + line)
        raise
    detail = info.get("detail", "")
    line = f"criterion {num} PASS  {title} ({elapsed:.2f}s{', ' + detail if detail else ''})"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)


def random_nodes(rng, s, lo, hi, max_den=12):
    nodes = set()
    while len(nodes) < s:
        q = rng.randint(1, max_den)
        nodes.add(F(rng.randint(int(lo * q), int(hi * q)), q))
    return sorted(nodes)


def random_symmetric_nodes(rng, s, max_den=12):
    nodes = set()
    while len(nodes) < s - s % 2:
        q = rng.randint(1, max_den)
        v = F(rng.randint(-q, q // 2), q)
        if v != F(1, 2) and v not in nodes:
            nodes |= {v, 1 - v}
    if s % 2:
        nodes.add(F(1, 2))
    return sorted(nodes)


def tableau_json(*argv):
    out = io.StringIO()
    assert main(["tableau", *argv, "--format", "json"], out=out) == 0
    return json.loads(out.getvalue())


def strs(rows):
    return [[str(v) for v in row] for row in rows]


# ---------------------------------------------------------------------------

def test_criterion_1_tableaux():
    r3 = QuadraticNumber(0, F(1, 6), 3)
    q = F(1, 4)
    expected = {
        ("--gauss", "2"): ([[q, q - r3], [q + r3, q]], [F(1, 2), F(1, 2)]),
        ("--nodes", "1/3,2/3"): ([[F(1, 2), F(-1, 6)], [F(2, 3), 0]], [F(1, 2), F(1, 2)]),
        ("--nodes", "0,1"): ([[0, 0], [F(1, 2), F(1, 2)]], [F(1, 2), F(1, 2)]),
        ("--nodes", "1/4,1/3"): ([[F(5, 8), F(-3, 8)], [F(2, 3), F(-1, 3)]], [-2, 3]),
        ("--nodes", "0,1/3,2/3,1"): (
            [[0, 0, 0, 0], [F(1, 8), F(19, 72), F(-5, 72), F(1, 72)], [F(1, 9), F(4, 9), F(1, 9), 0],
             [F(1, 8), F(3, 8), F(3, 8), F(1, 8)]],
            [F(1, 8), F(3, 8), F(3, 8), F(1, 8)],
        ),
    }
    with criterion(1, "Butcher tableaux reproduced exactly", budget=1.0) as info:
        for argv, (A, b) in expected.items():
            doc = tableau_json(*argv)
            assert doc["exact"], argv
            assert doc["A"] == strs(A), argv
            assert doc["b"] == [str(v) for v in b], argv
        tab = method_gauss(2).tableau
        assert [list(r) for r in tab.A] == expected[("--gauss", "2")][0]
        info["detail"] = f"{len(expected)} tableaux"


def test_criterion_2_stability_functions():
    cases = [
        ([0, 1], -(X + 2), X - 2),
        ([F(1, 4), F(1, 3)], 6 * X**2 + 17 * X + 24, X**2 - 7 * X + 24),
        ([0, F(1, 3), F(2, 3), 1], -(X**3) - 11 * X**2 - 54 * X - 108, X**3 - 11 * X**2 + 54 * X - 108),
    ]
    with criterion(2, "reduced stability functions", budget=1.0):
        for nodes, n_exp, d_exp in cases:
            m = method_from_nodes(nodes)
            sf = stability_function(m.pi, m.s, m.rational_tableau)
            assert sf.N_red.degree == n_exp.degree and sf.D_red.degree == d_exp.degree
            # equal up to a common constant
            assert sf.N_red * d_exp == sf.D_red * n_exp, nodes
            assert (sf.N_red * d_exp.lc) == n_exp * sf.D_red.lc


def test_criterion_3_char_poly():
    with criterion(3, "characteristic polynomial of the 5-stage method"):
        chi = char_poly(pi_from_nodes(validate_nodes([F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4)])))
        assert chi * 34560 == Poly([-6, 71, -642, 4164, -17280, 34560])
        roots = numeric_roots(chi).as_complex()
        target = complex(-0.0008959474, 0.1432367668)
        for t in (target, target.conjugate()):
            assert min(abs(z - t) for z in roots) < 1e-8


def test_criterion_4_verdict_matrix():
    def m_nodes(ns):
        return method_from_nodes(ns)

    with criterion(4, "verdict matrix of the worked examples", budget=10.0) as info:
        r = classify(method_gauss(2))
        assert r["A_hat"] and r["I_hat"]
        r = classify(m_nodes("1/3,2/3"))
        assert r["A_hat"]
        for ff in (False, True):
            r = classify(m_nodes("0,1"), force_full=ff)
            assert r["A"] and r["AS"] and r["ASI"] and r["A_hat"]
        r = classify(m_nodes("1/4,1/3"))
        assert not r["A"] and not r["I"]
        r = classify(m_nodes("0,1/3,2/3,1"))
        assert r["A_hat"]
        r = classify(m_nodes("1/4,1/3,1/2,2/3,3/4"))
        assert r["I_hat"] and r["I"] and r["IS"] and r["ISI"] and not r["A"]

        m7 = method_from_pi(SQRT7_PI)
        r = classify(m7)
        assert r["A"] and not r["ASI"] and r["AS"]
        cert = r.verdicts["AS"].certificate
        assert cert.criterion == Criterion.RESOLVENT_NUMERICAL and not cert.exact
        residuals = weight_orthogonality(m7, "lhp")
        assert residuals and all(res < 1e-9 for _, res in residuals)
        info["detail"] = f"sqrt7 AS residual max {max(res for _, res in residuals):.1e}"


def test_criterion_5_gauss_theorem():
    with criterion(5, "Gauss methods s=1..6 A-hat and I-hat", budget=30.0):
        for s in range(1, 7):
            assert all_open_rhp(tau_transform(gauss_pi(s))).all_open_rhp
            m = method_gauss(s)
            fast = classify(m)
            assert fast["A_hat"] and fast["I_hat"]
            assert fast.verdicts["A_hat"].certificate.criterion == Criterion.GAUSS_THEOREM
            full = classify(m, force_full=True)
            assert full["A_hat"] and full["I_hat"], s
            assert full.verdicts["A"].certificate.criterion == Criterion.FULL_DECISION


def _spectrum_ok(nodes):
    # exact: tau(pi) with the zero roots removed has all roots in the open RHP
    q = tau_transform(pi_from_nodes(validate_nodes(nodes)))
    while q.degree > 0 and q.coeff(0) == 0:
        q = Poly(q.coeffs[1:])
    if q.degree > 0 and not half_plane_verdict(q).all_open_rhp:
        return False
    # independent floating check on the exact tableau
    tab = butcher_from_nodes(validate_nodes(nodes))
    A = np.array([[float(v) for v in row] for row in tab.A])
    ev = np.linalg.eigvals(A)
    return all(z.real > -1e-7 for z in ev)


def test_criterion_6_property_suites():
    rng = random.Random(20240606)
    with criterion(6, "property suites (500 forward, 200 symmetric, 200 R identity)") as info:
        bad_spec = bad_ia = 0
        for _ in range(500):
            nodes = random_nodes(rng, rng.randint(1, 4), 0, 2)
            if not _spectrum_ok(nodes):
                bad_spec += 1
            rep = classify(method_from_nodes(nodes))
            if rep["I"] and not rep["A"]:
                bad_ia += 1
        bad_sym = 0
        for _ in range(200):
            nodes = random_symmetric_nodes(rng, rng.randint(1, 6))
            pi = pi_from_nodes(validate_nodes(nodes))
            s = pi.degree
            sf = stability_function(pi)
            lhs = tau_transform(shift(pi, 1))
            rhs = tau_transform(pi).compose_neg() * (-1) ** s
            if not boundary_deficit(sf).E.is_zero() or lhs != rhs:
                bad_sym += 1
        bad_r = 0
        for _ in range(200):
            nodes = random_nodes(rng, rng.randint(1, 5), -1, 2)
            ns = validate_nodes(nodes)
            tab = butcher_from_nodes(ns)
            sf = stability_function(pi_from_nodes(ns))
            direct = RatFunc.make(Poly([1]), Poly([1]))
            for entry in scaled_weight_row(tab):
                direct = direct + entry
            if direct != RatFunc.make(sf.N, sf.D):
                bad_r += 1
        info["detail"] = f"violations: spectrum {bad_spec}, I-not-A {bad_ia}, symmetry {bad_sym}, R identity {bad_r}"
        assert bad_spec == bad_ia == bad_sym == bad_r == 0, info["detail"]


def test_criterion_7_dahlquist():
    rng = random.Random(7)
    with criterion(7, "Dahlquist oracle, 50 pairs x 50 steps") as info:
        worst = 0.0
        done = 0
        while done < 50:
            m = method_from_nodes(random_nodes(rng, rng.randint(1, 5), 0, 1, max_den=8))
            ah = complex(rng.uniform(-5, 2), rng.uniform(-5, 5))
            try:
                dev = dahlquist_validate(m.rational_tableau, ah, 1.0, 50)
            except SingularStageSystem:
                continue
            worst = max(worst, dev)
            done += 1
        info["detail"] = f"max deviation {worst:.1e}"
        assert worst < 1e-10


def test_criterion_8_laplace():
    rng = random.Random(8)
    with criterion(8, "Laplace form of R, 20 polynomials x 3 points") as info:
        worst = 0.0
        done = poles = 0
        while done < 20:
            pi = pi_from_nodes(validate_nodes(random_nodes(rng, rng.randint(1, 5), -1, 2)))
            sf = stability_function(pi)
            # both forms are infinite at a pole of R; draw another polynomial
            if any(sf.D_red.eval_complex(lam) == 0 for lam in LAPLACE_POINTS):
                poles += 1
                continue
            for lam in LAPLACE_POINTS:
                worst = max(worst, laplace_cross_check(pi, lam))
            done += 1
        info["detail"] = f"max relative deviation {worst:.1e}, {poles} redrawn for a pole"
        assert worst < 1e-12


def test_criterion_9_routh_hurwitz_parity():
    rng = random.Random(9)
    with criterion(9, "Routh-Hurwitz parity on 1000 polynomials") as info:
        checked = skipped = bad = stable = 0
        while checked < 1000:
            deg = rng.choice((3, 4))
            coeffs = []
            for _ in range(deg):
                q = rng.choice((1, 1, 2, 3, 4))
                coeffs.append(F(rng.randint(-5 * q, 5 * q), q))
            p = Poly(coeffs + [1])
            if routh_array(p).degenerate:
                skipped += 1
                continue
            checked += 1
            routh = routh_all_open_lhp(p).all_open_lhp
            closed = set(closed_form_rh(p).values())
            numeric = all(sg < 0 for sg in real_part_signs(numeric_roots(p)))
            if closed != {routh} or routh != numeric:
                bad += 1
            stable += routh
        info["detail"] = f"{bad} disagreements, {stable} Hurwitz, {skipped} degenerate skipped"
        assert bad == 0
