"""Stability function, resolvent and the eight stability verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial, gcd, lcm

import mpmath
import numpy as np

from .collocation import ButcherTableau, CollocationMethod
from .exactmath import (
    ContractError,
    Poly,
    PolyMatrix,
    RatFunc,
    gcd_poly,
    isolate_real_roots,
    matrix_rank,
    polymatrix_det_adj,
    reversal,
    shift,
    solve_linear,
    square_free_part,
    sturm_real_root_count,
    tau_transform,
    to_mpf,
)
from .rootloc import (
    HalfPlaneVerdict,
    SpectrumApprox,
    axis_parts,
    char_poly,
    half_plane_verdict,
    imaginary_axis_roots,
    numeric_roots,
)

NOTIONS = ("A", "I", "AS", "ASI", "IS", "ISI", "A_hat", "I_hat")

# numerical pipeline only; certified paths use no tolerance
EIG_REAL_TOL = 1e-9
ORTHO_TOL = 1e-9
NUMERIC_DPS = 50


class InternalConsistencyError(RuntimeError):
    """A proven implication failed: this is a bug, not a property of the input."""


class Criterion(str, Enum):
    GAUSS_THEOREM = "gauss-theorem"
    SYMMETRIC_FASTPATH_A = "symmetric-fastpath-A"
    SYMMETRIC_FASTPATH_I = "symmetric-fastpath-I"
    LEMMA_A_HAT = "lemma-A-hat"
    LEMMA_I_HAT = "lemma-I-hat"
    FULL_DECISION = "full-decision"
    RESOLVENT_EXACT = "resolvent-exact"
    RESOLVENT_NUMERICAL = "resolvent-numerical"
    B_IN_RANGE_AT = "b-in-range-At"
    SMALL_S_THEOREM = "small-s-theorem"


@dataclass(frozen=True)
class Certificate:
    criterion: Criterion
    exact: bool
    details: tuple = ()


@dataclass(frozen=True)
class Verdict:
    holds: bool
    certificate: Certificate

    def __bool__(self) -> bool:
        return self.holds


def _cert(criterion: Criterion, exact: bool, *details: str) -> Certificate:
    return Certificate(criterion, exact, tuple(details))


# ---------------------------------------------------------------------------
# stability function
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilityFunction:
    """R = N/D as polynomials in lambda, with the gcd-reduced pair."""

    N: Poly
    D: Poly
    g: Poly
    N_red: Poly
    D_red: Poly

    def __call__(self, lam):
        if isinstance(lam, (int, Fraction)):
            return self.N_red(Fraction(lam)) / self.D_red(Fraction(lam))
        return self.N_red.eval_complex(complex(lam)) / self.D_red.eval_complex(complex(lam))

    def eval_mp(self, lam):
        return self.N_red.eval_mp(lam) / self.D_red.eval_mp(lam)

    def normalized(self) -> tuple[Poly, Poly]:
        """Reduced pair with coprime integer coefficients and lc(D) > 0."""
        coeffs = list(self.N_red.coeffs) + list(self.D_red.coeffs)
        den = lcm(*(c.denominator for c in coeffs))
        num = gcd(*(c.numerator for c in coeffs if c))
        k = Fraction(den, num) * (1 if self.D_red.lc > 0 else -1)
        return self.N_red * k, self.D_red * k

    def to_str(self, var: str = "λ") -> str:
        n, d = self.normalized()
        if d.degree == 0:
            return (n / d.lc).to_str(var)
        return f"({n.to_str(var)})/({d.to_str(var)})"


def stability_function(pi: Poly, s: int | None = None, tableau: ButcherTableau | None = None) -> StabilityFunction:
    """R(lambda) = tau(pi(X+1))(1/lambda) / tau(pi)(1/lambda) as a polynomial ratio.

    With an exact tableau the result is checked against 1 + lambda b^T (I - lambda A)^-1 1
    at a few rational points.
    """
    s = pi.degree if s is None else s
    if pi.degree != s or pi.lc != 1:
        raise ContractError("node polynomial must be monic of degree s")
    N = reversal(tau_transform(shift(pi, 1)), s)
    D = reversal(tau_transform(pi), s)
    g = gcd_poly(N, D)
    sf = StabilityFunction(N, D, g, N.exact_div(g), D.exact_div(g))
    if tableau is not None:
        for lam in (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 3)):
            try:
                direct = stability_from_tableau(tableau, lam)
            except ZeroDivisionError:
                continue
            if sf.D_red(lam) == 0 or direct != sf(lam):
                raise InternalConsistencyError(f"stability function mismatch at lambda = {lam}")
    return sf


def stability_from_tableau(tab: ButcherTableau, lam) -> object:
    """1 + lam * b^T (I - lam A)^-1 1, exactly."""
    s = tab.s
    M = [[(1 if i == j else 0) - lam * tab.A[i][j] for j in range(s)] for i in range(s)]
    k = solve_linear(M, [[Fraction(1)] for _ in range(s)])
    return 1 + lam * sum((tab.b[i] * k[i][0] for i in range(s)), Fraction(0))


@dataclass(frozen=True)
class BoundaryDeficit:
    """E(x) = |D_red(ix)|^2 - |N_red(ix)|^2, an even real polynomial in x."""

    E: Poly


def boundary_deficit(sf: StabilityFunction) -> BoundaryDeficit:
    dre, dim = axis_parts(sf.D_red)
    nre, nim = axis_parts(sf.N_red)
    return BoundaryDeficit(dre * dre + dim * dim - nre * nre - nim * nim)


def _negative_witness(E: Poly, odd: Poly):
    """A rational x with E(x) < 0, if one is found between the real roots of odd."""
    roots = isolate_real_roots(odd)
    probes = [Fraction(0)]
    if roots:
        probes.append(roots[0][0] - 1)
        probes.append(roots[-1][1] + 1)
        for (_, hi), (lo, _) in zip(roots, roots[1:]):
            probes.append((hi + lo) / 2)
    else:
        probes.append(Fraction(10**6))
    for x in probes:
        if E(x) < 0:
            return x
    return None


def _axis_bound_verdict(sf: StabilityFunction) -> tuple[bool, list[str]]:
    """|R(ix)| <= 1 for every real x, decided exactly."""
    details = []
    poles = imaginary_axis_roots(sf.D_red)
    if poles:
        details.append(f"reduced R has {len(poles)} pole(s) on the imaginary axis")
        return False, details
    E = boundary_deficit(sf).E
    if E.is_zero():
        details.append("E(x) = |D(ix)|^2 - |N(ix)|^2 vanishes identically: |R| = 1 on the axis")
        return True, details
    odd, _ = square_free_part(E)
    n_real = sturm_real_root_count(odd)
    if n_real == 0 and E.lc > 0:
        details.append(f"E(x) = {E.to_str('x')} >= 0: odd-multiplicity part has no real root, positive leading coefficient")
        return True, details
    witness = _negative_witness(E, odd)
    msg = f"E(x) = {E.to_str('x')} takes negative values"
    if witness is not None:
        msg += f" (E({witness}) = {E(witness)})"
    details.append(msg)
    return False, details


def decide_I(sf: StabilityFunction, symmetric: bool = False, use_fastpath: bool = True, exact: bool = True) -> Verdict:
    """I-stability: |R(ix)| <= 1 on the whole imaginary axis."""
    if symmetric and use_fastpath:
        return Verdict(True, _cert(Criterion.SYMMETRIC_FASTPATH_I, exact, "nodes symmetric about 1/2: |R(ix)| = 1"))
    ok, details = _axis_bound_verdict(sf)
    return Verdict(ok, _cert(Criterion.FULL_DECISION, exact, *details))


def _routh_notes(hp) -> list[str]:
    # degenerate Routh arrays are completed by the axis-gcd test, not by the array itself
    return [f"{n}; treated as not Hurwitz, axis roots from the gcd of the real and imaginary parts"
            for n in hp.notes]


def decide_A(sf: StabilityFunction, exact: bool = True) -> Verdict:
    """A-stability: no pole of the reduced R in the closed left half-plane and |R(ix)| <= 1."""
    details = []
    if sf.D_red(Fraction(0)) == 0:
        raise InternalConsistencyError("reduced denominator vanishes at 0")
    if sf.D_red.degree > 0:
        hp = half_plane_verdict(sf.D_red)
        poles_ok = hp.all_open_rhp
        details.append(
            "poles of reduced R all in the open right half-plane"
            if poles_ok
            else "reduced R has a pole with non-positive real part"
        )
        details.extend(_routh_notes(hp))
    else:
        poles_ok = True
        details.append("reduced R is a polynomial")
    if sf.g.degree > 0:
        details.append(f"cancelled common factor {sf.g.to_str('λ')}")
    if not poles_ok:
        return Verdict(False, _cert(Criterion.FULL_DECISION, exact, *details))
    ok, more = _axis_bound_verdict(sf)
    return Verdict(ok, _cert(Criterion.FULL_DECISION, exact, *(details + more)))


# ---------------------------------------------------------------------------
# resolvent
# ---------------------------------------------------------------------------

def _resolvent_matrix(tab: ButcherTableau) -> PolyMatrix:
    s = tab.s
    return PolyMatrix.from_rows(
        [[Poly([1 if i == j else 0, -tab.A[i][j]]) for j in range(s)] for i in range(s)]
    )


def resolvent_entries(tab: ButcherTableau) -> list[list[RatFunc]]:
    """Reduced entries of (I - lambda A)^-1 = adj / det."""
    if not tab.is_rational:
        raise ContractError("exact resolvent needs a rational tableau")
    det, adj = polymatrix_det_adj(_resolvent_matrix(tab))
    return [[RatFunc.make(adj[i, j], det) for j in range(tab.s)] for i in range(tab.s)]


def scaled_weight_row(tab: ButcherTableau) -> list[RatFunc]:
    """Reduced entries of lambda b^T (I - lambda A)^-1."""
    if not tab.is_rational:
        raise ContractError("exact resolvent needs a rational tableau")
    det, adj = polymatrix_det_adj(_resolvent_matrix(tab))
    lam = Poly([0, 1])
    out = []
    for j in range(tab.s):
        num = Poly()
        for i in range(tab.s):
            num = num + adj[i, j] * tab.b[i]
        out.append(RatFunc.make(num * lam, det))
    return out


def _index_list(idx: list[int], total: int) -> str:
    shown = ", ".join(map(str, idx[:6])) + (", ..." if len(idx) > 6 else "")
    return f"{len(idx)} of {total} entries ({shown})"


def _bounded(funcs, region: str) -> tuple[bool, list[str]]:
    """Every rational function bounded on the closed left half-plane or the axis."""
    cache: dict[Poly, bool] = {}
    growing, poles = [], []
    for k, f in enumerate(funcs):
        if not f.is_proper():
            growing.append(k)
            continue
        if f.den.degree == 0:
            continue
        if f.den not in cache:
            if region == "lhp":
                cache[f.den] = half_plane_verdict(f.den).all_open_rhp
            else:
                cache[f.den] = not imaginary_axis_roots(f.den)
        if not cache[f.den]:
            poles.append(k)
    where = "closed left half-plane" if region == "lhp" else "imaginary axis"
    bad = []
    if growing:
        bad.append(f"{_index_list(growing, len(funcs))} grow at infinity")
    if poles:
        bad.append(f"{_index_list(poles, len(funcs))} have a pole on the {where}")
    return not bad, bad


def _tau_without_zero(pi: Poly) -> Poly:
    t = tau_transform(pi)
    while t.coeff(0) == 0 and t.degree > 0:
        t = Poly(t.coeffs[1:])
    return t


def _spectral_decision(pi: Poly, region: str, exact: bool) -> Verdict:
    """Resolvent boundedness from the spectrum of A alone.

    The poles of (I - lambda A)^-1 are the reciprocals of the nonzero
    eigenvalues, and the zero eigenvalue (if any) is simple because the nodes
    are distinct, so the resolvent stays bounded at infinity.
    """
    q = _tau_without_zero(pi)
    extra = []
    if region == "lhp":
        hp = half_plane_verdict(q) if q.degree > 0 else None
        ok = hp is None or hp.all_open_rhp
        msg = "no eigenvalue of A in the closed left half-plane apart from 0" if ok else \
            "A has a nonzero eigenvalue with non-positive real part"
        extra = _routh_notes(hp) if hp is not None else []
    else:
        ok = not imaginary_axis_roots(q)
        msg = "no nonzero eigenvalue of A on the imaginary axis" if ok else \
            "A has a nonzero eigenvalue on the imaginary axis"
    return Verdict(ok, _cert(Criterion.RESOLVENT_EXACT, exact, msg, *extra,
                             "decided on char poly tau(pi)/s! (no rational tableau)"))


def _source(source) -> tuple[ButcherTableau | None, CollocationMethod | None]:
    if isinstance(source, CollocationMethod):
        return source.rational_tableau, source
    if isinstance(source, ButcherTableau):
        return (source if source.is_rational else None), None
    raise TypeError("expected a CollocationMethod or ButcherTableau")


def _decide_SI(source, region: str, exact: bool = True) -> Verdict:
    tab, method = _source(source)
    if tab is not None:
        ok, bad = _bounded([f for row in resolvent_entries(tab) for f in row], region)
        details = bad or ["every reduced resolvent entry is proper with no pole in the region"]
        return Verdict(ok, _cert(Criterion.RESOLVENT_EXACT, exact, *details))
    if method is None:
        raise ContractError("irrational tableau without its node polynomial")
    return _spectral_decision(method.pi, region, exact)


def decide_ASI(source, exact: bool = True) -> Verdict:
    """(I - lambda A)^-1 bounded on the closed left half-plane."""
    return _decide_SI(source, "lhp", exact)


def decide_ISI(source, exact: bool = True) -> Verdict:
    """(I - lambda A)^-1 bounded on the imaginary axis."""
    return _decide_SI(source, "axis", exact)


def b_in_range_of_At(tab: ButcherTableau) -> bool:
    At = [list(col) for col in zip(*tab.A)]
    aug = [row + [tab.b[i]] for i, row in enumerate(At)]
    return matrix_rank(At) == matrix_rank(aug)


def weight_orthogonality(method: CollocationMethod, region: str, dps: int = NUMERIC_DPS,
                         eig_tol: float = EIG_REAL_TOL) -> list[tuple[complex, float]]:
    """(eigenvalue, |b^T v| / (|b||v|)) for eigenvalues of A in the region.

    Eigenvalues with real part within ``eig_tol`` of zero count as on the
    axis; the closed left half-plane region includes 0.  For a repeated
    eigenvalue the residual is taken over its whole generalized eigenspace.
    """
    with mpmath.workdps(dps):
        A, b = method.numeric_tableau(dps)
        s = A.rows
        evals = mpmath.eig(A, left=False, right=False)
        if isinstance(evals, tuple):  # mpmath returns (E, ER, EL) for 1x1 input regardless
            evals = evals[0]
        groups: list[list] = []
        for mu in evals:
            for g in groups:
                if abs(g[0] - mu) < mpmath.mpf(10) ** (-dps // 3):
                    g.append(mu)
                    break
            else:
                groups.append([mu])
        out = []
        bnorm = mpmath.norm(b)
        for g in groups:
            mu = sum(g) / len(g)
            re = mpmath.re(mu)
            inside = re <= eig_tol if region == "lhp" else abs(re) <= eig_tol
            if not inside:
                continue
            M = A - mu * mpmath.eye(s)
            Mp = M ** len(g)
            U, S, V = mpmath.svd_c(Mp)
            scale = max(max(S), mpmath.mpf(1))
            worst = mpmath.mpf(0)
            for k in range(s):
                if S[k] <= scale * mpmath.mpf(10) ** (-dps // 2):
                    v = [mpmath.conj(V[k, j]) for j in range(s)]
                    r = abs(sum(b[j] * v[j] for j in range(s))) / (bnorm * mpmath.norm(mpmath.matrix(v)))
                    worst = max(worst, r)
            out.append((complex(mu), float(worst)))
    return out


def _decide_S_numerical(method: CollocationMethod, region: str, tol: float = ORTHO_TOL) -> Verdict:
    pairs = weight_orthogonality(method, region)
    ok = all(r < tol for _, r in pairs)
    details = [f"eigenvalue {mu.real:+.10g}{mu.imag:+.10g}i: orthogonality residual {r:.3e}" for mu, r in pairs]
    if not pairs:
        details.append("no eigenvalue of A in the region")
    details.append(f"tolerance {tol:g} on residuals, {EIG_REAL_TOL:g} on real parts")
    return Verdict(ok, _cert(Criterion.RESOLVENT_NUMERICAL, False, *details))


def _decide_S(source, region: str, si: Verdict | None, use_fastpath: bool, exact: bool) -> Verdict:
    tab, method = _source(source)
    if use_fastpath and si is not None and si.holds:
        if tab is not None and b_in_range_of_At(tab):
            return Verdict(True, _cert(Criterion.B_IN_RANGE_AT, exact, "b in range of A^T (exact rank test)"))
        if method is not None and tau_transform(method.pi).coeff(0) != 0:
            return Verdict(True, _cert(Criterion.B_IN_RANGE_AT, exact, "A invertible (tau(pi)(0) != 0), so b in range of A^T"))
    if tab is not None:
        ok, bad = _bounded(scaled_weight_row(tab), region)
        details = bad or ["every reduced entry of lambda b^T (I - lambda A)^-1 is proper with no pole in the region"]
        return Verdict(ok, _cert(Criterion.RESOLVENT_EXACT, exact, *details))
    if method is None:
        raise ContractError("irrational tableau without its node polynomial")
    return _decide_S_numerical(method, region)


def decide_AS(source, asi: Verdict | None = None, use_fastpath: bool = True, exact: bool = True) -> Verdict:
    """lambda b^T (I - lambda A)^-1 bounded on the closed left half-plane."""
    return _decide_S(source, "lhp", asi, use_fastpath, exact)


def decide_IS(source, isi: Verdict | None = None, use_fastpath: bool = True, exact: bool = True) -> Verdict:
    """lambda b^T (I - lambda A)^-1 bounded on the imaginary axis."""
    return _decide_S(source, "axis", isi, use_fastpath, exact)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilityReport:
    method: CollocationMethod
    verdicts: dict
    stability: StabilityFunction
    tau: Poly
    chi: Poly
    tau_location: HalfPlaneVerdict
    spectrum: SpectrumApprox
    force_full: bool = False
    notes: tuple = field(default_factory=tuple)

    def __getitem__(self, notion: str) -> bool:
        return self.verdicts[notion].holds

    def summary(self) -> dict[str, bool]:
        return {k: self.verdicts[k].holds for k in NOTIONS}


def check_implications(verdicts: dict) -> None:
    v = {k: verdicts[k].holds for k in NOTIONS}
    problems = []
    for strong, weak in (("A", "I"), ("AS", "IS"), ("ASI", "ISI"), ("A_hat", "I_hat")):
        if v[strong] and not v[weak]:
            problems.append(f"{strong} without {weak}")
    if v["A_hat"] != (v["A"] and v["AS"] and v["ASI"]):
        problems.append("A_hat differs from A and AS and ASI")
    if v["I_hat"] != (v["I"] and v["IS"] and v["ISI"]):
        problems.append("I_hat differs from I and IS and ISI")
    if problems:
        raise InternalConsistencyError("; ".join(problems))


def _conjunction(parts: list[Verdict], names: str) -> Verdict:
    holds = all(p.holds for p in parts)
    exact = all(p.certificate.exact for p in parts)
    return Verdict(holds, _cert(Criterion.FULL_DECISION, exact, f"conjunction of {names}"))


def classify(method: CollocationMethod, force_full: bool = False) -> StabilityReport:
    """Decide all eight notions, structural fast paths first unless ``force_full``."""
    pi, s = method.pi, method.s
    exact = method.exact
    flags = method.flags
    fast = not force_full
    tau = tau_transform(pi)
    chi = char_poly(pi, s)
    loc = half_plane_verdict(tau)
    tau_free_lhp = loc.all_open_rhp
    tau_free_axis = not loc.axis_root_parameters
    tab = method.rational_tableau
    sf = stability_function(pi, s, tab)
    v: dict[str, Verdict] = {}
    notes = list(_routh_notes(loc))

    def set_all(names, cert):
        for n in names:
            v.setdefault(n, Verdict(True, cert))

    a_side = ("A", "AS", "ASI", "A_hat")
    i_side = ("I", "IS", "ISI", "I_hat")

    if fast and method.family == "gauss":
        if not tau_free_lhp:
            raise InternalConsistencyError("Gauss node polynomial with a tau root in the closed left half-plane")
        cert = _cert(Criterion.GAUSS_THEOREM, True, "Gauss points: tau(pi) has all roots in the open right half-plane (exact Routh)")
        set_all(a_side + i_side, cert)
    if fast and flags.symmetric and tau_free_lhp:
        cert = _cert(Criterion.SYMMETRIC_FASTPATH_A, exact, "symmetric nodes and tau(pi) root-free in the closed left half-plane")
        set_all(a_side + i_side, cert)
    if fast and flags.symmetric and tau_free_axis:
        cert = _cert(Criterion.SYMMETRIC_FASTPATH_I, exact, "symmetric nodes and tau(pi) root-free on the imaginary axis")
        set_all(i_side, cert)

    if "A" not in v:
        v["A"] = decide_A(sf, exact)
    if fast and v["A"].holds and tau_free_lhp and "A_hat" not in v:
        cert = _cert(Criterion.LEMMA_A_HAT, exact, "A-stable and tau(pi) root-free in the closed left half-plane")
        set_all(a_side + i_side, cert)
    if "I" not in v:
        v["I"] = decide_I(sf, flags.symmetric, use_fastpath=fast, exact=exact)
    if fast and v["I"].holds and tau_free_axis and "I_hat" not in v:
        cert = _cert(Criterion.LEMMA_I_HAT, exact, "I-stable and tau(pi) root-free on the imaginary axis")
        set_all(i_side, cert)

    source = method
    if "ASI" not in v:
        v["ASI"] = decide_ASI(source, exact)
    if "ISI" not in v:
        v["ISI"] = decide_ISI(source, exact)
    if "AS" not in v:
        v["AS"] = decide_AS(source, v["ASI"], use_fastpath=fast, exact=exact)
    if "IS" not in v:
        v["IS"] = decide_IS(source, v["ISI"], use_fastpath=fast, exact=exact)
    if "A_hat" not in v:
        v["A_hat"] = _conjunction([v["A"], v["AS"], v["ASI"]], "A, AS, ASI")
    if "I_hat" not in v:
        v["I_hat"] = _conjunction([v["I"], v["IS"], v["ISI"]], "I, IS, ISI")

    verdicts = {k: v[k] for k in NOTIONS}
    check_implications(verdicts)
    report = StabilityReport(
        method=method,
        verdicts=verdicts,
        stability=sf,
        tau=tau,
        chi=chi,
        tau_location=loc,
        spectrum=numeric_roots(chi),
        force_full=force_full,
        notes=tuple(notes),
    )
    if flags.forward and s <= 4:
        small_s_consistency(method, report)
    return report


# ---------------------------------------------------------------------------
# cross-checks
# ---------------------------------------------------------------------------

def small_s_consistency(method: CollocationMethod, report: StabilityReport | None = None) -> Certificate:
    """Forward methods with s <= 4: spectrum in {0} U open RHP and I implies A."""
    if not method.flags.forward or method.s > 4:
        raise ContractError("small-s check applies to forward methods with at most 4 stages")
    q = _tau_without_zero(method.pi)
    if q.degree > 0 and not half_plane_verdict(q).all_open_rhp:
        raise InternalConsistencyError(f"forward {method.s}-stage method with an eigenvalue outside {{0}} U RHP")
    approx = numeric_roots(char_poly(method.pi))
    for z, r in zip(approx.roots, approx.radii):
        if mpmath.re(z) < -r:
            raise InternalConsistencyError(f"numerical eigenvalue {z} in the open left half-plane")
    if report is not None and report["I"] and not report["A"]:
        raise InternalConsistencyError("forward method with s <= 4 is I-stable but not A-stable")
    return _cert(Criterion.SMALL_S_THEOREM, True, "spectrum within {0} U open right half-plane")


class SingularStageSystem(ArithmeticError):
    """The stage system I - ahA is singular (1/(ah) is an eigenvalue of A)."""


def dahlquist_validate(tab, a: complex, h: float, n: int, sf: StabilityFunction | None = None) -> float:
    """Integrate y' = a y, y(0) = 1 for n steps; relative deviation of y_n from R(ah)^n.

    ``tab`` is a ButcherTableau or a CollocationMethod; stages are solved in
    double precision by a direct linear solve.
    """
    if isinstance(tab, CollocationMethod):
        sf = sf or stability_function(tab.pi, tab.s)
        A, b = tab.numeric_tableau(30)
        A = np.array(A.tolist(), dtype=complex)
        b = np.array(b.T.tolist()[0], dtype=complex)
    else:
        if sf is None:
            sf = stability_function(_pi_of(tab))
        A, b = tab.to_float()
    A = np.asarray(A, dtype=complex)
    b = np.asarray(b, dtype=complex)
    s = len(b)
    z = complex(a) * h
    M = np.eye(s) - z * A
    if np.linalg.cond(M) > 1e13:
        raise SingularStageSystem(f"stage system singular at ah = {z}")
    y = 1 + 0j
    ones = np.ones(s)
    for _ in range(n):
        stages = np.linalg.solve(M, y * ones)
        y = y + h * complex(a) * np.dot(b, stages)
    target = sf(z) ** n
    return abs(y - target) / max(1.0, abs(target))


def _pi_of(tab: ButcherTableau) -> Poly:
    p = Poly([1])
    for c in tab.c.nodes:
        if not isinstance(c, Fraction):
            raise ContractError("node polynomial of an irrational tableau: pass the method instead")
        p = p * Poly([-c, 1])
    return p


def laplace_cross_check(pi: Poly, lam) -> float:
    """Compare the Laplace-integral form of R with N/D at lam (Re lam > 0).

    Both integrals are summed term by term with int_0^inf e^{-lam t} t^k dt = k!/lam^{k+1}.
    """
    with mpmath.workdps(40):
        lam = mpmath.mpc(lam)
        if mpmath.re(lam) <= 0:
            raise ContractError("Laplace form needs Re(lambda) > 0")

        def laplace(p: Poly):
            return sum(to_mpf(c) * factorial(k) / lam ** (k + 1) for k, c in enumerate(p.coeffs))

        sf = stability_function(pi)
        if sf.D_red.eval_mp(lam) == 0:
            raise ContractError(f"lambda = {lam} is a pole of R")
        ratio = laplace(shift(pi, 1)) / laplace(pi)
        target = sf.eval_mp(lam)
        return float(abs(ratio - target) / max(1, abs(target)))


def sample_axis(sf: StabilityFunction, xmin: float, xmax: float, num: int) -> list[tuple[float, float, float]]:
    """(x, |R(ix)|, |D(ix)|^2 - |N(ix)|^2) on an even grid, reduced pair; |R| = inf at poles."""
    if num < 2:
        raise ContractError("sampling needs at least two points")
    if not (np.isfinite(xmin) and np.isfinite(xmax)) or xmin >= xmax:
        raise ContractError("sampling range must be finite with xmin < xmax")
    rows = []
    for x in np.linspace(xmin, xmax, num):
        n = sf.N_red.eval_complex(1j * x)
        d = sf.D_red.eval_complex(1j * x)
        deficit = abs(d) ** 2 - abs(n) ** 2
        abs_r = float("inf") if d == 0 else abs(n) / abs(d)
        rows.append((float(x), abs_r, deficit))
    return rows
