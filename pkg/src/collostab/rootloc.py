"""Root localization relative to the imaginary axis.

Certified answers come from the Routh array and Sturm sequences in exact
arithmetic; :func:`numeric_roots` is a floating-point oracle only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import mpmath
import numpy as np

from .exactmath import ContractError, Poly, gcd_poly, isolate_real_roots, tau_transform, to_mpf

ORACLE_DPS = 64


def char_poly(pi: Poly, s: int | None = None) -> Poly:
    """Characteristic polynomial of the collocation matrix A: tau(pi) / s!."""
    s = pi.degree if s is None else s
    if pi.degree != s or pi.lc != 1:
        raise ContractError("node polynomial must be monic of degree s")
    return tau_transform(pi) * Fraction(1, factorial(s))


# ---------------------------------------------------------------------------
# Routh array
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RouthArray:
    rows: tuple
    first_column: tuple
    zero_rows: tuple = ()  # indices of rows replaced by an auxiliary derivative
    zero_pivot: int | None = None  # row index of a zero leading entry, if any

    @property
    def degenerate(self) -> bool:
        return bool(self.zero_rows) or self.zero_pivot is not None

    def sign_changes(self) -> int | None:
        """Roots in the open right half-plane (None if a zero pivot stopped the array)."""
        if self.zero_pivot is not None:
            return None
        col = self.first_column
        return sum(1 for a, b in zip(col, col[1:]) if (a > 0) != (b > 0))


def routh_array(p: Poly) -> RouthArray:
    """Routh array of p, highest degree first.

    A row that vanishes entirely is replaced by the derivative of the
    auxiliary polynomial built from the row above; a zero leading entry in a
    nonzero row stops the array and is recorded as ``zero_pivot``.
    """
    if p.is_zero():
        raise ContractError("Routh array of the zero polynomial")
    n = p.degree
    c = list(reversed(p.coeffs))  # a_n, a_{n-1}, ..., a_0
    r0 = c[0::2]
    r1 = c[1::2]
    width = len(r0)
    r1 = r1 + [Fraction(0)] * (width - len(r1))
    rows = [r0, r1]
    zero_rows = []
    if n == 0:
        return RouthArray((tuple(r0),), (r0[0],))
    k = 1
    while True:
        cur, prev = rows[k], rows[k - 1]
        if all(v == 0 for v in cur):
            # auxiliary polynomial of the previous row has degree n - k + 1, in powers of X^2
            deg = n - (k - 1)
            aux = [prev[i] * (deg - 2 * i) for i in range(len(prev))]
            cur = aux + [Fraction(0)] * (width - len(aux))
            rows[k] = cur
            zero_rows.append(k)
        if k == n:
            break
        if cur[0] == 0:
            return RouthArray(tuple(tuple(r) for r in rows), tuple(r[0] for r in rows), tuple(zero_rows), k)
        nxt = []
        for i in range(width - 1):
            nxt.append((cur[0] * prev[i + 1] - prev[0] * cur[i + 1]) / cur[0])
        nxt.append(Fraction(0))
        rows.append(nxt)
        k += 1
    return RouthArray(tuple(tuple(r) for r in rows), tuple(r[0] for r in rows), tuple(zero_rows), None)


# ---------------------------------------------------------------------------
# imaginary axis
# ---------------------------------------------------------------------------

def axis_parts(p: Poly) -> tuple[Poly, Poly]:
    """Real polynomials (Re, Im) with p(ix) = Re(x) + i Im(x) for real x."""
    re = [Fraction(0)] * len(p.coeffs)
    im = [Fraction(0)] * len(p.coeffs)
    for k, a in enumerate(p.coeffs):
        sgn = 1 if k % 4 in (0, 1) else -1
        if k % 2 == 0:
            re[k] = sgn * a
        else:
            im[k] = sgn * a
    return Poly(re), Poly(im)


def axis_gcd(p: Poly) -> Poly:
    """Monic gcd of Re p(ix) and Im p(ix); its real roots are the axis-root parameters."""
    if p.is_zero():
        raise ContractError("axis roots of the zero polynomial")
    re, im = axis_parts(p)
    return gcd_poly(re, im)


def imaginary_axis_roots(p: Poly, width: Fraction | None = None) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals (lo, hi] for the real x with p(ix) = 0."""
    g = axis_gcd(p)
    if g.degree <= 0:
        return []
    if width is None:
        return isolate_real_roots(g)
    return isolate_real_roots(g, width)


# ---------------------------------------------------------------------------
# half-plane verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfPlaneVerdict:
    all_open_rhp: bool
    all_open_lhp: bool
    axis_root_parameters: tuple = ()
    degenerate: bool = False
    rhp_count: int | None = None
    lhp_count: int | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def no_root_in_closed_lhp(self) -> bool:
        """No root with non-positive real part (the closed left half-plane)."""
        return self.all_open_rhp

    @property
    def no_axis_root(self) -> bool:
        return not self.axis_root_parameters


def _stable_from_routh(arr: RouthArray) -> bool:
    col = arr.first_column
    if arr.degenerate:
        return False
    return all(v > 0 for v in col) or all(v < 0 for v in col)


def half_plane_verdict(p: Poly) -> HalfPlaneVerdict:
    """Classify the roots of p with respect to the imaginary axis, exactly.

    A zero pivot or a zero row in the Routh array rules out "all roots in an
    open half-plane" (a Hurwitz polynomial has a strictly one-signed first
    column); the axis roots are then found independently from the gcd of the
    real and imaginary parts of p(ix).
    """
    if p.is_zero():
        raise ContractError("half-plane verdict for the zero polynomial")
    if p.degree == 0:
        return HalfPlaneVerdict(True, True, (), False, 0, 0)
    lhp_arr = routh_array(p)
    rhp_arr = routh_array(p.compose_neg())
    axis = tuple(imaginary_axis_roots(p))
    notes = []
    if lhp_arr.zero_rows:
        notes.append("zero row in Routh array: roots symmetric about the origin")
    if lhp_arr.zero_pivot is not None:
        notes.append(f"zero pivot in Routh array at row {lhp_arr.zero_pivot}")
    lhp = _stable_from_routh(lhp_arr) and not axis
    rhp = _stable_from_routh(rhp_arr) and not axis
    return HalfPlaneVerdict(
        all_open_rhp=rhp,
        all_open_lhp=lhp,
        axis_root_parameters=axis,
        degenerate=lhp_arr.degenerate,
        rhp_count=lhp_arr.sign_changes() if not lhp_arr.zero_rows else None,
        lhp_count=rhp_arr.sign_changes() if not rhp_arr.zero_rows else None,
        notes=tuple(notes),
    )


def routh_all_open_lhp(p: Poly) -> HalfPlaneVerdict:
    return half_plane_verdict(p)


def all_open_rhp(p: Poly) -> HalfPlaneVerdict:
    """Verdict whose ``all_open_rhp`` says every root has positive real part.

    That is the same as "no root in the closed left half-plane", so it also
    excludes axis roots and a root at 0.
    """
    return half_plane_verdict(p)


# ---------------------------------------------------------------------------
# closed-form criteria for degrees 3 and 4
# ---------------------------------------------------------------------------

def closed_form_rh(p: Poly) -> dict[str, bool]:
    """Explicit Routh-Hurwitz inequalities for monic cubics and quartics.

    Returns one entry per criterion: ``RH3`` for cubics, ``RH4`` and
    ``RH4-alt`` for quartics.  True means the inequalities hold, hence every
    root has negative real part.
    """
    if p.lc != 1 or p.degree not in (3, 4):
        raise ContractError("closed-form criteria need a monic cubic or quartic")
    a = p.coeffs
    if p.degree == 3:
        a0, a1, a2 = a[0], a[1], a[2]
        return {"RH3": a2 > 0 and a2 * a1 - a0 > 0 and a0 > 0}
    a0, a1, a2, a3 = a[0], a[1], a[2], a[3]
    delta3 = a3 * a2 * a1 - a1 * a1 - a3 * a3 * a0
    return {
        "RH4": a3 > 0 and a3 * a2 - a1 > 0 and delta3 > 0 and a0 > 0,
        "RH4-alt": a3 > 0 and a1 > 0 and delta3 > 0 and a0 > 0,
    }


# ---------------------------------------------------------------------------
# floating-point oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumApprox:
    roots: tuple
    radii: tuple
    converged: bool = True

    def as_complex(self) -> list[complex]:
        return [complex(r) for r in self.roots]


def numeric_roots(p, dps: int = ORACLE_DPS, maxsteps: int = 200) -> SpectrumApprox:
    """All complex roots with residual-based inclusion radii.

    Each disk of radius ``n |p(z)| / |p'(z)|`` about an approximation ``z``
    contains a root of p.  Uses mpmath's simultaneous iteration; never a
    certificate by itself.
    """
    coeffs = list(p.coeffs) if isinstance(p, Poly) else list(p)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        raise ContractError("numeric roots need degree >= 1")
    with mpmath.workdps(dps):
        desc = [to_mpf(c) if not isinstance(c, (complex, mpmath.mpc)) else mpmath.mpmathify(c) for c in reversed(coeffs)]
        converged = True
        try:
            roots = mpmath.polyroots(desc, maxsteps=maxsteps, extraprec=2 * dps)
        except mpmath.libmp.libhyper.NoConvergence:
            converged = False
            roots = _fallback_roots(desc, maxsteps * 10)
        if not isinstance(roots, (list, tuple)):
            roots = [roots]
        dp = [k * c for k, c in zip(range(n, 0, -1), desc[:-1])]
        radii = []
        for z in roots:
            pz = mpmath.polyval(desc, z)
            dpz = mpmath.polyval(dp, z)
            radii.append(mpmath.inf if dpz == 0 else n * abs(pz) / abs(dpz))
        roots = [mpmath.mpc(z) for z in roots]
    return SpectrumApprox(tuple(roots), tuple(radii), converged)


def _fallback_roots(desc, maxsteps):
    try:
        return mpmath.polyroots(desc, maxsteps=maxsteps, extraprec=400)
    except mpmath.libmp.libhyper.NoConvergence:
        return [mpmath.mpc(z) for z in np.roots([complex(c) for c in desc])]


def real_part_signs(approx: SpectrumApprox, tol: float = 1e-9) -> list[int]:
    """-1 / 0 / +1 classification of real parts with an absolute tolerance."""
    out = []
    for z in approx.roots:
        re = mpmath.re(z)
        out.append(0 if abs(re) <= tol else (1 if re > 0 else -1))
    return out
