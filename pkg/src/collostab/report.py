"""Serializable report documents (JSON and plain text)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from .collocation import CollocationMethod
from .exactmath import Poly
from .stability import NOTIONS, StabilityReport

SCHEMA_VERSION = "1"


def _s(v) -> str:
    return str(v)


def _coeffs(p: Poly) -> list[str]:
    return [_s(c) for c in p.coeffs]


def _num(x: float):
    # JSON has no infinity; keep it as a string
    return x if x == x and abs(x) != float("inf") else str(x)


@dataclass
class ReportDocument:
    schema_version: str
    method: dict
    stability_function: dict
    verdicts: dict
    spectrum: list
    samples: list | None = None
    checks: dict = field(default_factory=dict)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(asdict(self), indent=indent, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {data.get('schema_version')!r}")
        return cls(**data)

    def summary(self) -> dict[str, bool]:
        return {k: self.verdicts[k]["holds"] for k in NOTIONS}


def method_echo(method: CollocationMethod) -> dict[str, Any]:
    tab = method.tableau
    flags = method.flags
    return {
        "label": method.describe(),
        "family": method.family,
        "s": method.s,
        "nodes": [_s(c) for c in method.nodes.nodes],
        "node_exactness": method.nodes.exactness,
        "original_order": [_s(c) for c in method.nodes.original] if method.nodes.original else [],
        "exact": method.exact,
        "flags": {
            "forward": flags.forward,
            "symmetric": flags.symmetric,
            "contains_zero_node": flags.contains_zero_node,
        },
        "pi": _coeffs(method.pi),
        "pi_text": method.pi.to_str("X"),
        "tableau": None if tab is None else {
            "A": [[_s(v) for v in row] for row in tab.A],
            "b": [_s(v) for v in tab.b],
            "exactness": tab.exactness,
        },
    }


def build_document(report: StabilityReport, samples=None, checks: dict | None = None) -> ReportDocument:
    sf = report.stability
    n_disp, d_disp = sf.normalized()
    method = method_echo(report.method)
    method["tau"] = _coeffs(report.tau)
    method["chi_A"] = _coeffs(report.chi)
    method["chi_A_text"] = report.chi.to_str("X")
    method["notes"] = list(report.notes)
    verdicts = {
        k: {
            "holds": v.holds,
            "criterion": v.certificate.criterion.value,
            "exact": v.certificate.exact,
            "details": list(v.certificate.details),
        }
        for k, v in report.verdicts.items()
    }
    spectrum = [
        {"re": float(z.real), "im": float(z.imag), "radius": _num(float(r))}
        for z, r in zip(report.spectrum.roots, report.spectrum.radii)
    ]
    stab = {
        "N": _coeffs(sf.N),
        "D": _coeffs(sf.D),
        "gcd": _coeffs(sf.g),
        "N_reduced": _coeffs(n_disp),
        "D_reduced": _coeffs(d_disp),
        "text": sf.to_str("λ"),
        "variable": "λ",
    }
    rows = None
    if samples is not None:
        rows = [[x, _num(r), d] for x, r, d in samples]
    return ReportDocument(SCHEMA_VERSION, method, stab, verdicts, spectrum, rows, dict(checks or {}))


def render_text(doc: ReportDocument) -> str:
    m = doc.method
    out = [f"method: {m['label']}", f"  s = {m['s']}, nodes = {', '.join(m['nodes'])} ({m['node_exactness']})"]
    f = m["flags"]
    out.append(f"  forward={f['forward']} symmetric={f['symmetric']} zero node={f['contains_zero_node']}")
    out.append(f"  pi(X)  = {m['pi_text']}")
    out.append(f"  chi_A  = {m['chi_A_text']}")
    out.append(f"  R(λ)   = {doc.stability_function['text']}")
    if doc.spectrum:
        eig = ", ".join(f"{e['re']:.10g}{e['im']:+.10g}i" for e in doc.spectrum)
        out.append(f"  eig(A) ≈ {eig}")
    out.extend(f"  note: {n}" for n in m.get("notes", []))
    out.append("verdicts:")
    for k in NOTIONS:
        v = doc.verdicts[k]
        tag = "exact" if v["exact"] else "numerical, uncertified"
        out.append(f"  {k:<6} {'yes' if v['holds'] else 'no ':<4} [{v['criterion']}; {tag}]")
        for line in v["details"]:
            out.append(f"           {line}")
    for name, val in doc.checks.items():
        out.append(f"check {name}: {val}")
    return "\n".join(out)
