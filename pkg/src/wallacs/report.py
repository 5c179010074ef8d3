"""Decision reports as plain dicts (JSON) or audit text."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .charnum import CharNumbers, char_numbers
from .decision import AcsVerdict, StableVerdict, decide_acs, decide_stable
from .document import encode_int
from .ktheory import KRow, manifold_row
from .quadrep import DEFAULT_SEARCH_BOUND
from .wall import ValidationReport, WallInvariants, validate

__all__ = ["build_report", "render_json", "render_text", "validation_dict"]


def _rat(q: Optional[Fraction]) -> Any:
    if q is None:
        return None
    if q.denominator == 1:
        return encode_int(q.numerator)
    return str(q)


def _vec(v) -> Any:
    return None if v is None else [encode_int(a) for a in v]


def validation_dict(v: ValidationReport) -> dict:
    return {
        "valid": v.valid,
        "violations": [{"code": f.code, "message": f.message} for f in v.violations],
        "warnings": [{"code": f.code, "message": f.message} for f in v.warnings],
    }


def _derived(c: CharNumbers) -> dict:
    return {
        "tau": c.tau,
        "euler": encode_int(c.euler),
        "p_quarter": _vec(c.p_quarter),
        "p_half": _rat(c.p_half),
        "a_coeff": c.a_coeff,
        "a_hat": _rat(c.a_hat),
        "a_hat_C": _rat(c.a_hat_C),
    }


def _conditions(conds) -> list[dict]:
    return [{"name": c.name, "value": c.value, "holds": c.holds} for c in conds]


def _stable(s: StableVerdict) -> dict:
    return {
        "admits": s.admits,
        "case_label": s.case_label,
        "detail": s.detail,
        "conditions": _conditions(s.conditions),
    }


def _acs(a: AcsVerdict) -> dict:
    out = {
        "admits": a.admits.value,
        "case_label": a.case_label,
        "reason": a.reason,
        "target": None if a.target is None else encode_int(a.target),
        "witness": _vec(a.witness),
        "conditions": _conditions(a.conditions),
    }
    if a.rep is not None:
        out["search"] = {
            "status": a.rep.status.value,
            "obstruction": a.rep.obstruction.value if a.rep.obstruction else None,
            "bound_used": a.rep.bound_used,
        }
    return out


def _ktheory(row: KRow) -> dict:
    return {
        "K": [[g, "Z" if o is None else f"Z{o}"] for g, o in row.complex.summands],
        "KO": [[g, "Z" if o is None else f"Z{o}"] for g, o in row.real.summands],
        "reduction": {src: dict(img) for src, img in row.reduction.items()},
    }


def build_report(w: WallInvariants, bound: int = DEFAULT_SEARCH_BOUND,
                 with_ktheory: bool = False) -> dict:
    """Full report; verdicts only when validation passes."""
    v = validate(w)
    report: dict[str, Any] = {
        "input": {"name": w.name or "", "n": w.n, "k": w.k, "n_mod_8": w.n % 8},
        "validation": validation_dict(v),
    }
    if v.valid:
        report["derived"] = _derived(char_numbers(w))
        report["stable"] = _stable(decide_stable(w))
        report["acs"] = _acs(decide_acs(w, bound))
        if with_ktheory:
            report["ktheory"] = _ktheory(manifold_row(w.n, w.k))
    report["version"] = __version__
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=False, separators=(",", ":"))


def render_text(report: dict) -> str:
    inp = report["input"]
    lines = [f"{inp['name'] or '<unnamed>'}: n = {inp['n']} (n mod 8 = {inp['n_mod_8']}), k = {inp['k']}"]
    val = report["validation"]
    lines.append(f"validation: {'valid' if val['valid'] else 'INVALID'}")
    for f in val["violations"]:
        lines.append(f"  violation [{f['code']}] {f['message']}")
    for f in val["warnings"]:
        lines.append(f"  warning [{f['code']}] {f['message']}")
    if "derived" in report:
        d = report["derived"]
        lines.append("derived: " + ", ".join(f"{k} = {v}" for k, v in d.items() if v is not None))
        s = report["stable"]
        lines.append(f"stable almost complex: {'Yes' if s['admits'] else 'No'}"
                     f" (n mod 8 = {s['case_label']}, {s['detail']})")
        for c in s["conditions"]:
            lines.append(f"  [{'ok' if c['holds'] else 'FAIL'}] {c['name']}: {c['value']}")
        a = report["acs"]
        lines.append(f"almost complex: {a['admits']} (case {a['case_label']}, {a['reason']})")
        for c in a["conditions"]:
            lines.append(f"  [{'ok' if c['holds'] else 'FAIL'}] {c['name']}: {c['value']}")
        if a["target"] is not None:
            lines.append(f"  target = {a['target']}")
        if a["witness"] is not None:
            lines.append(f"  witness x = {a['witness']}")
    if "ktheory" in report:
        kt = report["ktheory"]
        lines.append("K~(M): " + (" + ".join(f"{o}<{g}>" for g, o in kt["K"]) or "0"))
        lines.append("KO~(M): " + (" + ".join(f"{o}<{g}>" for g, o in kt["KO"]) or "0"))
    lines.append(f"version: {report['version']}")
    return "\n".join(lines)
