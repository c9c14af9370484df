"""Serialization of results to structured (JSON) and human-readable text.

Documents are plain dicts with a fixed key order; polynomials are printed
in canonical grevlex order so identical input gives byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .exterior import DiffForm, VectorField
from .flags import ClassReport, FlagReport, LocalSpectrum, Obstructions, SecondOrderODE
from .ideals import Ideal


def text(obj) -> str | None:
    if obj is None:
        return None
    return str(obj)


def ideal_doc(I: Ideal | None) -> list[str] | None:
    return None if I is None else [str(g) for g in I.generators]


def notes_doc(notes) -> list[dict[str, str]]:
    return [{"code": n.code, "message": n.message} for n in notes]


def ode_doc(ode: SecondOrderODE | None) -> dict[str, str] | None:
    if ode is None:
        return None
    return {"P": str(ode.P), "Q": str(ode.Q), "removed_factor": str(ode.removed_factor)}


def flag_report_doc(X: VectorField, w: DiffForm, r: FlagReport) -> dict[str, Any]:
    return {
        "field": str(X),
        "form": str(w),
        "ode": ode_doc(r.ode),
        "tangency_ok": r.tangency_ok,
        "integrable_ok": r.integrable_ok,
        "ode_shape": r.ode_shape,
        "vf_reduced": r.vf_reduced,
        "vf_content": text(r.vf_content),
        "form_reduced": r.form_reduced,
        "form_content": text(r.form_content),
        "sing_vf": ideal_doc(r.sing_vf),
        "sing_form": ideal_doc(r.sing_form),
        "sing_form_dim": r.sing_form_dim,
        "inclusion_ok": r.inclusion_ok,
        "classification": r.classification.value,
        "potential": text(r.potential),
        "consistency_ok": r.consistency_ok,
        "notes": notes_doc(r.notes),
    }


def class_doc(c: ClassReport) -> dict[str, Any]:
    return {
        "classification": c.kind.value,
        "sing_dimension": c.sing_dimension,
        "potential": text(c.potential),
        "notes": notes_doc(c.notes),
    }


def obstructions_doc(o: Obstructions) -> dict[str, Any]:
    return {
        "a1_zero": o.a1_zero,
        "a2_zero": o.a2_zero,
        "a3_zero": o.a3_zero,
        "flag_possible": o.flag_possible,
    }


def _frac(q: Fraction) -> str:
    return str(q)


def spectrum_doc(s: LocalSpectrum) -> dict[str, Any]:
    ev = s.eigenvalues()
    return {
        "a": None if s.a is None else [_frac(v) for v in s.a],
        "b": None if s.b is None else [_frac(v) for v in s.b],
        "trace": _frac(s.trace),
        "det": _frac(s.det),
        "discriminant": _frac(s.discriminant),
        "eigenvalues": s.eigenvalue_text(),
        "eigenvalues_rational": ev is not None,
        "ratio_is_minus_one": s.ratio_is_minus_one,
    }


# -- rendering -------------------------------------------------------------------

def to_structured(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _scalar(v) -> str:
    if v is True:
        return "✓"
    if v is False:
        return "✗"
    if v is None:
        return "-"
    return str(v)


def _render(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        width = max((len(k) for k in value), default=0)
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                _render(v, indent + 1, out)
            else:
                shown = "[]" if v == [] else _scalar(v)
                out.append(f"{pad}{k.ljust(width)}  {shown}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict) and set(item) == {"code", "message"}:
                out.append(f"{pad}- {item['code']}: {item['message']}")
            elif isinstance(item, (dict, list)):
                out.append(f"{pad}-")
                _render(item, indent + 1, out)
            else:
                out.append(f"{pad}- {_scalar(item)}")
    else:
        out.append(pad + _scalar(value))


def to_human(doc: dict[str, Any]) -> str:
    out: list[str] = []
    for job in doc.get("jobs", []):
        out.append(f"== {job['name']} ({job['kind']}): {job['status']}")
        if job.get("error"):
            out.append(f"  error  {job['error']}")
        if job.get("result"):
            _render(job["result"], 1, out)
    summary = doc.get("summary")
    if summary:
        out.append("-- " + ", ".join(f"{k} {v}" for k, v in summary.items()))
    return "\n".join(out) + "\n"
