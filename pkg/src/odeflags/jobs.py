"""Jobs: a kind plus string payloads, parsed up front and run against the flags API.

Every kind calls exactly one operation of :mod:`flags`; this module only
parses, dispatches and packages results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from . import flags, report
from .exterior import d, evaluate_on
from .ideals import BudgetExceeded, step_budget
from .parsing import parse_field, parse_form, parse_ode, parse_poly
from .polyring import DimensionMismatch

PASS, FAIL, INPUT_ERROR, BUDGET = 0, 1, 2, 3
STATUS_NAMES = {PASS: "pass", FAIL: "fail", INPUT_ERROR: "input-error", BUDGET: "budget-exceeded"}


class JobSpecError(ValueError):
    """A job is malformed (unknown kind, missing or unexpected payload)."""


@dataclass
class Job:
    name: str
    kind: str
    dim: int
    payload: dict[str, str]
    parsed: dict[str, Any] = field(default_factory=dict)


@dataclass
class Outcome:
    name: str
    kind: str
    code: int
    result: dict[str, Any] | None
    error: str | None = None

    def doc(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "kind": self.kind, "status": STATUS_NAMES[self.code]}
        if self.error is not None:
            out["error"] = self.error
        out["result"] = self.result
        return out


# -- payload parsing --------------------------------------------------------------

def _field_or_ode(p: Mapping[str, str], dim: int) -> dict[str, Any]:
    if ("field" in p) == ("ode" in p):
        raise JobSpecError("give exactly one of 'field' or 'ode'")
    if "ode" in p:
        if dim != 3:
            raise JobSpecError("an ODE payload requires dimension 3")
        ode = parse_ode(p["ode"])
        return {"field": flags.ode_to_field(ode), "ode": ode}
    return {"field": parse_field(p["field"], dim)}


def _pair(p, dim):
    out = _field_or_ode(p, dim)
    out["form"] = parse_form(p["form"], dim)
    return out


def _form(p, dim):
    return {"form": parse_form(p["form"], dim)}


def _coeffs(p, dim):
    if dim != 3:
        raise JobSpecError("builders work in dimension 3")
    return {k: parse_poly(p[k], 3) for k in ("a1", "a2", "a3")}


def _spectrum(p, dim):
    if "P" in p or "Q" in p:
        return {"P": parse_poly(p["P"], dim), "Q": parse_poly(p["Q"], dim)}
    return _field_or_ode(p, dim)


def _first_integral(p, dim):
    out = _field_or_ode(p, dim)
    out["f"] = parse_poly(p["f"], dim)
    return out


# -- runners ---------------------------------------------------------------------------

def _run_verify(a):
    r = flags.verify_flag(a["field"], a["form"])
    return (PASS if r.ok else FAIL), report.flag_report_doc(a["field"], a["form"], r)


def _run_construct(a):
    Y = flags.tangent_field(a["form"])
    return PASS, {"form": str(a["form"]), "field": str(Y)}


def _run_classify(a):
    c = flags.classify(a["field"], a["form"])
    return PASS, {"field": str(a["field"]), "form": str(a["form"]), **report.class_doc(c)}


def _run_inclusion(a):
    ok = flags.check_inclusion(a["field"], a["form"])
    return (PASS if ok else FAIL), {
        "field": str(a["field"]),
        "form": str(a["form"]),
        "sing_vf": report.ideal_doc(flags.singular_ideal(a["field"])),
        "sing_form": report.ideal_doc(flags.singular_ideal(a["form"])),
        "inclusion_ok": ok,
    }


def _run_obstructions(a):
    o = flags.obstructions(a["form"])
    return (PASS if o.flag_possible else FAIL), {"form": str(a["form"]), **report.obstructions_doc(o)}


def _run_quasilinear(a):
    cond = flags.quasilinear_condition(a["a1"], a["a2"], a["a3"])
    built = flags.quasilinear_flag(a["a1"], a["a2"], a["a3"])
    doc = {"condition": str(cond), "integrable": built is not None,
           "field": None if built is None else str(built[0]),
           "form": None if built is None else str(built[1])}
    return (PASS if built else FAIL), doc


def _run_separable(a):
    X, w, f = flags.separable_flag(a["a1"], a["a2"], a["a3"])
    return PASS, {"field": str(X), "form": str(w), "potential": str(f)}


def _run_spectrum(a):
    if "P" in a:
        s = flags.linear_analysis(a["P"], a["Q"])
    elif "ode" in a:
        s = flags.linear_analysis(a["ode"].P, a["ode"].Q)
    else:
        s = flags.field_spectrum(a["field"])
    return PASS, report.spectrum_doc(s)


def _run_first_integral(a):
    ok = flags.is_first_integral(a["f"], a["field"])
    return (PASS if ok else FAIL), {
        "f": str(a["f"]),
        "field": str(a["field"]),
        "df(X)": str(evaluate_on(d(a["f"]), a["field"])),
        "is_first_integral": ok,
    }


def _run_potential(a):
    f = flags.potential(a["form"])
    return PASS, {"form": str(a["form"]), "potential": str(f)}


KINDS: dict[str, tuple[set[str], Callable, Callable]] = {
    "verify": ({"field", "ode", "form"}, _pair, _run_verify),
    "construct": ({"form"}, _form, _run_construct),
    "classify": ({"field", "ode", "form"}, _pair, _run_classify),
    "inclusion": ({"field", "ode", "form"}, _pair, _run_inclusion),
    "obstructions": ({"form"}, _form, _run_obstructions),
    "quasilinear": ({"a1", "a2", "a3"}, _coeffs, _run_quasilinear),
    "separable": ({"a1", "a2", "a3"}, _coeffs, _run_separable),
    "spectrum": ({"field", "ode", "P", "Q"}, _spectrum, _run_spectrum),
    "first-integral": ({"f", "field", "ode"}, _first_integral, _run_first_integral),
    "potential": ({"form"}, _form, _run_potential),
}


def prepare(name: str, kind: str, payload: Mapping[str, str], dim: int) -> Job:
    """Parse a job's payload; raises ParseError or JobSpecError on bad input."""
    if kind not in KINDS:
        raise JobSpecError(f"job {name!r}: unknown kind {kind!r}")
    allowed, parse, _ = KINDS[kind]
    extra = set(payload) - allowed
    if extra:
        raise JobSpecError(f"job {name!r}: unexpected payload keys {sorted(extra)}")
    try:
        parsed = parse(payload, dim)
    except KeyError as e:
        raise JobSpecError(f"job {name!r}: missing payload key {e.args[0]!r}") from None
    except JobSpecError as e:
        raise JobSpecError(f"job {name!r}: {e}") from None
    return Job(name, kind, dim, dict(payload), parsed)


def run(job: Job, budget: int | None = None) -> Outcome:
    runner = KINDS[job.kind][2]
    try:
        if budget is None:
            code, result = runner(job.parsed)
        else:
            with step_budget(budget):
                code, result = runner(job.parsed)
    except BudgetExceeded as e:
        return Outcome(job.name, job.kind, BUDGET, None, str(e))
    except DimensionMismatch as e:
        return Outcome(job.name, job.kind, INPUT_ERROR, None, str(e))
    except flags.ConsistencyError as e:
        return Outcome(job.name, job.kind, FAIL, None, str(e))
    except ValueError as e:
        # preconditions of the mathematical operation (not a flag, not closed, ...)
        return Outcome(job.name, job.kind, FAIL, None, str(e))
    return Outcome(job.name, job.kind, code, result)


def exit_code(outcomes: list[Outcome]) -> int:
    codes = {o.code for o in outcomes}
    for c in (INPUT_ERROR, BUDGET, FAIL):
        if c in codes:
            return c
    return PASS


def run_document(outcomes: list[Outcome]) -> dict[str, Any]:
    code = exit_code(outcomes)
    return {
        "jobs": [o.doc() for o in outcomes],
        "summary": {
            "jobs": len(outcomes),
            "passed": sum(o.code == PASS for o in outcomes),
            "failed": sum(o.code != PASS for o in outcomes),
            "exit_code": code,
        },
    }
