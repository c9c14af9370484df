"""The bundled fixture corpus and its runner."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any

from . import flags
from .exterior import DiffForm, VectorField
from .parsing import parse_field, parse_form, parse_ode
from .report import flag_report_doc

EXPECT_KEYS = ("tangency_ok", "integrable_ok", "ode_shape", "inclusion_ok", "classification", "potential")


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    group: str
    field: VectorField
    form: DiffForm
    ode: flags.SecondOrderODE | None
    source: dict[str, Any]

    @property
    def expect(self) -> dict[str, Any]:
        return self.source["expect"]

    @property
    def corrected(self) -> bool:
        return "corrected" in self.source


def load_raw() -> dict[str, Any]:
    return json.loads(resources.files(__package__).joinpath("data/corpus.json").read_text("utf-8"))


def load_corpus() -> list[Fixture]:
    raw = load_raw()
    dim = raw["dim"]
    out = []
    for entry in raw["fixtures"]:
        ode = parse_ode(entry["ode"]) if "ode" in entry else None
        X = flags.ode_to_field(ode) if ode is not None else parse_field(entry["field"], dim)
        out.append(Fixture(entry["name"], entry["description"], entry["group"], X,
                           parse_form(entry["form"], dim), ode, entry))
    return out


def compare(fx: Fixture, doc: dict[str, Any]) -> list[str]:
    """Fields where the computed report departs from the stored expectation."""
    diffs = []
    for k in EXPECT_KEYS:
        if k in fx.expect and doc[k] != fx.expect[k]:
            diffs.append(f"{k}: expected {fx.expect[k]!r}, got {doc[k]!r}")
    return diffs


def run_fixture(fx: Fixture) -> tuple[flags.FlagReport, dict[str, Any]]:
    r = flags.verify_flag(fx.field, fx.form)
    doc = flag_report_doc(fx.field, fx.form, r)
    diffs = compare(fx, doc)
    doc = {"name": fx.name, "description": fx.description, "group": fx.group, **doc,
           "matches_expected": not diffs, "mismatches": diffs}
    if fx.corrected:
        doc["corrected"] = fx.source["corrected"]
    return r, doc
