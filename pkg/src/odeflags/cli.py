"""Command-line interface.

Exit codes: 0 all checks passed, 1 a mathematical check failed,
2 input error, 3 Gröbner step budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import jobs as J
from .corpus import load_corpus, run_fixture
from .ideals import BudgetExceeded, step_budget
from .manifest import load_manifest
from .report import to_human, to_structured


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--dim", type=int, default=None, help="ambient dimension n (default 3, or the manifest's)")
    p.add_argument("--format", choices=("human", "structured"), default="human")
    p.add_argument("--budget", type=int, default=None, help="cap on Gröbner S-pair reductions")
    return p


def _field_or_ode(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--field", help='vector field, "[f1, f2, f3]" or "f1 d1 + f2 d2 + f3 d3"')
    g.add_argument("--ode", help="second-order ODE, \"u'' = (P)/(Q)\"")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="odeflags", description="Exact checks on ODE flags of foliations.")
    parser.add_argument("--manifest", help="run a batch manifest (same as the 'batch' command)")
    sub = parser.add_subparsers(dest="command")

    def cmd(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help)

    for name, help in (
        ("verify", "full flag report for a field and a 1-form"),
        ("classify", "dispatch an ODE flag on the dimension of Sing(w)"),
        ("inclusion", "test Sing(w) inside Sing(X)"),
    ):
        p = cmd(name, help)
        _field_or_ode(p)
        p.add_argument("--form", required=True, help='1-form, "A1 dx1 + A2 dx2 + A3 dx3"')

    p = cmd("tangent", "construct the ODE-shaped field tangent to a 1-form")
    p.add_argument("--form", required=True)
    p = cmd("obstructions", "which coefficients of a 1-form vanish identically")
    p.add_argument("--form", required=True)
    for name, help in (("quasilinear", "flag of a2 u'' + a1 u' + a3 = 0, coefficients in u, t"),
                       ("separable", "flag of a2(u') u'' + a1(u) u' + a3(t) = 0")):
        p = cmd(name, help)
        for k in ("a1", "a2", "a3"):
            p.add_argument(f"--{k}", required=True)
    p = cmd("spectrum", "eigenvalues of the linear part at the origin")
    _field_or_ode(p, required=False)
    p.add_argument("--P")
    p.add_argument("--Q")
    p = cmd("first-integral", "test df(X) == 0")
    _field_or_ode(p)
    p.add_argument("--f", required=True)
    p = cmd("potential", "primitive of a closed 1-form")
    p.add_argument("--form", required=True)
    cmd("corpus", "run the bundled fixture corpus")
    p = cmd("batch", "run every job of a manifest")
    p.add_argument("--manifest", required=True, dest="batch_manifest")
    return parser


_KIND = {"tangent": "construct"}
_PAYLOAD_KEYS = ("field", "ode", "form", "a1", "a2", "a3", "P", "Q", "f")


def _emit(doc: dict, fmt: str) -> None:
    out = to_structured(doc) if fmt == "structured" else to_human(doc)
    sys.stdout.write(out)


def _fail_input(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return J.INPUT_ERROR


def _run_corpus(budget: int | None) -> list[J.Outcome]:
    outcomes = []
    for fx in load_corpus():
        try:
            if budget is None:
                r, doc = run_fixture(fx)
            else:
                with step_budget(budget):
                    r, doc = run_fixture(fx)
        except BudgetExceeded as e:
            outcomes.append(J.Outcome(fx.name, "corpus", J.BUDGET, None, str(e)))
            continue
        ok = doc["matches_expected"] and (fx.group != "ode-flag" or r.ok)
        outcomes.append(J.Outcome(fx.name, "corpus", J.PASS if ok else J.FAIL, doc))
    return outcomes


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "human")
    budget = getattr(args, "budget", None)
    if budget is not None and budget < 1:
        return _fail_input("--budget must be positive")
    command = args.command
    manifest = getattr(args, "batch_manifest", None) or args.manifest
    if command is None and manifest is None:
        parser.print_usage(sys.stderr)
        return J.INPUT_ERROR

    if command == "corpus":
        outcomes = _run_corpus(budget)
    elif command == "batch" or command is None:
        try:
            prepared = load_manifest(manifest, getattr(args, "dim", None))
        except (OSError, ValueError) as e:
            return _fail_input(str(e))
        outcomes = [J.run(job, budget) for job in prepared]
    else:
        payload = {k: getattr(args, k) for k in _PAYLOAD_KEYS if getattr(args, k, None) is not None}
        try:
            job = J.prepare(command, _KIND.get(command, command), payload, args.dim or 3)
        except ValueError as e:
            return _fail_input(str(e))
        outcomes = [J.run(job, budget)]

    doc = J.run_document(outcomes)
    _emit(doc, fmt)
    for o in outcomes:
        if o.error:
            print(f"{o.name}: {o.error}", file=sys.stderr)
    return doc["summary"]["exit_code"]


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Entry point that maps argparse usage errors to exit code 2."""
    try:
        return main(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else J.INPUT_ERROR


def entry() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(run_cli())
