import json
import subprocess
import sys

import pytest
import yaml

from odeflags.cli import run_cli
from odeflags.manifest import ManifestError, load_manifest

AXES = "x2*x3 dx1 + x1*x3 dx2 - 2*x1*x2 dx3"
VERIFY_IMPLICIT = ["verify", "--ode", "u'' = -(u'^2+t)/(u)", "--form", "x2 dx1 + x1 dx2 + x3 dx3"]


def cli(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def structured(capsys, *argv):
    code, out, _ = cli(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


def test_verify_implicit_ode_passes(capsys):
    code, out, _ = cli(capsys, *VERIFY_IMPLICIT)
    assert code == 0
    assert "ISOLATED_SING" in out and "✗" not in out
    code, doc = structured(capsys, *VERIFY_IMPLICIT)
    job = doc["jobs"][0]
    assert job["status"] == "pass"
    assert doc["summary"]["exit_code"] == 0


def test_tangent_prints_constructed_field(capsys):
    code, out, _ = cli(capsys, "tangent", "--form", AXES)
    assert code == 0
    assert "[x1*x2*x3, -(x2^2*x3 - 2*x1*x2), x1*x3]" in out


def test_plain_flag_is_math_failure(capsys):
    code, out, _ = cli(capsys, "verify", "--field", "[x1, x2, x3]", "--form", AXES)
    assert code == 1
    assert "plain 2-flag; Sing(F2) ⊄ Sing(F1)" in out


def test_input_errors(capsys):
    code, _, err = cli(capsys, "tangent", "--form", "x2x3 dx1 + x1x3 dx2 - 2x1x2 dx3")
    assert code == 2 and "implicit multiplication" in err
    assert cli(capsys, "verify", "--form", AXES)[0] == 2  # neither --field nor --ode
    assert cli(capsys, "nonsense")[0] == 2
    assert cli(capsys)[0] == 2
    assert cli(capsys, "potential", "--form", "x1 dx1", "--budget", "0")[0] == 2
    assert cli(capsys, "tangent", "--form", "x1 dx1 + dx4")[0] == 2
    assert cli(capsys, "tangent", "--form", "x1 dx1 + x1 dx4", "--dim", "4")[0] == 0


def test_budget_exceeded(capsys):
    argv = ["classify", "--ode", "u'' = (u^2)/(t)", "--form",
            "(-x1^2*x3 - 2*x2*x3) dx1 + (x1*x3 + x2*x3^2) dx2 + (-x1^3 + 2*x2^2*x3) dx3"]
    assert cli(capsys, *argv)[0] == 0
    assert cli(capsys, *argv, "--budget", "1")[0] == 3


def test_subcommands(capsys):
    assert cli(capsys, "classify", "--ode", "u'' = -(u'^2+t)/(u)", "--form", "x2 dx1 + x1 dx2 + x3 dx3")[0] == 0
    assert cli(capsys, "inclusion", "--field", "[x1, x2, x3]", "--form", AXES)[0] == 1
    assert cli(capsys, "obstructions", "--form", "dx1 - x2*dx3")[0] == 1
    assert cli(capsys, "quasilinear", "--a1", "x1", "--a2", "1", "--a3", "x3")[0] == 0
    assert cli(capsys, "quasilinear", "--a1", "x3", "--a2", "x1", "--a3", "0")[0] == 1
    code, doc = structured(capsys, "separable", "--a1", "x1", "--a2", "x2", "--a3", "x3")
    assert code == 0 and "1/2*x1^2" in json.dumps(doc)
    code, doc = structured(capsys, "spectrum", "--field", "[-x1, x2, x1*x2]")
    assert code == 0 and "-1" in json.dumps(doc)
    assert cli(capsys, "first-integral", "--ode", "u'' = -(u'^2+t)/(u)", "--f", "x1*x2 + x3^2/2")[0] == 0
    assert cli(capsys, "first-integral", "--ode", "u'' = -(u'^2+t)/(u)", "--f", "x1")[0] == 1
    code, doc = structured(capsys, "potential", "--form", "x2 dx1 + x1 dx2 + x3 dx3")
    assert code == 0 and "x1*x2 + 1/2*x3^2" in json.dumps(doc)
    assert cli(capsys, "potential", "--form", "x2 dx1")[0] == 1


def test_structured_output_is_byte_stable(capsys):
    outs = {cli(capsys, *VERIFY_IMPLICIT, "--format", "structured")[1] for _ in range(3)}
    assert len(outs) == 1
    outs = {cli(capsys, "corpus", "--format", "structured")[1] for _ in range(2)}
    assert len(outs) == 1


MANIFEST = {
    "dim": 3,
    "jobs": [
        {"name": "implicit", "kind": "verify", "ode": "u'' = -(u'^2+t)/(u)", "form": "x2 dx1 + x1 dx2 + x3 dx3"},
        {"name": "axes", "kind": "construct", "form": AXES},
        {"name": "radial", "kind": "inclusion", "field": "[x1, x2, x3]", "form": AXES},
    ],
}


@pytest.mark.parametrize("suffix", [".json", ".yaml"])
def test_manifest_batch(tmp_path, capsys, suffix):
    path = tmp_path / f"m{suffix}"
    path.write_text(json.dumps(MANIFEST) if suffix == ".json" else yaml.safe_dump(MANIFEST), encoding="utf-8")
    code, out, _ = cli(capsys, "batch", "--manifest", str(path), "--format", "structured")
    doc = json.loads(out)
    assert code == 1
    assert [j["name"] for j in doc["jobs"]] == ["implicit", "axes", "radial"]
    assert [j["status"] for j in doc["jobs"]] == ["pass", "pass", "fail"]
    assert doc["summary"] == {"jobs": 3, "passed": 2, "failed": 1, "exit_code": 1}
    assert run_cli(["--manifest", str(path)]) == 1


def test_manifest_rejections(tmp_path, capsys):
    dup = {"dim": 3, "jobs": [MANIFEST["jobs"][1], MANIFEST["jobs"][1]]}
    path = tmp_path / "dup.json"
    path.write_text(json.dumps(dup))
    with pytest.raises(ManifestError, match="duplicate"):
        load_manifest(path)
    assert cli(capsys, "batch", "--manifest", str(path))[0] == 2

    # a bad payload anywhere stops the batch before any job runs
    bad = {"dim": 3, "jobs": [MANIFEST["jobs"][0], {"name": "b", "kind": "construct", "form": "2x1 dx1"}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, err = cli(capsys, "batch", "--manifest", str(path))
    assert code == 2 and out == "" and "implicit multiplication" in err

    path = tmp_path / "kind.json"
    path.write_text(json.dumps({"dim": 3, "jobs": [{"name": "a", "kind": "draw", "form": "dx1"}]}))
    with pytest.raises(ManifestError):
        load_manifest(path)
    with pytest.raises(ManifestError):
        load_manifest(tmp_path / "missing.json")


def test_corpus_command(capsys):
    code, doc = structured(capsys, "corpus")
    assert doc["summary"]["jobs"] == 15
    assert code == 1  # the fixtures where Sing(w) escapes Sing(X) fail the inclusion check
    failed = {j["name"] for j in doc["jobs"] if j["status"] != "pass"}
    assert failed == {"emden-fowler-u2-over-t", "linear-time-varying", "linear-constant"}


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "odeflags", "tangent", "--form", AXES],
                       capture_output=True, text=True, encoding="utf-8")
    assert r.returncode == 0
    assert "[x1*x2*x3, -(x2^2*x3 - 2*x1*x2), x1*x3]" in r.stdout
    r = subprocess.run([sys.executable, "-m", "odeflags", "tangent", "--form", "x1 x2 dx1"],
                       capture_output=True, text=True, encoding="utf-8")
    assert r.returncode == 2 and r.stdout == ""
