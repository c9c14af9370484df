"""Batch manifests: a dimension and a list of named jobs.

JSON or YAML::

    dim: 3
    jobs:
      - name: first
        kind: verify
        ode: "u'' = -(u'^2 + t)/(u)"
        form: "x2 dx1 + x1 dx2 + x3 dx3"
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import yaml

from .jobs import Job, JobSpecError, prepare


class ManifestError(ValueError):
    pass


def _load(path: Path) -> Any:
    try:
        text = path.read_text("utf-8")
        if path.suffix == ".json":
            return json.loads(text)
        return yaml.safe_load(text)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError, yaml.YAMLError) as e:
        raise ManifestError(f"{path}: cannot read manifest: {e}") from None


def parse_manifest(data: Any, dim_override: int | None = None) -> list[Job]:
    """Validate the schema and parse every payload before anything runs."""
    if not isinstance(data, dict) or set(data) - {"dim", "jobs"} or "jobs" not in data:
        raise ManifestError("manifest must be a mapping with keys 'dim' and 'jobs'")
    dim = data.get("dim", 3) if dim_override is None else dim_override
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ManifestError("'dim' must be a positive integer")
    if not isinstance(data["jobs"], list):
        raise ManifestError("'jobs' must be a list")
    jobs, seen = [], set()
    for i, entry in enumerate(data["jobs"]):
        if not isinstance(entry, dict) or "name" not in entry or "kind" not in entry:
            raise ManifestError(f"job #{i + 1}: needs 'name' and 'kind'")
        name = str(entry["name"])
        if name in seen:
            raise ManifestError(f"duplicate job name {name!r}")
        seen.add(name)
        payload = {}
        for k, v in entry.items():
            if k in ("name", "kind"):
                continue
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise ManifestError(f"job {name!r}: payload {k!r} must be a string")
            payload[k] = str(v)
        try:
            jobs.append(prepare(name, str(entry["kind"]), payload, dim))
        except JobSpecError as e:
            raise ManifestError(str(e)) from None
        except ValueError as e:
            raise ManifestError(f"job {name!r}: {e}") from None
    return jobs


def load_manifest(path: str | Path, dim_override: int | None = None) -> list[Job]:
    return parse_manifest(_load(Path(path)), dim_override)
