"""JSON reports and CSV profiles."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__


def _default(obj: Any):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, Fractions as "p/q"."""
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def envelope(operation: str, config: dict, results: dict) -> dict:
    return {"tool": "mnexp", "version": __version__, "operation": operation, "config": config, "results": results}


def collect_profiles(obj: Any, out: dict | None = None) -> dict[str, str]:
    """Every ``{"profiles": {id: csv}}`` mapping found anywhere in a report."""
    out = {} if out is None else out
    if isinstance(obj, dict):
        for key, value in obj.items():
            if key == "profiles" and isinstance(value, dict):
                out.update({k: v for k, v in value.items() if isinstance(v, str)})
            else:
                collect_profiles(value, out)
    elif isinstance(obj, list):
        for item in obj:
            collect_profiles(item, out)
    return out


def write_report(report: dict, out_dir: str | Path, name: str = "report") -> Path:
    """Write ``<name>.json`` and one ``profiles/<witness>.csv`` per witness profile."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{name}.json"
    path.write_text(dumps(report))
    profiles = collect_profiles(report)
    if profiles:
        pdir = out / "profiles"
        pdir.mkdir(exist_ok=True)
        for wid, csv in sorted(profiles.items()):
            (pdir / f"{wid}.csv").write_text(csv)
    return path
