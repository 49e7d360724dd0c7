"""``mnexp`` command line: every operation as a subcommand, or a whole JSON config via ``run``.

Exit status 0 on success, 1 when a verification fails, 2 on a configuration
error.  Reports go to ``--out`` (JSON plus one CSV per witness profile) or to
standard output; diagnostics and ``--timing`` go to standard error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .experiments import CONSTRUCTIONS, load_config, run_config
from .reporting import dumps, write_report
from .systems import ConfigError

SYSTEM_KINDS = ("shift", "orbit", "cat", "rotation")
SUBCOMMANDS = ("delta-card", "check", "classify", "construct", "hyper", "selftest")
POOL_KEYS = ("pool", "pool_size", "arc_pool", "truncation", "splice_shadows")


def _json_file(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc


def _system_source(value: str) -> tuple[dict, dict]:
    """``(system, params)`` from a system kind, a system config file, or an
    experiment config file (whose params then serve as defaults)."""
    if value in SYSTEM_KINDS and not Path(value).exists():
        return {"kind": value}, {}
    data = _json_file(value)
    if isinstance(data, dict) and "system" in data:
        return data["system"], dict(data.get("params", {}))
    return data, {}


def _system_arg(value: str) -> dict:
    return _system_source(value)[0]


def _json_arg(value: str):
    """Inline JSON, or a path to a JSON file."""
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        return _json_file(value)


def _put(params: dict, key: str, value) -> None:
    if value is not None and value is not False:
        params[key] = value


# -- subcommand -> config ------------------------------------------------------------

def _cfg_delta_card(a) -> dict:
    params = {"delta": a.delta}
    if a.space:
        params["space_path"] = str(Path(a.space).resolve())
    else:
        from .selftest import bundled_space_table
        params["space"] = bundled_space_table()
    return {"operation": "delta-card", "params": params}


def _search_params(a) -> dict:
    params: dict = {}
    _put(params, "window", a.window)
    _put(params, "budget", a.budget)
    _put(params, "pool_size", a.pool_size)
    _put(params, "truncation", a.truncation)
    _put(params, "splice_shadows", a.splice_shadows)
    if a.pool:
        params["pool"] = _json_arg(a.pool)
    if a.arc_pool:
        params["arc_pool"] = {"size": a.arc_pool}
    return params


def _cfg_check(a) -> dict:
    params = {"m": a.m, "n": a.n, "delta": a.delta, **_search_params(a)}
    _put(params, "restarts", a.restarts)
    return {"operation": "check", "system": _system_arg(a.system), "params": params, "seed": a.seed}


def _cfg_classify(a) -> dict:
    system, params = _system_source(a.system)
    params.update(_search_params(a))
    params["max_m"] = a.grid
    _put(params, "scales", a.scales)
    _put(params, "hyperexp_scales", a.hyperexp_scales)
    _put(params, "converse_witnesses", a.converse_witnesses)
    _put(params, "skip_implied", a.skip_implied)
    params.setdefault("window", 10)
    if not any(k in params for k in POOL_KEYS):
        if system.get("kind") == "rotation":
            params["arc_pool"] = {"size": a.grid}
        else:
            params["pool_size"] = 12
    return {"operation": "classify", "system": system, "params": params, "seed": a.seed}


def _cfg_construct(a) -> dict:
    cfg = _json_file(a.config) if a.config else {}
    if not isinstance(cfg, dict):
        raise ConfigError("construction config must be a JSON object")
    if "operation" not in cfg:
        # a bare parameter object, optionally with a "system" entry
        system = cfg.pop("system", None)
        seed = cfg.pop("seed", None)
        cfg = {"operation": "construct", "params": cfg}
        if system is not None:
            cfg["system"] = system
        if seed is not None:
            cfg["seed"] = seed
    if cfg.get("operation") != "construct":
        raise ConfigError(f"{a.config} is a {cfg.get('operation')!r} config, not a construction")
    params = cfg.setdefault("params", {})
    named = params.setdefault("construction", a.construction)
    if named != a.construction:
        raise ConfigError(f"{a.config} configures {named!r}, not {a.construction!r}")
    if a.seed is not None:
        cfg["seed"] = a.seed
    if a.construction == "peano":
        cfg.setdefault("seed", 0)
    return cfg


def _cfg_hyper(a) -> dict:
    params = {"a": _json_arg(a.a), "b": _json_arg(a.b)}
    _put(params, "delta", a.delta)
    _put(params, "window", a.window)
    return {"operation": "hyper", "system": _system_arg(a.system), "params": params}


def _cfg_selftest(a) -> dict:
    cfg: dict = {"operation": "selftest", "params": {}}
    _put(cfg["params"], "inject", a.inject)
    return cfg


def _number(text: str):
    """Floats stay floats; "p/q" is kept as a string so it is read exactly."""
    if "/" in text:
        return text
    try:
        return int(text)
    except ValueError:
        return float(text)


def _search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", type=int, help="iterates |k| <= window are checked exactly")
    p.add_argument("--budget", type=int, help="subset evaluations before the search gives up")
    p.add_argument("--pool", help="candidate points as inline JSON or a JSON file")
    p.add_argument("--pool-size", type=int, help="add this many seeded sample points")
    p.add_argument("--arc-pool", type=int, help="add equally spaced points on an arc (rotation)")
    p.add_argument("--truncation", type=int, help="add the truncation |t| <= T (orbit systems)")
    p.add_argument("--splice-shadows", action="store_true", help="add the spliced shadow points (shift)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mnexp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"mnexp {__version__}")
    parser.add_argument("--out", help="directory for the JSON report and CSV profiles")
    parser.add_argument("--name", help="report file name without extension")
    parser.add_argument("--timing", action="store_true", help="print the elapsed time to standard error")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta-card", help="delta-cardinality of a finite metric space")
    p.add_argument("--space", help="JSON file with points and dist (default: the bundled example)")
    p.add_argument("--delta", type=_number, required=True)
    p.set_defaults(make=_cfg_delta_card)

    p = sub.add_parser("check", help="search a pool for an (m, n) witness")
    p.add_argument("--system", required=True, help="system kind or JSON file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=_number, required=True)
    p.add_argument("--restarts", type=int)
    _search_flags(p)
    p.set_defaults(make=_cfg_check)

    p = sub.add_parser("classify", help="fill the (m, n) table for a system")
    p.add_argument("--system", required=True, help="system kind or JSON file")
    p.add_argument("--grid", type=int, default=8, help="largest m in the table")
    p.add_argument("--scales", type=_number, nargs="+", help="delta values to search at")
    p.add_argument("--hyperexp-scales", type=float, nargs="+", help="multiples of the hyper-expansive constant")
    p.add_argument("--converse-witnesses", action="store_true", help="seed the table with converse witnesses")
    p.add_argument("--skip-implied", action="store_true", help="do not search cells already implied")
    _search_flags(p)
    p.set_defaults(make=_cfg_classify)

    p = sub.add_parser("construct", help="run an explicit witness construction")
    p.add_argument("construction", choices=sorted(CONSTRUCTIONS))
    p.add_argument("--config", help="construction config (full experiment config or bare params)")
    p.add_argument("--seed", type=int)
    p.set_defaults(make=_cfg_construct)

    p = sub.add_parser("hyper", help="Hausdorff distance and hyperspace separation")
    p.add_argument("--system", required=True, help="system kind or JSON file")
    p.add_argument("--a", required=True, help="first compactum: JSON list or file")
    p.add_argument("--b", required=True, help="second compactum: JSON list or file")
    p.add_argument("--delta", type=_number)
    p.add_argument("--window", type=int)
    p.set_defaults(make=_cfg_hyper)

    p = sub.add_parser("selftest", help="property suite and canonical constructions")
    p.add_argument("--inject", choices=["asymmetric", "margin"], help="plant a known fault")
    p.set_defaults(make=_cfg_selftest)

    p = sub.add_parser("run", help="run a JSON experiment config, or a subcommand")
    p.add_argument("target", help="config file, or a subcommand name followed by its flags")
    p.add_argument("rest", nargs=argparse.REMAINDER)
    p.set_defaults(make=None)
    return parser


def _resolve(parser: argparse.ArgumentParser, argv: list[str]):
    args = parser.parse_args(argv)
    if args.command != "run":
        return args, args.make(args)
    if args.target in SUBCOMMANDS:
        inner = parser.parse_args(
            [*(["--out", args.out] if args.out else []), *(["--name", args.name] if args.name else []),
             *(["--timing"] if args.timing else []), args.target, *args.rest])
        return inner, inner.make(inner)
    if args.rest:
        parser.error(f"unexpected arguments after config file: {' '.join(args.rest)}")
    return args, load_config(args.target)


def _summary(report: dict) -> str:
    res = report["results"]
    op = report["operation"]
    if "error" in res:
        return res["error"]
    if op == "delta-card":
        return f"delta-cardinality {res['cardinality']} at delta {res['delta']}"
    if op == "selftest":
        bad = res["first_failure"]
        return "all checks passed" if bad is None else f"failed: {bad}"
    if op == "classify":
        return "\n" + res["rendered"]
    if "witness" in res:
        w = res["witness"]
        return f"witness {res['id']} claim {tuple(w['claim'])}, {w['label']}"
    return ""


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    start = time.perf_counter()
    try:
        args, cfg = _resolve(parser, argv)
        report, status = run_config(cfg)
    except ConfigError as exc:
        print(f"mnexp: config error: {exc}", file=sys.stderr)
        return 2
    out_dir = args.out or cfg.get("output", {}).get("dir")
    name = args.name or cfg.get("output", {}).get("name") or report["operation"]
    if out_dir:
        path = write_report(report, out_dir, name)
        print(f"report: {path}")
    else:
        sys.stdout.write(dumps(report))
    summary = _summary(report)
    if status:
        print(f"mnexp: verification failed: {summary}", file=sys.stderr)
    elif out_dir and summary:
        print(summary)
    if args.timing:
        print(f"elapsed: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
