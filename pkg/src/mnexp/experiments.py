"""Config-driven operations: each takes a validated config and returns a report."""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable

import jsonschema

from .constructions import (
    SpliceSpec,
    build_splice,
    canonical_splice_spec,
    example_42,
    four_orbit_system,
    four_point_witness,
    hyperexp_constant,
    hyperexp_converse_witness,
    orbit_four_points,
    peano_witness,
    shift_degenerate_points,
    shift_four_points,
    spread_points,
    verify_32_expansive,
    wide_splice_spec,
)
from .expansivity import BudgetExhausted, WitnessError, WitnessSet, classify, find_refuting_witness
from .hyperspace import Compactum, hausdorff_dist, hyper_separation
from .metric_core import FiniteMetricSpace, MetricError, PreconditionError, delta_cardinality_bruteforce, delta_separated_subset
from .reporting import envelope
from .systems import CatMap, ConfigError, OrbitSystem, ShiftSystem, canonical_one_orbit, system_from_config
from .systems.orbit import OrbitSystemError

VERIFICATION_ERRORS = (WitnessError, PreconditionError, ValueError)


def schema() -> dict:
    text = resources.files("mnexp").joinpath("data/experiment.schema.json").read_text()
    return json.loads(text)


def validate_config(cfg: Any) -> dict:
    try:
        jsonschema.validate(cfg, schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from exc
    return cfg


def load_config(path: str | Path) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return validate_config(cfg)


def number(x):
    """Config numbers: JSON numbers stay as they are, strings like "1/8" become Fractions."""
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError as exc:
            raise ConfigError(f"not a number: {x!r}") from exc
    return x


def _params(cfg: dict) -> dict:
    return cfg.get("params", {})


def _system(cfg: dict, default: Callable | None = None):
    if "system" in cfg:
        try:
            return system_from_config(cfg["system"])
        except OrbitSystemError as exc:
            raise ConfigError(str(exc)) from exc
    if default is None:
        raise ConfigError("this operation needs a system")
    return default()


def _points(system, data) -> list:
    try:
        return [system.point_from_json(p) for p in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad point in config: {exc}") from exc


def witness_entry(W: WitnessSet) -> dict:
    return {"id": W.witness_id, "witness": W.to_json(), "profiles": {W.witness_id: W.profile_csv()}}


# -- operations -------------------------------------------------------------------

def op_delta_card(cfg: dict) -> tuple[dict, int]:
    p = _params(cfg)
    try:
        if "space" in p:
            space = FiniteMetricSpace.from_json(p["space"])
        elif "space_path" in p:
            space = FiniteMetricSpace.load(p["space_path"])
        else:
            raise ConfigError("delta-card needs params.space or params.space_path")
    except OSError as exc:
        raise ConfigError(f"cannot read space: {exc}") from exc
    except MetricError as exc:
        raise ConfigError(f"metric validation failed: {exc}") from exc
    delta = number(p["delta"])
    subset = delta_separated_subset(space, delta)
    out = {"delta": delta, "points": len(space), "cardinality": len(subset), "separated_subset": subset}
    if len(space) <= 20:
        out["bruteforce"] = delta_cardinality_bruteforce(space, delta)
    status = 0 if out.get("bruteforce", len(subset)) == len(subset) else 1
    return out, status


def _pool(system, p: dict, seed: int) -> list:
    pool = _points(system, p["pool"]) if "pool" in p else []
    if p.get("arc_pool") and hasattr(system, "arc_pool"):
        a = p["arc_pool"]
        pool += system.arc_pool(int(a.get("size", 8)), float(a.get("start", 0.0)), float(a.get("length", 0.05)))
    if p.get("splice_shadows"):
        spec = wide_splice_spec(window=int(p.get("window", 600)))
        pool += list(build_splice(spec).points)
    if "truncation" in p and isinstance(system, OrbitSystem):
        pool += system.truncation(int(p["truncation"]))
    if "pool_size" in p:
        pool += system.sample(int(p["pool_size"]), seed)
    pool = list(dict.fromkeys(pool))
    if not pool:
        raise ConfigError("no pool: give pool, pool_size, arc_pool, truncation or splice_shadows")
    return pool


def op_check(cfg: dict) -> tuple[dict, int]:
    system = _system(cfg)
    p, seed = _params(cfg), int(cfg["seed"])
    for key in ("m", "n", "delta", "window"):
        if key not in p:
            raise ConfigError(f"check needs params.{key}")
    pool = _pool(system, p, seed)
    m, n, delta, window = int(p["m"]), int(p["n"]), number(p["delta"]), int(p["window"])
    out: dict = {"m": m, "n": n, "delta": delta, "window": window, "pool_size": len(pool)}
    try:
        W = find_refuting_witness(system, m, n, delta, window, pool, budget=int(p.get("budget", 200_000)),
                                  seed=seed, restarts=int(p.get("restarts", 200)))
    except BudgetExhausted as exc:
        out.update(outcome="gave-up", evaluated=exc.evaluated)
        return out, 0
    if W is None:
        out["outcome"] = "none-in-pool"
    else:
        out.update(outcome="found", **witness_entry(W))
    return out, 0


def op_classify(cfg: dict) -> tuple[dict, int]:
    system = _system(cfg)
    p, seed = _params(cfg), int(cfg["seed"])
    max_m = int(p.get("max_m", 8))
    window = int(p.get("window", 10))
    scales = [number(s) for s in p.get("scales", [])]
    witnesses: list[WitnessSet] = []
    extra: dict = {}
    if p.get("hyperexp_scales"):
        const = hyperexp_constant(system)
        extra["hyperexp_constant"] = const.to_json()
        scales += [const.delta * float(f) for f in p["hyperexp_scales"]]
    if not scales:
        raise ConfigError("classify needs params.scales or params.hyperexp_scales")
    if p.get("converse_witnesses"):
        for delta in scales:
            witnesses += [hyperexp_converse_witness(system, delta, m) for m in range(4, max_m + 1)]
    pool = _pool(system, p, seed)
    table, report = classify(system, pool, scales, window, max_m=max_m, budget=int(p.get("budget", 200_000)),
                             seed=seed, witnesses=witnesses, skip_implied=bool(p.get("skip_implied", False)))
    report.update(extra)
    status = 0 if not report["audit"] and not report["monotonicity_violations"] else 1
    return report, status


def _construct_four_point(cfg: dict) -> tuple[dict, int]:
    p = _params(cfg)
    preset = p.get("preset")
    window = int(p.get("window", 30))
    if preset in ("shift", "shift-degenerate"):
        system = _system(cfg, ShiftSystem)
        delta = number(p.get("delta", "1/4"))
        pts = shift_four_points(system) if preset == "shift" else shift_degenerate_points(system)
    elif preset == "orbit":
        system = _system(cfg, four_orbit_system)
        delta = float(p.get("delta", 0.1))
        pts = orbit_four_points(system, delta)
    else:
        system = _system(cfg)
        delta = number(p["delta"])
        pts = _points(system, [p[k] for k in ("x1", "x2", "y1", "y2")])
    W = four_point_witness(system, delta, *pts, window)
    return {"system": system.to_config(), "delta": delta, **witness_entry(W)}, 0


def _construct_peano(cfg: dict) -> tuple[dict, int]:
    p, seed = _params(cfg), int(cfg["seed"])
    system = CatMap()
    if "base" in p:
        base = [tuple(float(c) for c in pt) for pt in p["base"]]
    else:
        base = spread_points(int(p.get("n", 1)), seed, float(p.get("min_dist", 0.2)), system)
    delta = float(p.get("delta", 2e-3))
    W = peano_witness(system, base, delta, int(p.get("window", 15)),
                      delta_prime=p.get("delta_prime"), eta=p.get("eta"))
    return {"delta": delta, **witness_entry(W)}, 0


def _splice_spec(cfg: dict) -> SpliceSpec:
    p = _params(cfg)
    window = int(p.get("window", 600))
    preset = p.get("preset", "wide")
    if preset == "canonical":
        spec = canonical_splice_spec(window)
    elif preset == "wide":
        spec = wide_splice_spec(window=window)
    elif preset == "explicit":
        system = ShiftSystem()
        x, y = _points(system, [p["x"], p["y"]])
        spec = SpliceSpec(x, y, tuple(p["markers"]), tuple(p["cuts"]), int(p["m"]), number(p["epsilon"]),
                          number(p["rho"]) if "rho" in p else None, number(p["jump"]) if "jump" in p else None,
                          window, system)
    else:
        raise ConfigError(f"unknown splice preset {preset!r}")
    return spec.with_m(int(p["m"])) if "m" in p else spec


def _construct_splice(cfg: dict) -> tuple[dict, int]:
    spec = _splice_spec(cfg)
    W = build_splice(spec)
    return {"spec": spec.to_json(), **witness_entry(W)}, 0


def _construct_hyperexp(cfg: dict) -> tuple[dict, int]:
    p = _params(cfg)
    system = _system(cfg, canonical_one_orbit)
    const = hyperexp_constant(system, int(p.get("truncation", 40)))
    T = int(p.get("verify_truncation", 30))
    window = p.get("window")
    verify = verify_32_expansive(system, const.delta, T, None if window is None else int(window))
    factor = float(p.get("vacuity_factor", 10))
    vacuity = verify_32_expansive(system, factor * const.delta, T, None if window is None else int(window))
    converse = {}
    for m in p.get("converse_m", [4, 5]):
        W = hyperexp_converse_witness(system, const.delta, int(m))
        converse[str(m)] = witness_entry(W)
    out = {
        "system": system.to_config(),
        "constant": const.to_json(),
        "verify": verify,
        "not_vacuous": {"factor": factor, "delta": vacuity["delta"], "failure_count": vacuity["failure_count"],
                        "failures": vacuity["failures"][:5]},
        "converse": converse,
    }
    status = 0 if verify["failure_count"] == 0 and vacuity["failure_count"] > 0 else 1
    return out, status


def _construct_example_42(cfg: dict) -> tuple[dict, int]:
    p = _params(cfg)
    system = _system(cfg) if "system" in cfg else None
    report = example_42(float(p.get("epsilon", 0.01)), int(p.get("truncation", 25)), system)
    report["profiles"] = {_wid(report): report["not_32"].pop("profile_csv")}
    status = 0 if report["no_42_on_truncation"]["refuting_4_subsets"] == 0 else 1
    return report, status


def _wid(report: dict) -> str:
    return report["hierarchy"]["table"]["cells"]["3,2"]["witness"]


CONSTRUCTIONS = {
    "four-point": _construct_four_point,
    "peano": _construct_peano,
    "splice": _construct_splice,
    "hyperexp": _construct_hyperexp,
    "example-42": _construct_example_42,
}


def op_construct(cfg: dict) -> tuple[dict, int]:
    name = _params(cfg).get("construction")
    if name not in CONSTRUCTIONS:
        raise ConfigError(f"unknown construction {name!r}")
    return CONSTRUCTIONS[name](cfg)


def op_hyper(cfg: dict) -> tuple[dict, int]:
    system = _system(cfg)
    p = _params(cfg)
    A = Compactum(system, _points(system, p["a"]))
    B = Compactum(system, _points(system, p["b"]))
    out: dict = {"hausdorff": hausdorff_dist(A, B)}
    if "delta" in p:
        window = int(p.get("window", 10))
        out.update(delta=number(p["delta"]), window=window,
                   separating_k=None if A == B else hyper_separation(A, B, number(p["delta"]), window))
    return out, 0


def op_selftest(cfg: dict) -> tuple[dict, int]:
    from .selftest import run_selftest
    return run_selftest(_params(cfg).get("inject"))


OPERATIONS = {
    "delta-card": op_delta_card,
    "check": op_check,
    "classify": op_classify,
    "construct": op_construct,
    "hyper": op_hyper,
    "selftest": op_selftest,
}


def run_config(cfg: dict) -> tuple[dict, int]:
    """Validate, run, and wrap the result; returns ``(report, exit status)``.

    Verification failures give status 1 with the error recorded in the
    report; configuration problems raise ConfigError.
    """
    validate_config(cfg)
    op = cfg["operation"]
    try:
        results, status = OPERATIONS[op](cfg)
    except ConfigError:
        raise
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"missing or malformed parameter: {exc}") from exc
    except VERIFICATION_ERRORS as exc:
        results, status = {"error": f"{type(exc).__name__}: {exc}"}, 1
    return envelope(op, cfg, results), status
