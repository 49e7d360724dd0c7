"""Finitely representable homeomorphisms of compact metric spaces."""
from .base import DynamicalSystem, TailCertificate
from .orbit import (
    FixedPoint,
    Orbit,
    OrbitPoint,
    OrbitSystem,
    OrbitSystemError,
    UnknownPoint,
    canonical_one_orbit,
    embed,
    orbit_apply,
    orbit_system_from_config,
)
from .shift import AlphabetMismatch, ShiftSystem, SymbolicPoint, shift_apply, shift_dist, splice
from .torus import CatMap, Rotation, arc_dist, cat_apply, rotation_apply, torus_dist

__all__ = [
    "AlphabetMismatch", "CatMap", "DynamicalSystem", "FixedPoint", "Orbit", "OrbitPoint",
    "OrbitSystem", "OrbitSystemError", "Rotation", "ShiftSystem", "SymbolicPoint", "TailCertificate",
    "UnknownPoint", "arc_dist", "canonical_one_orbit", "cat_apply", "embed", "orbit_apply",
    "orbit_system_from_config", "rotation_apply", "shift_apply", "shift_dist", "splice",
    "system_from_config", "torus_dist",
]


class ConfigError(ValueError):
    pass


def system_from_config(cfg: dict) -> DynamicalSystem:
    """Build a system from ``{"kind": "shift"|"orbit"|"cat"|"rotation", ...}``."""
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise ConfigError('system config must be an object with a "kind"')
    kind = cfg["kind"]
    try:
        if kind == "shift":
            return ShiftSystem(int(cfg.get("alphabet_size", 2)), int(cfg.get("sample_radius", 6)))
        if kind == "orbit":
            return orbit_system_from_config(cfg)
        if kind == "cat":
            return CatMap()
        if kind == "rotation":
            return Rotation(float(cfg["alpha"])) if "alpha" in cfg else Rotation()
    except (KeyError, TypeError, OrbitSystemError) as exc:
        raise ConfigError(f"invalid {kind} system config: {exc}") from exc
    raise ConfigError(f"unknown system kind {kind!r}")
