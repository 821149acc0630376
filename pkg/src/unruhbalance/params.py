"""Model constants for the oscillator / one-dimensional scalar field system."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

__all__ = [
    "PhysicalParams",
    "NaturalUnits",
    "friction_constant",
    "string_tension",
    "validate",
    "params_from_mapping",
    "load_params",
]


@dataclass(frozen=True)
class PhysicalParams:
    """All constants of the model.

    ``sigma`` is the string mass density, ``c`` the wave speed, ``m`` and
    ``K`` the oscillator mass and spring constant, ``F`` the constant
    driving force of the hyperbolic motion and ``T`` the field temperature.
    The friction constant and tension are derived, never stored.
    """

    sigma: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    kB: float = 1.0
    m: float = 1.0
    K: float = 1.0
    F: float = 1.0
    T: float = 0.0

    @property
    def tension(self) -> float:
        return string_tension(self)

    @property
    def zeta(self) -> float:
        return friction_constant(self)

    @property
    def kT(self) -> float:
        return self.kB * self.T

    @property
    def unruh_kT(self) -> float:
        return self.hbar * self.F / (2 * math.pi * self.m * self.c)

    def replace(self, **changes) -> "PhysicalParams":
        return replace(self, **changes)

    def with_zeta(self, zeta: float) -> "PhysicalParams":
        """Copy with ``sigma`` chosen so the friction constant equals ``zeta``."""
        return replace(self, sigma=zeta / (2 * self.c))

    def at_unruh_temperature(self) -> "PhysicalParams":
        return replace(self, T=self.unruh_kT / self.kB)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class NaturalUnits:
    """Preset with ``sigma = c = hbar = kB = 1``; the oscillator constants stay free."""

    m: float = 1.0
    K: float = 1.0
    F: float = 1.0
    T: float = 0.0

    def expand(self) -> PhysicalParams:
        return PhysicalParams(m=self.m, K=self.K, F=self.F, T=self.T)


def string_tension(p: PhysicalParams) -> float:
    return p.sigma * p.c**2


def friction_constant(p: PhysicalParams) -> float:
    # 2 sqrt(sigma * tension) reduces to 2 sigma c for tension = sigma c^2
    return 2.0 * p.sigma * p.c


def validate(p: PhysicalParams) -> list[str]:
    """Return every violated invariant; an empty list means valid."""
    problems = []
    for name in ("sigma", "c", "hbar", "kB", "m", "K"):
        value = getattr(p, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            problems.append(f"{name} must be positive")
    for name in ("F", "T"):
        value = getattr(p, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
            problems.append(f"{name} must be ≥ 0")
    if not problems:
        via_tension = 2.0 * math.sqrt(p.sigma * string_tension(p))
        if not math.isclose(via_tension, friction_constant(p), rel_tol=1e-15, abs_tol=0.0):
            problems.append("friction constant inconsistent with tension")
    return problems


_FIELD_NAMES = tuple(f.name for f in fields(PhysicalParams))


def params_from_mapping(data: dict, base: PhysicalParams | None = None) -> PhysicalParams:
    """Build params from a flat mapping; absent keys keep the ``base`` values.

    The extra key ``zeta`` is accepted and converted to ``sigma``.
    """
    base = base or PhysicalParams()
    data = dict(data)
    zeta = data.pop("zeta", None)
    unknown = sorted(set(data) - set(_FIELD_NAMES))
    if unknown:
        raise ValueError(f"unknown parameter(s): {', '.join(unknown)}")
    p = replace(base, **{k: float(v) for k, v in data.items()})
    if zeta is not None:
        p = p.with_zeta(float(zeta))
    return p


def load_params(path: str | Path) -> PhysicalParams:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("parameter file must contain a JSON object")
    return params_from_mapping(data)
