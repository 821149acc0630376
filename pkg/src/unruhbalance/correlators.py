"""Correlation function and commutator of the free scalar field.

The symmetrised correlation contains an infinite constant, so it is only
ever exposed as a difference ``C(a) - C(b)`` between two separations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import PhysicalParams
from .quadrature import QuadratureSpec, regulated_ladder, regulator_extrapolate

__all__ = [
    "LightConeError",
    "SpacetimeSeparation",
    "CorrelationDifference",
    "ModeSumConfig",
    "log_abs_sinh",
    "thermal_correlation_diff",
    "fixed_point_correlation_diff",
    "zero_temp_correlation_diff",
    "correlation_difference",
    "correlation_time_derivative",
    "correlation_time_derivative_spectral",
    "field_commutator",
    "mode_sum_correlation_diff",
    "boost",
]


class LightConeError(ValueError):
    """A separation lies exactly on the light cone, where the correlator is singular."""


@dataclass(frozen=True)
class SpacetimeSeparation:
    dy: float
    dt: float

    def interval(self, c: float) -> float:
        """``dt^2 - dy^2/c^2`` (positive for timelike separations)."""
        return self.dt**2 - (self.dy / c) ** 2


@dataclass(frozen=True)
class CorrelationDifference:
    a: SpacetimeSeparation
    b: SpacetimeSeparation
    value: float


@dataclass(frozen=True)
class ModeSumConfig:
    L: float
    k_max: float

    def __post_init__(self):
        if not (self.L > 0 and self.k_max > 0):
            raise ValueError("L and k_max must be positive")

    @property
    def n_modes(self) -> int:
        """Number of positive wavenumbers ``2 pi n / L <= k_max``."""
        return int(math.floor(self.L * self.k_max / (2 * math.pi) + 1e-9))


def _sep(s) -> SpacetimeSeparation:
    if isinstance(s, SpacetimeSeparation):
        return s
    dy, dt = s
    return SpacetimeSeparation(float(dy), float(dt))


def log_abs_sinh(x):
    """``log|sinh x|`` without overflow for large ``|x|``."""
    ax = np.abs(np.asarray(x, dtype=float))
    return ax + np.log1p(-np.exp(-2.0 * ax)) - math.log(2.0)


def _check_off_light_cone(s: SpacetimeSeparation, c: float):
    if abs(s.dt) * c == abs(s.dy):
        raise LightConeError(f"separation {s} lies on the light cone")


def _thermal_log_term(p: PhysicalParams, s: SpacetimeSeparation) -> float:
    x = math.pi * p.kT / p.hbar
    return float(log_abs_sinh(x * (s.dt - s.dy / p.c)) + log_abs_sinh(x * (s.dt + s.dy / p.c)))


def thermal_correlation_diff(p: PhysicalParams, a, b) -> float:
    """Finite-temperature correlation difference ``C(a) - C(b)``.

    Negative sinh arguments enter through ``log|sinh|``; because the
    correlation is even under ``(dt, dy) -> (-dt, -dy)`` the discarded
    imaginary parts cancel.
    """
    a, b = _sep(a), _sep(b)
    if p.T <= 0:
        raise ValueError("T must be > 0; use zero_temp_correlation_diff for T = 0")
    _check_off_light_cone(a, p.c)
    _check_off_light_cone(b, p.c)
    pref = -p.hbar / (4 * math.pi * p.sigma * p.c)
    return pref * (_thermal_log_term(p, a) - _thermal_log_term(p, b))


def fixed_point_correlation_diff(p: PhysicalParams, dt_a: float, dt_b: float) -> float:
    """Thermal correlation difference at a fixed point of the string (``dy = 0``)."""
    if dt_a <= 0 or dt_b <= 0:
        raise ValueError("time lags must be positive (the correlation is even in dt)")
    if p.T <= 0:
        raise ValueError("T must be > 0; use zero_temp_correlation_diff for T = 0")
    x = math.pi * p.kT / p.hbar
    pref = -p.hbar / (2 * math.pi * p.sigma * p.c)
    return pref * float(log_abs_sinh(x * dt_a) - log_abs_sinh(x * dt_b))


def zero_temp_correlation_diff(p: PhysicalParams, a, b) -> float:
    """Vacuum correlation difference; depends only on the invariant intervals."""
    a, b = _sep(a), _sep(b)
    _check_off_light_cone(a, p.c)
    _check_off_light_cone(b, p.c)
    pref = -p.hbar / (4 * math.pi * p.sigma * p.c)
    return pref * (math.log(abs(a.interval(p.c))) - math.log(abs(b.interval(p.c))))


def correlation_difference(p: PhysicalParams, a, b) -> CorrelationDifference:
    """``C(a) - C(b)`` at the temperature in ``p`` as a value object."""
    a, b = _sep(a), _sep(b)
    if p.T > 0:
        value = thermal_correlation_diff(p, a, b)
    else:
        value = zero_temp_correlation_diff(p, a, b)
    return CorrelationDifference(a, b, value)


def correlation_time_derivative(p: PhysicalParams, s) -> float:
    """``dC/d(dt)`` in closed form (finite temperature)."""
    s = _sep(s)
    if p.T <= 0:
        raise ValueError("T must be > 0")
    _check_off_light_cone(s, p.c)
    x = math.pi * p.kT / p.hbar
    u, v = x * (s.dt - s.dy / p.c), x * (s.dt + s.dy / p.c)
    return -(p.kT / (4 * p.sigma * p.c)) * (1 / math.tanh(u) + 1 / math.tanh(v))


def correlation_time_derivative_spectral(
    p: PhysicalParams, s, spec: QuadratureSpec | None = None
) -> tuple[float, float]:
    """Regulated spectral evaluation of ``dC/d(dt)``; returns ``(value, error)``.

    The frequency integral of ``coth * (sin + sin)`` is only conditionally
    convergent; it is damped by ``exp(-eps w)`` and extrapolated to
    ``eps -> 0``.
    """
    s = _sep(s)
    _check_off_light_cone(s, p.c)
    u, v = s.dt - s.dy / p.c, s.dt + s.dy / p.c
    half_beta = p.hbar / (2 * p.kT) if p.T > 0 else math.inf

    def integrand(w):
        return _coth_weight(w, half_beta) * (np.sin(w * u) + np.sin(w * v))

    scale = min(abs(u), abs(v))
    lad = regulated_ladder(integrand, scale, spec, oscillation=max(abs(u), abs(v)))
    ext = regulator_extrapolate(lad)
    pref = -p.hbar / (4 * math.pi * p.sigma * p.c)
    return pref * ext.value, abs(pref) * ext.error_estimate


def _coth_weight(w, half_beta):
    """``coth(half_beta * w)``, with the ``T = 0`` limit ``1`` for ``w > 0``."""
    w = np.asarray(w, dtype=float)
    if math.isinf(half_beta):
        return np.ones_like(w)
    x = half_beta * w
    with np.errstate(divide="ignore"):
        return 1.0 / np.tanh(x)


def field_commutator(p: PhysicalParams, s) -> complex:
    """``[u(y1,t1), u(y2,t2)]``: ``(hbar/2i sigma c) sgn(dt)`` inside the light cone, 0 outside."""
    s = _sep(s)
    interval = s.interval(p.c)
    if interval == 0.0:
        raise LightConeError("commutator is undefined exactly on the light cone")
    if interval < 0:
        return 0j
    return complex(0.0, -math.copysign(p.hbar / (2 * p.sigma * p.c), s.dt))


def mode_sum_correlation_diff(p: PhysicalParams, cfg: ModeSumConfig, a, b) -> float:
    """Finite-string normal-mode sum for ``C(a) - C(b)`` (brute-force oracle).

    Sums over ``k = +-2 pi n / L`` for ``n = 1..N``; the ``k = 0`` mode drops
    out of differences.
    """
    a, b = _sep(a), _sep(b)
    n = cfg.n_modes
    if n > 50_000_000:
        raise OverflowError(f"{n} modes requested; reduce L * k_max")
    if n < 1:
        raise ValueError("no modes below k_max")
    k = 2 * np.pi * np.arange(1, n + 1) / cfg.L
    w = p.c * k
    if p.T > 0:
        weight = 1.0 / (w * np.tanh(p.hbar * w / (2 * p.kT)))
    else:
        weight = 1.0 / w
    total = 0.0
    for sign in (1.0, -1.0):
        ks = sign * k
        total += float(
            np.sum(weight * (np.cos(ks * a.dy - w * a.dt) - np.cos(ks * b.dy - w * b.dt)))
        )
    return p.hbar / (2 * p.sigma * cfg.L) * total


def boost(s, v: float, c: float = 1.0) -> SpacetimeSeparation:
    """Lorentz-transform a separation with velocity ``v`` (``|v| < c``)."""
    s = _sep(s)
    if not abs(v) < c:
        raise ValueError("boost velocity must satisfy |v| < c")
    gamma = 1.0 / math.sqrt(1 - (v / c) ** 2)
    return SpacetimeSeparation(gamma * (s.dy - v * s.dt), gamma * (s.dt - v * s.dy / c**2))
