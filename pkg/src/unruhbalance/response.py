"""Oscillator response: susceptibility, force and position statistics, radiated power.

Every frequency integral whose convergence is only conditional is damped by
``exp(-eps w)`` and extrapolated to ``eps -> 0``; every integral that
diverges at large ``w`` takes an explicit hard cutoff.  Results carry that
metadata so nothing is renormalised silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .correlators import SpacetimeSeparation, field_commutator
from .kinematics import Worldline, worldline_position
from .params import PhysicalParams
from .quadrature import (
    DEFAULT_LADDER,
    IntegralResult,
    QuadratureError,
    QuadratureSpec,
    integrate_adaptive,
    integrate_panels,
    regulated_ladder,
    regulator_extrapolate,
)

__all__ = [
    "ForceCorrelation",
    "susceptibility",
    "half_beta_stationary",
    "half_beta_moving",
    "omega_coth",
    "radiation_density",
    "absorption_density",
    "spectral_breakpoints",
    "integrate_spectral",
    "position_correlation_stationary",
    "force_correlation_stationary",
    "force_correlation_moving",
    "force_correlation_closed",
    "force_commutator_smeared",
    "radiated_power_stationary",
    "radiated_power_moving",
    "energy_balance_residual",
]


@dataclass(frozen=True)
class ForceCorrelation:
    """Symmetrised force correlation at lag ``dtau``.

    ``epsilons`` lists the regulator values used; ``value`` is their
    extrapolation to zero and ``closed_form`` the analytic value.
    """

    dtau: float
    value: float
    error_estimate: float
    epsilons: tuple[float, ...]
    extrapolated: bool
    method: str
    closed_form: float


def susceptibility(p: PhysicalParams, omega):
    """``alpha(w) = 1 / (K - m w^2 - i w zeta)``; scalar or array."""
    w = np.asarray(omega, dtype=float)
    alpha = 1.0 / (p.K - p.m * w * w - 1j * w * p.zeta)
    return complex(alpha) if alpha.ndim == 0 else alpha


def half_beta_stationary(p: PhysicalParams) -> float:
    """``hbar / 2kT``, infinite at ``T = 0``."""
    return p.hbar / (2 * p.kT) if p.T > 0 else math.inf


def half_beta_moving(p: PhysicalParams) -> float:
    """``pi m c / F``: the thermal factor seen along hyperbolic motion."""
    return math.pi * p.m * p.c / p.F if p.F > 0 else math.inf


def omega_coth(omega, half_beta: float):
    """``w coth(half_beta w)``, finite at ``w = 0``; ``|w|`` when ``half_beta`` is infinite."""
    w = np.asarray(omega, dtype=float)
    if math.isinf(half_beta):
        return np.abs(w)
    with np.errstate(over="ignore"):
        x = half_beta * w
    small = np.abs(x) < 1e-6
    safe = np.where(small, 1.0, x)
    tiny = np.where(small, x, 0.0)
    out = np.where(small, (1.0 + tiny * tiny / 3.0) / half_beta, w / np.tanh(safe))
    return out


def radiation_density(p: PhysicalParams, omega, half_beta: float):
    """``w^3 zeta^2 |alpha|^2 coth``: spectral density of ``zeta <xdot^2>`` up to ``hbar/pi``."""
    w = np.asarray(omega, dtype=float)
    alpha = 1.0 / (p.K - p.m * w * w - 1j * w * p.zeta)
    return p.zeta**2 * w * w * np.abs(alpha) ** 2 * omega_coth(w, half_beta)


def absorption_density(p: PhysicalParams, omega, half_beta: float):
    """``w^2 zeta Im(alpha) coth``: spectral density of the work done by the field."""
    w = np.asarray(omega, dtype=float)
    alpha = 1.0 / (p.K - p.m * w * w - 1j * w * p.zeta)
    return p.zeta * w * alpha.imag * omega_coth(w, half_beta)


def spectral_breakpoints(p: PhysicalParams, cutoff: float, half_beta: float) -> np.ndarray:
    """Initial partition of ``[0, cutoff]`` resolving the resonance and thermal scale."""
    w0 = math.sqrt(p.K / p.m)
    gamma = p.zeta / p.m
    scales = [w0, gamma]
    if math.isfinite(half_beta):
        scales.append(1.0 / half_beta)
    low = min(min(scales) * 1e-3, cutoff / 10)
    pts = [0.0, cutoff, *np.geomspace(low, cutoff, 48)]
    pts += [w0 + k * gamma / 4 for k in range(-8, 9)]
    edges = np.unique([x for x in pts if 0.0 <= x <= cutoff])
    return edges


def integrate_spectral(
    p: PhysicalParams,
    densities: Callable[[np.ndarray], np.ndarray],
    cutoff: float,
    half_beta: float,
    spec: QuadratureSpec | None = None,
) -> IntegralResult:
    """Integrate one or more stacked densities over ``[0, cutoff]`` on shared nodes."""
    if not cutoff > 0:
        raise ValueError("cutoff must be > 0")
    res = integrate_panels(densities, spectral_breakpoints(p, cutoff, half_beta), spec)
    if not res.converged:
        raise QuadratureError("spectral integral did not converge")
    return res


def position_correlation_stationary(
    p: PhysicalParams, dt: float, spec: QuadratureSpec | None = None
) -> float:
    """``(hbar/pi) int_0^inf Im(alpha) coth(hbar w / 2kT) cos(w dt) dw``.

    Absolutely convergent (``Im alpha ~ zeta / m^2 w^3``), so no regulator.
    """
    if p.T < 0:
        raise ValueError("T must be >= 0")
    spec = spec or QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11)
    hb = half_beta_stationary(p)
    w0 = math.sqrt(p.K / p.m)
    gamma = p.zeta / p.m
    split = 20 * max(w0, gamma, 1.0 / hb if math.isfinite(hb) else 0.0)

    def base(w):
        w = np.asarray(w, dtype=float)
        alpha = 1.0 / (p.K - p.m * w * w - 1j * w * p.zeta)
        return p.zeta * np.abs(alpha) ** 2 * omega_coth(w, hb)

    pts = sorted({x for x in (w0 - gamma, w0, w0 + gamma) if 0 < x < split})
    head = integrate_adaptive(lambda w: float(base(w)) * math.cos(w * dt), 0.0, split, spec, points=pts)
    tail = integrate_adaptive(lambda w: float(base(w)), split, math.inf, spec, cos_weight=abs(dt))
    if not (head.converged and tail.converged):
        raise QuadratureError("position correlation did not converge")
    return p.hbar / math.pi * (head.value + tail.value)


def force_correlation_closed(p: PhysicalParams, dt: float, half_beta: float) -> float:
    """Analytic ``(hbar/pi) int zeta w coth(half_beta w) cos(w dt) dw`` (distributional value)."""
    if dt == 0:
        raise ValueError("force correlation diverges at zero lag")
    if math.isinf(half_beta):
        return -p.hbar * p.zeta / (math.pi * dt * dt)
    x = math.pi / (2 * half_beta)
    return -p.hbar * p.zeta * x * x / (math.pi * math.sinh(x * dt) ** 2)


def _force_correlation(p, dt, half_beta, spec, ladder, method) -> ForceCorrelation:
    if dt == 0:
        raise ValueError("force correlation diverges at zero lag")
    if not math.isfinite(dt):
        raise ValueError("lag must be finite")
    lag = abs(dt)

    def integrand(w):
        return omega_coth(w, half_beta) * np.cos(w * lag)

    spec = spec or QuadratureSpec(abs_tol=1e-12, rel_tol=1e-11)
    values = regulated_ladder(integrand, lag, spec, ladder=ladder, oscillation=lag)
    ext = regulator_extrapolate(values, method=method)
    pref = p.hbar * p.zeta / math.pi
    return ForceCorrelation(
        dtau=dt,
        value=pref * ext.value,
        error_estimate=pref * ext.error_estimate,
        epsilons=tuple(e for e, _ in values),
        extrapolated=True,
        method=method,
        closed_form=force_correlation_closed(p, dt, half_beta),
    )


def force_correlation_stationary(
    p: PhysicalParams,
    dt: float,
    spec: QuadratureSpec | None = None,
    ladder=DEFAULT_LADDER,
    method: str = "rational",
) -> ForceCorrelation:
    """Symmetrised correlation of the fluctuating force on a fixed oscillator.

    The regulator ladder is ``eps = r |dt|`` for ``r`` in ``ladder``.
    """
    if p.T < 0:
        raise ValueError("T must be >= 0")
    return _force_correlation(p, dt, half_beta_stationary(p), spec, ladder, method)


def force_correlation_moving(
    p: PhysicalParams,
    dtau: float,
    spec: QuadratureSpec | None = None,
    ladder=DEFAULT_LADDER,
    method: str = "rational",
) -> ForceCorrelation:
    """Force correlation along hyperbolic motion, as a function of proper-time lag."""
    if p.F < 0:
        raise ValueError("F must be >= 0")
    return _force_correlation(p, dtau, half_beta_moving(p), spec, ladder, method)


def _fprime(f: Callable[[float], float], x: float, h: float) -> float:
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def _fsecond(f: Callable[[float], float], x: float, h: float) -> float:
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h)


def force_commutator_smeared(
    p: PhysicalParams,
    testfn: Callable[[float], float],
    route: str = "delta",
    support: tuple[float, float] = (-10.0, 10.0),
    spec: QuadratureSpec | None = None,
) -> complex:
    """``int f(tau) [F(tau), F(0)] dtau`` for a smooth, rapidly decaying ``f``.

    Routes:

    ``"delta"``
        pairs ``f`` with ``2i hbar zeta delta'``, giving ``-2i hbar zeta f'(0)``.
    ``"spectral"``
        regulates ``-i(2 hbar/pi) int zeta w sin(w tau) dw`` with
        ``exp(-eps w)`` (the ``w`` integral is elementary), smears in ``tau``
        and extrapolates ``eps -> 0``.
    ``"worldline"``
        ``zeta^2 d/dtau1 d/dtau2`` of the field commutator evaluated along
        the hyperbolic worldline of ``p`` (a fixed point when ``F = 0``),
        moved onto ``f`` by parts.
    """
    spec = spec or QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11)
    lo, hi = support
    if not lo < 0 < hi:
        raise ValueError("support must contain tau = 0")
    if route == "delta":
        return complex(0.0, -2 * p.hbar * p.zeta * _fprime(testfn, 0.0, 1e-3))
    if route == "spectral":
        def smeared(eps):
            def g(tau):
                return testfn(tau) * 2 * eps * tau / (eps * eps + tau * tau) ** 2

            left = integrate_adaptive(g, lo, 0.0, spec)
            right = integrate_adaptive(g, 0.0, hi, spec)
            return left.value + right.value

        values = [(eps, smeared(eps)) for eps in (0.1 * 2.0**-k for k in range(7))]
        ext = regulator_extrapolate(values)
        return complex(0.0, -2 * p.hbar * p.zeta / math.pi * ext.value)
    if route == "worldline":
        wl = Worldline.from_params(p) if p.F > 0 else None
        origin = worldline_position(wl, 0.0) if wl else (0.0, 0.0)

        def commutator(tau):
            if wl is None:
                sep = SpacetimeSeparation(0.0, tau)
            else:
                y, t = worldline_position(wl, tau)
                sep = SpacetimeSeparation(y - origin[0], t - origin[1])
            return field_commutator(p, sep).imag

        def g(tau):
            return _fsecond(testfn, tau, 1e-2) * commutator(tau)

        total = integrate_adaptive(g, lo, -1e-300, spec).value + integrate_adaptive(g, 1e-300, hi, spec).value
        return complex(0.0, -(p.zeta**2) * total)
    raise ValueError(f"unknown route {route!r}")


def _require_cutoff(spec: QuadratureSpec | None) -> tuple[QuadratureSpec, float]:
    if spec is None or spec.cutoff_omega is None:
        raise ValueError(
            "radiated power diverges logarithmically; pass an explicit cutoff via QuadratureSpec(cutoff_omega=...)"
        )
    return spec, spec.cutoff_omega


def radiated_power_stationary(p: PhysicalParams, spec: QuadratureSpec | None) -> float:
    """``zeta <xdot^2>`` for an oscillator at rest, per cutoff."""
    spec, cutoff = _require_cutoff(spec)
    hb = half_beta_stationary(p)
    res = integrate_spectral(p, lambda w: radiation_density(p, w, hb), cutoff, hb, spec)
    return p.hbar / math.pi * res.value


def radiated_power_moving(p: PhysicalParams, spec: QuadratureSpec | None) -> float:
    """Proper-time rate of energy loss of the accelerated oscillator, per cutoff."""
    if not p.F > 0:
        raise ValueError("hyperbolic motion needs F > 0")
    spec, cutoff = _require_cutoff(spec)
    hb = half_beta_moving(p)
    res = integrate_spectral(p, lambda w: radiation_density(p, w, hb), cutoff, hb, spec)
    return p.hbar / math.pi * res.value


def energy_balance_residual(
    p: PhysicalParams, spec: QuadratureSpec | None, moving: bool = False
) -> float:
    """``zeta <xdot^2> - <xdot F + F xdot>/2`` in the steady state, per cutoff.

    The two terms are integrated as one pointwise difference, so the result
    is the integral of ``zeta w^2 coth (zeta w |alpha|^2 - Im alpha)``.
    """
    spec, cutoff = _require_cutoff(spec)
    hb = half_beta_moving(p) if moving else half_beta_stationary(p)

    def diff(w):
        return radiation_density(p, w, hb) - absorption_density(p, w, hb)

    res = integrate_spectral(p, diff, cutoff, hb, spec)
    return p.hbar / math.pi * res.value
