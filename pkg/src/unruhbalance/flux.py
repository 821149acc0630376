"""Energy flux radiated by the oscillator and its cancellation in equilibrium.

The flux at a field point splits into a free-field part, a direct part
(driven by the oscillator's own motion) and an interference part (the cross
term between oscillator and incoming field).  Direct and interference parts
both diverge logarithmically at high frequency, so every result is given for
a hard cutoff ``cutoff``.  The two densities are integrated on the same
quadrature nodes, which is what makes their sum vanish to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .kinematics import FieldPoint, Worldline, retarded_time_closed
from .params import PhysicalParams
from .quadrature import QuadratureError, QuadratureSpec, integrate_panels
from .response import (
    absorption_density,
    half_beta_moving,
    half_beta_stationary,
    integrate_spectral,
    radiation_density,
    spectral_breakpoints,
)

__all__ = [
    "Side",
    "FluxReport",
    "free_field_flux",
    "direct_flux_stationary",
    "interference_flux_stationary",
    "net_flux_stationary",
    "direct_flux_moving",
    "interference_flux_moving",
    "interference_flux_moving_unfolded",
    "net_flux_moving",
]


class Side(Enum):
    LEFT = -1
    RIGHT = 1

    @classmethod
    def parse(cls, side) -> "Side":
        if isinstance(side, Side):
            return side
        try:
            return cls[str(side).upper()]
        except KeyError:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}") from None


@dataclass(frozen=True)
class FluxReport:
    """Flux decomposition at one field point (moving case) or side (stationary case).

    ``causal`` is False when the field point has not yet received any signal
    from the oscillator; all fluxes are then zero.
    """

    j_direct: float
    j_interference: float
    j_free: float
    j_net: float
    cutoff_omega: float
    field_point: FieldPoint | None = None
    side: Side | None = None
    dilation: float | None = None
    error_estimate: float = 0.0
    causal: bool = True

    @property
    def relative_net(self) -> float:
        """``|j_net| / |j_direct|`` (``nan`` when the direct flux vanishes)."""
        return abs(self.j_net) / abs(self.j_direct) if self.j_direct else math.nan


def free_field_flux(
    p: PhysicalParams,
    L: float = 100.0,
    n_modes: int = 10_000,
    unpaired: int = 0,
) -> float:
    """Flux of the field alone, as a finite-string mode sum over ``+-k`` pairs.

    Each pair contributes ``k w(k) + (-k) w(-k)`` with an even weight, which
    is exactly zero in floating point.  ``unpaired`` adds that many ``+k``
    modes without partners; it exists to show the sum is not trivially zero.
    """
    if not (L > 0 and n_modes >= 1):
        raise ValueError("L must be positive and n_modes >= 1")
    k = 2 * np.pi * np.arange(1, n_modes + 1) / L
    w = p.c * k
    if p.T > 0:
        with np.errstate(over="ignore"):
            weight = 1.0 / np.tanh(p.hbar * w / (2 * p.kT))
    else:
        weight = np.ones_like(w)
    pref = p.hbar * p.c / (2 * L)
    # each mode carries hbar w coth / 2L at velocity c sgn(k)
    right = w * weight
    pairs = right + (-right)
    total = float(np.sum(pairs))
    if unpaired:
        total += float(np.sum(right[:unpaired]))
    return pref * total


def _stationary_parts(p, cutoff, spec):
    hb = half_beta_stationary(p)

    def both(w):
        return np.stack([radiation_density(p, w, hb), absorption_density(p, w, hb)])

    res = integrate_spectral(p, both, cutoff, hb, spec)
    rad, absorbed = (p.hbar / math.pi) * res.value
    return float(rad), float(absorbed), res.error_estimate * p.hbar / math.pi


def direct_flux_stationary(p: PhysicalParams, side, cutoff: float, spec: QuadratureSpec | None = None) -> float:
    """Half the radiated power, outward on each side: positive to the right."""
    s = Side.parse(side).value
    rad, _, _ = _stationary_parts(p, cutoff, spec)
    return 0.5 * s * rad


def interference_flux_stationary(
    p: PhysicalParams, side, cutoff: float, spec: QuadratureSpec | None = None
) -> float:
    """Cross term between oscillator and thermal field; opposite in sign to the direct flux."""
    s = Side.parse(side).value
    _, absorbed, _ = _stationary_parts(p, cutoff, spec)
    return -0.5 * s * absorbed


def net_flux_stationary(
    p: PhysicalParams, side, cutoff: float, spec: QuadratureSpec | None = None
) -> FluxReport:
    side = Side.parse(side)
    rad, absorbed, err = _stationary_parts(p, cutoff, spec)
    j_direct = 0.5 * side.value * rad
    j_int = -0.5 * side.value * absorbed
    j_free = free_field_flux(p)
    return FluxReport(
        j_direct=j_direct,
        j_interference=j_int,
        j_free=j_free,
        j_net=j_direct + j_int + j_free,
        cutoff_omega=cutoff,
        side=side,
        error_estimate=err,
    )


def _dilation(p: PhysicalParams, fp: FieldPoint) -> float | None:
    """``d tau_ret / dt`` at a left-side field point, or None before the first signal."""
    if not p.F > 0:
        raise ValueError("hyperbolic motion needs F > 0")
    wl = Worldline.from_params(p)
    if fp.y >= wl.turning_point:
        raise ValueError("moving-case fluxes are only defined left of closest approach (y < mc^2/F)")
    if fp.t + fp.y / p.c <= 0:
        return None
    return retarded_time_closed(wl, fp).dilation


def _moving_parts(p, cutoff, spec):
    hb = half_beta_moving(p)

    def both(w):
        return np.stack([radiation_density(p, w, hb), absorption_density(p, w, hb)])

    res = integrate_spectral(p, both, cutoff, hb, spec)
    rad, absorbed = (p.hbar / (2 * math.pi)) * res.value
    return float(rad), float(absorbed), res.error_estimate * p.hbar / (2 * math.pi)


def direct_flux_moving(
    p: PhysicalParams, fp: FieldPoint, cutoff: float, spec: QuadratureSpec | None = None
) -> float:
    """``-(d tau_ret/dt)^2`` times half the proper-time radiated power; zero before the first signal."""
    d = _dilation(p, fp)
    if d is None:
        return 0.0
    rad, _, _ = _moving_parts(p, cutoff, spec)
    return -d * d * rad


def interference_flux_moving(
    p: PhysicalParams, fp: FieldPoint, cutoff: float, spec: QuadratureSpec | None = None
) -> float:
    """``(d tau_ret/dt)^2 (hbar zeta / 2 pi) int_0^cutoff w^2 Im(alpha) coth(pi m c w / F) dw``."""
    d = _dilation(p, fp)
    if d is None:
        return 0.0
    _, absorbed, _ = _moving_parts(p, cutoff, spec)
    return d * d * absorbed


def _spontaneous_weight(nu):
    """``exp(pi nu) / sinh(pi nu) = 2 / (1 - exp(-2 pi nu))`` without overflow."""
    with np.errstate(over="ignore"):
        return -2.0 / np.expm1(-2 * np.pi * nu)


def interference_flux_moving_unfolded(
    p: PhysicalParams, fp: FieldPoint, cutoff: float, spec: QuadratureSpec | None = None
) -> float:
    """Interference flux over the full symmetric frequency range.

    Uses the kernel weight ``exp(pi nu)/sinh(pi nu)``, ``nu = m c w / F``, on
    ``[-cutoff, cutoff]`` with prefactor ``hbar zeta D^2 / 4 pi``.  The weight
    is ``coth + 1``; the ``+1`` part multiplies an odd density and drops out,
    so this reproduces :func:`interference_flux_moving` by a separate route.
    """
    d = _dilation(p, fp)
    if d is None:
        return 0.0
    ts = p.m * p.c / p.F

    def density(w):
        w = np.asarray(w, dtype=float)
        alpha = 1.0 / (p.K - p.m * w * w - 1j * w * p.zeta)
        nu = ts * w
        # w^2 Im(alpha) e^{pi nu}/sinh(pi nu) with the 1/nu pole of the weight absorbed
        small = np.abs(nu) < 1e-8
        safe = np.where(small, 1.0, nu)
        weight_times_w = np.where(small, 1.0 / (math.pi * ts), w * _spontaneous_weight(safe))
        return w * alpha.imag * weight_times_w

    half = spectral_breakpoints(p, cutoff, half_beta_moving(p))
    edges = np.concatenate([-half[::-1], half[1:]])
    res = integrate_panels(density, edges, spec)
    if not res.converged:
        raise QuadratureError("unfolded interference integral did not converge")
    return d * d * p.hbar * p.zeta / (4 * math.pi) * res.value


def net_flux_moving(
    p: PhysicalParams, fp: FieldPoint, cutoff: float, spec: QuadratureSpec | None = None
) -> FluxReport:
    d = _dilation(p, fp)
    if d is None:
        return FluxReport(0.0, 0.0, 0.0, 0.0, cutoff, field_point=fp, dilation=0.0, causal=False)
    rad, absorbed, err = _moving_parts(p, cutoff, spec)
    j_direct = -d * d * rad
    j_int = d * d * absorbed
    j_free = free_field_flux(p)
    return FluxReport(
        j_direct=j_direct,
        j_interference=j_int,
        j_free=j_free,
        j_net=j_direct + j_int + j_free,
        cutoff_omega=cutoff,
        field_point=fp,
        dilation=d,
        error_estimate=d * d * err,
    )
