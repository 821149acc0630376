"""Hyperbolic worldline, retarded time and the Unruh temperature."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .params import PhysicalParams

__all__ = [
    "Worldline",
    "FieldPoint",
    "RetardedTime",
    "CausalityError",
    "worldline_position",
    "worldline_velocity",
    "invariant_interval",
    "unruh_temperature",
    "retarded_time_closed",
    "retarded_time_solve",
]


class CausalityError(ValueError):
    """The field point lies outside the forward light cone of the whole worldline."""


@dataclass(frozen=True)
class Worldline:
    """Uniformly accelerated path ``y = (mc^2/F) cosh(F tau/mc)``, ``t = (mc/F) sinh(F tau/mc)``."""

    m: float = 1.0
    c: float = 1.0
    F: float = 1.0

    def __post_init__(self):
        if not self.F > 0:
            raise ValueError("hyperbolic motion needs F > 0")
        if not (self.m > 0 and self.c > 0):
            raise ValueError("m and c must be positive")

    @classmethod
    def from_params(cls, p: PhysicalParams) -> "Worldline":
        return cls(m=p.m, c=p.c, F=p.F)

    @property
    def time_scale(self) -> float:
        """``mc/F``: proper time per unit rapidity."""
        return self.m * self.c / self.F

    @property
    def turning_point(self) -> float:
        """``mc^2/F``, the closest approach to the origin."""
        return self.m * self.c**2 / self.F


@dataclass(frozen=True)
class FieldPoint:
    y: float
    t: float


@dataclass(frozen=True)
class RetardedTime:
    tau_ret: float
    dilation: float


def worldline_position(w: Worldline, tau: float) -> tuple[float, float]:
    s = tau / w.time_scale
    return w.turning_point * math.cosh(s), w.time_scale * math.sinh(s)


def worldline_velocity(w: Worldline, tau: float) -> float:
    return w.c * math.tanh(tau / w.time_scale)


def invariant_interval(w: Worldline, tau1: float, tau2: float) -> float:
    """``(dt^2 - dy^2/c^2)^(1/2)`` between two worldline events, signed by ``tau1 - tau2``."""
    return 2 * w.time_scale * math.sinh((tau1 - tau2) / (2 * w.time_scale))


def unruh_temperature(p: PhysicalParams) -> float:
    """``T_U = hbar F / (2 pi m c kB)``."""
    if not (p.F > 0 and p.m > 0):
        raise ValueError("Unruh temperature needs F > 0 and m > 0")
    return p.hbar * p.F / (2 * math.pi * p.m * p.c * p.kB)


def retarded_time_closed(w: Worldline, fp: FieldPoint) -> RetardedTime:
    """Closed-form retarded time for field points left of closest approach."""
    if fp.y >= w.turning_point:
        raise ValueError("closed form only holds for y < mc^2/F; use retarded_time_solve")
    advanced = fp.t + fp.y / w.c
    if advanced <= 0:
        raise CausalityError("field point not yet causally connected (t + y/c <= 0)")
    x = advanced / w.time_scale
    return RetardedTime(tau_ret=w.time_scale * math.log(x), dilation=1.0 / x)


def _lag(w: Worldline, fp: FieldPoint, tau: float) -> float:
    y, t = worldline_position(w, tau)
    return fp.t - t - abs(fp.y - y) / w.c


def _bracket(w: Worldline, fp: FieldPoint, guess: float, max_expansions: int):
    half = w.time_scale
    lo, hi = guess - half, guess + half
    f_lo, f_hi = _lag(w, fp, lo), _lag(w, fp, hi)
    for _ in range(max_expansions):
        if f_lo >= 0 >= f_hi:
            break
        if f_lo < 0:
            lo -= half
            f_lo = _lag(w, fp, lo)
        if f_hi > 0:
            hi += half
            f_hi = _lag(w, fp, hi)
        half *= 2
        if not (math.isfinite(f_lo) and math.isfinite(f_hi)):
            break
    return lo, hi, f_lo, f_hi


def retarded_time_solve(w: Worldline, fp: FieldPoint, max_expansions: int = 200) -> RetardedTime:
    """Retarded time by root finding on ``t - t(tau) = |y - y(tau)|/c``.

    The residual is strictly decreasing in ``tau`` (the worldline is
    timelike), so a sign-changing bracket is grown geometrically around a
    starting guess and then refined by Brent's method.
    """
    ts = w.time_scale
    guess = 0.0
    advanced = fp.t + fp.y / w.c
    if fp.y < w.turning_point:
        if advanced <= 0:
            raise CausalityError(f"no retarded time: field point {fp} precedes the first signal")
        guess = ts * math.log(advanced / ts)
    try:
        lo, hi, f_lo, f_hi = _bracket(w, fp, guess, max_expansions)
    except (OverflowError, ZeroDivisionError):
        lo = hi = f_lo = f_hi = math.nan
    if not (f_lo >= 0 >= f_hi):
        raise CausalityError(f"no retarded time found for field point {fp}")
    if f_lo == 0:
        tau = lo
    elif f_hi == 0:
        tau = hi
    else:
        tau = brentq(lambda x: _lag(w, fp, x), lo, hi, xtol=1e-15 * ts, rtol=1e-15, maxiter=500)
    y_ret, _ = worldline_position(w, tau)
    s = tau / ts
    side = 1.0 if y_ret >= fp.y else -1.0
    # d tau/dt from implicit differentiation of the light-cone condition
    dilation = 1.0 / (math.cosh(s) + side * math.sinh(s))
    return RetardedTime(tau_ret=tau, dilation=dilation)
