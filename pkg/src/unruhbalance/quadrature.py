"""Numerical integration services shared by the physics modules.

Three integration paths are provided:

* :func:`integrate_adaptive` wraps QUADPACK (``scipy.integrate.quad``) for
  scalar integrands, including integrable endpoint singularities and
  infinite ranges.
* :func:`integrate_panels` is a vectorised, globally adaptive composite
  Gauss-Legendre rule.  It accepts vector-valued integrands, so several
  integrands can share one set of nodes; the flux cancellation checks rely
  on that.
* :func:`integrate_semiinfinite_regulated` and :func:`oscillatory_integral`
  build on :func:`integrate_panels` for ``e^{-eps w}``-regulated and
  ``e^{i w t}``-weighted integrals.

:func:`regulator_extrapolate` removes the regulator by extrapolating a
ladder of regulated values to ``eps -> 0``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _sp_integrate

__all__ = [
    "QuadratureSpec",
    "IntegralResult",
    "ExtrapolationResult",
    "QuadratureError",
    "integrate_adaptive",
    "integrate_panels",
    "integrate_semiinfinite_regulated",
    "regulated_ladder",
    "regulator_extrapolate",
    "oscillatory_integral",
    "DEFAULT_LADDER",
]

#: Relative epsilon ladder used when removing an exponential regulator.
#: Values are multiplied by the natural time scale of the integrand.
DEFAULT_LADDER = tuple(0.4 * 2.0**-k for k in range(8))

_GL_ORDER = 15
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)
_ROUNDING = 50 * np.finfo(float).eps


class QuadratureError(RuntimeError):
    """Raised when an integral cannot be brought to the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2**18
    regulator_epsilon: float = 0.0
    cutoff_omega: float | None = None

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")
        if self.regulator_epsilon < 0:
            raise ValueError("regulator_epsilon must be >= 0")
        if self.cutoff_omega is not None and not self.cutoff_omega > 0:
            raise ValueError("cutoff_omega must be positive when given")

    def with_(self, **changes) -> "QuadratureSpec":
        return replace(self, **changes)

    def tolerance(self, value) -> float:
        return max(self.abs_tol, self.rel_tol * float(np.max(np.abs(value))))


@dataclass(frozen=True)
class IntegralResult:
    value: float | complex | np.ndarray
    error_estimate: float
    subdivisions_used: int
    converged: bool

    def __float__(self):
        return float(self.value)

    def __complex__(self):
        return complex(self.value)


@dataclass(frozen=True)
class ExtrapolationResult:
    value: float | complex
    error_estimate: float
    method: str


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
    points: Sequence[float] | None = None,
    cos_weight: float | None = None,
) -> IntegralResult:
    """Integrate a real scalar function over ``[a, b]`` with QUADPACK.

    Infinite limits are allowed.  Endpoint singularities are handled by the
    underlying extrapolation (QAGS); interior trouble spots can be listed in
    ``points`` for finite ranges.  ``cos_weight=t`` integrates
    ``f(x) cos(t x)`` with the dedicated Fourier rules (QAWO/QAWF).
    """
    spec = spec or QuadratureSpec()
    limit = int(min(spec.max_subdivisions, 10_000))
    kwargs = dict(epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=limit, full_output=1)
    if cos_weight is not None and cos_weight != 0.0:
        kwargs.update(weight="cos", wvar=float(cos_weight))
        if math.isinf(b):
            # QAWF takes no relative tolerance and a cycle limit instead
            kwargs.pop("epsrel")
            kwargs["limlst"] = kwargs.pop("limit") // 10 or 50
    elif points is not None and math.isfinite(a) and math.isfinite(b):
        kwargs["points"] = list(points)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _sp_integrate.IntegrationWarning)
        out = _sp_integrate.quad(lambda x: float(f(x)), a, b, **kwargs)
    value, err, info = out[0], out[1], out[2]
    # a fourth element (the QUADPACK message) is only present when ier != 0
    ier = 0 if len(out) == 3 else 1
    return IntegralResult(
        value=float(value),
        error_estimate=abs(float(err)),
        subdivisions_used=int(info.get("last", info.get("lst", 1))),
        converged=ier == 0 and err <= spec.tolerance(value) * 10,
    )


def _panel_sums(f, lo, hi):
    """Gauss-Legendre on each panel and on its two halves.

    Returns ``(whole, halves, magnitude)`` with shape ``(m, n_panels)``;
    ``magnitude`` is the panel integral of ``|f|``, used as a rounding floor.
    """
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    quarter = 0.5 * half
    # nodes: whole panel, left half, right half
    xs = np.concatenate(
        [
            mid[:, None] + half[:, None] * _GL_X,
            (lo + quarter)[:, None] + quarter[:, None] * _GL_X,
            (mid + quarter)[:, None] + quarter[:, None] * _GL_X,
        ],
        axis=1,
    )
    vals = np.asarray(f(xs.ravel()))
    vals = np.broadcast_to(vals, vals.shape[:-1] + (xs.size,)) if vals.ndim else np.full(xs.size, vals)
    vals = vals.reshape(vals.shape[:-1] + xs.shape)
    n = _GL_ORDER
    whole = half * np.tensordot(vals[..., :n], _GL_W, axes=([-1], [0]))
    halves = quarter * (
        np.tensordot(vals[..., n : 2 * n], _GL_W, axes=([-1], [0]))
        + np.tensordot(vals[..., 2 * n :], _GL_W, axes=([-1], [0]))
    )
    magnitude = half * np.tensordot(np.abs(vals[..., :n]), _GL_W, axes=([-1], [0]))
    return whole, halves, magnitude


def integrate_panels(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float],
    spec: QuadratureSpec | None = None,
) -> IntegralResult:
    """Globally adaptive composite Gauss-Legendre quadrature.

    ``f`` must be vectorised: given a 1-D array of abscissae of length ``n``
    it returns an array whose last axis has length ``n``.  Leading axes are
    treated as independent components integrated on the *same* nodes, which
    keeps differences between components free of quadrature noise.

    ``breakpoints`` is the initial partition (sorted, finite).  Each round
    every panel whose error estimate exceeds its share of the tolerance is
    bisected.  Panels are summed in ascending order, so results are
    reproducible bit for bit.
    """
    spec = spec or QuadratureSpec()
    edges = np.asarray(breakpoints, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or not np.all(np.isfinite(edges)):
        raise ValueError("breakpoints must be a finite 1-D sequence of length >= 2")
    if np.any(np.diff(edges) <= 0):
        raise ValueError("breakpoints must be strictly increasing")

    lo, hi = edges[:-1], edges[1:]
    done_lo, done_val, done_err = [], [], []
    done_mag = 0.0
    active_val = active_err = None
    converged = False
    total_panels = lo.size
    while True:
        whole, halves, magnitude = _panel_sums(f, lo, hi)
        # differences at rounding level carry no truncation information
        diff = np.maximum(np.abs(halves - whole) - _ROUNDING * magnitude, 0.0)
        err = diff.reshape(-1, lo.size).max(axis=0) if diff.ndim > 1 else diff
        total = sum(np.sum(v, axis=-1) for v in done_val) + np.sum(halves, axis=-1)
        # no point asking for less than the rounding in summing |f| itself
        mag = magnitude.reshape(-1, lo.size).max(axis=0) if magnitude.ndim > 1 else magnitude
        tol = max(spec.tolerance(total), _ROUNDING * (done_mag + float(np.sum(mag))))
        err_total = sum(float(np.sum(e)) for e in done_err) + float(np.sum(err))
        if err_total <= tol:
            converged = True
            active_val, active_err = halves, err
            break
        budget = tol / max(total_panels, 1)
        split = err > budget
        if not np.any(split):
            split = err >= err.max()
        if total_panels + int(split.sum()) > spec.max_subdivisions:
            active_val, active_err = halves, err
            break
        keep = ~split
        done_lo.append(lo[keep])
        done_val.append(halves[..., keep])
        done_err.append(err[keep])
        done_mag += float(np.sum(mag[keep]))
        mid = 0.5 * (lo[split] + hi[split])
        lo, hi = np.concatenate([lo[split], mid]), np.concatenate([mid, hi[split]])
        total_panels += int(split.sum())

    done_lo.append(lo)
    done_val.append(active_val)
    done_err.append(active_err)
    all_lo = np.concatenate(done_lo)
    all_val = np.concatenate(done_val, axis=-1)
    order = np.argsort(all_lo, kind="stable")
    value = np.sum(all_val[..., order], axis=-1)
    err_total = float(np.sum(np.concatenate(done_err)))
    if np.ndim(value) == 0:
        value = value.item()
    return IntegralResult(value, err_total, total_panels, converged)


def _regulated_upper_limit(eps: float, spec: QuadratureSpec) -> float:
    # e^{-eps w} below ~1e-22 of its start; polynomial growth of f absorbed
    return 50.0 / eps


def integrate_semiinfinite_regulated(
    f: Callable[[np.ndarray], np.ndarray],
    spec: QuadratureSpec | None = None,
    oscillation: float = 0.0,
    breakpoints: Sequence[float] | None = None,
) -> IntegralResult:
    """``int_0^inf f(w) exp(-eps w) dw`` at ``eps = spec.regulator_epsilon``.

    ``oscillation`` is the largest angular frequency (in ``w``) at which the
    integrand oscillates; initial panels are no wider than 1/8 of that
    period.  With ``eps = 0`` the integrand must be absolutely integrable
    and QUADPACK's infinite-range rule is used.
    """
    spec = spec or QuadratureSpec()
    eps = spec.regulator_epsilon
    if eps == 0.0:
        return integrate_adaptive(lambda w: f(np.asarray(w)), 0.0, math.inf, spec)
    upper = _regulated_upper_limit(eps, spec)
    width = upper / 64
    if oscillation > 0:
        width = min(width, 2 * math.pi / oscillation / 8)
    edges = np.linspace(0.0, upper, int(math.ceil(upper / width)) + 1)
    # geometric panels near the origin so features much narrower than the
    # regulated range are still seen by the initial partition
    edges = np.unique(np.concatenate([edges, np.geomspace(upper * 1e-9, edges[1], 40)]))
    if breakpoints is not None:
        extra = [b for b in breakpoints if 0 < b < upper]
        edges = np.unique(np.concatenate([edges, extra]))
    return integrate_panels(lambda w: f(w) * np.exp(-eps * w), edges, spec)


def regulated_ladder(
    f: Callable[[np.ndarray], np.ndarray],
    scale: float,
    spec: QuadratureSpec | None = None,
    ladder: Sequence[float] = DEFAULT_LADDER,
    oscillation: float = 0.0,
    breakpoints: Sequence[float] | None = None,
) -> list[tuple[float, float]]:
    """Evaluate the regulated integral on ``eps = r * scale`` for ``r`` in ``ladder``."""
    spec = spec or QuadratureSpec()
    out = []
    for r in ladder:
        eps = r * scale
        res = integrate_semiinfinite_regulated(
            f, spec.with_(regulator_epsilon=eps), oscillation=oscillation, breakpoints=breakpoints
        )
        if not res.converged:
            raise QuadratureError(f"regulated integral did not converge at eps={eps:g}")
        out.append((eps, res.value))
    return out


def _neville(xs, ys):
    """Polynomial extrapolation to x = 0; returns the tableau diagonal."""
    xs = np.asarray(xs, dtype=float)
    p = [np.asarray(y) for y in ys]
    diag = [p[-1]]
    n = len(xs)
    for m in range(1, n):
        p = [
            (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i])
            for i in range(n - m)
        ]
        diag.append(p[-1])
    return diag


def _bulirsch_stoer(xs, ys):
    """Diagonal rational extrapolation to x = 0 (Bulirsch-Stoer tableau)."""
    xs = np.asarray(xs, dtype=float)
    n = len(xs)
    ys = [complex(y) for y in ys]
    tiny = 1e-300
    c = list(ys)
    d = [y + tiny for y in ys]
    # start from the point closest to 0
    ns = n - 1
    y = ys[ns]
    diag = [y]
    ns -= 1
    for m in range(1, n):
        for i in range(n - m):
            w = c[i + 1] - d[i]
            h = xs[i + m]
            t = (xs[i] - 0.0) * d[i] / h
            dd = t - c[i + 1]
            if dd == 0:
                raise ZeroDivisionError("rational extrapolant has a pole at eps = 0")
            dd = w / dd
            d[i] = c[i + 1] * dd
            c[i] = t * dd
        if 2 * (ns + 1) < n - m:
            dy = c[ns + 1]
        else:
            dy = d[ns]
            ns -= 1
        y = y + dy
        diag.append(y)
    return diag


def regulator_extrapolate(
    values: Sequence[tuple[float, float | complex]],
    method: str = "rational",
    power: int = 1,
) -> ExtrapolationResult:
    """Extrapolate regulated values ``(eps, value)`` to ``eps -> 0``.

    The tableau variable is ``eps**power``; use ``power=2`` when the
    regulated value is known to be even in ``eps``.

    ``method="polynomial"`` runs Richardson/Neville polynomial extrapolation
    in ``eps``; ``method="rational"`` runs the Bulirsch-Stoer diagonal
    rational scheme, which stays accurate when the regulated value has a
    pole or branch point at distance ``~scale`` from ``eps = 0`` (typical of
    ``e^{-eps w}``-regulated Fourier integrals).  The error estimate is the
    size of the last tableau correction.
    """
    pts = sorted(values, key=lambda t: -t[0])
    if len(pts) < 3:
        raise ValueError("at least 3 regulated values are required")
    eps = [float(e) for e, _ in pts]
    if any(e <= 0 for e in eps) or len(set(eps)) != len(eps):
        raise ValueError("regulator values must be positive and distinct")
    if power < 1:
        raise ValueError("power must be a positive integer")
    eps = [e**power for e in eps]
    vals = [v for _, v in pts]
    is_complex = any(isinstance(v, complex) or np.iscomplexobj(v) for v in vals)
    scale = max(abs(complex(v)) for v in vals)
    spread = max(abs(complex(v) - complex(vals[0])) for v in vals)
    if spread <= 1e-15 * scale:
        value, err = vals[-1], 0.0
    elif method == "polynomial":
        diag = _neville(eps, vals)
        value, err = diag[-1], float(abs(diag[-1] - diag[-2]))
    elif method == "rational":
        diag = _bulirsch_stoer(eps, vals)
        value, err = diag[-1], float(abs(diag[-1] - diag[-2]))
    else:
        raise ValueError(f"unknown extrapolation method {method!r}")
    value = complex(value)
    if not is_complex:
        value = value.real
    return ExtrapolationResult(value, err, method)


def oscillatory_integral(
    amplitude: Callable[[np.ndarray], np.ndarray],
    frequency: float,
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
) -> IntegralResult:
    """``int_a^b amplitude(t) exp(i frequency t) dt`` by panel subdivision.

    Panels start no wider than one eighth of the oscillation period and are
    refined adaptively.  ``amplitude`` may be real or complex valued and
    must be vectorised.
    """
    spec = spec or QuadratureSpec()
    if not b > a:
        if a == b:
            return IntegralResult(0j, 0.0, 0, True)
        res = oscillatory_integral(amplitude, frequency, b, a, spec)
        return replace(res, value=-res.value)
    n = 16
    if frequency != 0.0:
        width = 2 * math.pi / abs(frequency) / 8
        n = max(n, int(math.ceil((b - a) / width)))
    edges = np.linspace(a, b, n + 1)

    def integrand(t):
        amp = np.asarray(amplitude(t), dtype=complex)
        amp = np.broadcast_to(amp, t.shape)
        return amp * np.exp(1j * frequency * t)

    return integrate_panels(integrand, edges, spec)
