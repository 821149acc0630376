"""Proper-time Fourier coefficients of a plane wave seen along the hyperbolic worldline.

Along the worldline a right-moving mode ``exp(i(ky - wt))`` with ``k = w/c``
has phase ``beta * exp(-F tau/mc)`` where ``beta = mcw/F``.  Its Fourier
coefficient at proper-time frequency ``w'`` is

    c(w/c; w') = (mc/F) int_0^inf z^(-1 - i nu) exp(i beta z) dz,   nu = mc w'/F,

and rotating the contour onto the imaginary axis gives the closed form
``(mc/F) beta^(i nu) exp(pi nu/2) Gamma(-i nu)``.  The numerical route in
:func:`fourier_coefficient_numeric` integrates the unrotated integral so
the rotation is checked rather than assumed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .gamma import gamma_complex
from .kinematics import FieldPoint, Worldline, retarded_time_closed
from .params import PhysicalParams
from .quadrature import (
    QuadratureError,
    QuadratureSpec,
    integrate_adaptive,
    integrate_panels,
    oscillatory_integral,
    regulator_extrapolate,
)

__all__ = [
    "SpectralKernel",
    "Bump",
    "DeltaIdentityResult",
    "fourier_coefficient_closed",
    "fourier_coefficient_numeric",
    "fourier_coefficient_single",
    "kernel_delta_identity_smeared",
    "delta_identity_weight",
    "delta_identity_rhs_quad",
    "interference_kernel_closed",
    "interference_kernel_numeric",
]

_KERNEL_SPEC = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11)


@dataclass(frozen=True)
class SpectralKernel:
    omega: float
    omega_prime: float
    value: complex
    error_estimate: float = 0.0


def _nu(p: PhysicalParams, omega_prime):
    return p.m * p.c * np.asarray(omega_prime) / p.F


def fourier_coefficient_closed(p: PhysicalParams, omega, omega_prime):
    """Gamma-function form of ``c(w/c; w')``; vectorised over both frequencies."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega must be positive")
    if np.any(np.asarray(omega_prime) == 0):
        raise ValueError("omega_prime = 0 is a pole of Gamma(-i mc w'/F)")
    ts = p.m * p.c / p.F
    nu = _nu(p, omega_prime)
    beta = ts * omega
    # real logarithm of the positive base: no branch cut is crossed
    phase = np.exp(1j * nu * np.log(beta))
    value = ts * phase * np.exp(0.5 * math.pi * nu) * gamma_complex(-1j * nu)
    return value.item() if np.ndim(value) == 0 else value


def _regularised_integral(beta: float, nu: float, delta: float, spec: QuadratureSpec) -> complex:
    """``int_0^inf z^(delta - 1 - i nu) exp(i beta z) dz`` for ``0 <= delta < 1``.

    On ``[0, z0]`` the bare power is integrated exactly and only
    ``z^(a-1) (exp(i beta z) - 1)`` is left to quadrature (in ``log z``).
    On ``[z0, inf)`` repeated integration by parts moves the slow ``1/z``
    decay into boundary terms; the remainder decays like ``z^-7`` and is
    integrated out to many oscillation periods.
    """
    a = complex(delta, -nu)
    z0 = 1.0 / beta
    head_exact = z0**a / a
    u0 = math.log(z0)
    head = oscillatory_integral(
        lambda u: np.exp(a * u) * np.expm1(1j * beta * np.exp(u)), 0.0, u0 - 40.0, u0, spec
    )
    s = a - 1
    coef, boundary = 1 + 0j, 0j
    edge = cmath.exp(1j * beta * z0)
    for _ in range(6):
        boundary += coef * (-(z0**s) * edge / (1j * beta))
        coef *= -s / (1j * beta)
        s -= 1
    z_end = z0 + 200.0 / beta
    tail = oscillatory_integral(lambda z, s=s: z**s, beta, z0, z_end, spec)
    if not (head.converged and tail.converged):
        raise QuadratureError("Fourier coefficient quadrature did not converge")
    return head_exact + head.value + boundary + coef * tail.value


def fourier_coefficient_numeric(
    p: PhysicalParams,
    omega: float,
    omega_prime: float,
    spec: QuadratureSpec | None = None,
    n_ladder: int = 6,
) -> SpectralKernel:
    """Numerical ``c(w/c; w')`` from the unrotated integral.

    The integrand is softened at ``z = 0`` by ``z^delta``; values on the
    ladder ``delta = eps * 2^-k`` (``eps = spec.regulator_epsilon``) are
    extrapolated to ``delta -> 0``.
    """
    spec = spec or QuadratureSpec(regulator_epsilon=0.05)
    if omega <= 0:
        raise ValueError("omega must be positive")
    if not spec.regulator_epsilon > 0:
        raise ValueError("spec.regulator_epsilon must be > 0 (it sets the delta ladder)")
    if spec.regulator_epsilon >= 1:
        raise ValueError("delta regulator must stay below 1")
    ts = p.m * p.c / p.F
    beta, nu = ts * omega, ts * omega_prime
    quad_spec = spec.with_(abs_tol=min(spec.abs_tol, 1e-13), rel_tol=min(spec.rel_tol, 1e-11))
    ladder = [
        (spec.regulator_epsilon * 2.0**-k, _regularised_integral(beta, nu, spec.regulator_epsilon * 2.0**-k, quad_spec))
        for k in range(n_ladder)
    ]
    ext = regulator_extrapolate(ladder)
    return SpectralKernel(omega, omega_prime, ts * complex(ext.value), ts * ext.error_estimate)


def fourier_coefficient_single(
    p: PhysicalParams, omega: float, omega_prime: float, delta: float
) -> complex:
    """Unextrapolated numerical coefficient at one regulator value ``delta``."""
    ts = p.m * p.c / p.F
    return ts * _regularised_integral(ts * omega, ts * omega_prime, delta, _KERNEL_SPEC)


# --- delta-function identity -------------------------------------------------


@dataclass(frozen=True)
class Bump:
    """C-infinity bump ``exp(1 - 1/(1 - x^2))`` on ``[center - half_width, center + half_width]``."""

    center: float
    half_width: float
    height: float = 1.0

    @property
    def support(self) -> tuple[float, float]:
        return self.center - self.half_width, self.center + self.half_width

    def __call__(self, w):
        x = (np.asarray(w, dtype=float) - self.center) / self.half_width
        inside = np.abs(x) < 1
        xi = np.where(inside, x, 0.0)
        return np.where(inside, self.height * np.exp(1.0 - 1.0 / (1.0 - xi * xi)), 0.0)


@dataclass(frozen=True)
class DeltaIdentityResult:
    lhs: float
    rhs: float
    log_cutoff: float
    omega_window: tuple[float, float]

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs


def delta_identity_weight(p: PhysicalParams, omega_prime):
    """``exp(pi nu) / (w' sinh(pi nu))``, the weight multiplying the delta function."""
    nu = _nu(p, omega_prime)
    # e^x / sinh x = -2 / expm1(-2x), which does not overflow
    with np.errstate(over="ignore"):
        return -2.0 / (np.asarray(omega_prime) * np.expm1(-2 * math.pi * nu))


def _support(fn, explicit):
    if explicit is not None:
        return tuple(explicit)
    try:
        return tuple(fn.support)
    except AttributeError:
        raise ValueError("smearing function needs a support (pass support_* or a Bump)") from None


def kernel_delta_identity_smeared(
    p: PhysicalParams,
    g: Callable,
    h: Callable,
    spec: QuadratureSpec | None = None,
    log_cutoff: float = 60.0,
    support_g: tuple[float, float] | None = None,
    support_h: tuple[float, float] | None = None,
    n_nodes: int = 400,
) -> DeltaIdentityResult:
    """Smeared form of the mode-sum kernel identity.

    ``lhs`` is ``int dw1 dw2 g(w1) h(w2) K(w1, w2)`` with
    ``K = (hbar/pi) Re int dw/w c(w/c; w1) c(w/c; w2)^*`` restricted to
    ``|log(mc w/F)| <= log_cutoff``; ``c`` is the closed Gamma form.
    ``rhs`` is ``2 pi hbar int g h exp(pi nu)/(w' sinh(pi nu)) dw'``.
    """
    spec = spec or QuadratureSpec(abs_tol=1e-14, rel_tol=1e-10)
    sg, sh = _support(g, support_g), _support(h, support_h)
    if sg[0] <= 0 or sh[0] <= 0:
        raise ValueError("smearing functions must be supported on omega' > 0")
    ts = p.m * p.c / p.F

    x, wts = np.polynomial.legendre.leggauss(n_nodes)

    def nodes(sup):
        a, b = sup
        return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * wts

    wg, qg = nodes(sg)
    wh, qh = nodes(sh)
    gw, hw = qg * np.asarray(g(wg)), qh * np.asarray(h(wh))

    def integrand(v):
        omega = np.exp(v) / ts
        cg = fourier_coefficient_closed(p, omega[:, None], wg[None, :])
        ch = fourier_coefficient_closed(p, omega[:, None], wh[None, :])
        amp_g = cg @ gw
        amp_h = ch @ hw
        return (amp_g * np.conj(amp_h)).real

    widths = 2 * math.pi / max(sg[1], sh[1]) / ts / 8
    n_panels = int(math.ceil(2 * log_cutoff / widths))
    res = integrate_panels(integrand, np.linspace(-log_cutoff, log_cutoff, n_panels + 1), spec)
    if not res.converged:
        raise QuadratureError("delta-identity lhs did not converge")
    lhs = p.hbar / math.pi * res.value

    lo, hi = max(sg[0], sh[0]), min(sg[1], sh[1])
    if lo >= hi:
        rhs = 0.0
    else:
        wo, qo = nodes((lo, hi))
        rhs = 2 * math.pi * p.hbar * float(np.sum(qo * g(wo) * h(wo) * delta_identity_weight(p, wo)))
    window = (math.exp(-log_cutoff) / ts, math.exp(log_cutoff) / ts)
    return DeltaIdentityResult(float(lhs), rhs, log_cutoff, window)


def delta_identity_rhs_quad(p: PhysicalParams, g: Callable, h: Callable, support) -> float:
    """Reference ``rhs`` by QUADPACK, for checking the node rule above."""
    lo, hi = support
    res = integrate_adaptive(
        lambda w: float(g(w) * h(w) * delta_identity_weight(p, w)),
        lo,
        hi,
        QuadratureSpec(abs_tol=1e-15, rel_tol=1e-13),
    )
    return 2 * math.pi * p.hbar * res.value


# --- interference kernel -----------------------------------------------------


def interference_kernel_closed(p: PhysicalParams, fp: FieldPoint, omega_prime) -> complex:
    """Mode sum ``(hbar c/L) sum_k ((w - ck)/w) c(k; w') exp(-i(ky - wt))`` in closed form.

    Equals ``hbar (d tau_ret/dt) exp(pi nu)/sinh(pi nu) exp(i w' tau_ret)``.
    """
    rt = retarded_time_closed(Worldline.from_params(p), fp)
    nu = float(_nu(p, omega_prime))
    if nu == 0:
        raise ValueError("omega_prime = 0 is a pole of the kernel")
    return (
        p.hbar
        * rt.dilation
        * math.exp(math.pi * nu)
        / math.sinh(math.pi * nu)
        * cmath.exp(1j * omega_prime * rt.tau_ret)
    )


def interference_kernel_numeric(
    p: PhysicalParams,
    fp: FieldPoint,
    omega_prime: float,
    spec: QuadratureSpec | None = None,
    ladder=tuple(0.4 * 2.0**-k for k in range(8)),
) -> tuple[complex, float]:
    """Same mode sum as a regulated frequency integral; returns ``(value, error)``.

    Only left-moving modes contribute, giving
    ``(hbar/pi) int_0^inf c(w/c; w')^* exp(i w (t + y/c)) dw``.  The
    ``w``-integral is evaluated with ``exp(-eps w)`` on an ``eps`` ladder
    and extrapolated, without rotating the contour.
    """
    spec = spec or QuadratureSpec(abs_tol=1e-10, rel_tol=1e-9)
    ts = p.m * p.c / p.F
    advanced = fp.t + fp.y / p.c
    if advanced <= 0:
        raise ValueError("field point not causally connected")
    w_split = 1.0 / advanced

    def cstar(w):
        return np.conj(fourier_coefficient_closed(p, w, omega_prime))

    values = []
    v0 = math.log(w_split)
    for r in ladder:
        eps = r * advanced
        head = oscillatory_integral(
            lambda v: np.exp(v) * cstar(np.exp(v)) * np.exp((1j * advanced - eps) * np.exp(v)),
            0.0,
            v0 - 40.0,
            v0,
            spec,
        )
        upper = w_split + 50.0 / eps
        width = 2 * math.pi / max(advanced, abs(omega_prime) * ts) / 8
        n = int(math.ceil((upper - w_split) / width))
        tail = integrate_panels(
            lambda w: cstar(w) * np.exp((1j * advanced - eps) * w),
            np.linspace(w_split, upper, n + 1),
            spec,
        )
        if not (head.converged and tail.converged):
            raise QuadratureError("interference kernel quadrature did not converge")
        values.append((eps, p.hbar / math.pi * (head.value + tail.value)))
    ext = regulator_extrapolate(values)
    return complex(ext.value), ext.error_estimate
