"""Named, reproducible experiments and the runner that executes them.

Each experiment evaluates one physical claim over a grid, returns table rows
and a list of pass/fail checks.  Rows are produced in grid order and all
randomness is seeded, so identical configurations give identical output.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .correlators import (
    ModeSumConfig,
    SpacetimeSeparation,
    field_commutator,
    fixed_point_correlation_diff,
    mode_sum_correlation_diff,
    thermal_correlation_diff,
    zero_temp_correlation_diff,
)
from .flux import net_flux_moving, net_flux_stationary
from .gamma import gamma_complex
from .kernels import Bump, fourier_coefficient_closed, fourier_coefficient_numeric, kernel_delta_identity_smeared
from .kinematics import FieldPoint, Worldline, retarded_time_closed, retarded_time_solve, worldline_position
from .params import PhysicalParams, params_from_mapping, validate
from .response import (
    absorption_density,
    force_correlation_moving,
    force_correlation_stationary,
    half_beta_stationary,
    radiation_density,
)

__all__ = [
    "Check",
    "Experiment",
    "ExperimentConfig",
    "RunRecord",
    "EXPERIMENTS",
    "UsageError",
    "list_experiments",
    "make_config",
    "parse_grid",
    "run_experiment",
]

PARAM_COLUMNS = ("sigma", "c", "hbar", "kB", "m", "K", "F", "T")


class UsageError(ValueError):
    """Bad experiment name, parameter or grid specification."""


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    params: PhysicalParams
    options: dict
    grids: dict
    out: str | None = None
    fmt: str = "csv"

    def to_dict(self) -> dict:
        return {
            "experiment": self.name,
            "params": self.params.to_dict(),
            "options": dict(self.options),
            "grids": {k: [float(x) for x in v] for k, v in self.grids.items()},
            "format": self.fmt,
        }


@dataclass
class RunRecord:
    config: ExperimentConfig
    columns: list[str]
    rows: list[list]
    checks: list[Check]
    started: float
    finished: float
    version: str = __version__

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)


@dataclass(frozen=True)
class Experiment:
    name: str
    claim: str
    description: str
    run: Callable[[ExperimentConfig], tuple[list[str], list[list], list[Check]]]
    base_params: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    grids: dict = field(default_factory=dict)


def _row(p: PhysicalParams, *values) -> list:
    return [*(getattr(p, k) for k in PARAM_COLUMNS), *values]


def _cols(*names) -> list[str]:
    return [*PARAM_COLUMNS, *names]


def _check_max(name: str, values, bound: float) -> Check:
    worst = float(np.max(values)) if len(values) else math.nan
    return Check(name, bool(worst < bound), f"max {worst:.3e} (bound {bound:.0e})")


# --- experiments -------------------------------------------------------------


def _unruh_equivalence(cfg):
    p = cfg.params
    wl = Worldline.from_params(p)
    thermal = p.at_unruh_temperature()
    lags = cfg.grids["dtau"]
    origin = worldline_position(wl, 0.0)

    def sep(tau):
        y, t = worldline_position(wl, tau)
        return SpacetimeSeparation(y - origin[0], t - origin[1])

    rows, errs = [], []
    for a, b in zip(lags, lags[::-1]):
        along = zero_temp_correlation_diff(p, sep(a), sep(b))
        fixed = fixed_point_correlation_diff(thermal, a, b)
        err = abs(along - fixed)
        errs.append(err)
        rows.append(_row(p, a, b, along, fixed, err))
    cols = _cols("dtau_a", "dtau_b", "worldline_diff", "thermal_diff", "abs_error")
    return cols, rows, [_check_max("worldline vs thermal at T_U", errs, 1e-8)]


def _draw_params(rng, base: PhysicalParams, fixed: set) -> PhysicalParams:
    draw = {
        "m": rng.uniform(0.2, 5.0),
        "K": rng.uniform(0.2, 5.0),
        "T": rng.uniform(0.0, 3.0),
        "zeta": rng.uniform(0.02, 3.0),
    }
    if "sigma" in fixed:
        fixed = fixed | {"zeta"}
    return params_from_mapping({k: v for k, v in draw.items() if k not in fixed}, base)


def _flux_stationary(cfg):
    rng = np.random.default_rng(int(cfg.options["seed"]))
    side = cfg.options["side"]
    rows, rel, nonzero = [], [], True
    for i in range(int(cfg.options["draws"])):
        p = _draw_params(rng, cfg.params, set(cfg.options.get("fixed", ())))
        for cutoff in cfg.grids["cutoff"]:
            r = net_flux_stationary(p, side, float(cutoff))
            nonzero &= r.j_direct != 0
            rel.append(r.relative_net)
            rows.append(_row(p, i, cutoff, r.j_direct, r.j_interference, r.j_free, r.j_net, r.relative_net))
    cols = _cols("draw", "cutoff", "j_direct", "j_interference", "j_free", "j_net", "net_over_direct")
    checks = [
        _check_max("|j_net| / |j_direct|", rel, 1e-12),
        Check("j_direct nonzero", bool(nonzero), "all draws" if nonzero else "some draw has j_direct = 0"),
    ]
    return cols, rows, checks


def _flux_moving(cfg):
    p = cfg.params
    y = float(cfg.options["y"])
    cutoff = float(cfg.options["cutoff"])
    rows, rel = [], []
    for t in cfg.grids["t"]:
        r = net_flux_moving(p, FieldPoint(y, float(t)), cutoff)
        rel.append(r.relative_net if r.causal else 0.0)
        rows.append(_row(p, y, t, r.dilation, r.j_direct, r.j_interference, r.j_net, r.relative_net))
    cols = _cols("y", "t", "dilation", "j_direct", "j_interference", "j_net", "net_over_direct")
    return cols, rows, [_check_max("|j_net| / |j_direct|", rel, 1e-12)]


def _integrand_cancellation(cfg):
    p = cfg.params
    hb = half_beta_stationary(p)
    w = np.asarray(cfg.grids["omega"], dtype=float)
    rad = radiation_density(p, w, hb)
    absorbed = absorption_density(p, w, hb)
    scale = float(np.max(np.abs(rad)))
    rel = np.abs(rad - absorbed) / scale
    rows = [_row(p, *vals) for vals in zip(w, rad, absorbed, rel)]
    cols = _cols("omega", "radiation_density", "absorption_density", "diff_over_scale")
    return cols, rows, [_check_max("pointwise |difference| / scale", rel, 1e-14)]


def _gamma_kernel(cfg):
    p = cfg.params
    rows, rel = [], []
    for w in cfg.grids["omega"]:
        for wp in cfg.grids["omega_prime"]:
            closed = fourier_coefficient_closed(p, float(w), float(wp))
            numeric = fourier_coefficient_numeric(p, float(w), float(wp)).value
            err = abs(numeric - closed) / abs(closed)
            rel.append(err)
            rows.append(_row(p, w, wp, closed.real, closed.imag, numeric.real, numeric.imag, err))
    x = np.linspace(0.0, 20.0, 401)[1:]
    modulus = [abs(abs(gamma_complex(1j * v)) ** 2 * v * math.sinh(math.pi * v) / math.pi - 1) for v in x]
    reflection = [
        abs(1j * gamma_complex(1j * v) * gamma_complex(1 - 1j * v) * math.sinh(math.pi * v) / math.pi - 1)
        for v in x
    ]
    cols = _cols("omega", "omega_prime", "closed_re", "closed_im", "numeric_re", "numeric_im", "rel_error")
    checks = [
        _check_max("numeric vs closed coefficient", rel, 1e-6),
        _check_max("|Gamma(ix)|^2 x sinh(pi x) = pi", modulus, 1e-12),
        _check_max("i Gamma(ix) Gamma(1-ix) sinh(pi x) = pi", reflection, 1e-12),
    ]
    return cols, rows, checks


DELTA_FIXTURES = (
    ("same-bump", Bump(1.0, 0.5), Bump(1.0, 0.5)),
    ("shifted-bumps", Bump(0.9, 0.4), Bump(1.2, 0.5)),
    ("narrow-bump", Bump(2.0, 0.25), Bump(2.0, 0.25)),
    ("disjoint", Bump(0.6, 0.2), Bump(1.6, 0.2)),
)


def _delta_kernel(cfg):
    p = cfg.params
    cutoff = float(cfg.options["log_cutoff"])
    rows, checks = [], []
    for name, g, h in DELTA_FIXTURES:
        res = kernel_delta_identity_smeared(p, g, h, log_cutoff=cutoff)
        ratio = res.ratio if res.rhs else math.nan
        rows.append(_row(p, name, cutoff, res.lhs, res.rhs, ratio))
        if res.rhs:
            checks.append(Check(f"{name}: lhs/rhs in [0.999, 1.001]", 0.999 <= ratio <= 1.001, f"ratio {ratio:.8f}"))
        else:
            checks.append(Check(f"{name}: lhs ~ 0", abs(res.lhs) < 1e-4, f"lhs {res.lhs:.3e}"))
    return _cols("fixture", "log_cutoff", "lhs", "rhs", "ratio"), rows, checks


def _force_thermalization(cfg):
    p = cfg.params
    thermal = p.at_unruh_temperature()
    rows, diffs, closed_errs = [], [], []
    for dtau in cfg.grids["dtau"]:
        moving = force_correlation_moving(p, float(dtau))
        fixed = force_correlation_stationary(thermal, float(dtau))
        diffs.append(abs(moving.value - fixed.value) / abs(moving.closed_form))
        closed_errs.append(abs(moving.value - moving.closed_form) / abs(moving.closed_form))
        rows.append(_row(p, dtau, moving.value, fixed.value, moving.closed_form, moving.error_estimate))
    cols = _cols("dtau", "moving", "stationary_at_T_U", "closed_form", "extrapolation_error")
    checks = [
        _check_max("moving vs stationary at T_U (relative)", diffs, 1e-8),
        _check_max("extrapolated vs closed form (relative)", closed_errs, 1e-8),
    ]
    return cols, rows, checks


def _mode_sum(cfg):
    p = cfg.params
    a = SpacetimeSeparation(float(cfg.options["dy_a"]), float(cfg.options["dt_a"]))
    b = SpacetimeSeparation(float(cfg.options["dy_b"]), float(cfg.options["dt_b"]))
    exact = thermal_correlation_diff(p, a, b) if p.T > 0 else zero_temp_correlation_diff(p, a, b)
    lengths = cfg.grids["L"]
    k_max = 2 * math.pi * float(cfg.options["n_modes"]) / float(lengths[0])
    rows, errs = [], []
    for L in lengths:
        mc = ModeSumConfig(float(L), k_max)
        value = mode_sum_correlation_diff(p, mc, a, b)
        errs.append(abs(value - exact))
        rows.append(_row(p, L, k_max, mc.n_modes, value, exact, errs[-1]))
    monotone = all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
    checks = [
        Check("error at first L < 1e-3", errs[0] < 1e-3, f"{errs[0]:.3e}"),
        Check("error decreases as L grows", monotone, " > ".join(f"{e:.3e}" for e in errs)),
    ]
    return _cols("L", "k_max", "n_modes", "mode_sum", "closed_form", "abs_error"), rows, checks


def _commutator_structure(cfg):
    p = cfg.params
    rng = np.random.default_rng(int(cfg.options["seed"]))
    n = int(cfg.options["samples"])
    expected = p.hbar / (2 * p.sigma * p.c)
    rows, bad_space, bad_time = [], 0, 0
    for kind in ("spacelike", "timelike"):
        for _ in range(n):
            big, small = rng.uniform(0.01, 10.0), rng.uniform(0.0, 0.99)
            sign = 1.0 if rng.random() < 0.5 else -1.0
            if kind == "spacelike":
                dy, dt = sign * big, rng.uniform(-1, 1) * small * big / p.c
            else:
                dt, dy = sign * big, rng.uniform(-1, 1) * small * big * p.c
            value = field_commutator(p, SpacetimeSeparation(dy, dt))
            want = 0j if kind == "spacelike" else complex(0.0, -math.copysign(expected, dt))
            if value != want:
                if kind == "spacelike":
                    bad_space += 1
                else:
                    bad_time += 1
            rows.append(_row(p, kind, dy, dt, value.real, value.imag))
    checks = [
        Check("spacelike commutator exactly 0", bad_space == 0, f"{bad_space} mismatches"),
        Check("timelike commutator exactly -i sgn(dt) hbar/2 sigma c", bad_time == 0, f"{bad_time} mismatches"),
    ]
    return _cols("kind", "dy", "dt", "commutator_re", "commutator_im"), rows, checks


def _retarded_time(cfg):
    p = cfg.params
    wl = Worldline.from_params(p)
    rng = np.random.default_rng(int(cfg.options["seed"]))
    rows, errs = [], []
    ts, y0 = wl.time_scale, wl.turning_point
    for _ in range(int(cfg.options["samples"])):
        y = rng.uniform(-20.0 * y0, 0.999 * y0)
        t = -y / p.c + ts * math.exp(rng.uniform(-5.0, 5.0))
        fp = FieldPoint(y, t)
        closed = retarded_time_closed(wl, fp)
        solved = retarded_time_solve(wl, fp)
        err = abs(closed.tau_ret - solved.tau_ret) / max(1.0, abs(closed.tau_ret))
        errs.append(err)
        rows.append(_row(p, y, t, closed.tau_ret, solved.tau_ret, closed.dilation, solved.dilation, err))
    on_path = []
    for tau in np.linspace(-5.0, 5.0, 41) * ts:
        y, t = worldline_position(wl, float(tau))
        on_path.append(abs(retarded_time_solve(wl, FieldPoint(y, t)).tau_ret - tau) / max(1.0, abs(tau)))
    cols = _cols("y", "t", "tau_closed", "tau_solved", "dilation_closed", "dilation_solved", "rel_error")
    checks = [
        _check_max("closed form vs root solve", errs, 1e-10),
        _check_max("on-worldline point returns its own proper time", on_path, 1e-10),
    ]
    return cols, rows, checks


def _linspace(a, b, n):
    return tuple(float(x) for x in np.linspace(a, b, n))


def _geomspace(a, b, n):
    return tuple(float(x) for x in np.geomspace(a, b, n))


EXPERIMENTS: dict[str, Experiment] = {
    e.name: e
    for e in (
        Experiment(
            "unruh-equivalence",
            "Unruh temperature: the vacuum seen along the worldline is thermal",
            "zero-T correlation along hyperbolic motion vs fixed-point thermal correlation at kT = hbar F/2 pi m c",
            _unruh_equivalence,
            grids={"dtau": _linspace(0.1, 5.0, 50)},
        ),
        Experiment(
            "flux-balance-stationary",
            "zero net flux from an oscillator at rest in a thermal field",
            "random parameter draws times cutoffs; net flux relative to direct flux",
            _flux_stationary,
            base_params={"zeta": 0.3},
            options={"seed": 20240601, "draws": 100, "side": "right"},
            grids={"cutoff": (10.0, 100.0, 1000.0)},
        ),
        Experiment(
            "flux-balance-moving",
            "zero net flux from an accelerated oscillator in the vacuum",
            "field points along a line of fixed y; direct, interference and net flux",
            _flux_moving,
            base_params={"zeta": 0.3},
            options={"y": 0.0, "cutoff": 1000.0},
            grids={"t": _geomspace(0.5, 50.0, 20)},
        ),
        Experiment(
            "integrand-cancellation",
            "emitted and absorbed spectral densities agree pointwise",
            "radiation and absorption densities on a frequency grid",
            _integrand_cancellation,
            base_params={"zeta": 0.3, "T": 0.2},
            grids={"omega": _geomspace(1e-3, 1e3, 10_000)},
        ),
        Experiment(
            "gamma-kernel",
            "Gamma-function closed form of the proper-time Fourier coefficient",
            "numeric unrotated integral vs closed form, plus Gamma identities on (0, 20]",
            _gamma_kernel,
            grids={"omega": (0.5, 1.0, 2.0), "omega_prime": (0.3, 0.7, 1.5)},
        ),
        Experiment(
            "delta-kernel",
            "the frequency sum of coefficient products is a weighted delta function",
            "smeared lhs vs rhs for bump-function fixtures",
            _delta_kernel,
            options={"log_cutoff": 60.0},
        ),
        Experiment(
            "force-thermalization",
            "force correlation along the worldline is thermal at the Unruh temperature",
            "regulated, extrapolated moving and stationary force correlations",
            _force_thermalization,
            base_params={"zeta": 0.3},
            grids={"dtau": (0.5, 1.0, 2.0)},
        ),
        Experiment(
            "mode-sum-convergence",
            "finite-string normal-mode sum converges to the closed-form correlation",
            "error of the mode sum as L doubles at fixed k_max",
            _mode_sum,
            base_params={"T": 1 / (2 * math.pi)},
            options={"n_modes": 100_000, "dy_a": 0.0, "dt_a": 2.0, "dy_b": 0.0, "dt_b": 1.0},
            grids={"L": (1e4, 2e4, 4e4)},
        ),
        Experiment(
            "commutator-structure",
            "field commutator vanishes outside and is constant inside the light cone",
            "random spacelike and timelike separations",
            _commutator_structure,
            options={"seed": 7, "samples": 1000},
        ),
        Experiment(
            "retarded-time",
            "closed-form retarded time agrees with the light-cone root solve",
            "random field points plus points on the worldline",
            _retarded_time,
            options={"seed": 11, "samples": 1000},
        ),
    )
}


def list_experiments() -> list[tuple[str, str, str]]:
    """``(name, claim, description)`` for every experiment, in registry order."""
    return [(e.name, e.claim, e.description) for e in EXPERIMENTS.values()]


def parse_grid(text: str) -> tuple[str, tuple[float, ...]]:
    """Parse ``name=start:stop:count[:log]`` or ``name=v1,v2,...``."""
    name, sep, body = text.partition("=")
    if not sep or not name or not body:
        raise UsageError(f"grid must look like name=start:stop:count or name=v1,v2: {text!r}")
    try:
        if ":" in body:
            parts = body.split(":")
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
                raise ValueError
            a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
            if n < 1:
                raise ValueError
            values = _geomspace(a, b, n) if len(parts) == 4 else _linspace(a, b, n)
        else:
            values = tuple(float(v) for v in body.split(","))
    except ValueError:
        raise UsageError(f"bad grid specification {text!r}") from None
    return name.strip(), values


def make_config(
    name: str,
    overrides: dict | None = None,
    grids: Sequence[str] | dict = (),
    params_base: PhysicalParams | None = None,
    out: str | None = None,
    fmt: str = "csv",
) -> ExperimentConfig:
    """Merge experiment defaults with user overrides and validate them."""
    if name not in EXPERIMENTS:
        raise UsageError(f"unknown experiment {name!r}; try 'list'")
    if fmt not in ("csv", "json"):
        raise UsageError("format must be csv or json")
    exp = EXPERIMENTS[name]
    overrides = dict(overrides or {})
    options = dict(exp.options)
    for key in list(overrides):
        if key in options:
            raw = overrides.pop(key)
            try:
                options[key] = type(options[key])(raw)
            except (TypeError, ValueError):
                raise UsageError(f"option {key!r} expects {type(options[key]).__name__}, got {raw!r}") from None
    physical = {**exp.base_params, **overrides}
    if "sigma" in overrides and "zeta" not in overrides:
        physical.pop("zeta", None)
    try:
        p = params_from_mapping(physical, params_base)
    except (TypeError, ValueError) as err:
        raise UsageError(str(err)) from None
    problems = validate(p)
    if problems:
        raise UsageError("; ".join(problems))
    if name == "flux-balance-stationary":
        options["fixed"] = tuple(sorted(k for k in overrides if k in ("m", "K", "T", "zeta", "sigma")))
    grid_map = {k: tuple(v) for k, v in exp.grids.items()}
    items = grids.items() if isinstance(grids, dict) else (parse_grid(g) for g in grids)
    for key, values in items:
        if key not in exp.grids:
            raise UsageError(f"experiment {name!r} has no grid {key!r} (available: {', '.join(exp.grids) or 'none'})")
        if not len(values):
            raise UsageError(f"grid {key!r} is empty")
        grid_map[key] = tuple(float(v) for v in values)
    return ExperimentConfig(name, p, options, grid_map, out, fmt)


def run_experiment(cfg: ExperimentConfig) -> RunRecord:
    """Execute one experiment; physics errors become failed checks rather than exceptions."""
    exp = EXPERIMENTS[cfg.name]
    started = time.time()
    try:
        columns, rows, checks = exp.run(cfg)
    except (ArithmeticError, ValueError, RuntimeError) as err:
        columns, rows = [], []
        checks = [Check("experiment completed", False, f"{type(err).__name__}: {err}")]
    return RunRecord(cfg, columns, rows, checks, started, time.time())
