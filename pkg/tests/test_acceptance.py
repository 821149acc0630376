"""The ten acceptance criteria, each run through its experiment with its default configuration.

Every test reruns the experiment, recomputes the bound from the emitted rows
(rather than trusting the experiment's own checks), and enforces the runtime
limit.  A one-line verdict per criterion is printed in the session summary.
"""

import math
import time

import numpy as np
import pytest

from unruhbalance.experiments import make_config, run_experiment
from unruhbalance.gamma import gamma_complex


def _run(name):
    start = time.perf_counter()
    record = run_experiment(make_config(name))
    return record, time.perf_counter() - start


def _column(record, name):
    i = record.columns.index(name)
    return np.array([row[i] for row in record.rows])


def _verdict(report, number, title, ok, detail, elapsed, limit):
    fast = elapsed < limit
    report(number, title, ok and fast, f"{detail}; {elapsed:.2f} s (limit {limit:g} s)")
    assert ok, detail
    assert fast, f"took {elapsed:.2f} s, limit {limit} s"


def test_criterion_01_unruh_temperature(acceptance_report):
    rec, elapsed = _run("unruh-equivalence")
    err = _column(rec, "abs_error")
    recomputed = np.abs(_column(rec, "worldline_diff") - _column(rec, "thermal_diff"))
    dtau = np.concatenate([_column(rec, "dtau_a"), _column(rec, "dtau_b")])
    ok = len(rec.rows) == 50 and dtau.min() >= 0.1 and dtau.max() <= 5.0
    ok = ok and recomputed.max() < 1e-8 and np.allclose(err, recomputed) and rec.passed
    _verdict(acceptance_report, 1, "worldline vacuum = fixed point at T_U", ok,
             f"max |diff| {recomputed.max():.3e} over {len(rec.rows)} pairs (bound 1e-8)", elapsed, 1.0)


def test_criterion_02_stationary_balance(acceptance_report):
    rec, elapsed = _run("flux-balance-stationary")
    direct, net = _column(rec, "j_direct"), _column(rec, "j_net")
    cutoffs = set(_column(rec, "cutoff").tolist())
    draws = len(set(_column(rec, "draw").tolist()))
    ratio = np.abs(net) / np.abs(direct)
    ok = draws == 100 and cutoffs == {10.0, 100.0, 1000.0}
    ok = ok and bool(np.all(direct != 0)) and ratio.max() < 1e-12 and rec.passed
    _verdict(acceptance_report, 2, "stationary detailed balance", ok,
             f"max |j_net|/|j_direct| {ratio.max():.3e} over {draws} draws x {len(cutoffs)} cutoffs (bound 1e-12)",
             elapsed, 30.0)


def test_criterion_03_moving_balance(acceptance_report):
    rec, elapsed = _run("flux-balance-moving")
    direct, net = _column(rec, "j_direct"), _column(rec, "j_net")
    t, y = _column(rec, "t"), _column(rec, "y")
    ratio = np.abs(net) / np.abs(direct)
    ok = len(rec.rows) == 20 and np.all(y == 0) and t.min() >= 0.5 and t.max() <= 50
    ok = ok and bool(np.all(direct != 0)) and ratio.max() < 1e-12 and rec.passed
    _verdict(acceptance_report, 3, "moving detailed balance", ok,
             f"max |j_net|/|j_direct| {ratio.max():.3e} over {len(rec.rows)} field points (bound 1e-12)",
             elapsed, 30.0)


def test_criterion_04_pointwise_cancellation(acceptance_report):
    rec, elapsed = _run("integrand-cancellation")
    rad, absorbed = _column(rec, "radiation_density"), _column(rec, "absorption_density")
    scale = np.maximum(np.abs(rad), np.abs(absorbed))
    worst = float(np.max(np.abs(rad - absorbed) / scale))
    ok = len(rec.rows) == 10_000 and worst < 1e-14 and rec.passed
    _verdict(acceptance_report, 4, "pointwise integrand cancellation", ok,
             f"max |difference|/scale {worst:.3e} on {len(rec.rows)} frequencies (bound 1e-14)", elapsed, 1.0)


def test_criterion_05_gamma_kernel(acceptance_report):
    rec, elapsed = _run("gamma-kernel")
    closed = _column(rec, "closed_re") + 1j * _column(rec, "closed_im")
    numeric = _column(rec, "numeric_re") + 1j * _column(rec, "numeric_im")
    rel = float(np.max(np.abs(numeric - closed) / np.abs(closed)))
    x = np.linspace(0.0, 20.0, 2001)[1:]
    g = np.array([gamma_complex(1j * v) for v in x])
    g1 = np.array([gamma_complex(1 - 1j * v) for v in x])
    id1 = np.abs(np.abs(g) ** 2 * x * np.sinh(np.pi * x) - np.pi) / np.pi
    id2 = np.abs(1j * g * g1 * np.sinh(np.pi * x) - np.pi) / np.pi
    ok = len(rec.rows) == 9 and rel < 1e-6 and id1.max() < 1e-12 and id2.max() < 1e-12 and rec.passed
    _verdict(acceptance_report, 5, "Gamma kernel closed form and identities", ok,
             f"grid rel err {rel:.3e} (bound 1e-6); identities {id1.max():.2e}, {id2.max():.2e} (bound 1e-12)",
             elapsed, 10.0)


def test_criterion_06_delta_kernel(acceptance_report):
    rec, elapsed = _run("delta-kernel")
    fixture, ratio, lhs, rhs = (_column(rec, k) for k in ("fixture", "ratio", "lhs", "rhs"))
    paired = rhs != 0
    ok = bool(paired.any()) and np.all((ratio[paired] >= 0.999) & (ratio[paired] <= 1.001)) and rec.passed
    detail = ", ".join(f"{f} {r:.6f}" for f, r in zip(fixture[paired], ratio[paired]))
    detail += "; " + ", ".join(f"{f} lhs {v:.1e}" for f, v in zip(fixture[~paired], lhs[~paired]))
    _verdict(acceptance_report, 6, "smeared delta-kernel identity", ok, f"ratios {detail}", elapsed, 60.0)


def test_criterion_07_force_thermalization(acceptance_report):
    rec, elapsed = _run("force-thermalization")
    moving, fixed = _column(rec, "moving"), _column(rec, "stationary_at_T_U")
    closed, dtau = _column(rec, "closed_form"), _column(rec, "dtau")
    rel = np.abs(moving - fixed) / np.abs(fixed)
    rel_closed = np.abs(moving - closed) / np.abs(closed)
    ok = sorted(dtau.tolist()) == [0.5, 1.0, 2.0] and rel.max() < 1e-8 and rel_closed.max() < 1e-8 and rec.passed
    _verdict(acceptance_report, 7, "force correlation thermalises at T_U", ok,
             f"moving vs stationary {rel.max():.3e}, vs closed form {rel_closed.max():.3e} (bound 1e-8)",
             elapsed, 10.0)


def test_criterion_08_mode_sum(acceptance_report):
    rec, elapsed = _run("mode-sum-convergence")
    L, n, err = _column(rec, "L"), _column(rec, "n_modes"), _column(rec, "abs_error")
    recomputed = np.abs(_column(rec, "mode_sum") - _column(rec, "closed_form"))
    ok = L.tolist() == [1e4, 2e4, 4e4] and n[0] == 100_000 and np.allclose(err, recomputed, rtol=0, atol=1e-15)
    ok = ok and recomputed[0] < 1e-3 and bool(np.all(np.diff(recomputed) < 0)) and rec.passed
    _verdict(acceptance_report, 8, "mode-sum oracle converges", ok,
             "errors " + " > ".join(f"{e:.3e}" for e in recomputed) + f" at L = {', '.join(f'{v:g}' for v in L)}",
             elapsed, 60.0)


def test_criterion_09_commutator(acceptance_report):
    rec, elapsed = _run("commutator-structure")
    kind = _column(rec, "kind")
    re, im, dt = _column(rec, "commutator_re"), _column(rec, "commutator_im"), _column(rec, "dt")
    space, time_ = kind == "spacelike", kind == "timelike"
    # natural units: hbar / (2 sigma c) = 1/2
    expected = -np.sign(dt[time_]) * 0.5
    ok = space.sum() == 1000 and time_.sum() == 1000
    ok = ok and np.all(re == 0) and np.all(im[space] == 0) and np.all(im[time_] == expected) and rec.passed
    _verdict(acceptance_report, 9, "commutator light-cone structure", ok,
             f"{space.sum()} spacelike exactly 0, {time_.sum()} timelike exactly +-hbar/2 sigma c", elapsed, 1.0)


def test_criterion_10_retarded_time(acceptance_report):
    rec, elapsed = _run("retarded-time")
    closed, solved = _column(rec, "tau_closed"), _column(rec, "tau_solved")
    scale = np.maximum(1.0, np.abs(closed))
    worst = float(np.max(np.abs(closed - solved) / scale))
    on_path = [c for c in rec.checks if "worldline" in c.name]
    ok = len(rec.rows) == 1000 and worst < 1e-10 and on_path and all(c.passed for c in on_path) and rec.passed
    _verdict(acceptance_report, 10, "retarded time closed form vs root solve", ok,
             f"max error {worst:.3e} on {len(rec.rows)} points (bound 1e-10); "
             + "; ".join(f"{c.name}: {c.detail}" for c in on_path), elapsed, 1.0)


@pytest.mark.parametrize("x", [1e-3, 0.5, 7.0, 20.0])
def test_gamma_identities_at_edges(x):
    g = gamma_complex(1j * x)
    assert abs(g) ** 2 * x * math.sinh(math.pi * x) == pytest.approx(math.pi, rel=1e-12)
