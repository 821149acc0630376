import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unruhbalance.kinematics import (
    CausalityError,
    FieldPoint,
    Worldline,
    invariant_interval,
    retarded_time_closed,
    retarded_time_solve,
    unruh_temperature,
    worldline_position,
    worldline_velocity,
)
from unruhbalance.params import PhysicalParams

unit = Worldline()
taus = st.floats(-8, 8, allow_nan=False)
worldlines = st.builds(Worldline, st.floats(0.2, 5), st.floats(0.5, 3), st.floats(0.2, 5))


def test_turning_point():
    assert worldline_position(Worldline(m=2, c=3, F=4), 0.0) == (2 * 9 / 4, 0.0)


def test_position_at_unit_proper_time():
    assert worldline_position(unit, 1.0) == pytest.approx((math.cosh(1), math.sinh(1)), rel=1e-15)


@given(w=worldlines, tau=taus)
def test_hyperbola_identity(w, tau):
    y, t = worldline_position(w, tau)
    # the difference of squares loses digits in proportion to y^2
    assert y * y - (w.c * t) ** 2 == pytest.approx(w.turning_point**2, abs=1e-13 * y * y)


@given(w=worldlines, tau=st.floats(-15, 15))
def test_speed_below_light(w, tau):
    assert abs(worldline_velocity(w, tau)) <= w.c
    if abs(tau / w.time_scale) < 18:
        assert abs(worldline_velocity(w, tau)) < w.c


def test_interval_examples():
    assert invariant_interval(unit, 1.3, 1.3) == 0.0
    (y1, t1), (y0, t0) = worldline_position(unit, 2.0), worldline_position(unit, 0.0)
    direct = math.sqrt((t1 - t0) ** 2 - (y1 - y0) ** 2)
    assert invariant_interval(unit, 2.0, 0.0) == pytest.approx(2 * math.sinh(1), rel=1e-15)
    assert direct == pytest.approx(2 * math.sinh(1), rel=1e-14)
    assert invariant_interval(unit, 1e-3, 0.0) == pytest.approx(1e-3, rel=1e-6)


@given(w=worldlines, a=taus, b=taus, shift=taus)
def test_interval_antisymmetric_and_shift_invariant(w, a, b, shift):
    assert invariant_interval(w, a, b) == -invariant_interval(w, b, a)
    assert invariant_interval(w, a + shift, b + shift) == pytest.approx(invariant_interval(w, a, b), rel=1e-9, abs=1e-12)


def test_unruh_temperature_values():
    assert unruh_temperature(PhysicalParams()) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert unruh_temperature(PhysicalParams(F=2)) == pytest.approx(2 / (2 * math.pi), rel=1e-15)
    with pytest.raises(ValueError):
        unruh_temperature(PhysicalParams(F=0))


def test_worldline_requires_positive_force():
    with pytest.raises(ValueError):
        Worldline(F=0)


@pytest.mark.parametrize("t, tau, dilation", [(1.0, 0.0, 1.0), (math.e, 1.0, 1 / math.e)])
def test_retarded_time_closed_examples(t, tau, dilation):
    rt = retarded_time_closed(unit, FieldPoint(0.0, t))
    assert rt.tau_ret == pytest.approx(tau, abs=1e-15)
    assert rt.dilation == pytest.approx(dilation, rel=1e-15)


def test_dilation_diverges_at_first_signal():
    assert retarded_time_closed(unit, FieldPoint(0.0, 1e-12)).dilation == pytest.approx(1e12, rel=1e-9)


def test_closed_form_domain():
    with pytest.raises(CausalityError):
        retarded_time_closed(unit, FieldPoint(0.0, -0.5))
    with pytest.raises(ValueError):
        retarded_time_closed(unit, FieldPoint(2.0, 5.0))


left_points = st.tuples(st.floats(-30, 0.99), st.floats(-6, 6))


@given(w=worldlines, pt=left_points)
def test_solver_matches_closed_form(w, pt):
    yfrac, logx = pt
    y = yfrac * w.turning_point
    fp = FieldPoint(y, -y / w.c + w.time_scale * math.exp(logx))
    closed, solved = retarded_time_closed(w, fp), retarded_time_solve(w, fp)
    assert solved.tau_ret == pytest.approx(closed.tau_ret, abs=1e-10 * max(1.0, abs(closed.tau_ret)))
    assert solved.dilation == pytest.approx(closed.dilation, rel=1e-9)


def test_solver_example():
    assert retarded_time_solve(unit, FieldPoint(0.0, 1.0)).tau_ret == pytest.approx(0.0, abs=1e-14)


@given(w=worldlines, tau=taus)
def test_solver_on_worldline_returns_proper_time(w, tau):
    tau = tau * w.time_scale
    y, t = worldline_position(w, tau)
    assert retarded_time_solve(w, FieldPoint(y, t)).tau_ret == pytest.approx(tau, abs=1e-10 * max(1.0, abs(tau)))


def test_solver_right_of_turning_point():
    # y > mc^2/F: the signal arrives from the right-moving branch
    fp = FieldPoint(3.0, 4.0)
    rt = retarded_time_solve(unit, fp)
    y, t = worldline_position(unit, rt.tau_ret)
    assert fp.t - t == pytest.approx(abs(fp.y - y), abs=1e-12)


@pytest.mark.parametrize("fp", [FieldPoint(0.0, 2.0), FieldPoint(-1.0, 3.5), FieldPoint(3.0, 4.0)])
def test_dilation_is_derivative_of_retarded_time(fp):
    h = 1e-4
    up = retarded_time_solve(unit, FieldPoint(fp.y, fp.t + h)).tau_ret
    down = retarded_time_solve(unit, FieldPoint(fp.y, fp.t - h)).tau_ret
    assert (up - down) / (2 * h) == pytest.approx(retarded_time_solve(unit, fp).dilation, rel=1e-7)


def test_solver_reports_causally_disconnected_point():
    with pytest.raises(CausalityError):
        retarded_time_solve(unit, FieldPoint(0.0, -3.0))
