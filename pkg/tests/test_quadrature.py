import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from unruhbalance.quadrature import (
    DEFAULT_LADDER,
    QuadratureSpec,
    integrate_adaptive,
    integrate_panels,
    integrate_semiinfinite_regulated,
    oscillatory_integral,
    regulated_ladder,
    regulator_extrapolate,
)


@pytest.mark.parametrize(
    "f, a, b, expected",
    [
        (lambda x: 1.0, 0.0, 1.0, 1.0),
        (math.sin, 0.0, math.pi, 2.0),
        (lambda x: -math.log(x), 0.0, 1.0, 1.0),
        (lambda x: math.exp(-x * x), -math.inf, math.inf, math.sqrt(math.pi)),
    ],
    ids=["constant", "sine", "log-endpoint", "gaussian-infinite"],
)
def test_integrate_adaptive_examples(f, a, b, expected):
    res = integrate_adaptive(f, a, b)
    assert res.converged
    assert res.value == pytest.approx(expected, abs=1e-10)
    assert res.error_estimate <= QuadratureSpec().tolerance(expected)


def test_integrate_adaptive_cosine_weight_on_half_line():
    # int_0^inf cos(3x)/(1+x^2) dx = pi e^-3 / 2
    res = integrate_adaptive(lambda x: 1 / (1 + x * x), 0.0, math.inf, QuadratureSpec(abs_tol=1e-12), cos_weight=3.0)
    assert res.value == pytest.approx(math.pi * math.exp(-3) / 2, abs=1e-11)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureSpec(regulator_epsilon=-1)
    with pytest.raises(ValueError):
        QuadratureSpec(cutoff_omega=0)
    spec = QuadratureSpec()
    assert (spec.abs_tol, spec.rel_tol, spec.max_subdivisions) == (1e-10, 1e-8, 2**18)


def test_panels_polynomial_exact():
    res = integrate_panels(lambda x: x**7 - 3 * x**2, [0.0, 2.0])
    assert res.converged and res.value == pytest.approx(2**8 / 8 - 8, rel=1e-14)


def test_panels_vector_components_share_nodes():
    f = lambda x: np.stack([np.sin(x), np.sin(x) * (1 + 1e-300)])  # noqa: E731
    res = integrate_panels(f, np.linspace(0, 10, 5))
    assert res.value[0] == res.value[1]
    assert res.value[0] == pytest.approx(1 - math.cos(10), abs=1e-12)


def test_panels_reject_bad_breakpoints():
    with pytest.raises(ValueError):
        integrate_panels(np.sin, [1.0, 0.0])
    with pytest.raises(ValueError):
        integrate_panels(np.sin, [0.0])


def test_panels_report_nonconvergence():
    res = integrate_panels(lambda x: np.sign(x - 0.3) * np.abs(x - 0.3) ** -0.9, [0.0, 1.0],
                           QuadratureSpec(max_subdivisions=8, abs_tol=1e-14, rel_tol=1e-14))
    assert not res.converged


@given(
    a=st.floats(-5, 5), b=st.floats(-5, 5), alpha=st.floats(-3, 3), beta=st.floats(-3, 3)
)
def test_linearity(a, b, alpha, beta):
    f, g = np.cos, lambda x: x * x
    lo, hi = -1.0, 2.0
    combo = integrate_panels(lambda x: alpha * f(x) + beta * g(x), [lo, hi]).value
    parts = alpha * integrate_panels(f, [lo, hi]).value + beta * integrate_panels(g, [lo, hi]).value
    assert combo == pytest.approx(parts, abs=1e-12)


@given(c=st.floats(0.05, 2.95))
def test_interval_additivity(c):
    f = lambda x: math.exp(math.sin(3 * x))  # noqa: E731
    whole = integrate_adaptive(f, 0.0, 3.0).value
    split = integrate_adaptive(f, 0.0, c).value + integrate_adaptive(f, c, 3.0).value
    assert whole == pytest.approx(split, abs=1e-10)


def test_regulated_exponential_without_regulator():
    assert integrate_semiinfinite_regulated(lambda w: np.exp(-w)).value == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("eps", [0.5, 0.1, 0.02])
def test_regulated_sine(eps):
    res = integrate_semiinfinite_regulated(np.sin, QuadratureSpec(regulator_epsilon=eps), oscillation=1.0)
    assert res.value == pytest.approx(1 / (1 + eps * eps), abs=1e-9)


def test_regulated_cosine_at_unit_eps():
    res = integrate_semiinfinite_regulated(np.cos, QuadratureSpec(regulator_epsilon=1.0), oscillation=1.0)
    assert res.value == pytest.approx(0.5, abs=1e-10)


def test_regulator_does_not_bias_absolutely_convergent_integrals():
    f = lambda w: np.exp(-w * w)  # noqa: E731
    exact = math.sqrt(math.pi) / 2
    for eps in (1e-3, 1e-4):
        value = integrate_semiinfinite_regulated(f, QuadratureSpec(regulator_epsilon=eps)).value
        assert value == pytest.approx(exact, rel=2e-3)


def test_extrapolate_sine_ladder_in_eps_squared():
    values = [(e, 1 / (1 + e * e)) for e in (0.4, 0.2, 0.1)]
    for method in ("rational", "polynomial"):
        assert regulator_extrapolate(values, method, power=2).value == pytest.approx(1.0, abs=1e-3)
    assert regulator_extrapolate(values, "rational", power=2).value == pytest.approx(1.0, abs=1e-6)


def test_extrapolate_sine_ladder_from_quadrature():
    ladder = regulated_ladder(np.sin, 1.0, ladder=DEFAULT_LADDER, oscillation=1.0)
    assert regulator_extrapolate(ladder).value == pytest.approx(1.0, abs=1e-8)


def test_extrapolate_constant_sequence():
    res = regulator_extrapolate([(0.4, 2.5), (0.2, 2.5), (0.1, 2.5)])
    assert res.value == 2.5 and res.error_estimate == 0.0


@given(intercept=st.floats(-10, 10), slope=st.floats(-10, 10))
def test_extrapolate_linear_sequence_polynomial(intercept, slope):
    values = [(e, intercept + slope * e) for e in (0.4, 0.2, 0.1, 0.05)]
    assert regulator_extrapolate(values, "polynomial").value == pytest.approx(intercept, abs=1e-12)


def test_extrapolate_complex_values_stay_complex():
    values = [(e, complex(1 + e, -2 + e * e)) for e in (0.4, 0.2, 0.1, 0.05)]
    out = regulator_extrapolate(values, "polynomial")
    assert isinstance(out.value, complex)
    assert out.value == pytest.approx(complex(1, -2), abs=1e-12)


@pytest.mark.parametrize(
    "values",
    [[(0.2, 1.0), (0.1, 1.0)], [(0.2, 1.0), (0.2, 1.1), (0.1, 1.2)], [(0.2, 1.0), (0.0, 1.1), (0.1, 1.2)]],
    ids=["too-few", "duplicate", "zero-eps"],
)
def test_extrapolate_rejects_bad_ladders(values):
    with pytest.raises(ValueError):
        regulator_extrapolate(values)


def test_extrapolate_unknown_method():
    with pytest.raises(ValueError):
        regulator_extrapolate([(0.4, 1.0), (0.2, 2.0), (0.1, 3.0)], method="spline")


@pytest.mark.parametrize(
    "amp, freq, expected",
    [
        (lambda t: np.ones_like(t), 2 * math.pi, 0j),
        (lambda t: np.ones_like(t), math.pi, 2j / math.pi),
        (lambda t: t, 0.0, 0.5 + 0j),
    ],
    ids=["full-period", "half-period", "zero-frequency"],
)
def test_oscillatory_examples(amp, freq, expected):
    res = oscillatory_integral(amp, freq, 0.0, 1.0)
    assert isinstance(res.value, complex)
    assert res.value == pytest.approx(expected, abs=1e-12)


def test_oscillatory_reversed_limits():
    fwd = oscillatory_integral(lambda t: t * t, 3.0, 0.0, 2.0).value
    rev = oscillatory_integral(lambda t: t * t, 3.0, 2.0, 0.0).value
    assert rev == pytest.approx(-fwd, abs=1e-14)


def test_oscillatory_high_frequency():
    # int_0^1 e^{200 i t} dt
    res = oscillatory_integral(lambda t: np.ones_like(t), 200.0, 0.0, 1.0)
    assert res.value == pytest.approx((np.exp(200j) - 1) / 200j, abs=1e-12)
