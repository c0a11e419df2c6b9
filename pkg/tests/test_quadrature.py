import math

import pytest
from pydantic import ValidationError

from q1dh.infotheory import EULER_GAMMA
from q1dh.quadrature import (
    DEFAULT_TOLERANCE,
    QuadratureError,
    QuadratureResult,
    ToleranceSpec,
    entropy_integrand,
    fourier_integral,
    fourier_transform_numeric,
    fourier_transform_result,
    integrate_interval,
    integrate_real_line,
    integrate_semi_infinite,
)
from q1dh.states import ComplexAmplitude, gamma_density, node_positions, node_scan_limit, phi, psi, rho_density


def test_exponential_on_half_line():
    result = integrate_semi_infinite(lambda x: math.exp(-x))

    assert result.value == pytest.approx(1.0, abs=1e-12)
    assert result.error_estimate >= 0
    assert result.evaluations >= 1


def test_ground_state_density_is_normalized():
    result = integrate_semi_infinite(lambda x: rho_density(1, x), breakpoints=(30.0,))
    assert result.value == pytest.approx(1.0, abs=1e-10)


def test_ground_state_log_integral():
    integrand = entropy_integrand(lambda x: rho_density(1, x))
    negative_entropy = integrate_semi_infinite(lambda x: -integrand(x), breakpoints=(30.0,))

    assert round(negative_entropy.value, 4) == -1.1544
    assert negative_entropy.value == pytest.approx(-2 * EULER_GAMMA, abs=1e-8)


def test_entropy_integrand_floors_tiny_densities():
    integrand = entropy_integrand(lambda _: 1e-320)
    assert integrand(1.0) == 0.0


@pytest.mark.parametrize("n", [1, 5])
def test_momentum_density_is_normalized(n):
    result = integrate_real_line(lambda p: gamma_density(n, p), breakpoints=(-1.0 / n, 1.0 / n))
    assert result.value == pytest.approx(1.0, abs=1e-10)


def test_lorentzian_square():
    result = integrate_real_line(lambda u: 1.0 / (1.0 + u * u) ** 2)
    assert result.value == pytest.approx(math.pi / 2, abs=1e-12)


def test_real_line_is_sum_of_half_lines():
    def f(x: float) -> float:
        return math.exp(-x * x) * (1.0 + x)

    whole = integrate_real_line(f, breakpoints=(-1.0, 2.0))
    positive = integrate_semi_infinite(f, breakpoints=(2.0,))
    negative = integrate_semi_infinite(lambda t: f(-t), breakpoints=(1.0,))

    assert abs(whole.value - (positive.value + negative.value)) <= 1e-12
    assert whole.value == pytest.approx(math.sqrt(math.pi), abs=1e-10)


def test_extra_tail_breakpoints_do_not_move_the_result():
    points = node_positions(2)
    near = integrate_semi_infinite(lambda x: rho_density(2, x), breakpoints=(*points, 20.0))
    far = integrate_semi_infinite(lambda x: rho_density(2, x), breakpoints=(*points, 20.0, 40.0))

    assert abs(near.value - far.value) <= near.error_estimate + far.error_estimate


def test_finite_interval():
    result = integrate_interval(math.sin, 0.0, math.pi)
    assert result.value == pytest.approx(2.0, abs=1e-12)


def test_finite_interval_rejects_reversed_bounds():
    with pytest.raises(ValueError, match="a < b"):
        integrate_interval(math.sin, 1.0, 1.0)


def test_non_finite_integrand():
    with pytest.raises(QuadratureError) as error:
        integrate_interval(lambda _: math.nan, 0.0, 1.0)

    assert error.value.result is not None


def test_evaluation_budget():
    tol = ToleranceSpec(max_evaluations=10)
    with pytest.raises(QuadratureError, match="budget"):
        integrate_semi_infinite(lambda x: math.exp(-x), tol)


def test_tolerance_validation():
    with pytest.raises(ValidationError):
        ToleranceSpec(absolute=0.0)
    with pytest.raises(ValidationError):
        ToleranceSpec(relative=-1e-10)
    with pytest.raises(ValidationError):
        ToleranceSpec(max_evaluations=0)


def test_tolerance_target():
    tol = ToleranceSpec(absolute=1e-12, relative=1e-10)
    assert tol.target(1.0) == 1e-10
    assert tol.target(0.0) == 1e-12


def test_results_add_up():
    total = QuadratureResult(value=1.0, error_estimate=1e-12, evaluations=21) + QuadratureResult(
        value=ComplexAmplitude(re=0.5, im=-0.5),
        error_estimate=2e-12,
        evaluations=42,
    )

    assert complex(total.value) == 1.5 - 0.5j
    assert total.error_estimate == pytest.approx(3e-12)
    assert total.evaluations == 63


def test_ground_state_transform_at_zero():
    value = fourier_transform_numeric(1, 0.0)

    assert value.re == pytest.approx(math.sqrt(2 / math.pi), abs=1e-10)
    assert value.im == 0.0


@pytest.mark.parametrize(("n", "p"), [(1, 1.0), (1, 5.0), (3, -2.0), (10, 0.2), (10, 5.0)])
def test_transform_matches_closed_form(n, p):
    assert abs(complex(fourier_transform_numeric(n, p)) - complex(phi(n, p))) <= 1e-8


def test_transform_result_carries_an_error_estimate():
    result = fourier_transform_result(2, 3.0)

    assert isinstance(result.value, ComplexAmplitude)
    assert 0 <= result.error_estimate <= 1e-8


@pytest.mark.parametrize("p", [0.3, 3.0])
def test_transform_is_linear(p):
    points = sorted({*node_positions(1), *node_positions(2)})
    combined = fourier_integral(
        lambda x: psi(1, x) + psi(2, x),
        p,
        decay_length=2.0,
        breakpoints=points,
        tail_start=node_scan_limit(2),
    )
    separate = complex(fourier_transform_numeric(1, p)) + complex(fourier_transform_numeric(2, p))

    assert abs(complex(combined.value) - separate) <= 1e-10


def test_half_period_panels_agree_with_direct_quadrature():
    # 0.49 is integrated directly, 0.51 on half-period panels.
    below = complex(fourier_transform_numeric(4, 0.49))
    above = complex(fourier_transform_numeric(4, 0.51))

    assert abs(below - complex(phi(4, 0.49))) <= 1e-9
    assert abs(above - complex(phi(4, 0.51))) <= 1e-9

@pytest.mark.parametrize("p", [50.0, -50.0])
def test_transform_at_high_momentum_within_default_budget(p):
    result = fourier_transform_result(20, p)

    assert result.evaluations <= DEFAULT_TOLERANCE.max_evaluations
    assert abs(complex(result.value) - complex(phi(20, p))) <= 1e-8
