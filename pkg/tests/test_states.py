import math

import numpy as np
import pytest
from pydantic import ValidationError

from q1dh.quadrature import fourier_transform_numeric, integrate_semi_infinite
from q1dh.states import (
    BoundState,
    ComplexAmplitude,
    HardWallError,
    energy,
    gamma_density,
    gamma_stc_density,
    half_width,
    momentum_waveform,
    node_positions,
    node_scan_limit,
    phi,
    phi_stc,
    potential,
    psi,
    rho_density,
    stc_zeros,
)


@pytest.mark.parametrize(("x", "expected"), [(1.0, -1.0), (0.5, -2.0), (4.0, -0.25)])
def test_potential(x, expected):
    assert potential(x) == expected


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_potential_behind_the_wall(x):
    with pytest.raises(HardWallError):
        potential(x)


@pytest.mark.parametrize(("n", "expected"), [(1, -0.5), (2, -0.125), (1000, -5e-7)])
def test_energy(n, expected):
    assert energy(n) == pytest.approx(expected, rel=1e-15)


def test_energy_rejects_zero_index():
    with pytest.raises(ValueError, match="positive integer"):
        energy(0)


def test_psi_values():
    assert psi(1, 0.0) == 0.0
    assert psi(1, 1.0) == pytest.approx(2 / math.e, abs=1e-15)
    assert psi(2, 1.0) == pytest.approx(math.exp(-0.5) / math.sqrt(8), abs=1e-15)


def test_psi_rejects_negative_positions():
    with pytest.raises(HardWallError):
        psi(1, -0.1)
    with pytest.raises(HardWallError):
        psi(2, np.array([0.0, 1.0, -1.0]))


def test_psi_vectorized_matches_scalar():
    xs = np.linspace(0.0, 30.0, 7)
    np.testing.assert_allclose(psi(3, xs), [psi(3, float(x)) for x in xs], rtol=1e-15, atol=0)


@pytest.mark.parametrize("n", [1, 3, 7])
def test_psi_is_normalized(n):
    points = (*node_positions(n), node_scan_limit(n))
    norm = integrate_semi_infinite(lambda x: rho_density(n, x), breakpoints=points).value
    assert norm == pytest.approx(1.0, abs=1e-10)


def test_rho_density():
    assert rho_density(1, 1.0) == pytest.approx(4 * math.exp(-2), rel=1e-15)


@pytest.mark.parametrize(
    ("n", "p", "re", "im"),
    [
        (1, 0.0, math.sqrt(2 / math.pi), 0.0),
        (2, 0.0, -math.sqrt(4 / math.pi), 0.0),
        (1, 1.0, 0.0, -0.5 * math.sqrt(2 / math.pi)),
    ],
)
def test_phi_known_values(n, p, re, im):
    value = phi(n, p)
    assert value.re == pytest.approx(re, abs=1e-15)
    assert value.im == pytest.approx(im, abs=1e-15)


def test_phi_matches_numeric_transform():
    closed = complex(phi(4, 0.3))
    numeric = complex(fourier_transform_numeric(4, 0.3))
    assert abs(closed - numeric) <= 1e-8


@pytest.mark.parametrize("n", range(1, 21))
def test_gamma_is_modulus_squared(n):
    for p in np.linspace(-10.0, 10.0, 81):
        assert abs(gamma_density(n, float(p)) - phi(n, float(p)).modulus_squared()) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 5, 12, 20])
def test_waveform_parity(n):
    ps = np.linspace(0.0, 10.0, 41)
    forward = momentum_waveform(n, ps)
    backward = momentum_waveform(n, -ps)

    np.testing.assert_allclose(forward.real, backward.real, rtol=0, atol=1e-12)
    np.testing.assert_allclose(forward.imag, -backward.imag, rtol=0, atol=1e-12)


def test_scalar_inputs_return_floats():
    assert isinstance(psi(1, 1.0), float)
    assert isinstance(phi_stc(2, 0.5), float)
    assert isinstance(gamma_stc_density(2, 0.5), float)
    assert psi(1, np.array([1.0, 2.0])).shape == (2,)


def test_gamma_known_values():
    assert gamma_density(1, 0.0) == pytest.approx(2 / math.pi, rel=1e-15)
    assert gamma_density(2, 0.5) == pytest.approx(1 / math.pi, rel=1e-15)


@pytest.mark.parametrize("n", [1, 3, 10])
def test_gamma_peaks_at_zero_and_decreases(n):
    ps = np.linspace(0.0, 5.0, 101)
    values = gamma_density(n, ps)

    assert values[0] == pytest.approx(2 * n / math.pi, rel=1e-15)
    assert np.all(np.diff(values) < 0)


@pytest.mark.parametrize("n", [1, 4, 10])
def test_half_width(n):
    assert gamma_density(n, half_width(n)) == pytest.approx(gamma_density(n, 0.0) / 2, rel=1e-12)


def test_phi_stc_values():
    assert phi_stc(1, 0.0) == 0.0
    assert phi_stc(3, 0.7) == pytest.approx(phi(3, 0.7).im, abs=1e-12)


@pytest.mark.parametrize("n", range(1, 21))
def test_phi_stc_is_imaginary_part(n):
    for p in np.linspace(-10.0, 10.0, 81):
        assert abs(phi_stc(n, float(p)) - phi(n, float(p)).im) <= 1e-12

    ps = np.linspace(-10.0, 10.0, 81)
    np.testing.assert_allclose(phi_stc(n, ps), momentum_waveform(n, ps).imag, rtol=0, atol=1e-12)


def test_phi_stc_is_bounded_by_gamma():
    ps = np.linspace(-3.0, 3.0, 61)
    assert np.all(phi_stc(2, ps) ** 2 <= gamma_density(2, ps) + 1e-15)


def test_gamma_stc_is_doubled_square():
    assert gamma_stc_density(2, 0.5) == pytest.approx(4 * phi_stc(2, 0.5) ** 2, rel=1e-12)
    assert gamma_stc_density(5, 0.0) == 0.0


@pytest.mark.parametrize("n", [2, 5, 9])
def test_stc_zeros(n):
    zeros = stc_zeros(n)
    assert len(zeros) == n - 1
    for zero in zeros:
        assert abs(phi_stc(n, zero)) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 6, 15])
def test_node_positions(n):
    nodes = node_positions(n)

    assert len(nodes) == n - 1
    assert list(nodes) == sorted(nodes)
    assert all(0 < node < node_scan_limit(n) for node in nodes)
    for node in nodes:
        assert abs(psi(n, node)) <= 1e-10


@pytest.mark.parametrize("n", [8, 10, 15])
def test_scan_limit_covers_outer_nodes(n):
    assert node_positions(n)[-1] < node_scan_limit(n)


def test_bound_state_validation():
    assert BoundState(n=3).n == 3
    with pytest.raises(ValidationError):
        BoundState(n=0)


def test_complex_amplitude():
    value = ComplexAmplitude.from_complex(3 - 4j)

    assert complex(value) == 3 - 4j
    assert value.modulus_squared() == 25.0
    with pytest.raises(ValidationError):
        ComplexAmplitude(re=math.nan, im=0.0)
