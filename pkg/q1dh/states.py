"""Bound states of the quasi-one-dimensional hydrogen atom in Coulomb units.

The particle lives on x > 0 in the potential -1/x, with an impenetrable wall at x <= 0.
Mass, coupling and Planck's constant are all 1, so none of them appears below.

Every function accepts scalars or numpy arrays for the coordinate; scalars give floats back.
`phi` is the scalar entry point returning a `ComplexAmplitude`, `momentum_waveform` is its
vectorized counterpart.
"""

import math
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import roots_genlaguerre

from q1dh.special_functions import as_output, laguerre, laguerre_params


class HardWallError(ValueError):
    """Raised when a position at or behind the infinite wall is requested."""


class BoundState(BaseModel):
    """A bound state labelled by its principal quantum index."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description="Quantum index, n = 1 is the ground state.")


class ComplexAmplitude(BaseModel):
    """Value of a complex momentum waveform, split into its components."""

    model_config = ConfigDict(frozen=True)

    re: float = Field(allow_inf_nan=False)
    im: float = Field(allow_inf_nan=False)

    @classmethod
    def from_complex(cls, value: complex) -> "ComplexAmplitude":
        return cls(re=float(value.real), im=float(value.imag))

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def modulus_squared(self) -> float:
        return self.re**2 + self.im**2


def _check_index(n: int) -> None:
    if n < 1:
        msg = f"The quantum index must be a positive integer, got {n}"
        raise ValueError(msg)


def potential(x: float) -> float:
    """Return V(x) = -1/x.

    Raises:
        HardWallError: For x <= 0, where the potential is infinite.

    """
    if x <= 0:
        msg = f"x = {x} lies at or behind the infinite wall"
        raise HardWallError(msg)
    return -1.0 / x


def energy(n: int) -> float:
    """Return E_n = -1/(2n^2)."""
    _check_index(n)
    return -1.0 / (2 * n * n)


def psi(n: int, x: npt.ArrayLike) -> float | np.ndarray:
    """Position eigenfunction (2x/n^(5/2)) exp(-x/n) L_{n-1}^(1)(2x/n).

    Raises:
        HardWallError: If any x is negative.

    """
    _check_index(n)
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0):
        msg = "psi is not defined behind the wall (x < 0)"
        raise HardWallError(msg)

    values = (2.0 * xs / n**2.5) * np.exp(-xs / n) * laguerre(laguerre_params(n - 1, 1), 2.0 * xs / n)
    return as_output(values, x)


def rho_density(n: int, x: npt.ArrayLike) -> float | np.ndarray:
    """Position density psi_n(x)^2."""
    values = psi(n, x)
    return values * values


def _polar(n: int, p: npt.ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """Return the modulus and the arctangent angle of the complex momentum waveform.

    (1 - inp)^(n-1) / (1 + inp)^(n+1) has modulus 1/(1 + n^2 p^2) and phase -2n arctan(np).
    """
    ps = np.asarray(p, dtype=float)
    modulus = math.sqrt(2 * n / math.pi) / (1.0 + (n * ps) ** 2)
    return modulus, np.arctan(n * ps)


def momentum_waveform(n: int, p: npt.ArrayLike) -> complex | np.ndarray:
    """Vectorized complex momentum waveform Phi_n(p)."""
    _check_index(n)
    modulus, angle = _polar(n, p)
    sign = 1.0 if n % 2 == 1 else -1.0
    values = sign * modulus * np.exp(-2j * n * angle)
    if np.ndim(p) == 0:
        return complex(values)
    return values


def phi(n: int, p: float) -> ComplexAmplitude:
    """Momentum waveform (-1)^(n+1) sqrt(2n/pi) (1 - inp)^(n-1) / (1 + inp)^(n+1)."""
    return ComplexAmplitude.from_complex(momentum_waveform(n, p))


def phi_stc(n: int, p: npt.ArrayLike) -> float | np.ndarray:
    """Real STC waveform (-1)^n sqrt(2n/pi) sin(2n arctan(np)) / (1 + n^2 p^2).

    This is exactly the imaginary part of `phi`.
    """
    _check_index(n)
    modulus, angle = _polar(n, p)
    sign = 1.0 if n % 2 == 0 else -1.0
    return as_output(sign * modulus * np.sin(2 * n * angle), p)


def gamma_density(n: int, p: npt.ArrayLike) -> float | np.ndarray:
    """Momentum density (2n/pi) / (1 + n^2 p^2)^2."""
    _check_index(n)
    ps = np.asarray(p, dtype=float)
    return as_output((2 * n / math.pi) / (1.0 + (n * ps) ** 2) ** 2, p)


def gamma_stc_density(n: int, p: npt.ArrayLike) -> float | np.ndarray:
    """STC density (8n/pi) sin^2(2n arctan(np)) / (1 + n^2 p^2)^2.

    The factor 4 belongs here, not to `phi_stc`: the STC waveform is doubled before squaring.
    """
    _check_index(n)
    ps = np.asarray(p, dtype=float)
    values = (8 * n / math.pi) * np.sin(2 * n * np.arctan(n * ps)) ** 2 / (1.0 + (n * ps) ** 2) ** 2
    return as_output(values, p)


@lru_cache(maxsize=128)
def node_positions(n: int) -> tuple[float, ...]:
    """Interior zeros of psi_n, in increasing order (n - 1 of them)."""
    _check_index(n)
    if n == 1:
        return ()
    roots, _ = roots_genlaguerre(n - 1, 1)
    return tuple(float(root) * n / 2 for root in np.sort(roots))


def node_scan_limit(n: int) -> float:
    """Point beyond which psi_n has no zeros.

    The largest zero of L_{n-1}^(1)(y) lies below y = 4n, hence below x = 2n^2.
    """
    _check_index(n)
    return float(max(10 * n + 20, 2 * n * n + 10 * n))


def stc_zeros(n: int) -> tuple[float, ...]:
    """Interior zeros p_k = tan(k pi / 2n) / n, k = 1..n-1, of the STC waveform on p > 0."""
    _check_index(n)
    return tuple(math.tan(k * math.pi / (2 * n)) / n for k in range(1, n))


def half_width(n: int) -> float:
    """Half width at half maximum of gamma_n: sqrt(sqrt(2) - 1) / n."""
    _check_index(n)
    return math.sqrt(math.sqrt(2) - 1) / n
