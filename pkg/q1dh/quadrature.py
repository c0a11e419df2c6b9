"""Adaptive integration on semi-infinite, whole-line and finite domains.

Smooth integrals go through QUADPACK (`scipy.integrate.quad`): 21-point Gauss-Kronrod panels on
finite pieces, 15-point panels after the x = a + (1 - t)/t compactification on the tail, with the
embedded-rule difference as the error estimate. Callers pass the known zeros of their integrands
as breakpoints, so logarithmic singularities of entropy integrands always sit on panel edges.

The Fourier oracle integrates psi(x) exp(-ipx) directly. For strongly oscillating cases the
half-line is cut into panels of whole half periods pi / |p|, about a quarter of the decay length
wide, and every panel is integrated with vectorized Gauss-Legendre rules of two orders that grow
with the panel width. Panels whose two estimates disagree are bisected. Past the last zero the tail
is cut once 3 |f(x)| / |p|, a bound on the remaining integral, drops below the tolerance.
"""

import logging
import math
from collections.abc import Callable, Sequence
from functools import lru_cache
from typing import cast

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import quad
from scipy.special import entr, roots_legendre

from q1dh.states import ComplexAmplitude, node_positions, node_scan_limit, psi

logger = logging.getLogger("rich")

# Densities below this are treated as exact zeros in rho ln rho.
DENSITY_FLOOR = 1e-300

# |p| times the decay length above which the Fourier oracle switches to half-period panels.
OSCILLATION_THRESHOLD = 2.0

# QUADPACK exit codes other than 0 are accepted when the reported error is within this factor
# of the requested tolerance.
_ACCEPTANCE_SLACK = 1e3

_PANEL_BATCH = 64
_PANEL_MAX_DEPTH = 12
_PANELS_PER_DECAY_LENGTH = 4
# Low Gauss-Legendre order for a single half period, and the nodes added for every further one.
_LOW_ORDER = 16
_NODES_PER_HALF_PERIOD = 3

Integrand = Callable[[float], float]


class ToleranceSpec(BaseModel):
    """Accuracy targets for one integral."""

    model_config = ConfigDict(frozen=True)

    absolute: float = Field(default=1e-12, gt=0)
    relative: float = Field(default=1e-10, gt=0)
    max_evaluations: int = Field(default=1_000_000, ge=1)

    def target(self, value: float) -> float:
        """Return the error the result is allowed to carry."""
        return max(self.absolute, self.relative * abs(value))


DEFAULT_TOLERANCE = ToleranceSpec()


class QuadratureResult(BaseModel):
    """Value of an integral together with its error estimate and cost."""

    model_config = ConfigDict(frozen=True)

    value: float | ComplexAmplitude
    error_estimate: float = Field(ge=0)
    evaluations: int = Field(ge=1)

    def __add__(self, other: "QuadratureResult") -> "QuadratureResult":
        if isinstance(self.value, ComplexAmplitude) or isinstance(other.value, ComplexAmplitude):
            value: float | ComplexAmplitude = ComplexAmplitude.from_complex(
                complex(self.value) + complex(other.value),
            )
        else:
            value = self.value + other.value

        return QuadratureResult(
            value=value,
            error_estimate=self.error_estimate + other.error_estimate,
            evaluations=self.evaluations + other.evaluations,
        )


class QuadratureError(RuntimeError):
    """Raised when an integral cannot be computed to the requested accuracy.

    The best available estimate is kept in `result`.
    """

    def __init__(self, message: str, result: QuadratureResult | None = None) -> None:
        super().__init__(message)
        self.result = result


def _quad(f: Integrand, a: float, b: float, tol: ToleranceSpec) -> QuadratureResult:
    limit = max(50, tol.max_evaluations // 21)
    output = quad(f, a, b, epsabs=tol.absolute, epsrel=tol.relative, limit=limit, full_output=1)
    value, error, info = output[0], output[1], output[2]

    result = QuadratureResult(
        value=float(value),
        error_estimate=float(error) if math.isfinite(error) else math.inf,
        evaluations=max(1, int(info["neval"])),
    )

    if not math.isfinite(value):
        msg = f"Integrand produced a non-finite value on [{a}, {b}]"
        raise QuadratureError(msg, result)

    # With full_output, QUADPACK appends a message only when its exit code is non-zero
    if len(output) > 3:  # noqa: PLR2004
        if result.error_estimate > _ACCEPTANCE_SLACK * tol.target(value):
            msg = f"No convergence on [{a}, {b}]: {output[3]}"
            raise QuadratureError(msg, result)
        logger.debug("Accepting integral on [%g, %g] despite QUADPACK warning: %s", a, b, output[3])

    return result


def _check_budget(result: QuadratureResult, tol: ToleranceSpec) -> QuadratureResult:
    if result.evaluations > tol.max_evaluations:
        msg = f"Evaluation budget of {tol.max_evaluations} exhausted after {result.evaluations} evaluations"
        raise QuadratureError(msg, result)
    return result


def integrate_interval(f: Integrand, a: float, b: float, tol: ToleranceSpec | None = None) -> QuadratureResult:
    """Integrate f over the finite interval [a, b]."""
    tol = tol or DEFAULT_TOLERANCE
    if not a < b:
        msg = f"Expected a < b, got [{a}, {b}]"
        raise ValueError(msg)
    return _check_budget(_quad(f, a, b, tol), tol)


def integrate_semi_infinite(
    f: Integrand,
    tol: ToleranceSpec | None = None,
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """Integrate f over [0, inf).

    Args:
        f (Callable): Integrand, called with scalar floats.
        tol (ToleranceSpec | None): Accuracy targets, defaults to `DEFAULT_TOLERANCE`.
        breakpoints (Sequence[float]): Points in (0, inf) where f is not smooth, typically its zeros.
            The last one also marks where the compactified tail integral starts.

    Returns:
        QuadratureResult: The summed value, error estimate and evaluation count.

    Raises:
        QuadratureError: On non-finite values, non-convergence or an exhausted evaluation budget.

    """
    tol = tol or DEFAULT_TOLERANCE
    edges = [0.0, *sorted({float(b) for b in breakpoints if b > 0})]

    result = _quad(f, edges[-1], math.inf, tol)
    for lo, hi in zip(edges[:-1], edges[1:], strict=True):
        result = _quad(f, lo, hi, tol) + result
        _check_budget(result, tol)

    logger.debug("Semi-infinite integral over %d panels: %d evaluations", len(edges), result.evaluations)
    return _check_budget(result, tol)


def integrate_real_line(
    f: Integrand,
    tol: ToleranceSpec | None = None,
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """Integrate f over the whole real line as two half-line integrals joined at 0.

    Breakpoints may lie on either side of the origin.
    """
    positive = integrate_semi_infinite(f, tol, [b for b in breakpoints if b > 0])
    negative = integrate_semi_infinite(lambda t: f(-t), tol, [-b for b in breakpoints if b < 0])
    return _check_budget(positive + negative, tol or DEFAULT_TOLERANCE)


def entropy_integrand(density: Callable[[npt.ArrayLike], float | np.ndarray]) -> Integrand:
    """Return x -> -rho(x) ln rho(x), with rho ln rho taken as 0 wherever rho < `DENSITY_FLOOR`."""

    def integrand(x: float) -> float:
        rho = density(x)
        return float(entr(rho if rho >= DENSITY_FLOOR else 0.0))

    return integrand


@lru_cache(maxsize=16)
def _legendre_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    return roots_legendre(order)


def _panel_orders(half_periods: int) -> tuple[int, int]:
    """Gauss-Legendre orders for a panel spanning the given number of half periods."""
    low = _LOW_ORDER + _NODES_PER_HALF_PERIOD * (half_periods - 1)
    return low, 2 * low


def _panel_integrals(
    f: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    orders: tuple[int, int],
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate f over every [lo_i, hi_i] with two Gauss-Legendre orders.

    Returns the high-order values and the absolute differences between the two orders.
    """
    mid = 0.5 * (lo + hi)[:, None]
    half = 0.5 * (hi - lo)

    estimates = []
    for order in orders:
        nodes, weights = _legendre_rule(order)
        estimates.append(half * (f(mid + half[:, None] * nodes[None, :]) @ weights))

    low, high = estimates
    return high, np.abs(high - low)


def _adaptive_panels(
    f: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    tol: ToleranceSpec,
    orders: tuple[int, int],
) -> tuple[complex, float, int]:
    """Integrate over a batch of panels, bisecting those whose two-order estimates disagree."""
    total = 0j
    error = 0.0
    evaluations = 0

    for depth in range(_PANEL_MAX_DEPTH + 1):
        values, errors = _panel_integrals(f, lo, hi, orders)
        evaluations += lo.size * sum(orders)

        converged = errors <= np.maximum(tol.absolute, tol.relative * np.abs(values))
        if depth == _PANEL_MAX_DEPTH:
            logger.debug("Panel refinement depth exhausted for %d panels", int(np.count_nonzero(~converged)))
            converged[:] = True

        total += complex(np.sum(values[converged]))
        error += float(np.sum(errors[converged]))

        if converged.all():
            break

        lo, hi = lo[~converged], hi[~converged]
        mid = 0.5 * (lo + hi)
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])

    return total, error, evaluations


def _half_period_integral(
    f: Callable[[np.ndarray], np.ndarray],
    p: float,
    tol: ToleranceSpec,
    decay_length: float,
    tail_start: float,
) -> QuadratureResult:
    half_period = math.pi / abs(p)
    half_periods = max(1, math.floor(decay_length / (_PANELS_PER_DECAY_LENGTH * half_period)))
    orders = _panel_orders(half_periods)
    step = half_periods * half_period
    total = 0j
    error = 0.0
    evaluations = 0
    first = 0

    while True:
        edges = step * np.arange(first, first + _PANEL_BATCH + 1, dtype=float)
        lo, hi = edges[:-1], edges[1:]
        batch_total, batch_error, batch_evaluations = _adaptive_panels(f, lo, hi, tol, orders)

        total += batch_total
        error += batch_error
        evaluations += batch_evaluations
        first += _PANEL_BATCH

        # Past tail_start |f| decreases monotonically, so the rest of the integral is at most 3 |f(x)| / |p|.
        tail_bound = 3.0 * float(np.abs(f(hi[-1:]))[0]) / abs(p)
        if hi[-1] >= tail_start and tail_bound < 1e-3 * tol.absolute:
            error += tail_bound
            break

        if evaluations > tol.max_evaluations:
            best = QuadratureResult(
                value=ComplexAmplitude.from_complex(total),
                error_estimate=error,
                evaluations=evaluations,
            )
            msg = f"Evaluation budget of {tol.max_evaluations} exhausted at x = {hi[-1]:g} for p = {p}"
            raise QuadratureError(msg, best)

    logger.debug(
        "Fourier panels for p=%g: %d panels of %d half periods, %d evaluations",
        p,
        first,
        half_periods,
        evaluations,
    )
    return QuadratureResult(
        value=ComplexAmplitude.from_complex(total),
        error_estimate=error,
        evaluations=evaluations,
    )


def fourier_integral(
    f: Callable[[npt.ArrayLike], float | np.ndarray],
    p: float,
    tol: ToleranceSpec | None = None,
    *,
    decay_length: float = 1.0,
    breakpoints: Sequence[float] = (),
    tail_start: float = 0.0,
) -> QuadratureResult:
    """Compute (1/sqrt(2 pi)) * integral over [0, inf) of exp(-ipx) f(x) dx.

    Args:
        f (Callable): Vectorized integrand on [0, inf), decaying at least like exp(-x/decay_length).
        p (float): Momentum.
        tol (ToleranceSpec | None): Accuracy targets.
        decay_length (float): Length scale of the decay of f, selects the integration scheme.
        breakpoints (Sequence[float]): Zeros of f, used by the direct scheme.
        tail_start (float): Point beyond which f has no zeros and |f| decreases, used by the panel scheme.

    Returns:
        QuadratureResult: The transform as a `ComplexAmplitude`.

    """
    tol = tol or DEFAULT_TOLERANCE
    norm = 1.0 / math.sqrt(2 * math.pi)

    if abs(p) * decay_length > OSCILLATION_THRESHOLD:
        raw = _half_period_integral(lambda x: f(x) * np.exp(-1j * p * x), p, tol, decay_length, tail_start)
        return QuadratureResult(
            value=ComplexAmplitude.from_complex(norm * complex(raw.value)),
            error_estimate=norm * raw.error_estimate,
            evaluations=raw.evaluations,
        )

    points = (*breakpoints, tail_start)
    cosine = integrate_semi_infinite(lambda x: float(f(x)) * math.cos(p * x), tol, points)
    if p == 0:
        sine = QuadratureResult(value=0.0, error_estimate=0.0, evaluations=1)
    else:
        sine = integrate_semi_infinite(lambda x: float(f(x)) * math.sin(p * x), tol, points)

    return QuadratureResult(
        value=ComplexAmplitude(re=norm * cosine.value, im=-norm * sine.value),
        error_estimate=norm * (cosine.error_estimate + sine.error_estimate),
        evaluations=cosine.evaluations + sine.evaluations,
    )


def fourier_transform_result(n: int, p: float, tol: ToleranceSpec | None = None) -> QuadratureResult:
    """Numeric Fourier transform of psi_n at momentum p, with its error estimate."""
    return fourier_integral(
        lambda x: psi(n, x),
        p,
        tol,
        decay_length=n,
        breakpoints=node_positions(n),
        tail_start=node_scan_limit(n),
    )


def fourier_transform_numeric(n: int, p: float, tol: ToleranceSpec | None = None) -> ComplexAmplitude:
    """Numeric Fourier transform of psi_n at momentum p, the oracle for `states.phi`."""
    return cast("ComplexAmplitude", fourier_transform_result(n, p, tol).value)
