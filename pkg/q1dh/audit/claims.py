"""Executable checks of the statements made about the bound states.

Every check returns a `ClaimReport`. The checks are independent of each other, and
`claim_plan`/`stc_claim_plan` bundle them into the suites the CLI runs.
"""

import logging
import math
from collections.abc import Callable, Sequence
from functools import partial

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq

from q1dh._compat import StrEnum
from q1dh.audit.reports import ClaimReport
from q1dh.infotheory import BBM_TOLERANCE, bbm_report
from q1dh.momentum import MomentumEntropySource, get_source
from q1dh.quadrature import (
    QuadratureError,
    ToleranceSpec,
    fourier_transform_numeric,
    integrate_interval,
    integrate_real_line,
    integrate_semi_infinite,
)
from q1dh.states import (
    energy,
    gamma_density,
    gamma_stc_density,
    momentum_waveform,
    node_positions,
    node_scan_limit,
    phi,
    phi_stc,
    psi,
    stc_zeros,
)

logger = logging.getLogger("rich")

# Momenta used by default for the Fourier checks.
DEFAULT_P_GRID = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0)

# Half width of the interval used by the default concentration check.
DEFAULT_HALF_WIDTH = 0.5

MAX_ORTHONORMALITY_INDEX = 20
MAX_FOURIER_INDEX = 20
MAX_FOURIER_MOMENTUM = 10.0
MAX_NODE_INDEX = 15

ORTHONORMALITY_TOLERANCE = 1e-8
FOURIER_TOLERANCE = 1e-8
NODE_TOLERANCE = 1e-8
NORMALIZATION_TOLERANCE = 1e-9
CONCENTRATION_TOLERANCE = 1e-10
ORIGIN_TOLERANCE = 1e-12


class ClaimError(RuntimeError):
    """Raised when a claim cannot be evaluated because a quadrature failed."""


class NodeResolutionError(RuntimeError):
    """Raised when a sign scan is too coarse to separate neighbouring zeros."""


class NodeSpace(StrEnum):
    POSITION = "position"
    MOMENTUM_STC = "momentum_stc"


def _check_range(name: str, value: float, upper: float) -> None:
    if not 1 <= value <= upper:
        msg = f"{name} must be between 1 and {upper}, got {value}"
        raise ValueError(msg)


def orthonormality_position(
    n_max: int,
    tol: ToleranceSpec | None = None,
    tolerance: float = ORTHONORMALITY_TOLERANCE,
) -> ClaimReport:
    """Check that the Gram matrix of psi_1..psi_{n_max} on x >= 0 is the identity."""
    _check_range("n_max", n_max, MAX_ORTHONORMALITY_INDEX)

    gram = np.zeros((n_max, n_max))
    for i in range(1, n_max + 1):
        for j in range(i, n_max + 1):
            points = sorted({*node_positions(i), *node_positions(j), node_scan_limit(j)})
            try:
                result = integrate_semi_infinite(lambda x, i=i, j=j: psi(i, x) * psi(j, x), tol, points)
            except QuadratureError as e:
                msg = f"Position overlap of (n, n') = ({i}, {j}) did not converge"
                raise ClaimError(msg) from e
            gram[i - 1, j - 1] = gram[j - 1, i - 1] = result.value

    return _gram_report("orthonormality-position", gram, tolerance)


def orthonormality_momentum(
    n_max: int,
    tol: ToleranceSpec | None = None,
    tolerance: float = ORTHONORMALITY_TOLERANCE,
) -> ClaimReport:
    """Check that the Gram matrix of Phi_1..Phi_{n_max} on the whole momentum line is the identity.

    The first factor of every inner product is conjugated.
    """
    _check_range("n_max", n_max, MAX_ORTHONORMALITY_INDEX)

    gram = np.zeros((n_max, n_max), dtype=complex)
    for i in range(1, n_max + 1):
        for j in range(i, n_max + 1):
            points = sorted({1.0 / i, 1.0 / j, 1.0, -1.0, -1.0 / i, -1.0 / j})

            def overlap(p: float, i: int = i, j: int = j) -> complex:
                return momentum_waveform(i, p).conjugate() * momentum_waveform(j, p)

            try:
                real = integrate_real_line(lambda p, f=overlap: f(p).real, tol, points)
                imag = integrate_real_line(lambda p, f=overlap: f(p).imag, tol, points)
            except QuadratureError as e:
                msg = f"Momentum overlap of (n, n') = ({i}, {j}) did not converge"
                raise ClaimError(msg) from e

            value = complex(real.value, imag.value)
            gram[i - 1, j - 1] = value
            gram[j - 1, i - 1] = value.conjugate()

    return _gram_report("orthonormality-momentum", gram, tolerance)


def _gram_report(claim_id: str, gram: np.ndarray, tolerance: float = ORTHONORMALITY_TOLERANCE) -> ClaimReport:
    n_max = gram.shape[0]
    deviation = np.abs(gram - np.eye(n_max))
    worst = np.unravel_index(int(np.argmax(deviation)), deviation.shape)
    off_diagonal = deviation - np.diag(np.diag(deviation))

    return ClaimReport.evaluate(
        claim_id,
        list(range(1, n_max + 1)),
        float(deviation.max()),
        tolerance,
        details=f"Largest deviation from the identity at (n, n') = ({worst[0] + 1}, {worst[1] + 1})",
        measurements={
            "max_diagonal_deviation": float(np.diag(deviation).max()),
            "max_off_diagonal": float(off_diagonal.max()),
        },
    )


def _fourier_residuals(
    n: int,
    p_grid: Sequence[float],
    reference: Callable[[float], complex],
    tol: ToleranceSpec | None,
) -> dict[float, float]:
    _check_range("n", n, MAX_FOURIER_INDEX)
    if not p_grid:
        msg = "The momentum grid is empty"
        raise ValueError(msg)

    residuals = {}
    for p in p_grid:
        if abs(p) > MAX_FOURIER_MOMENTUM:
            msg = f"|p| must not exceed {MAX_FOURIER_MOMENTUM}, got {p}"
            raise ValueError(msg)
        try:
            numeric = complex(fourier_transform_numeric(n, p, tol))
        except QuadratureError as e:
            msg = f"Fourier transform of psi_{n} at p = {p} did not converge"
            raise ClaimError(msg) from e
        residuals[p] = abs(numeric - reference(p))
    return residuals


def fourier_consistency(
    n: int,
    p_grid: Sequence[float] = DEFAULT_P_GRID,
    tol: ToleranceSpec | None = None,
    tolerance: float = FOURIER_TOLERANCE,
) -> ClaimReport:
    """Check that the closed-form Phi_n is the numeric Fourier transform of psi_n on a grid."""
    residuals = _fourier_residuals(n, p_grid, lambda p: complex(phi(n, p)), tol)
    worst = max(residuals, key=residuals.__getitem__)

    return ClaimReport.evaluate(
        "fourier-consistency",
        [n],
        residuals[worst],
        tolerance,
        details=f"Largest deviation at p = {worst} over {len(residuals)} momenta",
        measurements={"worst_p": worst},
    )


def stc_fourier_contrast(
    n: int,
    p_grid: Sequence[float] = DEFAULT_P_GRID,
    tol: ToleranceSpec | None = None,
    tolerance: float = FOURIER_TOLERANCE,
) -> ClaimReport:
    """Run the Fourier check against the STC waveform instead; it is expected to fail."""
    residuals = _fourier_residuals(n, p_grid, lambda p: complex(phi_stc(n, p)), tol)
    worst = max(residuals, key=residuals.__getitem__)

    measurements = {"worst_p": worst}
    if 0.0 in residuals:
        measurements["discrepancy_at_origin"] = residuals[0.0]

    return ClaimReport.evaluate(
        "stc-fourier-contrast",
        [n],
        residuals[worst],
        tolerance,
        details="The STC waveform lacks the real part of the transform",
        measurements=measurements,
        expected_to_pass=False,
    )


def _sign_changes(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return the indices of exact zeros and the indices i where values[i] and values[i + 1] differ in sign.

    A zero sample sits between its neighbours, so it never also shows up as a sign change.
    """
    signs = np.sign(values)
    return np.flatnonzero(signs == 0), np.flatnonzero(signs[:-1] * signs[1:] < 0)


def _count_zeros(values: np.ndarray) -> int:
    hits, brackets = _sign_changes(values)
    return hits.size + brackets.size


def _scan_zeros(f: Callable[[npt.ArrayLike], float | np.ndarray], grid: np.ndarray) -> list[float]:
    """Locate the zeros of f on the grid, refining every sign change by bisection."""
    hits, brackets = _sign_changes(f(grid))
    refined = [brentq(f, grid[i], grid[i + 1], xtol=1e-14, rtol=1e-15) for i in brackets]
    return sorted([float(x) for x in grid[hits]] + refined)


def node_count(
    n: int,
    space: NodeSpace | str = NodeSpace.POSITION,
    samples: int | None = None,
    tolerance: float = NODE_TOLERANCE,
) -> ClaimReport:
    """Count the interior zeros of psi_n on x > 0, or of the STC waveform on p > 0.

    Both are expected to have n - 1 of them. Sign changes are found on a uniform grid,
    refined by bisection and compared with their analytic positions. The STC waveform must
    also vanish at p = 0.

    Raises:
        NodeResolutionError: If the grid cannot resolve neighbouring zeros.

    """
    _check_range("n", n, MAX_NODE_INDEX)
    space = NodeSpace(space)

    if space is NodeSpace.POSITION:
        reference = node_positions(n)
        upper = node_scan_limit(n)
        samples = samples or max(200 * n, int(20 * upper))
        f = partial(psi, n)
    else:
        reference = stc_zeros(n)
        upper = 2.0 * reference[-1] + 1.0 / n if reference else 1.0
        samples = samples or max(200 * n, 2000)
        f = partial(phi_stc, n)

    grid = np.linspace(upper / samples, upper, samples)
    if len(reference) > 1 and grid[1] - grid[0] >= min(np.diff(reference)):
        msg = f"{samples} samples cannot separate the zeros of n = {n} in {space}; increase the sample count"
        raise NodeResolutionError(msg)

    zeros = _scan_zeros(f, grid)
    finer = np.linspace(upper / (2 * samples), upper, 2 * samples)
    if len(zeros) != _count_zeros(f(finer)):
        msg = f"Sign scans with {samples} and {2 * samples} samples disagree for n = {n}; increase the sample count"
        raise NodeResolutionError(msg)

    measurements = {"zeros_found": float(len(zeros))}
    if len(zeros) != n - 1:
        residual = float(abs(len(zeros) - (n - 1)))
        details = f"Found {len(zeros)} zeros, expected {n - 1}"
    else:
        deviations = [abs(z - r) / max(1.0, r) for z, r in zip(zeros, reference, strict=True)]
        residual = max(deviations, default=0.0)
        details = f"Found {len(zeros)} zeros at their analytic positions"

    if space is NodeSpace.MOMENTUM_STC:
        measurements["value_at_origin"] = abs(phi_stc(n, 0.0))
        residual = max(residual, measurements["value_at_origin"])

    return ClaimReport.evaluate(
        f"node-count-{space}",
        [n],
        residual,
        tolerance,
        details=details,
        measurements=measurements,
    )


def stc_normalization(
    n: int,
    tol: ToleranceSpec | None = None,
    tolerance: float = NORMALIZATION_TOLERANCE,
) -> ClaimReport:
    """Check that the STC density integrates to 1 on p >= 0, and record that it gives 2 on the whole line."""
    _check_range("n", n, MAX_ORTHONORMALITY_INDEX)
    source = get_source(MomentumEntropySource.STC)
    zeros = source.breakpoints(n)

    try:
        half_line = source.normalization(n, tol).value
        whole_line = integrate_real_line(
            lambda p: gamma_stc_density(n, p),
            tol,
            [*zeros, *(-z for z in zeros)],
        ).value
    except QuadratureError as e:
        msg = f"Normalization of the STC density for n = {n} did not converge"
        raise ClaimError(msg) from e

    return ClaimReport.evaluate(
        "stc-normalization",
        [n],
        abs(half_line - 1.0),
        tolerance,
        details=f"Half-line integral {half_line:.12f}; whole-line integral {whole_line:.12f}, so negative momenta "
        "must be excluded by hand to normalize it",
        measurements={"half_line": half_line, "whole_line": whole_line},
    )


def delta_limit(n: int, half_width: float) -> float:
    """Probability that |p| <= half_width in state n, from the antiderivative of gamma_n.

    Depends on n and half_width only through their product, and tends to 1 as n grows.
    """
    if n < 1:
        msg = f"The quantum index must be a positive integer, got {n}"
        raise ValueError(msg)
    if half_width <= 0:
        msg = f"half_width must be positive, got {half_width}"
        raise ValueError(msg)

    u = n * half_width
    return (2 / math.pi) * (math.atan(u) + u / (1 + u * u))


def delta_concentration(
    n: int,
    half_width: float = DEFAULT_HALF_WIDTH,
    tol: ToleranceSpec | None = None,
    tolerance: float = CONCENTRATION_TOLERANCE,
) -> ClaimReport:
    """Compare `delta_limit` with direct quadrature of gamma_n on [-half_width, half_width]."""
    mass = delta_limit(n, half_width)
    try:
        numeric = integrate_interval(lambda p: gamma_density(n, p), -half_width, half_width, tol).value
    except QuadratureError as e:
        msg = f"Probability mass of n = {n} on [-{half_width}, {half_width}] did not converge"
        raise ClaimError(msg) from e

    return ClaimReport.evaluate(
        "delta-concentration",
        [n],
        abs(numeric - mass),
        tolerance,
        details=f"Mass within |p| <= {half_width}: {mass:.6f}",
        measurements={"mass": mass, "half_width": half_width},
    )


def energy_limit(n_values: Sequence[int], tolerance: float = ORIGIN_TOLERANCE) -> ClaimReport:
    """Check that E_n is negative and rises toward 0 as n grows."""
    if not n_values:
        msg = "n_values is empty"
        raise ValueError(msg)

    levels = sorted(set(n_values))
    energies = np.array([energy(n) for n in levels])
    steps = np.diff(energies)
    above_zero = max(0.0, float(energies.max()))
    not_rising = max(0.0, float(-steps.min())) if steps.size else 0.0

    return ClaimReport.evaluate(
        "energy-limit",
        levels,
        max(above_zero, not_rising),
        tolerance,
        details=f"E_{levels[-1]} = {energies[-1]:.6g}; the levels accumulate below E = 0",
        measurements={
            "highest_level": float(energies[-1]),
            # -1/2 for every n
            "scaled_highest_level": float(energies[-1] * levels[-1] ** 2),
        },
    )


def stc_origin(n_values: Sequence[int], tolerance: float = ORIGIN_TOLERANCE) -> ClaimReport:
    """Check that the STC density vanishes at p = 0 for every n, where gamma_n peaks at 2n/pi."""
    if not n_values:
        msg = "n_values is empty"
        raise ValueError(msg)

    measurements = {f"gamma_n{n}_origin": gamma_density(n, 0.0) for n in n_values}
    residual = max(gamma_stc_density(n, 0.0) for n in n_values)

    return ClaimReport.evaluate(
        "stc-zero-momentum",
        list(n_values),
        residual,
        tolerance,
        details="The STC density forbids p = 0 at every n, although the true density concentrates there",
        measurements=measurements,
    )


def bbm_claim(
    n: int,
    source: MomentumEntropySource | str = MomentumEntropySource.CORRECT,
    tol: ToleranceSpec | None = None,
) -> ClaimReport:
    """Wrap `bbm_report` as a claim; with the STC source the inequality is expected to break."""
    source = MomentumEntropySource(source)
    try:
        report = bbm_report(n, source, tol)
    except QuadratureError as e:
        msg = f"Entropies of n = {n} ({source}) did not converge"
        raise ClaimError(msg) from e

    return ClaimReport.evaluate(
        f"bbm-{source}",
        [n],
        max(0.0, -report.margin),
        BBM_TOLERANCE,
        details=f"S_rho + S_gamma = {report.bbm_sum:.4f} against 1 + ln(pi) = {report.bbm_bound:.4f}",
        measurements={
            "s_rho": report.s_rho,
            "s_gamma": report.s_gamma_numeric,
            "bbm_sum": report.bbm_sum,
            "margin": report.margin,
        },
        expected_to_pass=source is MomentumEntropySource.CORRECT,
    )


Claim = Callable[[], ClaimReport]


def claim_plan(
    n_list: Sequence[int],
    tol: ToleranceSpec | None = None,
    tolerance: float | None = None,
) -> list[Claim]:
    """Return the claims checked by the verification suite, in execution order.

    Orthonormality is checked once up to max(n_list) and the energy levels once for all of n_list;
    every other claim runs once per n.
    """
    if not n_list:
        msg = "n_list is empty"
        raise ValueError(msg)
    for n in n_list:
        _check_range("n", n, MAX_NODE_INDEX)

    overrides = {} if tolerance is None else {"tolerance": tolerance}
    n_max = max(n_list)

    plan: list[Claim] = [
        partial(orthonormality_position, n_max, tol, **overrides),
        partial(orthonormality_momentum, n_max, tol, **overrides),
        partial(energy_limit, sorted(n_list), **overrides),
    ]
    for n in sorted(n_list):
        plan.extend(
            [
                partial(fourier_consistency, n, DEFAULT_P_GRID, tol, **overrides),
                partial(node_count, n, NodeSpace.POSITION, None, **overrides),
                partial(node_count, n, NodeSpace.MOMENTUM_STC, None, **overrides),
                partial(stc_normalization, n, tol, **overrides),
                partial(delta_concentration, n, DEFAULT_HALF_WIDTH, tol, **overrides),
            ],
        )

    logger.debug("Planned %d claims for n in %s", len(plan), sorted(n_list))
    return plan


def stc_claim_plan(
    n_list: Sequence[int],
    tol: ToleranceSpec | None = None,
) -> list[Claim]:
    """Return the claims adjudicating the STC waveform, in execution order."""
    if not n_list:
        msg = "n_list is empty"
        raise ValueError(msg)
    for n in n_list:
        _check_range("n", n, MAX_FOURIER_INDEX)

    plan: list[Claim] = []
    for n in sorted(n_list):
        plan.extend(
            [
                partial(stc_fourier_contrast, n, DEFAULT_P_GRID, tol),
                partial(stc_normalization, n, tol),
            ],
        )
    plan.extend(
        [
            partial(stc_origin, sorted(n_list)),
            partial(bbm_claim, 1, MomentumEntropySource.STC, tol),
        ],
    )
    return plan

