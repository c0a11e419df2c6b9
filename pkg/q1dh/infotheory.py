"""Shannon entropies of the position and momentum densities, in nats.

Also checks the entropic uncertainty relation S_rho + S_gamma >= 1 + ln(pi).
"""

import logging
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from q1dh.momentum import MomentumEntropySource, get_source
from q1dh.quadrature import ToleranceSpec, entropy_integrand, integrate_semi_infinite
from q1dh.states import node_positions, node_scan_limit, rho_density

logger = logging.getLogger("rich")

EULER_GAMMA = 0.57721566490153286

# Lower bound of S_rho + S_gamma for any one-dimensional state.
BBM_BOUND = 1.0 + math.log(math.pi)

# Both sides of the inequality come out of quadratures, so the check allows this much slack.
BBM_TOLERANCE = 1e-9

VALIDATED_MAX_INDEX = 50


class EntropyReport(BaseModel):
    """Entropies of one state and the outcome of the uncertainty check."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    source: MomentumEntropySource
    s_rho: float
    s_gamma_numeric: float
    s_gamma_analytic: float | None = None
    bbm_sum: float
    bbm_bound: float = BBM_BOUND
    satisfied: bool
    margin: float

    @model_validator(mode="after")
    def validate_outcome(self) -> "EntropyReport":
        if not math.isclose(self.bbm_bound, BBM_BOUND, rel_tol=0, abs_tol=1e-15):
            msg = f"The entropic bound must be 1 + ln(pi), got {self.bbm_bound}"
            raise ValueError(msg)

        if self.satisfied != (self.margin >= -BBM_TOLERANCE):
            msg = f"satisfied={self.satisfied} is inconsistent with margin={self.margin}"
            raise ValueError(msg)

        return self


def _check_index(n: int) -> None:
    if not 1 <= n <= VALIDATED_MAX_INDEX:
        msg = f"Entropies are validated for 1 <= n <= {VALIDATED_MAX_INDEX}, got {n}"
        raise ValueError(msg)


def shannon_position(n: int, tol: ToleranceSpec | None = None) -> float:
    """Position entropy -integral of psi_n^2 ln psi_n^2 over x >= 0."""
    _check_index(n)
    result = integrate_semi_infinite(
        entropy_integrand(lambda x: rho_density(n, x)),
        tol,
        breakpoints=(*node_positions(n), node_scan_limit(n)),
    )
    return result.value


def shannon_momentum_numeric(n: int, tol: ToleranceSpec | None = None) -> float:
    """Momentum entropy of gamma_n over the whole line, by quadrature."""
    _check_index(n)
    return get_source(MomentumEntropySource.CORRECT).entropy(n, tol).value


def shannon_momentum_analytic(n: int) -> float:
    """Closed form of the momentum entropy: -ln(2n/pi) + 4(ln 2 - 1/2)."""
    if n < 1:
        msg = f"The quantum index must be a positive integer, got {n}"
        raise ValueError(msg)
    return -math.log(2 * n / math.pi) + 4 * (math.log(2) - 0.5)


def shannon_stc(n: int, tol: ToleranceSpec | None = None) -> float:
    """Entropy of the STC density, integrated over p >= 0 only."""
    _check_index(n)
    return get_source(MomentumEntropySource.STC).entropy(n, tol).value


def euler_partial_sum(m: int) -> float:
    """Return sum_{i=1}^{m} 1/i - ln(m), which tends to Euler's constant like 1/(2m)."""
    if m < 1:
        msg = f"m must be positive, got {m}"
        raise ValueError(msg)
    return math.fsum(1.0 / i for i in range(1, m + 1)) - math.log(m)


def bbm_report(
    n: int,
    momentum_entropy_source: MomentumEntropySource | str = MomentumEntropySource.CORRECT,
    tol: ToleranceSpec | None = None,
) -> EntropyReport:
    """Compute both entropies of state n and check S_rho + S_gamma >= 1 + ln(pi).

    Args:
        n (int): Quantum index.
        momentum_entropy_source (MomentumEntropySource | str): Which momentum density to use.
        tol (ToleranceSpec | None): Quadrature accuracy targets.

    Returns:
        EntropyReport: The entropies, their sum and the signed distance to the bound.

    """
    source = MomentumEntropySource(momentum_entropy_source)

    s_rho = shannon_position(n, tol)
    if source is MomentumEntropySource.CORRECT:
        s_gamma = shannon_momentum_numeric(n, tol)
        s_gamma_analytic: float | None = shannon_momentum_analytic(n)
    else:
        s_gamma = shannon_stc(n, tol)
        s_gamma_analytic = None

    bbm_sum = s_rho + s_gamma
    margin = bbm_sum - BBM_BOUND
    logger.debug("n=%d (%s): S_rho=%.6f S_gamma=%.6f margin=%.6f", n, source, s_rho, s_gamma, margin)

    return EntropyReport(
        n=n,
        source=source,
        s_rho=s_rho,
        s_gamma_numeric=s_gamma,
        s_gamma_analytic=s_gamma_analytic,
        bbm_sum=bbm_sum,
        satisfied=margin >= -BBM_TOLERANCE,
        margin=margin,
    )
