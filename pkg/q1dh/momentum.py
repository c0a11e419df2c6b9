"""Momentum-density sources for entropy calculations.

A source bundles a density with the domain it is normalized on, so the same entropy machinery
can be pointed at the true momentum density or at the rival STC density.
"""

from abc import ABC, abstractmethod
from q1dh._compat import StrEnum

import numpy as np
import numpy.typing as npt

from q1dh.quadrature import (
    Integrand,
    QuadratureResult,
    ToleranceSpec,
    entropy_integrand,
    integrate_real_line,
    integrate_semi_infinite,
)
from q1dh.states import gamma_density, gamma_stc_density, stc_zeros


class MomentumEntropySource(StrEnum):
    CORRECT = "correct"
    STC = "stc"


class MomentumSource(ABC):
    """Abstract base class for momentum densities.

    Subclasses define the density, whether it lives on the whole line or on p >= 0 only,
    and the points where its entropy integrand is not smooth.
    """

    kind: MomentumEntropySource
    whole_line: bool

    @abstractmethod
    def density(self, n: int, p: npt.ArrayLike) -> float | np.ndarray:
        """Evaluate the density of state n at momentum p."""

    @abstractmethod
    def breakpoints(self, n: int) -> tuple[float, ...]:
        """Return the positive momenta where the entropy integrand should be split."""

    def normalization(self, n: int, tol: ToleranceSpec | None = None) -> QuadratureResult:
        return self._integrate(lambda p: self.density(n, p), n, tol)

    def entropy(self, n: int, tol: ToleranceSpec | None = None) -> QuadratureResult:
        """Shannon entropy -integral of gamma ln gamma over the source's domain, in nats."""
        return self._integrate(entropy_integrand(lambda p: self.density(n, p)), n, tol)

    def _integrate(self, f: Integrand, n: int, tol: ToleranceSpec | None) -> QuadratureResult:
        points = self.breakpoints(n)
        if self.whole_line:
            return integrate_real_line(f, tol, [*points, *(-p for p in points)])
        return integrate_semi_infinite(f, tol, points)


class CorrectMomentum(MomentumSource):
    """|Phi_n|^2 on the whole momentum line."""

    kind = MomentumEntropySource.CORRECT
    whole_line = True

    def density(self, n: int, p: npt.ArrayLike) -> float | np.ndarray:
        return gamma_density(n, p)

    def breakpoints(self, n: int) -> tuple[float, ...]:
        # The density falls to a quarter of its peak at p = 1/n
        return (1.0 / n, 10.0 / n)


class StcMomentum(MomentumSource):
    """The doubled STC density, normalized on p >= 0 only."""

    kind = MomentumEntropySource.STC
    whole_line = False

    def density(self, n: int, p: npt.ArrayLike) -> float | np.ndarray:
        return gamma_stc_density(n, p)

    def breakpoints(self, n: int) -> tuple[float, ...]:
        zeros = stc_zeros(n)
        return (*zeros, 2.0 * zeros[-1] + 1.0 / n) if zeros else (1.0, 10.0)


def get_source(kind: MomentumEntropySource | str) -> MomentumSource:
    """Return the momentum source for the given kind."""
    match MomentumEntropySource(kind):
        case MomentumEntropySource.CORRECT:
            return CorrectMomentum()
        case MomentumEntropySource.STC:
            return StcMomentum()
