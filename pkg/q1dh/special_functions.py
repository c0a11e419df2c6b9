"""Generalized Laguerre polynomials.

The evaluator is the forward three-term recurrence in the degree. An exact rational evaluation of
the explicit finite sum serves as its reference in tests.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field

# Highest degree for which the finite-sum oracle is accepted.
SUM_ORACLE_MAX_DEGREE = 20


class LaguerreParams(BaseModel):
    """Degree and order of a generalized Laguerre polynomial L_m^(beta)."""

    model_config = ConfigDict(frozen=True)

    degree: int = Field(ge=0, description="Polynomial degree m.")
    order: int = Field(default=1, ge=0, description="Generalization order beta.")


@lru_cache(maxsize=256)
def laguerre_params(degree: int, order: int = 1) -> LaguerreParams:
    """Return a cached parameter record, to keep per-point evaluation cheap inside integrands."""
    return LaguerreParams(degree=degree, order=order)


def laguerre(params: LaguerreParams, x: npt.ArrayLike) -> float | np.ndarray:
    """Evaluate L_m^(beta)(x) by forward recurrence in the degree.

    Args:
        params (LaguerreParams): Degree and order of the polynomial.
        x (ArrayLike): Evaluation point(s). The intended domain is x >= 0, but any real works.

    Returns:
        float | np.ndarray: A float for scalar input, an array of the same shape otherwise.

    """
    xs = np.asarray(x, dtype=float)
    beta = params.order

    previous = np.ones_like(xs)
    if params.degree == 0:
        return as_output(previous, x)

    current = 1.0 + beta - xs
    for k in range(2, params.degree + 1):
        previous, current = current, ((2 * k - 1 + beta - xs) * current - (k - 1 + beta) * previous) / k

    return as_output(current, x)


def laguerre_sum_oracle(params: LaguerreParams, x: float) -> float:
    """Evaluate L_m^(beta)(x) from the explicit finite sum in exact rational arithmetic.

    Only meant as an independent reference for `laguerre` in tests.

    Raises:
        ValueError: If the degree is above `SUM_ORACLE_MAX_DEGREE`.

    """
    if params.degree > SUM_ORACLE_MAX_DEGREE:
        msg = f"The sum oracle supports degrees up to {SUM_ORACLE_MAX_DEGREE}, got {params.degree}"
        raise ValueError(msg)

    m, beta = params.degree, params.order
    exact_x = Fraction(x)
    total = sum(
        Fraction((-1) ** k * comb(m + beta, m - k), factorial(k)) * exact_x**k
        for k in range(m + 1)
    )
    return float(total)


def as_output(values: np.ndarray, x: npt.ArrayLike) -> float | np.ndarray:
    """Return values as a float when the coordinate x was a scalar, unchanged otherwise."""
    if np.ndim(x) == 0:
        return float(values)
    return values
