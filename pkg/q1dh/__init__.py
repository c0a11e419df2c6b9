"""The q1dh package computes and checks the bound states of the quasi-one-dimensional hydrogen atom."""

__version__ = "0.1.0"

from q1dh.infotheory import EntropyReport, bbm_report
from q1dh.quadrature import QuadratureError, QuadratureResult, ToleranceSpec
from q1dh.states import BoundState, ComplexAmplitude

__all__ = [
    "BoundState",
    "ComplexAmplitude",
    "EntropyReport",
    "QuadratureError",
    "QuadratureResult",
    "ToleranceSpec",
    "bbm_report",
]
