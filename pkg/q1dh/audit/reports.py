"""Classes to hold and summarize the outcome of claim checks."""

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ClaimReport(BaseModel):
    """Outcome of one checked claim.

    A claim passes when its residual is within tolerance. Some claims are run to demonstrate
    a failure (the STC waveform is not the Fourier transform, for instance); those are marked
    with `expected_to_pass = False`.
    """

    model_config = ConfigDict(frozen=True)

    claim_id: str
    n_values: list[int] = Field(min_length=1)
    residual: float = Field(ge=0)
    tolerance: float = Field(gt=0)
    passed: bool
    details: str = ""
    measurements: dict[str, float] = Field(default_factory=dict)
    expected_to_pass: bool = True

    @model_validator(mode="after")
    def validate_outcome(self) -> "ClaimReport":
        if self.passed != (self.residual <= self.tolerance):
            msg = f"passed={self.passed} is inconsistent with residual={self.residual}, tolerance={self.tolerance}"
            raise ValueError(msg)
        return self

    @classmethod
    def evaluate(
        cls,
        claim_id: str,
        n_values: list[int],
        residual: float,
        tolerance: float,
        **kwargs: object,
    ) -> "ClaimReport":
        """Build a report, deciding `passed` from the residual and the tolerance."""
        return cls(
            claim_id=claim_id,
            n_values=n_values,
            residual=residual,
            tolerance=tolerance,
            passed=residual <= tolerance,
            **kwargs,  # type: ignore[arg-type]
        )

    @property
    def as_expected(self) -> bool:
        return self.passed == self.expected_to_pass


class SuiteSummary:
    """A class to summarize the results of multiple claim reports."""

    def __init__(self, reports: list[ClaimReport], elapsed_seconds: float = 0.0) -> None:
        self.reports = reports
        self.elapsed_seconds = elapsed_seconds

    def all_passed(self) -> bool:
        """Return whether every claim passed."""
        return all(report.passed for report in self.reports)

    def all_as_expected(self) -> bool:
        """Return whether every claim ended the way it was expected to."""
        return all(report.as_expected for report in self.reports)

    def pass_percentage(self) -> float:
        """Calculate the fraction of passed claims.

        Returns:
            float: The fraction of passed claims, between 0 and 1.

        """
        return len([report for report in self.reports if report.passed]) / len(self.reports)

    def unexpected(self) -> list[ClaimReport]:
        return [report for report in self.reports if not report.as_expected]

    def claim_time_average(self) -> float:
        return self.elapsed_seconds / len(self.reports)
