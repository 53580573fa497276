"""
Census Use Case - Clustering factors of a generated language.

Applies the configured caps, fans the per-length search out to worker
processes and reports timing through the observability service.
"""

from typing import Optional

from src.config import LimitsConfig
from src.domain.arnoux_rauzy import clustering_census
from src.domain.directive import DirectiveWord
from src.domain.interfaces import IObservabilityService
from src.domain.models import CensusReport


class CensusService:
    """
    Enumerate every clustering factor of a directive language up to a length.

    Three-letter languages are capped at ``max_census_length`` and larger
    alphabets at ``max_multi_census_length``.
    """

    def __init__(
        self,
        observability: IObservabilityService,
        limits: Optional[LimitsConfig] = None,
    ):
        self.observability = observability
        self.limits = limits or LimitsConfig()  # type: ignore[call-arg]

    def cap_for(self, directive: DirectiveWord) -> int:
        if directive.size > 3:
            return self.limits.max_multi_census_length
        return self.limits.max_census_length

    def execute(self, directive: DirectiveWord, max_length: int) -> CensusReport:
        """
        Run the census.

        Args:
            directive: Directive word generating the language
            max_length: Longest factor length visited

        Returns:
            Report with entries ordered by length, then lexicographically

        Raises:
            ValidationError: If ``max_length`` exceeds the configured cap
        """
        attributes = {"directive": str(directive), "max_length": max_length}
        with self.observability.start_span("census", attributes) as span:
            report = clustering_census(
                directive,
                max_length,
                workers=self.limits.census_workers,
                cap=self.cap_for(directive),
            )
            span["entries"] = len(report.entries)
            span["longest"] = report.longest
        self.observability.record_metric(
            "census_entries", float(len(report.entries)), {"directive": str(directive)}
        )
        return report
