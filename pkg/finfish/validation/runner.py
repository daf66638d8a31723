import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

from finfish.core.config import Settings, settings as default_settings
from finfish.core.errors import PreconditionError
from finfish.data.cache_manager import CacheManager
from finfish.validation import suites
from finfish.validation.report import SuiteReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Suite:
    """A suite and how its ``--max`` bound and the settings turn into keyword arguments.

    ``resolve(bound, config)`` returns the exact parameters the suite runs
    with; they key the cache and come back as ``report.params``.
    """

    check: Callable[..., SuiteReport]
    resolve: Callable[[Optional[int], Settings], Dict[str, Any]]
    limit: int

    def __call__(self, params: Dict[str, Any], config: Settings) -> SuiteReport:
        return self.check(**params, config=config)


def _series_params(bound: Optional[int], cfg: Settings) -> Dict[str, Any]:
    order = bound or min(8, cfg.series_order)
    return {"order": order, "max_size": min(order + 1, cfg.suite_max_size)}


def _identity_params(bound: Optional[int], cfg: Settings) -> Dict[str, Any]:
    order = bound or cfg.series_order
    return {"order": order, "full_order": min(order, cfg.full_series_order), "max_size": cfg.suite_max_size}


SUITES: Dict[str, Suite] = {
    # sizes up to max_n + 1, so i + j <= suite_max_size + 1 by default
    "formulas": Suite(suites.check_formulas, lambda b, cfg: {"max_n": b or cfg.suite_max_size}, 12),
    "series": Suite(suites.check_series_vs_enum, _series_params, 10),
    "oracle": Suite(suites.check_oracle, lambda b, cfg: {"max_area": b or cfg.suite_max_area}, 8),
    "roundtrip": Suite(
        suites.check_roundtrip,
        lambda b, cfg: {"max_size": b or 7, "max_area": min(b or cfg.suite_max_area, cfg.suite_max_area)},
        9,
    ),
    "fincore": Suite(suites.check_fincore, lambda b, cfg: {"max_size": b or cfg.suite_max_size}, 12),
    "conjecture": Suite(suites.check_conjecture, lambda b, cfg: {"max_size": b or cfg.suite_max_size - 1}, 11),
    "identities": Suite(suites.check_identities, _identity_params, 14),
    "trees": Suite(
        suites.check_trees,
        lambda b, cfg: {"max_nodes": b or 8, "jmax": 4, "recurrence_order": 10, "recurrence_jmax": 6},
        10,
    ),
    "area": Suite(suites.check_area, lambda b, cfg: {"max_size": b or cfg.suite_max_size}, 12),
}


class SuiteRunner:
    """Runs validation suites with caching and running metrics."""

    def __init__(self, config: Settings = default_settings, cache: Optional[CacheManager] = None):
        self.config = config
        self.cache = cache if cache is not None else CacheManager(config=config)
        self.performance_metrics = {
            "suites_run": 0,
            "suites_passed": 0,
            "suites_failed": 0,
            "total_time": 0.0,
        }
        logger.info("🚀 Suite runner initialized")

    def _validate(self, name: str, bound: Optional[int]) -> None:
        if name not in SUITES:
            raise PreconditionError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
        limit = SUITES[name].limit
        if bound is not None and not 1 <= bound <= limit:
            raise PreconditionError(f"--max for {name} must be between 1 and {limit}, got {bound}")

    def run(self, name: str, bound: Optional[int] = None) -> SuiteReport:
        self._validate(name, bound)
        started = time.time()
        self.performance_metrics["suites_run"] += 1

        suite = SUITES[name]
        params = suite.resolve(bound, self.config)

        def produce() -> Dict[str, Any]:
            return suite(params, self.config).model_dump(by_alias=True, mode="json")

        payload = self.cache.fetch(f"check {name}", params, produce)
        report = SuiteReport.model_validate(payload)

        self.performance_metrics["total_time"] += time.time() - started
        if report.passed:
            self.performance_metrics["suites_passed"] += 1
        else:
            self.performance_metrics["suites_failed"] += 1
            logger.error(f"❌ Suite {name} failed: {report.failure}")
        return report

    def run_all(self, names: Optional[List[str]] = None, bound: Optional[int] = None) -> List[SuiteReport]:
        names = names or list(SUITES)
        for name in names:
            self._validate(name, bound)
        return [self.run(name, bound) for name in names]

    def get_performance_metrics(self) -> Dict[str, Any]:
        runs = max(1, self.performance_metrics["suites_run"])
        return {
            "suites_run": self.performance_metrics["suites_run"],
            "suites_passed": self.performance_metrics["suites_passed"],
            "suites_failed": self.performance_metrics["suites_failed"],
            "success_rate": self.performance_metrics["suites_passed"] / runs,
            "average_time": self.performance_metrics["total_time"] / runs,
            "cache_hit_rate": self.cache.hit_rate,
        }
