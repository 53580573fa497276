"""
Observability - Structured logging, timing spans and metrics.

Structured logging via structlog, written to stderr so standard output stays
reserved for command results. Spans time a block and log its duration;
metrics are logged as structured events.
"""

import logging
import sys
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

import structlog

from src.domain.interfaces import IObservabilityService


def ObservabilityProvider(
    service_name: str = "bwclusters",
    log_level: str = "WARNING",
    log_format: str = "json",
) -> IObservabilityService:
    """
    Factory that returns the default ``IObservabilityService`` implementation.

    The CLI and tests call ``ObservabilityProvider(...)`` instead of naming
    the logger class.
    """
    return StructuredLogger(log_level=log_level, log_format=log_format, service_name=service_name)


def configure_logging(log_level: str = "WARNING", log_format: str = "json") -> None:
    """Configure structlog for the whole process, module loggers included."""
    renderer: Any = (
        structlog.dev.ConsoleRenderer(colors=False)
        if log_format == "console"
        else structlog.processors.JSONRenderer(sort_keys=True)
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(_parse_log_level(log_level)),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def _parse_log_level(level: str) -> int:
    """Convert string log level to structlog level."""
    levels = {
        "DEBUG": logging.DEBUG,
        "INFO": logging.INFO,
        "WARNING": logging.WARNING,
        "ERROR": logging.ERROR,
        "CRITICAL": logging.CRITICAL,
    }
    return levels.get(level.upper(), logging.WARNING)


class StructuredLogger(IObservabilityService):
    """
    Structured logging implementation using structlog.

    JSON lines by default, or a console rendering for interactive use.
    """

    def __init__(
        self,
        log_level: str = "WARNING",
        log_format: str = "json",
        service_name: str = "bwclusters",
    ):
        """
        Initialize structured logger.

        Args:
            log_level: Minimum log level (DEBUG, INFO, WARNING, ERROR)
            log_format: ``json`` or ``console``
            service_name: Bound to every event as ``service``
        """
        configure_logging(log_level, log_format)
        self.logger = structlog.get_logger().bind(service=service_name)

    def log(
        self,
        level: str,
        message: str,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        """
        Log a structured message.

        Args:
            level: Log level (debug, info, warning, error)
            message: Event name
            context: Additional context as key-value pairs
        """
        log_func = getattr(self.logger, level.lower(), self.logger.info)
        if context:
            log_func(message, **context)
        else:
            log_func(message)

    @contextmanager
    def _span(self, name: str, attributes: Dict[str, Any]) -> Iterator[Dict[str, Any]]:
        started = time.perf_counter()
        self.log("debug", f"{name}.start", attributes)
        try:
            yield attributes
        finally:
            elapsed = round(time.perf_counter() - started, 6)
            self.log("info", f"{name}.finish", {**attributes, "elapsed_seconds": elapsed})

    def start_span(self, name: str, attributes: Optional[Dict[str, Any]] = None) -> Any:
        """
        Start a timing span.

        Use as context manager; the yielded dict can collect extra attributes
        that are logged when the span finishes.
        """
        return self._span(name, dict(attributes or {}))

    def record_metric(
        self,
        name: str,
        value: float,
        labels: Optional[Dict[str, str]] = None,
    ) -> None:
        """Record a metric (logged as structured log)."""
        self.log(
            "info",
            f"metric: {name}",
            {"metric_name": name, "metric_value": value, "labels": labels},
        )
