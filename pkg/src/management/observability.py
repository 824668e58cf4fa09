"""
Observability for verification runs.
Configures logging and keeps start/end bookkeeping of runs with their metrics.
"""

import logging
import sys
import time
import uuid
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, Optional

from src.management.config import LOG_LEVEL

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def setup_logging(level: Optional[str] = None) -> None:
    """Configures the root logger. Logs go to stderr; stdout carries only results.

    Args:
        level: Level name such as 'INFO'. Defaults to the BINOMIAL_LOG_LEVEL setting.
    """
    name = (level or LOG_LEVEL).upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level '{name}'")
    logging.basicConfig(level=numeric, format=LOG_FORMAT, stream=sys.stderr, force=True)


@dataclass
class RunRecord:
    name: str
    run_id: str = field(default_factory=lambda: uuid.uuid4().hex[:8])
    start_time: datetime = field(default_factory=datetime.now)
    status: str = "RUNNING"
    metrics: Dict[str, Any] = field(default_factory=dict)
    _clock: float = field(default_factory=time.perf_counter, repr=False)

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self._clock


def start_run(name: str) -> RunRecord:
    """Starts a run entry.

    Args:
        name: Short run label, e.g. 'verify' or 'acceptance'.

    Returns:
        RunRecord: The new run, status RUNNING.
    """
    record = RunRecord(name)
    logger.info(f"Observability: Run '{name}' started with ID {record.run_id}.")
    return record


def end_run(record: RunRecord, status: str, metrics_dict: Dict[str, Any]) -> None:
    """Closes a run with its final status and metrics.

    Args:
        record: The run returned by start_run.
        status: The final status of the run ('SUCCESS', 'FAILURE').
        metrics_dict: Metrics to log with the run.
    """
    record.status = status
    record.metrics = dict(metrics_dict)
    logger.info(
        f"Observability: Run {record.run_id} ('{record.name}') ended with status {status} "
        f"after {record.elapsed:.2f}s."
    )
    for key, value in record.metrics.items():
        logger.info(f"  - {key}: {value}")
