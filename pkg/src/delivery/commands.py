# src/delivery/commands.py
"""
The command implementations behind manage.py.

Each cmd_* takes the raw command-line strings, runs the library call and
returns an OutputRecord. Library errors are caught here and turned into error
records carrying the error kind and exit code; nothing below this layer
knows about exit codes.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from src.analysis.continuity_probe import (
    ProbeResult,
    ProbeSpec,
    default_direction,
    direction_scan,
    non_converging,
    probe_divergence,
    probe_limit,
)
from src.analysis.identity_suite import (
    ALL_IDENTITIES,
    SampleSpec,
    check_identity,
    summarize,
    sweep,
)
from src.analysis.series_expansion import SeriesSpec, expand_binomial
from src.delivery import config
from src.delivery.literals import parse_integer, parse_literal, parse_real
from src.delivery.renderer import format_complex, format_extended, render_text_table
from src.errors import BinomialError, UsageError
from src.evaluation.binomial_eval import binom_complex, classify_point
from src.lattice.exact_lattice import LatticePoint, LatticeWindow, lattice_table
from src.management.config import COMPLEX_TOL, DEFAULT_SEED, SERIES_MAX_TERMS, SERIES_REL_TOL
from src.management.observability import end_run, start_run

logger = logging.getLogger(__name__)

VIOLATED_KIND: str = "violated"


@dataclass
class OutputRecord:
    """One run's result: the JSON record plus the table and text renderings."""

    command: str
    inputs: Dict[str, Any]
    status: str = config.STATUS_OK
    result: Any = None
    error_kind: Optional[str] = None
    message: Optional[str] = None
    exit_code: int = config.EXIT_OK
    rows: Optional[pd.DataFrame] = None
    # JSON-lines items written before the record in json format
    stream: List[Dict[str, Any]] = field(default_factory=list)
    text: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "command": self.command,
            "inputs": self.inputs,
            "status": self.status,
            "result": self.result,
        }
        if self.status != config.STATUS_OK:
            payload["error_kind"] = self.error_kind
            payload["message"] = self.message
        return payload

    @classmethod
    def failure(cls, command: str, inputs: Dict[str, Any], error: BinomialError) -> "OutputRecord":
        logger.debug(f"{command}: {error.kind} error: {error}")
        return cls(
            command,
            inputs,
            status=config.STATUS_ERROR,
            error_kind=error.kind,
            message=str(error),
            exit_code=error.exit_code,
        )


def cmd_eval(x: str, y: str) -> OutputRecord:
    """binom(x, y) for two number literals."""
    inputs = {"x": x, "y": y}
    try:
        xv, yv = parse_literal(x), parse_literal(y)
        point_class = classify_point(xv, yv)
        value = binom_complex(xv, yv)
    except BinomialError as e:
        return OutputRecord.failure("eval", inputs, e)

    token = format_extended(value)
    rows = pd.DataFrame([{"x": x, "y": y, "value": token}])
    return OutputRecord(
        "eval",
        inputs,
        result={"class": point_class.value, "value": value.to_dict()},
        rows=rows,
        text=token,
    )


def cmd_table(n_min: str, n_max: str, k_min: str, k_max: str) -> OutputRecord:
    """The exact lattice values over a window, ordered by n then k."""
    inputs = {"n_min": n_min, "n_max": n_max, "k_min": k_min, "k_max": k_max}
    try:
        window = LatticeWindow(
            parse_integer(n_min), parse_integer(n_max), parse_integer(k_min), parse_integer(k_max)
        )
        if window.cell_count > config.MAX_TABLE_CELLS:
            raise UsageError(
                f"window has {window.cell_count} cells, limit is {config.MAX_TABLE_CELLS}"
            )
    except BinomialError as e:
        return OutputRecord.failure("table", inputs, e)

    table = lattice_table(window)
    rows = pd.DataFrame(
        [(p.n, p.k, v) for p, v in table.items()], columns=config.TABLE_HEADER, dtype=object
    )
    logger.info(f"table: {len(rows)} cells")
    return OutputRecord(
        "table",
        inputs,
        result={"rows": [{"n": p.n, "k": p.k, "value": v} for p, v in table.items()]},
        rows=rows,
        text=render_text_table(rows),
    )


def _report_rows(reports: Sequence[Any]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "identity": r.identity_name,
                "point": " ".join(
                    str(p) if isinstance(p, int) else format_complex(p) for p in r.point
                ),
                "lhs": format_extended(r.lhs),
                "rhs": format_extended(r.rhs),
                "residual": "" if r.residual is None else f"{r.residual:.3g}",
                "verdict": r.verdict.value,
            }
            for r in reports
        ],
        columns=["identity", "point", "lhs", "rhs", "residual", "verdict"],
    )


def cmd_verify(
    identity: str,
    window: Optional[Sequence[str]] = None,
    samples: int = 0,
    seed: Optional[int] = None,
    at: Optional[Sequence[str]] = None,
    delta: Optional[str] = None,
    tol: Optional[float] = None,
) -> OutputRecord:
    """Runs identity checks at one point (`at`) or over a window and sample.

    The record fails with kind 'violated' when any report is Violated.
    """
    lo_hi = list(window) if window else [str(v) for v in config.DEFAULT_VERIFY_WINDOW]
    inputs: Dict[str, Any] = {
        "identity": identity,
        "window": lo_hi if not at else None,
        "samples": samples,
        "seed": DEFAULT_SEED if seed is None else seed,
        "at": list(at) if at else None,
        "delta": delta,
    }
    tol = COMPLEX_TOL if tol is None else tol
    run = start_run("verify")
    try:
        if identity != "all" and identity not in ALL_IDENTITIES:
            raise UsageError(
                f"unknown identity '{identity}', expected all or one of {', '.join(ALL_IDENTITIES)}"
            )
        delta_value = parse_literal(delta) if delta is not None else config.DEFAULT_DELTA
        if at:
            if identity == "all":
                raise UsageError("--at needs a single identity name")
            reports = check_identity(identity, [parse_literal(a) for a in at], delta_value, tol)
        else:
            lo, hi = (parse_integer(v) for v in lo_hi)
            sample_spec = SampleSpec(
                count=samples, seed=DEFAULT_SEED if seed is None else seed
            )
            names = ALL_IDENTITIES if identity == "all" else (identity,)
            reports = sweep(LatticeWindow.square(lo, hi), sample_spec, names, delta_value, tol)
    except BinomialError as e:
        end_run(run, "FAILURE", {"error": e.kind})
        return OutputRecord.failure("verify", inputs, e)

    summary = summarize(reports)
    end_run(run, "SUCCESS" if summary["violated"] == 0 else "FAILURE", summary["verdicts"])

    rows = _report_rows(reports)
    counts = ", ".join(f"{k} {v}" for k, v in summary["verdicts"].items())
    text = render_text_table(rows) + f"\n\n{summary['total']} reports: {counts}\n"
    record = OutputRecord(
        "verify",
        inputs,
        result=summary,
        rows=rows,
        stream=[r.to_dict() for r in reports],
        text=text,
    )
    if summary["violated"]:
        record.status = config.STATUS_ERROR
        record.error_kind = VIOLATED_KIND
        record.message = f"{summary['violated']} identity checks violated"
        record.exit_code = config.EXIT_FAILURE
        record.text = text + f"error ({VIOLATED_KIND}): {record.message}\n"
    return record


def cmd_expand(
    n: str, x: str, y: str, tol: Optional[float] = None, max_terms: Optional[int] = None
) -> OutputRecord:
    """(x+y)^n through the binomial series that converges."""
    inputs = {"n": n, "x": x, "y": y}
    try:
        spec = SeriesSpec(
            parse_integer(n),
            parse_literal(x),
            parse_literal(y),
            rel_tol=SERIES_REL_TOL if tol is None else tol,
            max_terms=SERIES_MAX_TERMS if max_terms is None else max_terms,
        )
        result = expand_binomial(spec)
    except BinomialError as e:
        return OutputRecord.failure("expand", inputs, e)

    value = format_complex(result.value)
    converged = "true" if result.converged else "false"
    rows = pd.DataFrame(
        [{
            "value": value,
            "regime": result.regime.value,
            "terms_used": result.terms_used,
            "converged": converged,
        }]
    )
    text = (
        f"value: {value}\n"
        f"regime: {result.regime.value}\n"
        f"terms_used: {result.terms_used}\n"
        f"converged: {converged}\n"
    )
    return OutputRecord("expand", inputs, result=result.to_dict(), rows=rows, text=text)


def _sample_rows(result: ProbeResult) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "delta": f"{s.delta:g}",
                "value": "gap" if s.value is None else format_extended(s.value),
                "error": "" if s.error is None else f"{s.error:.3g}",
            }
            for s in result.samples
        ],
        columns=["delta", "value", "error"],
    )


def cmd_probe(
    target: Optional[Sequence[str]] = None,
    direction: Optional[Sequence[str]] = None,
    diverge: Optional[Sequence[str]] = None,
    deltas: Optional[Sequence[str]] = None,
    scan: Optional[int] = None,
    seed: Optional[int] = None,
) -> OutputRecord:
    """Continuity probe toward a lattice point, direction scan, or divergence probe."""
    inputs: Dict[str, Any] = {
        "target": list(target) if target else None,
        "direction": list(direction) if direction else None,
        "diverge": list(diverge) if diverge else None,
        "deltas": list(deltas) if deltas else None,
        "scan": scan,
    }
    try:
        if (target is None) == (diverge is None):
            raise UsageError("give exactly one of --target N K or --diverge X Y")
        delta_values = (
            tuple(parse_real(d) for d in deltas) if deltas else config.DEFAULT_DELTAS
        )

        if diverge is not None:
            x, y = (parse_literal(v) for v in diverge)
            result = probe_divergence(x, y, delta_values)
            summary = result.classification.value
            return _probe_record(inputs, result, summary)

        point = LatticePoint(*(parse_integer(v) for v in target))
        if scan is not None:
            inputs["seed"] = DEFAULT_SEED if seed is None else seed
            entries = direction_scan(point, scan, inputs["seed"], delta_values)
            off = non_converging(entries)
            rows = pd.DataFrame(
                [
                    {
                        "dx": format_complex(e.direction[0]),
                        "dy": format_complex(e.direction[1]),
                        "classification": e.classification.value,
                    }
                    for e in entries
                ],
                columns=["dx", "dy", "classification"],
            )
            text = render_text_table(rows) + (
                f"\n\n{len(entries) - len(off)} of {len(entries)} directions converge\n"
            )
            result_payload = {
                "count": len(entries),
                "converging": len(entries) - len(off),
                "entries": [e.to_dict() for e in entries],
            }
            return OutputRecord("probe", inputs, result=result_payload, rows=rows, text=text)

        if direction is not None:
            dx, dy = (parse_literal(v) for v in direction)
            spec = ProbeSpec.along(point, dx, dy, delta_values)
        else:
            spec = ProbeSpec(point, default_direction(point), delta_values)
        result = probe_limit(spec)
    except BinomialError as e:
        return OutputRecord.failure("probe", inputs, e)

    summary = result.classification.value
    if result.target_value is not None:
        summary += f" {format_extended(result.target_value)}"
    return _probe_record(inputs, result, summary)


def _probe_record(inputs: Dict[str, Any], result: ProbeResult, summary: str) -> OutputRecord:
    rows = _sample_rows(result)
    text = render_text_table(rows) + f"\n\n{summary}\n"
    return OutputRecord("probe", inputs, result=result.to_dict(), rows=rows, text=text)
