"""
Run reports
===========

A :class:`RunReport` collects what one command computed: the inputs
digest and seed, a primary table (stages or shifts), limit vectors, bound
comparisons and verdicts.  Timings are kept apart from the body so that
identical inputs and seed give byte-identical bodies.

.. autosummary::

    ~RunReport
    ~inputs_digest
    ~jsonable
    ~to_json
    ~to_csv
    ~write_report
"""

import csv
import hashlib
import io
import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..systems.spaces import Observable

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

REPORT_FORMATS = ("json", "csv")


def inputs_digest(*parts):
    """SHA-256 over file contents (``bytes``) and argument text."""
    digest = hashlib.sha256()
    for part in parts:
        if isinstance(part, str):
            part = part.encode()
        digest.update(len(part).to_bytes(8, "little"))
        digest.update(part)
    return digest.hexdigest()


def jsonable(value):
    """Convert scalars, arrays and observables to plain JSON values."""
    if isinstance(value, Observable):
        return [jsonable(v) for v in value.values.tolist()]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if value.imag == 0:
            return value.real
        return {"re": value.real, "im": value.imag}
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


@dataclass
class RunReport:
    """What one command computed."""

    command: str
    digest: str = ""
    seed: object = None
    table: list = field(default_factory=list)
    limits: dict = field(default_factory=dict)
    bounds: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def body(self):
        """Everything but the timings, as plain JSON values."""
        return jsonable(
            {
                "command": self.command,
                "inputs_digest": self.digest,
                "seed": self.seed,
                "table": self.table,
                "limits": self.limits,
                "bounds": self.bounds,
                "verdicts": self.verdicts,
            }
        )

    @contextmanager
    def timed(self, name):
        """Record the wall time of a block under ``name``."""
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = time.perf_counter() - t0


def to_json(report, *, include_timings=False):
    """Deterministic JSON text; timings go to a separate top-level key."""
    document = {"report": report.body()}
    if include_timings:
        document["timings"] = jsonable(report.timings)
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def to_csv(report):
    """The primary table as CSV (columns in first-row order)."""
    buffer = io.StringIO()
    rows = jsonable(report.table)
    if rows:
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buffer.getvalue()


def write_report(report, path=None, *, fmt="json", include_timings=False, stream=None):
    """Write the report to ``path`` (or ``stream``) and return the text."""
    if fmt not in REPORT_FORMATS:
        raise ValueError(f"unknown report format {fmt!r}, expected one of {REPORT_FORMATS}")
    text = to_csv(report) if fmt == "csv" else to_json(report, include_timings=include_timings)
    if path is not None:
        Path(path).write_text(text)
        logger.info("%s report written to %s", fmt, path)
    elif stream is not None:
        stream.write(text)
    return text
