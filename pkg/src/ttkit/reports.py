"""Schema-versioned JSON run reports.

Reports are plain dicts serialized with sorted keys and a trailing newline so
identical runs produce byte-identical files.  Non-finite floats are replaced
by null before validation (the schema forbids NaN/Inf by construction since
JSON cannot carry them portably).
"""

from __future__ import annotations

import json
from importlib import resources

import jsonschema
import numpy as np

SCHEMA_VERSION = 1


def _schema():
    with resources.files("ttkit").joinpath("report_schema.json").open() as f:
        return json.load(f)


def sanitize(obj):
    """Recursively convert numpy scalars/arrays and map non-finite floats to
    None so the result is portable JSON."""
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [sanitize(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer, int)) and not isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if np.isfinite(v) else None
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    return obj


def build_report(
    command,
    inputs,
    algorithm=None,
    schedule=None,
    sweep_log=(),
    final_ranks=None,
    metrics=None,
    timings=None,
):
    """Assemble and sanitize a report dict; all schema keys always present."""
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": [str(a) for a in command],
        "inputs": sanitize(inputs or {}),
        "algorithm": algorithm,
        "schedule": sanitize(schedule) if schedule is not None else None,
        "sweep_log": sanitize(list(sweep_log)),
        "final_ranks": sanitize(list(final_ranks)) if final_ranks is not None else None,
        "metrics": sanitize(metrics or {}),
        "timings": sanitize(timings) if timings is not None else None,
    }
    return report


def validate_report(report):
    """Raise jsonschema.ValidationError if the report does not conform."""
    jsonschema.validate(report, _schema())


def dumps_report(report):
    validate_report(report)
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_report(path, report):
    with open(path, "w") as f:
        f.write(dumps_report(report))
