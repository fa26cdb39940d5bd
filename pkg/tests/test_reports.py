"""Tests for report assembly, schema validation, and serialization."""

import json

import jsonschema
import numpy as np
import pytest

from ttkit.reports import (
    build_report,
    dumps_report,
    sanitize,
    validate_report,
    write_report,
)


def minimal_report(**over):
    kw = dict(
        command=["ttkit", "decompose", "in.ttb"],
        inputs={"path": "in.ttb", "shape": [4, 4]},
        algorithm="ttsvd",
        schedule={"k": 1, "stride": 1, "max_sweeps": 10, "tol": 1e-6},
        sweep_log=[{"sweep": 1, "error": 0.5}],
        final_ranks=[1, 2, 1],
        metrics={"delta": 0.01},
        timings={"fit_s": 0.12},
    )
    kw.update(over)
    return build_report(**kw)


class TestSanitize:
    def test_numpy_scalars_and_arrays(self):
        out = sanitize({"a": np.int64(3), "b": np.float64(2.5),
                        "c": np.arange(3.0), "d": np.bool_(True)})
        assert out == {"a": 3, "b": 2.5, "c": [0.0, 1.0, 2.0], "d": True}
        assert isinstance(out["a"], int)
        assert isinstance(out["d"], bool)

    def test_non_finite_becomes_none(self):
        out = sanitize({"nan": float("nan"), "inf": np.inf,
                        "nested": [1.0, -np.inf]})
        assert out == {"nan": None, "inf": None, "nested": [1.0, None]}

    def test_tuples_become_lists(self):
        assert sanitize((1, (2, 3))) == [1, [2, 3]]


class TestBuildAndValidate:
    def test_full_report_validates(self):
        validate_report(minimal_report())

    def test_optional_fields_may_be_none(self):
        r = build_report(command=["x"], inputs=None)
        assert r["algorithm"] is None
        assert r["final_ranks"] is None
        assert r["metrics"] == {}
        validate_report(r)

    def test_non_finite_metric_validates_as_null(self):
        r = minimal_report(metrics={"psnr": np.inf})
        assert r["metrics"]["psnr"] is None
        validate_report(r)

    def test_schema_rejects_extra_keys(self):
        r = minimal_report()
        r["extra"] = 1
        with pytest.raises(jsonschema.ValidationError):
            validate_report(r)

    def test_schema_rejects_bad_ranks(self):
        r = minimal_report(final_ranks=[0, 2])
        with pytest.raises(jsonschema.ValidationError):
            validate_report(r)

    def test_schema_rejects_bad_command(self):
        r = minimal_report()
        r["command"] = "not a list"
        with pytest.raises(jsonschema.ValidationError):
            validate_report(r)


class TestSerialization:
    def test_round_trip(self, tmp_path):
        r = minimal_report()
        p = tmp_path / "report.json"
        write_report(p, r)
        assert json.loads(p.read_text()) == r

    def test_deterministic_bytes(self):
        a = dumps_report(minimal_report())
        b = dumps_report(minimal_report())
        assert a == b
        assert a.endswith("\n")

    def test_keys_are_sorted(self):
        text = dumps_report(minimal_report())
        keys = [line.split('"')[1] for line in text.splitlines()
                if line.startswith('  "')]
        assert keys == sorted(keys)

    def test_write_validates(self, tmp_path):
        r = minimal_report()
        r["schema_version"] = 0
        with pytest.raises(jsonschema.ValidationError):
            write_report(tmp_path / "r.json", r)
