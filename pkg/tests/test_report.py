"""Report construction, deterministic serialization and run directories."""

import json
import time

import pytest

from p4surf.errors import UsageError
from p4surf.report import ConstructionReport, persist_report, run_directory


def sample_report():
    report = ConstructionReport("demo", seed=7, char=31991)
    with report.stage("alpha") as st:
        st.check("count", 3, 3)
        st.note("informational")
    with report.stage("beta") as st:
        st.check("pair", (1, 2), (1, 2))
    report.record_retry("beta", 12345, "degenerate draw")
    report.add_table("numbers", "1 2 3", [1, 2, 3])
    return report


class TestVerdict:
    def test_passing(self):
        report = sample_report()
        assert report.verdict
        assert report.failures() == []

    def test_failing_assertion_flips_verdict(self):
        report = sample_report()
        with report.stage("gamma") as st:
            st.check("value", 1, 2)
        assert not report.verdict
        fails = report.failures()
        assert len(fails) == 1
        assert fails[0][0] == "gamma"

    def test_empty_report_is_not_a_pass(self):
        assert not ConstructionReport("demo", 0, 31991).verdict

    def test_stage_appended_even_on_exception(self):
        report = ConstructionReport("demo", 0, 31991)
        with pytest.raises(RuntimeError):
            with report.stage("boom") as st:
                st.check("ok", 1, 1)
                raise RuntimeError("stage blew up")
        assert [s.name for s in report.stages] == ["boom"]


class TestDeterminism:
    def test_json_is_byte_identical_across_runs(self):
        a = sample_report()
        time.sleep(0.01)  # wall clock must not leak into the JSON
        b = sample_report()
        assert a.json_text() == b.json_text()

    def test_json_contains_no_timings(self):
        data = json.loads(sample_report().json_text())
        text = json.dumps(data)
        assert "seconds" not in text
        assert data["verdict"] == "pass"
        assert data["retries"][0]["reason"] == "degenerate draw"

    def test_tuple_keyed_betti_assertions_serialize(self):
        report = ConstructionReport("demo", 0, 31991)
        betti = {(1, 5): 5, (0, 0): 1, (2, 6): 2}
        with report.stage("alpha") as st:
            st.check("betti", betti, dict(reversed(list(betti.items()))))
        data = json.loads(report.json_text())
        entry = data["stages"][0]["assertions"][0]
        assert entry["ok"] is True
        assert entry["expected"] == {"0,0": 1, "1,5": 5, "2,6": 2}
        # sorted key order makes the text independent of insertion order
        assert entry["expected"] == entry["computed"]

    def test_render_contains_timings_and_values(self):
        text = sample_report().render()
        assert "verdict: pass" in text
        assert "(0.0s)" in text
        assert "expected 3, computed 3" in text
        assert "note: informational" in text


class TestRunDirectory:
    def test_naming_scheme(self, tmp_path):
        out = run_directory(tmp_path, "monad", 3, 31991)
        assert out.name == "monad-seed3-p31991"
        assert out.is_dir()

    def test_append_only(self, tmp_path):
        run_directory(tmp_path, "monad", 3, 31991)
        with pytest.raises(UsageError):
            run_directory(tmp_path, "monad", 3, 31991)
        # force opts out of the append-only contract
        out = run_directory(tmp_path, "monad", 3, 31991, force=True)
        assert out.is_dir()

    def test_distinct_runs_do_not_collide(self, tmp_path):
        a = run_directory(tmp_path, "monad", 3, 31991)
        b = run_directory(tmp_path, "monad", 4, 31991)
        c = run_directory(tmp_path, "liaison", 3, 31991)
        assert len({a, b, c}) == 3

    def test_persist_writes_json_and_text(self, tmp_path):
        report = sample_report()
        out = run_directory(tmp_path, "demo", 7, 31991)
        persist_report(out, report)
        assert (out / "report.json").read_text() == report.json_text()
        assert (out / "report.txt").read_text() == report.render()
