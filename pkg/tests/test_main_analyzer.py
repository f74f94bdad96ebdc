import json

import pytest

import src.main_analyzer as analyzer
from config import REPORT_SCHEMA
from src.main_analyzer import AnalysisRequest, main, run
from src.module_algebra import QuotientIllDefined
from src.semigroup_core import SizeGuardError


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_quotient_of_max_semilattice(capsys):
    code, out = run_cli(capsys, "quotient", "--corpus", "max_semilattice:4")
    report = json.loads(out)
    assert code == 0
    assert report["schema"] == REPORT_SCHEMA
    assert report["semigroup"] == "max_semilattice:4"
    assert report["J_dim"] == 3
    assert report["quotient"]["order"] == 1
    assert "total_s" in report["timings"]


def test_diagonal_of_cyclic_group(capsys):
    code, out = run_cli(capsys, "diagonal", "--corpus", "cyclic_group:2")
    report = json.loads(out)
    assert code == 0
    assert report["diagonal"]["feasible"] is True
    assert report["standard_group_diagonal_in_solution_set"] is True
    assert report["samples"]["drawn"] == report["samples"]["verified"]
    assert report["unital"] == {"A": True, "A/J": True}


def test_diagonal_verdict_sources(capsys):
    _, out = run_cli(capsys, "diagonal", "--corpus", "meet_semilattice_nondirected")
    report = json.loads(out)
    assert report["route"] == "not covered"
    assert report["verdict"] is report["diagonal"]["feasible"]
    assert report["decided_by"] == "diagonal search"
    _, out = run_cli(capsys, "diagonal", "--corpus", "cyclic_group:2")
    report = json.loads(out)
    assert report["verdict"] is True
    assert report["decided_by"] == "quotient group"


def test_diagonal_is_deterministic(capsys):
    _, first = run_cli(capsys, "diagonal", "--corpus", "max_semilattice:3", "--seed", "7")
    _, second = run_cli(capsys, "diagonal", "--corpus", "max_semilattice:3", "--seed", "7")
    a, b = json.loads(first), json.loads(second)
    a.pop("timings"), b.pop("timings")
    assert a == b


def test_munn_upper_bound(capsys):
    code, out = run_cli(capsys, "munn", "--check-upper-bound", "aa*", "bb*")
    assert code == 0
    assert json.loads(out)["upper_bound"] is None


def test_munn_queries(capsys):
    _, out = run_cli(capsys, "munn", "--check-upper-bound", "aa*", "a^2(a^2)*")
    assert json.loads(out)["upper_bound"] == "{1,a} -> 1"
    _, out = run_cli(capsys, "munn", "--leq", "a^2(a^2)*", "aa*")
    assert json.loads(out)["leq"] is True
    code, _ = run_cli(capsys, "munn", "--leq", "a", "aa*")
    assert code == 1


def test_directed_and_idempotents(capsys):
    _, out = run_cli(capsys, "directed", "--corpus", "meet_semilattice_nondirected")
    assert json.loads(out)["upward_directed"] == {"witness": ["e", "f"]}
    _, out = run_cli(capsys, "idempotents", "--corpus", "max_semilattice:2")
    report = json.loads(out)
    assert report["idempotents"] == ["1", "2"]
    assert report["order"] == [["2", "1"]]


def test_validate_input_file(capsys, tmp_path):
    path = tmp_path / "c2.json"
    path.write_text(json.dumps({"table": [[0, 1], [1, 0]]}), encoding="utf-8")
    code, out = run_cli(capsys, "validate", "--input", str(path))
    assert code == 0
    assert json.loads(out)["star"] == {"0": "0", "1": "1"}


def test_invalid_input_exit_code(capsys, tmp_path):
    path = tmp_path / "lz.json"
    path.write_text(json.dumps({"table": [[0, 0], [1, 1]]}), encoding="utf-8")
    code, out = run_cli(capsys, "validate", "--input", str(path))
    error = json.loads(out)
    assert code == 1
    assert error["error"] == "InverseNotUnique"
    assert error["witness"]["candidates"] == [0, 1]


def test_missing_source_is_invalid_input(capsys):
    code, out = run_cli(capsys, "quotient")
    assert code == 1
    assert json.loads(out)["error"] == "ParseError"


def test_size_guard_exit_code(capsys):
    code, out = run_cli(capsys, "diagonal", "--corpus", "max_semilattice:13")
    assert code == 2
    assert json.loads(out)["error"] == "SizeGuardError"
    code, _ = run_cli(capsys, "diagonal", "--corpus", "max_semilattice:3", "--max-size", "20")
    assert code == 2


def test_force_allows_larger_guard():
    request = AnalysisRequest("diagonal", max_size=20, force=True)
    assert request.limits()[2] == 20
    with pytest.raises(SizeGuardError):
        AnalysisRequest("diagonal", max_size=20).limits()


def test_assertion_exit_code(capsys, monkeypatch):
    def broken(S, max_size):
        raise QuotientIllDefined(0, 1, 0, 2)

    monkeypatch.setattr(analyzer, "quotient_report", broken)
    code, out = run_cli(capsys, "quotient", "--corpus", "cyclic_group:3")
    error = json.loads(out)
    assert code == 3
    assert error["error"] == "QuotientIllDefined"
    assert error["witness"]["witness"] == [0, 1, 0, 2]


def test_text_format(capsys):
    code, out = run_cli(capsys, "quotient", "--corpus", "cyclic_group:2", "--format", "text")
    assert code == 0
    assert "J_dim: 0" in out


def test_save_report(capsys, tmp_path):
    code, _ = run_cli(capsys, "quotient", "--corpus", "cyclic_group:2", "--save", str(tmp_path))
    assert code == 0
    saved = list(tmp_path.glob("REPORT_quotient_*.json"))
    assert len(saved) == 1
    assert json.loads(saved[0].read_text())["semigroup"] == "cyclic_group:2"


def test_matrix_example(capsys):
    code, out = run_cli(capsys, "matrix-example", "--n", "2", "--coefficients", "truncated:1")
    report = json.loads(out)
    assert code == 0
    assert report["J_dim"] == 0
    assert report["omega_is_identity"] is True
    assert all(v == "1/2" for v in report["diagonal"]["M"].values())
    assert len(report["diagonal"]["M"]) == 4


def test_matrix_example_bad_coefficients(capsys):
    code, _ = run_cli(capsys, "matrix-example", "--coefficients", "reals")
    assert code == 1


def test_cohomology_command():
    report, code = run(AnalysisRequest("cohomology", corpus="max_semilattice:2"))
    data = report.to_json()
    assert code == 0
    assert data["consistent"] is True
    assert all(m["h1"] == 0 for m in data["bimodules"])


def test_corpus_sequential(capsys, monkeypatch):
    monkeypatch.setattr(analyzer, "battery_jobs",
                        lambda: [("munn", "munn", ""), ("bicyclic", "bicyclic", "")])
    code, out = run_cli(capsys, "corpus", "--sequential")
    report = json.loads(out)
    assert code == 0
    assert list(report["results"]) == ["bicyclic", "munn"]
    assert report["failed"] == 0


def test_corpus_worker_pool(capsys, monkeypatch):
    monkeypatch.setattr(analyzer, "battery_jobs",
                        lambda: [("munn", "munn", ""), ("bicyclic", "bicyclic", ""),
                                 ("max_semilattice:2", "semigroup", "max_semilattice:2")])
    code, out = run_cli(capsys, "corpus", "--workers", "2")
    report = json.loads(out)
    assert code == 0
    assert list(report["results"]) == ["bicyclic", "max_semilattice:2", "munn"]
    assert report["jobs"] == 3
    assert report["failed"] == 0


def exit_without_work(job_queue, result_queue, stop_event, seed, debug_mode=False):
    return


def test_corpus_workers_that_exit_fail_their_jobs(monkeypatch):
    monkeypatch.setattr(analyzer, "battery_jobs", lambda: [("munn", "munn", "")])
    monkeypatch.setattr(analyzer, "corpus_worker", exit_without_work)
    report = analyzer.run_corpus(seed=0, workers=2)
    assert report["failed"] == 1
    assert report["failures"][0]["check"] == "job completed"
    assert report["failures"][0]["detail"] == "worker exited before reporting"


def test_corpus_failure_lists_failures(capsys, monkeypatch):
    monkeypatch.setattr(analyzer, "battery_jobs", lambda: [("munn", "munn", "")])
    monkeypatch.setattr(analyzer, "run_battery_job",
                        lambda key, kind, param, seed: [{"subject": key, "check": "x",
                                                         "ok": False, "detail": None}])
    code, out = run_cli(capsys, "corpus", "--sequential")
    assert code == analyzer.EXIT_BATTERY_FAILED
    assert json.loads(out) == [{"subject": "munn", "check": "x", "ok": False, "detail": None}]
