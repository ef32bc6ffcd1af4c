import json
from pathlib import Path

import pytest

from speccalc import cli
from speccalc.cli import InputError, execute, main, parse_scenario, render_json, render_text
from speccalc.suites import Check, SuiteResult

DATA = Path(__file__).parent / "data"
SCENARIO = DATA / "scenario.json"


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_golden_text_report(capsys):
    code, out, _ = _run(["run", str(SCENARIO)], capsys)
    assert code == 0
    assert out == (DATA / "scenario.golden.txt").read_text(encoding="utf-8")


def test_golden_json_report(capsys):
    code, out, _ = _run(["run", str(SCENARIO), "--json"], capsys)
    assert code == 0
    assert out == (DATA / "scenario.golden.json").read_text(encoding="utf-8")


def test_report_is_deterministic(capsys):
    first = _run(["run", str(SCENARIO), "--seed", "7"], capsys)
    second = _run(["run", str(SCENARIO), "--seed", "7"], capsys)
    assert first == second


def test_scenario_covers_every_query_kind():
    data = json.loads(SCENARIO.read_text())
    assert {q["kind"] for q in data["queries"]} == set(cli.QUERY_KINDS)


def test_trivial_spectrum():
    report = execute(parse_scenario({"Y": [], "lambda": [], "queries": [{"kind": "spectrum"}]}))
    assert report["results"][0]["sigma"] == "{0}"
    assert cli.exit_code(report) == 0


def test_resolvent_at_spectrum_point_is_an_error_entry():
    sc = parse_scenario({"Y": [{"1": "1"}], "lambda": ["t"], "queries": [{"kind": "resolvent", "z": "t"}]})
    report = execute(sc)
    entry = report["results"][0]
    assert entry["status"] == "error" and entry["error"] == "SpectrumPoint"
    assert cli.exit_code(report) == 0


def test_spectral_query_on_unitized_operator_is_an_error_entry():
    sc = parse_scenario({"Y": [{"1": "1"}], "alpha": "1", "lambda": ["t"], "queries": [{"kind": "spectrum"}]})
    assert execute(sc)["results"][0]["error"] == "NotCompactPart"


def test_verify_query_all_pass():
    sc = parse_scenario({"queries": [{"kind": "verify", "suite": "resolvent-identity", "n": 2, "trials": 5}]})
    entry = execute(sc)["results"][0]
    assert entry["status"] == "ok"
    assert all(row["status"] == "pass" for row in entry["results"])


def test_failed_verification_exits_2(monkeypatch, tmp_path, capsys):
    def broken(name, seed, max_rank, trials):
        res = SuiteResult(name)
        res.check("always").record(False, witness="t")
        return res

    monkeypatch.setattr(cli, "run_suite", broken)
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"queries": [{"kind": "verify", "suite": "vandermonde"}]}))
    code, out, _ = _run(["run", str(path)], capsys)
    assert code == 2
    assert "counterexample" in out and "witness: t" in out
    code, out, _ = _run(["verify", "--suite", "vandermonde"], capsys)
    assert code == 2 and "FAIL" in out


@pytest.mark.parametrize(
    "payload",
    [
        "not json",
        '{"Y": [{"1": "1"}], "lambda": []}',
        '{"Y": [{"1": "1"}, {"1": "1"}], "lambda": ["1", "1"]}',
        '{"Y": [{"1": "t"}], "lambda": ["1"]}',
        '{"queries": [{"kind": "nope"}]}',
        '{"queries": [{"kind": "resolvent"}]}',
        '{"queries": [{"kind": "resolvent", "z": "1/(t-t)"}]}',
        '{"queries": [{"kind": "integrate", "f": "poly: x +"}]}',
        '{"queries": [{"kind": "verify", "suite": "nope"}]}',
        '[]',
    ],
)
def test_input_errors_exit_1(payload, tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(payload)
    code, out, err = _run(["run", str(path)], capsys)
    assert code == 1
    assert out == "" and err.startswith("spec-calc: ")


def test_missing_file_and_usage_errors(capsys):
    assert _run(["run", "/nonexistent/x.json"], capsys)[0] == 1
    assert _run(["verify", "--suite", "bogus"], capsys)[0] == 1
    assert _run(["verify", "--suite", "vandermonde", "--n", "0"], capsys)[0] == 1
    assert _run([], capsys)[0] == 1
    assert _run(["--help"], capsys)[0] == 0


def test_verify_command(capsys):
    code, out, _ = _run(["verify", "--suite", "vandermonde", "--n", "3", "--trials", "2"], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "result: pass"
    code, out, _ = _run(["verify", "--suite", "atom-inseparability", "--n", "3", "--json"], capsys)
    assert code == 0 and json.loads(out)["ok"] is True


def test_renderers_agree_on_content():
    sc = parse_scenario(json.loads(SCENARIO.read_text()))
    report = execute(sc, name="scenario.json")
    assert json.loads(render_json(report)) == report
    assert render_text(report).endswith("summary: 16 queries, 3 errors, 0 failed\n")


def test_parse_scenario_rejects_non_object():
    with pytest.raises(InputError):
        parse_scenario([1, 2])


def test_run_function():
    report, code = cli.run(SCENARIO)
    assert code == 0 and report["summary"]["queries"] == 16
    with pytest.raises(InputError):
        cli.run(DATA / "missing.json")
