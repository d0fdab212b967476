"""Pipeline orchestration and command-line behavior."""

import json

import pytest

from overseer import (
    PipelineOptions,
    parse_net,
    parse_net_file,
    run_pipeline,
)
from overseer.cli import main
from overseer.errors import StageFailure, SupportCapExceeded, UncoverableState

THREE_STEP = """\
# B is only reachable through the forbidden A
net three_step
places Q A B
initial Q
transition c1 controllable { in Q ; out A }
transition c2 controllable { in A ; out B }
forbidden {
  expr "A & !B"
}
"""


def test_pipeline_two_machines(two_machines):
    result = run_pipeline(two_machines)
    r = result.report
    assert r.reachable_count == 12
    assert r.authorized_count == 5
    assert r.selected == ["P4P6", "P2P7"]
    assert r.closed_loop.isomorphic
    assert result.closed.state_count == 5


def test_pipeline_no_forbidden_states():
    doc = parse_net(
        "net free\nplaces A B\ninitial A\n"
        "transition t controllable { in A ; out B }\n"
        "transition r controllable { in B ; out A }\n"
    )
    result = run_pipeline(doc)
    assert result.report.no_constraints
    assert result.controller.k == 0
    assert result.report.closed_loop.isomorphic
    assert "no constraints needed" in result.report.render_text()


def test_pipeline_report_deterministic(two_machines_path):
    a = run_pipeline(parse_net_file(two_machines_path)).report
    b = run_pipeline(parse_net_file(two_machines_path)).report
    assert a.digest() == b.digest()
    da, db = a.to_dict(), b.to_dict()
    da.pop("timings"), db.pop("timings")
    assert da == db
    # text agrees apart from the wall-clock lines
    strip = lambda text: [
        line for line in text.splitlines()
        if not line.rstrip().endswith(" ms")
    ]
    assert strip(a.render_text()) == strip(b.render_text())


def test_pipeline_exact_cover_matches_greedy_here(two_machines):
    result = run_pipeline(
        two_machines, PipelineOptions(exact_cover=True)
    )
    assert sorted(result.report.selected) == ["P2P7", "P4P6"]
    assert result.report.selection_mode == "exact"


def test_pipeline_support_cap_surfaces_with_stage(two_machines):
    with pytest.raises(StageFailure) as err:
        run_pipeline(two_machines, PipelineOptions(support_cap=2))
    assert err.value.stage == "over-states"
    assert isinstance(err.value.cause, SupportCapExceeded)


def test_pipeline_uncoverable_without_fallback(drop_job):
    with pytest.raises(StageFailure) as err:
        run_pipeline(drop_job)
    assert isinstance(err.value.cause, UncoverableState)


def test_pipeline_fallback_flags_over_restrictive(drop_job):
    result = run_pipeline(drop_job, PipelineOptions(fallback=True))
    r = result.report
    assert r.fallback_used
    assert r.uncovered == ["P1"]
    assert r.over_restrictive == ["m(P1) <= 0"]
    assert not r.closed_loop.isomorphic
    assert r.closed_loop.missing_authorized == ["P1P2"]


def test_cli_success_writes_artifacts(tmp_path, two_machines_path, capsys):
    out = tmp_path / "controlled.pnet"
    report = tmp_path / "report.txt"
    rc = main([
        str(two_machines_path),
        "--out", str(out),
        "--report", str(report),
        "--dot-rg", str(tmp_path / "rg.dot"),
        "--dot-controlled", str(tmp_path / "closed.dot"),
    ])
    assert rc == 0
    stdout = capsys.readouterr().out
    assert "isomorphic to authorized subgraph: yes" in stdout

    controlled = parse_net(out.read_text())
    assert controlled.net.places[-2:] == ("Pc1", "Pc2")

    twin = json.loads((tmp_path / "report.json").read_text())
    assert twin["partition"]["authorized_count"] == 5
    assert twin["digest"]
    text = report.read_text()
    assert twin["digest"] in text

    rg_dot = (tmp_path / "rg.dot").read_text()
    assert 'fillcolor="gray25"' in rg_dot
    assert "peripheries=2" in rg_dot
    closed_dot = (tmp_path / "closed.dot").read_text()
    assert closed_dot.count(" -> ") == 5 + 1  # five firings plus init arrow


def test_cli_report_json_path(tmp_path, two_machines_path):
    rc = main([str(two_machines_path),
               "--report", str(tmp_path / "r.json")])
    assert rc == 0
    assert (tmp_path / "r.json").exists()
    assert (tmp_path / "r.txt").exists()
    json.loads((tmp_path / "r.json").read_text())


def test_cli_missing_file(tmp_path, capsys):
    rc = main([str(tmp_path / "nope.pnet")])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err


def test_cli_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.pnet"
    bad.write_text("net x\nplaces A\ntransition t { in ; out }\n")
    rc = main([str(bad)])
    assert rc == 2
    err = capsys.readouterr().err
    assert "bad.pnet:3" in err


def test_cli_state_budget_exhausted(two_machines_path, capsys):
    rc = main([str(two_machines_path), "--state-budget", "4"])
    assert rc == 2
    assert "budget" in capsys.readouterr().err


def test_cli_support_cap(two_machines_path, capsys):
    rc = main([str(two_machines_path), "--max-support", "2"])
    assert rc == 2
    assert "over-states" in capsys.readouterr().err


def test_cli_forbidden_initial_marking(tmp_path, capsys):
    bad = tmp_path / "doomed.pnet"
    bad.write_text(
        "net doomed\nplaces A B\ninitial A\n"
        "transition t controllable { in A ; out B }\n"
        'forbidden { expr "A" }\n'
    )
    rc = main([str(bad)])
    assert rc == 3
    assert "forbidden" in capsys.readouterr().err


def test_cli_uncoverable_is_exit_4(drop_job_path, capsys):
    rc = main([str(drop_job_path)])
    assert rc == 4
    assert "border state" in capsys.readouterr().err


def test_cli_fallback_turns_exit_4_into_0(drop_job_path, tmp_path, capsys):
    out = tmp_path / "ctl.pnet"
    rc = main([str(drop_job_path), "--fallback", "--out", str(out)])
    assert rc == 0
    stdout = capsys.readouterr().out
    assert "OVER-RESTRICTIVE" in stdout
    # the fallback controller is still a well-formed net
    doc = parse_net(out.read_text())
    assert "Pc1" in doc.net.places


def test_cli_unreachable_authorized_state_is_exit_5(tmp_path, capsys):
    net = tmp_path / "three.pnet"
    net.write_text(THREE_STEP)
    rc = main([str(net)])
    assert rc == 5
    assert "not isomorphic" in capsys.readouterr().err
