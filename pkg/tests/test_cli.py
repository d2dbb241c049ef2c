import json
import subprocess
import sys

import pytest

from adlv import __version__
from adlv.cli import JobSpec, export_graph, job_from_args, main, run
from adlv.root_data import root_datum
from adlv.sigma import make_short_datum
from adlv.connectivity import build_graph


def capture(capsys, argv):
    status = main(argv)
    out = capsys.readouterr().out
    return status, out


# ------------------------------------------------------------- subcommands


def test_adm_reports_elements_and_config(capsys):
    status, out = capture(capsys, ["adm", "--type", "A", "--rank", "2",
                                   "--lambda", "[1,1]"])
    assert status == 0
    rep = json.loads(out)
    assert rep["version"] == __version__
    assert rep["datum"]["type"] == "A" and rep["datum"]["rank"] == 2
    assert rep["datum"]["isogeny"] == "adjoint"
    assert rep["count"] == len(rep["elements"]) == len(rep["lengths"])
    assert max(rep["lengths"]) >= 1


def test_straight_groups_by_invariants(capsys):
    status, out = capture(capsys, ["straight", "--type", "A", "--rank", "2",
                                   "--lambda", "[2,1]"])
    assert status == 0
    rep = json.loads(out)
    assert rep["classes"]
    for cls in rep["classes"]:
        assert "newton" in cls and "eta" in cls and cls["elements"]


def test_classify_and_pi0(capsys):
    common = ["--type", "A", "--rank", "2", "--lambda", "[1,1]",
              "--mu", "[0,0]", "--J", "[0,1]"]
    status, out = capture(capsys, ["classify"] + common)
    assert status == 0
    assert json.loads(out)["class"] == "Irreducible"
    status, out = capture(capsys, ["pi0"] + common)
    assert status == 0
    rep = json.loads(out)
    assert rep["pi0_size"] == 3


def test_connect_emits_witness_paths(capsys):
    status, out = capture(capsys, ["connect", "--type", "A", "--rank", "2",
                                   "--lambda", "[1,1]", "--mu", "[0,0]",
                                   "--J", "[0,1]"])
    assert status == 0
    rep = json.loads(out)
    assert rep["connected"] and rep["witness_paths"]


def test_verify_g2_suite(capsys):
    status, out = capture(capsys, ["verify", "g2"])
    assert status == 0
    rep = json.loads(out)
    assert rep["all_pass"] and len(rep["chains"]) == 21
    assert "runtime_seconds" in rep


def test_verify_seq_small(capsys):
    status, out = capture(capsys, ["verify", "seq", "--type", "A",
                                   "--rank", "3"])
    assert status == 0
    rep = json.loads(out)
    assert rep["violations"] == []


def test_fold_descriptor(capsys):
    status, out = capture(capsys, [
        "fold", "--fold", '{"ambient": "A3", "iota": "standard"}'])
    assert status == 0
    rep = json.loads(out)
    assert rep["iota"] == [2, 1, 0]
    assert rep["folded_cartan"] == [[2, -2], [-1, 2]]


def test_export_json_schema(capsys):
    status, out = capture(capsys, ["export", "--type", "A", "--rank", "2",
                                   "--lambda", "[1,1]", "--mu", "[0,0]",
                                   "--J", "[0,1]", "--format", "json"])
    assert status == 0
    rep = json.loads(out)
    assert rep["schema"] == 1
    assert rep["vertices"] and rep["edges"]


def test_export_dot(capsys):
    status, out = capture(capsys, ["export", "--type", "A", "--rank", "2",
                                   "--lambda", "[1,1]", "--mu", "[0,0]",
                                   "--J", "[0,1]", "--format", "dot"])
    assert status == 0
    assert out.startswith("graph ") and "--" in out


def test_export_graph_matches_graph_methods():
    d = root_datum("A", 2)
    sd = make_short_datum(d, frozenset({0, 1}), (0, 0))
    g = build_graph(sd, (1, 1))
    assert export_graph(g, "dot").decode() == g.to_dot()
    assert json.loads(export_graph(g, "json")) == g.to_json()


# --------------------------------------------------------------- exit codes


def test_exit_2_on_bad_type(capsys):
    assert main(["adm", "--type", "Q", "--rank", "2",
                 "--lambda", "[1,1]"]) == 2


def test_exit_2_on_bad_verify_target(capsys):
    assert main(["verify", "nope"]) == 2


def test_exit_2_on_malformed_vector(capsys):
    assert main(["adm", "--type", "A", "--rank", "2",
                 "--lambda", "[1,"]) == 2


def test_exit_2_on_nondominant_lambda(capsys):
    assert main(["adm", "--type", "A", "--rank", "2",
                 "--lambda", "[-1,0]"]) == 2


def test_exit_1_on_disconnected_instance(capsys):
    # eta mismatch: no admissible conjugates, so the relation certifies
    # nothing and the run reports failure
    status = main(["connect", "--type", "A", "--rank", "2",
                   "--lambda", "[1,0]", "--mu", "[0,0]", "--J", "[0,1]"])
    assert status == 1


def test_exit_2_on_non_irreducible_pi0(capsys):
    status = main(["pi0", "--type", "A", "--rank", "2",
                   "--lambda", "[0,0]", "--mu", "[0,0]", "--J", "[0,1]"])
    assert status == 2


# ------------------------------------------------------------- determinism


def test_byte_identical_reruns(capsys):
    argv = ["connect", "--type", "A", "--rank", "2", "--lambda", "[1,1]",
            "--mu", "[0,0]", "--J", "[0,1]"]
    _, out1 = capture(capsys, argv)
    _, out2 = capture(capsys, argv)
    assert out1 == out2


def test_byte_identical_across_processes(tmp_path):
    argv = [sys.executable, "-m", "adlv.cli", "adm", "--type", "C",
            "--rank", "2", "--lambda", "[1,0]"]
    r1 = subprocess.run(argv, capture_output=True, text=True)
    r2 = subprocess.run(argv, capture_output=True, text=True)
    assert r1.returncode == 0
    assert r1.stdout == r2.stdout


def test_out_flag_writes_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    status = main(["adm", "--type", "A", "--rank", "1",
                   "--lambda", "[1]", "--out", str(out)])
    assert status == 0
    rep = json.loads(out.read_text())
    assert rep["count"] == 3


def test_sharded_verify_matches_serial(capsys):
    base = ["verify", "seq", "--type", "D", "--rank", "4"]
    _, serial = capture(capsys, base + ["--jobs", "1"])
    _, sharded = capture(capsys, base + ["--jobs", "3"])
    s1, s2 = json.loads(serial), json.loads(sharded)
    s1.pop("runtime_seconds"), s2.pop("runtime_seconds")
    s1.pop("jobs", None), s2.pop("jobs", None)
    assert s1 == s2


# ------------------------------------------------------------------ cache


def test_cache_dir_roundtrip(tmp_path):
    env = {"ADLV_CACHE_DIR": str(tmp_path), "PATH": "/usr/bin:/bin"}
    argv = [sys.executable, "-m", "adlv.cli", "adm", "--type", "A",
            "--rank", "2", "--lambda", "[1,1]"]
    r1 = subprocess.run(argv, capture_output=True, text=True, env=env)
    assert r1.returncode == 0
    files = list(tmp_path.iterdir())
    assert files, "cache directory not populated"
    r2 = subprocess.run(argv, capture_output=True, text=True, env=env)
    assert r2.stdout == r1.stdout


# -------------------------------------------------------------- job specs


def test_jobspec_validation():
    job = job_from_args(["adm", "--type", "A", "--rank", "2",
                         "--lambda", "[1,1]"])
    assert job.command == "adm" and job.lam == (1, 1)
    with pytest.raises(SystemExit):
        job_from_args(["frobnicate"])


def test_run_returns_report_dict():
    job = job_from_args(["pi0", "--type", "A", "--rank", "2",
                         "--lambda", "[1,1]", "--mu", "[0,0]",
                         "--J", "[0,1]"])
    status, rep = run(job)
    assert status == 0 and rep["pi0_size"] == 3
