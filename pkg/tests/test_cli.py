import json
import os

import numpy as np
import pytest

from dunkl_osc import (FULL_LINE, HALF_LINE, bump, make_graded_grid,
                       read_sampled_fn, sample, write_sampled_fn)
from dunkl_osc.cli import main


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    g = make_graded_grid(-3.0, 3.0, 8, 32, 1.0)
    write_sampled_fn("f.csv", sample(bump(0.3, 1.4), g, FULL_LINE))
    h = g.positive_half()
    write_sampled_fn("fh.csv", sample(bump(1.5, 1.2), h, HALF_LINE))
    return tmp_path


def test_transform_roundtrip_files(workdir):
    assert main(["transform", "--kind", "dunkl", "--alpha", "0.5",
                 "--input", "f.csv", "--output", "F.csv"]) == 0
    out = read_sampled_fn("F.csv")
    assert out.grid.n > 0 and np.max(np.abs(out.values)) > 0


def test_partial_sum_and_family(workdir):
    assert main(["partial-sum", "--kind", "dunkl", "--alpha", "0",
                 "--t", "2", "--input", "f.csv", "--output", "S.csv"]) == 0
    assert main(["family", "--alpha", "0", "--input", "f.csv",
                 "--t-grid", "0.5,1,2,4", "--output", "fam.csv"]) == 0
    head = open("fam.csv").readline()
    assert head.startswith("x,0.5,1,2,4")


def test_osc_var_maximal(workdir):
    assert main(["osc", "--alpha", "0", "--input", "f.csv",
                 "--output", "osc.csv"]) == 0
    assert main(["var", "--alpha", "0", "--r", "2", "--input", "f.csv",
                 "--output", "var.csv"]) == 0
    assert main(["maximal", "--operator", "prestini-majorant", "--alpha", "0",
                 "--input", "fh.csv", "--t-grid", "0.5,1,2,4",
                 "--output", "mj.csv"]) == 0
    mj = read_sampled_fn("mj.csv")
    assert np.all(mj.values.real > 0)


def test_range_verdict(workdir, capsys):
    assert main(["range", "--predicate", "full", "--p", "3",
                 "--beta", "0", "--alpha", "0"]) == 0
    verdict = json.loads(capsys.readouterr().out.strip())
    assert verdict["result"] is True
    assert verdict["predicate"] == "full"
    assert "formula" in verdict


def test_range_negative_alpha_token(workdir, capsys):
    assert main(["range", "--predicate", "dyadic", "--p", "2",
                 "--beta", "0.5", "--alpha", "-0.5"]) == 0
    verdict = json.loads(capsys.readouterr().out.strip())
    assert verdict["result"] is True


def test_unknown_flag_exits_2(workdir):
    assert main(["transform", "--bogus"]) == 2


def test_argument_error_exits_2(workdir):
    # half-line operator on a full-line input
    assert main(["transform", "--kind", "hankel", "--alpha", "0",
                 "--input", "f.csv"]) == 2


def test_config_file_flags_win(workdir, capsys):
    with open("run.conf", "w") as fh:
        fh.write("# comment\nalpha=0.25\nn-panels=8\n")
    assert main(["transform", "--kind", "dunkl", "--input", "f.csv",
                 "--config", "run.conf", "--output", "F1.csv"]) == 0
    assert main(["transform", "--kind", "dunkl", "--alpha", "0.75",
                 "--input", "f.csv", "--config", "run.conf",
                 "--output", "F2.csv"]) == 0
    outs = capsys.readouterr().out
    assert "alpha=0.25" in outs and "alpha=0.75" in outs


def test_verify_writes_reports(workdir):
    code = main(["verify", "--suite", "identities", "--alpha", "-0.5,0",
                 "--n-panels", "6", "--seed", "7",
                 "--output", "rep.jsonl", "--summary", "sum.csv"])
    assert code in (0, 1)
    lines = open("rep.jsonl").read().splitlines()
    assert lines and json.loads(lines[0])["seed"] == 7
    assert open("sum.csv").readline().startswith("name,passed")


def test_threads_env_fallback(workdir, monkeypatch):
    monkeypatch.setenv("DUNKL_OSC_THREADS", "2")
    from dunkl_osc.cli import build_parser
    args = build_parser().parse_args(["verify"])
    assert args.threads == 2
