"""End-to-end driver behavior: subcommands, exit codes, file handling."""

import json
import xml.etree.ElementTree as ET

import pytest

from pierce.cli import cli_run
from pierce.instances import load_instance

SVG_NS = "{http://www.w3.org/2000/svg}"


def test_gen_oracle_gallery(tmp_path, capsys):
    inst_path = str(tmp_path / "g.json")
    assert cli_run(["gen", "gallery", "-o", inst_path]) == 0
    assert cli_run(["oracle", inst_path]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert cli_run(["oracle", inst_path, "--kmax", "2"]) == 0
    assert capsys.readouterr().out.strip() == "none"


def test_solve_then_verify(tmp_path, capsys):
    inst_path = str(tmp_path / "g.json")
    rep_path = str(tmp_path / "r.json")
    assert cli_run(["gen", "gallery", "-o", inst_path]) == 0
    assert cli_run(["solve", inst_path, "-o", rep_path]) == 0
    assert cli_run(["verify", inst_path, rep_path]) == 0
    assert capsys.readouterr().out.strip() == "ok"

    # tamper with the claimed LP value and watch the recheck catch it
    report = json.loads(open(rep_path).read())
    report["tau_star"] += 1.0
    with open(rep_path, "w") as fh:
        json.dump(report, fh)
    assert cli_run(["verify", inst_path, rep_path]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_verify_catches_bad_multiplicities(tmp_path, capsys):
    inst_path = str(tmp_path / "g.json")
    rep_path = str(tmp_path / "r.json")
    cli_run(["gen", "gallery", "-o", inst_path])
    cli_run(["solve", inst_path, "-o", rep_path])
    report = json.loads(open(rep_path).read())
    report["m"] = [v * 3 for v in report["m"]]  # breaks the D bound
    with open(rep_path, "w") as fh:
        json.dump(report, fh)
    assert cli_run(["verify", inst_path, rep_path]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_gen_pairwise_and_stats(tmp_path, capsys):
    inst_path = str(tmp_path / "pw.json")
    assert cli_run(["gen", "pairwise", "--n", "6", "--seed", "4", "-o", inst_path]) == 0
    inst = load_instance(inst_path)
    assert len(inst.bodies) == 6
    assert cli_run(["stats", inst_path]) == 0
    out = capsys.readouterr().out
    assert "witnesses N=15" in out  # complete graph on six bodies
    assert "turan" in out


def test_gen_clustered_flags(tmp_path):
    inst_path = str(tmp_path / "cl.json")
    assert (
        cli_run(["gen", "clustered", "--p", "4", "--n", "12", "--seed", "2", "-o", inst_path])
        == 0
    )
    inst = load_instance(inst_path)
    assert inst.p == 4
    assert inst.meta["clusters"] == 3


def test_gen_to_stdout(capsys):
    assert cli_run(["gen", "gallery"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["bodies"]) == 7


def test_plot_outputs_svg(tmp_path):
    inst_path = str(tmp_path / "g.json")
    rep_path = str(tmp_path / "r.json")
    svg_path = str(tmp_path / "fig.svg")
    cli_run(["gen", "gallery", "-o", inst_path])
    cli_run(["solve", inst_path, "-o", rep_path])
    assert cli_run(["plot", inst_path, rep_path, "-o", svg_path]) == 0
    root = ET.parse(svg_path).getroot()
    assert root.tag == f"{SVG_NS}svg"
    assert len(root.findall(f"{SVG_NS}path")) == 7
    markers = [
        c for c in root.findall(f"{SVG_NS}circle") if c.get("class") == "transversal"
    ]
    assert len(markers) == 3

    # plotting without a report still draws the bodies
    assert cli_run(["plot", inst_path, "-o", svg_path]) == 0
    root = ET.parse(svg_path).getroot()
    assert len(root.findall(f"{SVG_NS}path")) == 7


def test_usage_errors(tmp_path, capsys):
    assert cli_run(["solve", str(tmp_path / "missing.json")]) == 2
    assert cli_run(["frobnicate"]) == 2
    assert cli_run([]) == 2
    assert cli_run(["gen", "mystery"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert cli_run(["solve", str(bad)]) == 2
    assert cli_run(["gen", "pairwise", "--n", "1"]) == 2
    capsys.readouterr()


def test_log_level_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PIERCE_LOG_LEVEL", "debug")
    inst_path = str(tmp_path / "g.json")
    assert cli_run(["gen", "gallery", "-o", inst_path]) == 0
    monkeypatch.setenv("PIERCE_LOG_LEVEL", "not-a-level")
    assert cli_run(["oracle", inst_path, "--kmax", "2"]) == 0
    capsys.readouterr()
