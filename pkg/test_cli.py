#!/usr/bin/env python3
"""
Tests for the command front end: JSON and text output, files and exit codes.
"""

import json
import math

import pytest

from cli import create_parser, main


def _json_run(capsys, argv):
    code = main(argv + ["--json"], config_name="testing")
    out = capsys.readouterr().out
    return code, json.loads(out.strip().splitlines()[-1])


## ---------------------------- ##
##             eval              ##
## ---------------------------- ##

def test_eval_disk(capsys, fixtures_dir):
    code, response = _json_run(capsys, ["eval", "--domain", str(fixtures_dir / "disk.json"), "--z", "0.5,0"])
    assert code == 0
    assert response["success"] is True
    assert response["data"]["value"] == pytest.approx(math.log(2.0))
    assert response["data"]["method"] == "closed_form"
    assert response["data"]["error_bound"] == 0.0


def test_eval_ball(capsys, fixtures_dir):
    code, response = _json_run(capsys, ["eval", "--domain", str(fixtures_dir / "ball3.json"), "--z", "0.5,0,0"])
    assert code == 0
    assert response["data"]["value"] == pytest.approx(1.5)


def test_eval_outside_is_zero(capsys, fixtures_dir):
    code, response = _json_run(capsys, ["eval", "--domain", str(fixtures_dir / "disk.json"), "--z", "3,0"])
    assert code == 0
    assert response["data"]["value"] == 0.0


def test_eval_wos_is_reproducible(capsys, fixtures_dir):
    argv = ["eval", "--domain", str(fixtures_dir / "slit.json"), "--z", "0,0.5", "--w", "2,0",
            "--walks", "500", "--seed", "3"]
    code, first = _json_run(capsys, argv)
    assert code == 0
    assert first["data"]["method"] == "wos"
    assert first["data"]["error_bound"] > 0
    _, second = _json_run(capsys, argv + ["--workers", "2"])
    assert second == first


def test_eval_method_not_available(capsys, fixtures_dir):
    code, response = _json_run(
        capsys, ["eval", "--domain", str(fixtures_dir / "slit.json"), "--z", "0,0.5", "--method", "mfs"]
    )
    assert code == 2
    assert response["error"] == "MethodNotAvailableError"
    assert response["details"]["feasible"] == ["wos"]


@pytest.mark.parametrize("extra, error", [
    (["--z", "0,0"], "PoleError"),
    (["--z", "0.5"], "DomainError"),
    (["--z", "0.5,0", "--w", "2,0"], "PreconditionError"),
])
def test_eval_usage_errors(capsys, fixtures_dir, extra, error):
    code, response = _json_run(capsys, ["eval", "--domain", str(fixtures_dir / "disk.json")] + extra)
    assert code == 2
    assert response["error"] == error


def test_eval_bad_files(capsys, fixtures_dir, tmp_path):
    code, response = _json_run(capsys, ["eval", "--domain", str(tmp_path / "missing.json"), "--z", "0.5,0"])
    assert code == 2
    assert response["error"] == "FileNotFoundError"

    broken = tmp_path / "broken.json"
    broken.write_text("{\"type\": \"disk\",")
    code, response = _json_run(capsys, ["eval", "--domain", str(broken), "--z", "0.5,0"])
    assert code == 2
    assert response["error"] == "SchemaError"

    code, response = _json_run(capsys, ["eval", "--domain", str(fixtures_dir / "sequence.json"), "--z", "0.5,0"])
    assert code == 2
    assert response["details"]["field"] == "type"


def test_eval_text_output(capsys, fixtures_dir):
    code = main(["eval", "--domain", str(fixtures_dir / "annulus.json"), "--z", "0,0.5", "--w", "0.5,0"],
                config_name="testing")
    out = capsys.readouterr().out
    assert code == 0
    assert "closed_form" in out
    assert "accepted" in out


## ---------------------------- ##
##           converge            ##
## ---------------------------- ##

def test_converge_writes_report(capsys, fixtures_dir, tmp_path):
    code, response = _json_run(capsys, [
        "converge", "--sequence", str(fixtures_dir / "sequence.json"), "--grid", "0.02", "--out", str(tmp_path),
    ])
    assert code == 0
    assert response["data"]["kernel_check"]["passed"] is True
    assert [row["n"] for row in response["data"]["report"]["rows"]] == [2, 4, 128]
    assert (tmp_path / "disks.csv").exists()
    assert json.loads((tmp_path / "disks.json").read_text())["name"] == "disks"


def test_converge_failed_kernel_check(capsys, fixtures_dir, tmp_path):
    doc = json.loads((fixtures_dir / "sequence.json").read_text())
    doc["boundary_rate"] = {"kind": "power", "scale": 0.1}
    path = tmp_path / "slow.json"
    path.write_text(json.dumps(doc))
    code, response = _json_run(capsys, ["converge", "--sequence", str(path), "--grid", "0.02"])
    assert code == 1
    assert response["success"] is True
    assert response["data"]["kernel_check"]["passed"] is False


def test_converge_family_document(capsys, fixtures_dir):
    code, response = _json_run(capsys, ["converge", "--sequence", str(fixtures_dir / "family.json"), "--grid", "0.02"])
    assert code == 1
    assert response["data"]["report"]["name"] == "thm-multiply"


def test_converge_needs_a_sequence(capsys, fixtures_dir):
    code, response = _json_run(capsys, ["converge", "--sequence", str(fixtures_dir / "disk.json")])
    assert code == 2
    assert response["error"] == "SchemaError"


## ---------------------------- ##
##           reproduce           ##
## ---------------------------- ##

def test_reproduce_accepted(capsys, tmp_path):
    code, response = _json_run(capsys, ["reproduce", "ex-annulus", "--n", "4", "8", "--out", str(tmp_path)])
    assert code == 0
    assert response["data"]["accepted"] is True
    assert (tmp_path / "ex-annulus-summary.json").exists()


def test_reproduce_rejected(capsys, tmp_path):
    code, response = _json_run(capsys, ["reproduce", "thm-multiply", "--n", "8", "16", "--out", str(tmp_path)])
    assert code == 1
    assert response["data"]["accepted"] is False


def test_reproduce_invalid_indices(capsys, tmp_path):
    code, response = _json_run(capsys, ["reproduce", "ex-annulus", "--n", "8", "4", "--out", str(tmp_path)])
    assert code == 2
    assert response["error"] == "DomainError"


## ---------------------------- ##
##            Parser             ##
## ---------------------------- ##

def test_unknown_names_are_usage_errors(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["reproduce", "thm-everything"], config_name="testing")
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit) as excinfo:
        main(["eval", "--domain", "d.json", "--z", "0,0", "--method", "magic"], config_name="testing")
    assert excinfo.value.code == 2


def test_no_command_prints_help(capsys):
    assert main([], config_name="testing") == 2
    assert "usage: green " in capsys.readouterr().out


def test_parser_commands():
    parser = create_parser()
    args = parser.parse_args(["reproduce", "ex-net", "--n", "2", "4", "--walks", "2000"])
    assert args.n == [2, 4]
    assert args.walks == 2000
    assert args.seed == 0
