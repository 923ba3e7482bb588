"""CLI contract: subcommands, formats, and the exit-code mapping."""

import csv
import json

import pytest
from click.testing import CliRunner

from bordarange.cli import main
from bordarange.model import Profile, pattern_of


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def cache_args(tmp_path):
    return ["--cache", str(tmp_path / "cache.json")]


def test_classify_in_range(runner, cache_args):
    result = runner.invoke(main, cache_args + ["classify", "2,4,4,2"])
    assert result.exit_code == 0
    assert result.output.strip() == "IN_RANGE rule=NewLemma n=all odd >= 3"


def test_classify_not_in_range_exits_one(runner, cache_args):
    result = runner.invoke(main, cache_args + ["classify", "2,4"])
    assert result.exit_code == 1
    assert "NOT_IN_RANGE" in result.output
    assert "Theorem3" in result.output


def test_classify_unknown_exits_zero(runner, cache_args):
    result = runner.invoke(main, cache_args + ["classify", "8,4,4"])
    assert result.exit_code == 0
    assert result.output.startswith("UNKNOWN")


def test_classify_json_is_canonical(runner, cache_args):
    result = runner.invoke(main, cache_args + ["classify", "2,2", "--format", "json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["verdict"] == "in_range" and payload["rule"] == "Lemma4"
    assert result.output == json.dumps(payload, sort_keys=True, indent=2) + "\n"


def test_classify_bad_pattern_is_usage_error(runner, cache_args):
    result = runner.invoke(main, cache_args + ["classify", "2,x"])
    assert result.exit_code == 2


def test_construct_not_in_range_message(runner, cache_args):
    result = runner.invoke(main, cache_args + ["construct", "2,4", "--n", "3"])
    assert result.exit_code == 1
    assert "NOT_IN_RANGE (Theorem 3)" in result.output


def test_construct_unsupported_exits_one(runner, cache_args):
    result = runner.invoke(main, cache_args + ["construct", "3,5", "--n", "3"])
    assert result.exit_code == 1
    assert "UNSUPPORTED (OddLevel)" in result.output


def test_construct_emits_profile_json(runner, cache_args):
    result = runner.invoke(main, cache_args + ["construct", "2,4,4,2", "--n", "3"])
    assert result.exit_code == 0
    profile = Profile.from_dict(json.loads(result.output))
    assert profile.m == 12 and profile.n == 3
    assert pattern_of(profile) == (2, 4, 4, 2)


@pytest.mark.parametrize("pattern,n", [("2,2,2,2", "5"), ("2,4,4,2", "3"), ("4,2,2", "7")])
def test_construct_pipe_into_verify(runner, cache_args, pattern, n):
    built = runner.invoke(main, cache_args + ["construct", pattern, "--n", n])
    assert built.exit_code == 0
    checked = runner.invoke(
        main, cache_args + ["verify", "-", "--expect", pattern], input=built.output
    )
    assert checked.exit_code == 0, checked.output
    assert f"pattern={pattern}" in checked.output


def test_construct_out_file_then_verify(runner, cache_args, tmp_path):
    out = tmp_path / "witness.json"
    result = runner.invoke(
        main, cache_args + ["construct", "4,2,2", "--n", "3", "--out", str(out)]
    )
    assert result.exit_code == 0
    checked = runner.invoke(main, cache_args + ["verify", str(out), "--expect", "4,2,2"])
    assert checked.exit_code == 0
    mismatched = runner.invoke(main, cache_args + ["verify", str(out), "--expect", "2,2"])
    assert mismatched.exit_code == 1
    assert "MISMATCH" in mismatched.output


def test_construct_text_format(runner, cache_args):
    result = runner.invoke(
        main, cache_args + ["construct", "2,2", "--n", "3", "--format", "text"]
    )
    assert result.exit_code == 0
    assert "pattern=2,2" in result.output
    assert "scores=7,8,7,8" in result.output


def test_verify_missing_file_is_io_error(runner, cache_args, tmp_path):
    result = runner.invoke(main, cache_args + ["verify", str(tmp_path / "nope.json")])
    assert result.exit_code == 2


def test_verify_invalid_profile_is_usage_error(runner, cache_args, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"m": 3, "n": 1, "rankings": [[0, 0, 2]]}))
    result = runner.invoke(main, cache_args + ["verify", str(bad)])
    assert result.exit_code == 2


def test_enumerate_stdout_and_exports(runner, cache_args, tmp_path):
    csv_path = tmp_path / "atlas.csv"
    result = runner.invoke(
        main,
        cache_args + ["enumerate", "--m", "3", "--n", "3", "--export", str(csv_path)],
    )
    assert result.exit_code == 0
    assert "1,1,1\t28" in result.output
    with csv_path.open() as handle:
        rows = list(csv.DictReader(handle))
    assert {row["pattern"] for row in rows} == {"1,1,1", "1,2", "2,1", "3"}
    for row in rows:
        witness = Profile.from_dict(json.loads(row["min_witness_json"]))
        assert pattern_of(witness) == tuple(int(x) for x in row["pattern"].split(","))

    json_path = tmp_path / "atlas.json"
    result = runner.invoke(
        main,
        cache_args + ["enumerate", "--m", "3", "--n", "3", "--export", str(json_path)],
    )
    assert result.exit_code == 0
    payload = json.loads(json_path.read_text())
    assert payload["m"] == 3 and len(payload["achieved"]) == 4


def test_enumerate_sampled_mode(runner, cache_args):
    result = runner.invoke(
        main,
        cache_args
        + ["enumerate", "--m", "4", "--n", "3", "--mode", "sampled", "--trials", "300"],
    )
    assert result.exit_code == 0
    assert result.output.strip()


def test_search_found_and_not_found(runner, cache_args):
    result = runner.invoke(main, cache_args + ["search", "1,1,2", "--n", "3"])
    assert result.exit_code == 0
    profile = Profile.from_dict(json.loads(result.output))
    assert pattern_of(profile) == (1, 1, 2)
    result = runner.invoke(main, cache_args + ["search", "2,4", "--n", "3"])
    assert result.exit_code == 1
    assert "NOT_FOUND (exhaustive)" in result.output


def test_cross_check_exit_zero(runner, cache_args):
    result = runner.invoke(main, cache_args + ["cross-check", "--max-m", "4", "--n", "3"])
    assert result.exit_code == 0
    assert "contradictions=0" in result.output


def test_usage_error_on_unknown_command(runner):
    result = runner.invoke(main, ["frobnicate"])
    assert result.exit_code == 2
