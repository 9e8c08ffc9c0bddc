"""Driving ``embedlab`` end to end: output formats and the exit-code contract."""

from __future__ import annotations

import json
import os

import pytest

from embedlab.cli import dispatch, main
from embedlab.cli.main import CommandRequest
from embedlab.common.config import VERBOSE_ENV
from embedlab.common.errors import UsageError
from embedlab.metric import build_truncation
from embedlab.metric.io import space_to_csv


def _run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _run_json(capsys, *argv: str) -> tuple[int, dict]:
    code, out, _ = _run(capsys, *argv)
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# metric
# ---------------------------------------------------------------------------


class TestSpaceCommands:
    def test_smallest_space(self, capsys):
        code, doc = _run_json(capsys, "space", "--n", "1", "--format", "json")
        assert code == 0
        assert doc == {
            "label": "M",
            "n": 1,
            "points": ["root", "1", "{1}"],
            "dist": [[0, 1, 2], [1, 0, 1], [2, 1, 0]],
        }

    def test_space_file_round_trip(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "space", "--n", "3")
        assert code == 0
        path = tmp_path / "m3.json"
        path.write_text(out)
        code, again, _ = _run(capsys, "space", "--space-file", str(path))
        assert code == 0
        assert again == out

    def test_csv_matches_space_to_csv(self, capsys):
        code, out, _ = _run(capsys, "space", "--n", "3", "--format", "csv")
        assert code == 0
        assert out == space_to_csv(build_truncation(3))

    def test_n0_space_csv(self, capsys):
        code, out, _ = _run(capsys, "space", "--space", "N0", "--n", "2", "--format", "csv")
        assert code == 0
        assert out.splitlines() == ["point,0,1,2", "0,0,1,1", "1,1,0,2", "2,1,2,0"]

    def test_dist_matrix(self, capsys):
        code, out, _ = _run(capsys, "dist-matrix", "--n", "2", "--format", "csv")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "x,y,distance,bfs_distance"
        assert len(lines) == 1 + 15

    def test_dist_matrix_flags_bad_file(self, capsys, tmp_path):
        _, out, _ = _run(capsys, "space", "--n", "2")
        doc = json.loads(out)
        doc["dist"][1][2] = doc["dist"][2][1] = 4
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        code, result = _run_json(capsys, "dist-matrix", "--space-file", str(path))
        assert code == 2
        assert {v["kind"] for v in result["violations"]} >= {"triangle", "table", "bfs"}

    def test_human_format(self, capsys):
        code, out, _ = _run(capsys, "space", "--n", "1", "--format", "human")
        assert code == 0
        assert out.startswith("embedlab space\n")
        assert "label: M" in out


# ---------------------------------------------------------------------------
# roundness
# ---------------------------------------------------------------------------


class TestRoundnessCommands:
    def test_table_csv(self, capsys):
        code, out, _ = _run(
            capsys, "roundness", "--q", "1", "--n-from", "3", "--n-to", "5", "--format", "csv"
        )
        assert code == 0
        assert out.splitlines() == [
            "n,lower_bound_num,lower_bound_den,float",
            "3,4,5,0.8000000000",
            "4,1,1,1.0000000000",
            "5,8,7,1.1428571429",
        ]

    def test_deficit(self, capsys):
        code, doc = _run_json(capsys, "deficit", "--space", "M", "--n", "3", "--cert", "paper")
        assert code == 0
        assert doc["deficit"] == "3/1"
        assert doc["holds"] is True
        assert doc["configuration_lower_bound"] == "4/5"

    def test_deficit_fails_at_five(self, capsys):
        code, doc = _run_json(capsys, "deficit", "--n", "5")
        assert code == 0
        assert doc["deficit"] == "-5/1"
        assert doc["holds"] is False

    def test_deficit_needs_m(self, capsys):
        code, _, err = _run(capsys, "deficit", "--space", "N0", "--n", "3")
        assert code == 2
        assert err.startswith("Error:")

    def test_threshold(self, capsys):
        code, doc = _run_json(capsys, "threshold", "--target", "199/100")
        assert code == 0
        assert doc["n"] == 599


# ---------------------------------------------------------------------------
# free space
# ---------------------------------------------------------------------------


class TestFreeSpaceCommands:
    def test_free_norm(self, capsys):
        molecule = json.dumps({"weights": {"{1}": "1/2", "{2}": "-1/2"}})
        code, doc = _run_json(capsys, "free-norm", "--n", "2", "--molecule", molecule)
        assert code == 0
        assert doc["norm"] == "2/1"
        assert doc["plan"] == [{"mass": "1/2", "source": "{1}", "target": "{2}"}]
        assert doc["dual_pairing"] == doc["norm"]

    def test_free_norm_from_file(self, capsys, tmp_path):
        path = tmp_path / "molecule.json"
        path.write_text(json.dumps({"weights": {"1": 1, "root": -1}}))
        code, doc = _run_json(capsys, "free-norm", "--n", "2", "--molecule-file", str(path))
        assert code == 0
        assert doc["norm"] == "1/1"

    def test_free_norm_rejects_unbalanced(self, capsys):
        molecule = json.dumps({"weights": {"1": "1"}})
        code, _, _ = _run(capsys, "free-norm", "--n", "2", "--molecule", molecule)
        assert code == 2

    def test_check_isometry(self, capsys):
        code, doc = _run_json(capsys, "check-isometry", "--space", "M", "--n", "4")
        assert code == 0
        assert doc["violations"] == []
        assert doc["pairs_checked"] == 190

    def test_check_n0_l1(self, capsys):
        code, doc = _run_json(capsys, "check-n0-l1", "--n", "10", "--count", "20", "--seed", "3")
        assert code == 0
        assert doc["ok"] is True
        assert doc["seed"] == 3

    def test_bijection_constants(self, capsys):
        code, doc = _run_json(capsys, "bijection-constants", "--n", "4")
        assert code == 0
        assert (doc["lip_forward"], doc["lip_inverse"], doc["product"]) == ("2/1", "2/1", "4/1")


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------


class TestEmbeddingCommands:
    def test_embed_search_is_byte_deterministic(self, capsys):
        argv = ["embed-search", "--space", "M", "--n", "3", "--target", "l1",
                "--restarts", "2", "--iters", "20", "--seed", "0"]
        code, first, _ = _run(capsys, *argv)
        _, second, _ = _run(capsys, *argv)
        assert code == 0
        assert first == second
        doc = json.loads(first)
        assert doc["certified_lower_bound"] == "4/5"
        assert {"best_dist", "vectors"} <= set(doc)

    def test_witness_default_frechet(self, capsys):
        code, doc = _run_json(capsys, "witness", "--n", "4", "--A", "1,2", "--B", "3,4")
        assert code == 0
        assert doc["ok"] is True
        assert doc["entries"][0]["feasible"] is True

    def test_witness_all_pairs(self, capsys):
        code, doc = _run_json(capsys, "witness", "--n", "5", "--all-pairs")
        assert code == 0
        assert len(doc["entries"]) == 180

    def test_witness_sequence(self, capsys):
        code, doc = _run_json(capsys, "witness", "--n", "4", "--sequence", "1,2,3,4")
        assert code == 0
        assert [e["A"] for e in doc["entries"]] == [[2], [2, 4]]

    def test_witness_infeasible_embedding(self, capsys, tmp_path):
        _, out, _ = _run(capsys, "space", "--n", "3")
        space = json.loads(out)
        vectors = {
            name: [v / 2 for v in row]
            for name, row in zip(space["points"], space["dist"], strict=True)
        }
        path = tmp_path / "half.json"
        path.write_text(json.dumps({"target": "linf", "vectors": vectors}))
        code, doc = _run_json(
            capsys, "witness", "--n", "3", "--A", "1", "--B", "2", "--embedding", str(path)
        )
        assert code == 3
        assert doc["entries"][0]["feasible"] is False

    def test_witness_needs_sets(self, capsys):
        code, _, _ = _run(capsys, "witness", "--n", "3")
        assert code == 2

    def test_perturb_bound(self, capsys):
        code, doc = _run_json(
            capsys, "perturb-bound", "--c1", "1", "--c2", "3/2", "--eta", "1/10"
        )
        assert code == 0
        assert (doc["C1_prime"], doc["C2_prime"]) == ("4/5", "17/10")

    def test_perturb_bound_too_large(self, capsys):
        code, _, err = _run(capsys, "perturb-bound", "--c1", "1", "--c2", "1", "--eta", "1/2")
        assert code == 3
        assert "Error:" in err

    def test_epsilon(self, capsys):
        code, doc = _run_json(capsys, "epsilon", "--D", "3/2")
        assert code == 0
        assert doc["epsilon"] == "1/64"


# ---------------------------------------------------------------------------
# exit codes and dispatch
# ---------------------------------------------------------------------------


class TestExitCodes:
    def test_unknown_subcommand(self, capsys):
        code, _, err = _run(capsys, "bogus")
        assert code == 1
        assert "Error:" in err

    def test_no_subcommand(self, capsys):
        assert _run(capsys)[0] == 1

    def test_malformed_rational(self, capsys):
        assert _run(capsys, "roundness", "--q", "abc", "--n-to", "5")[0] == 1

    def test_unknown_flag(self, capsys):
        assert _run(capsys, "space", "--n", "2", "--colour", "red")[0] == 1

    def test_bad_format(self, capsys):
        assert _run(capsys, "space", "--n", "2", "--format", "xml")[0] == 1

    def test_size_limit(self, capsys):
        assert _run(capsys, "space", "--n", "0")[0] == 2
        assert _run(capsys, "space", "--n", "21")[0] == 2

    def test_max_n_flag(self, capsys):
        assert _run(capsys, "space", "--n", "4", "--max-n", "3")[0] == 2
        assert _run(capsys, "space", "--n", "3", "--max-n", "3")[0] == 0

    def test_bad_env_is_usage_error(self, capsys, monkeypatch):
        monkeypatch.setenv("EMBEDLAB_MAX_N", "lots")
        assert _run(capsys, "space", "--n", "2")[0] == 1

    def test_missing_space_file(self, capsys, tmp_path):
        assert _run(capsys, "space", "--space-file", str(tmp_path / "nope.json"))[0] == 2

    @pytest.mark.parametrize(
        ("field", "value"),
        [("n", "x"), ("dist", [[0, "a", 2], [1, 0, 1], [2, 1, 0]]), ("dist", [[0, 1], [1, 0]])],
    )
    def test_malformed_space_file(self, capsys, tmp_path, field, value):
        _, out, _ = _run(capsys, "space", "--n", "1")
        doc = json.loads(out)
        doc[field] = value
        path = tmp_path / "malformed.json"
        path.write_text(json.dumps(doc))
        code, out, err = _run(capsys, "space", "--space-file", str(path))
        assert code == 2
        assert out == ""
        assert err.startswith("Error:")

    @pytest.mark.parametrize("vectors", [{"root": ["abc"]}, ["not", "a", "map"], {"root": "1"}])
    def test_malformed_embedding_file(self, capsys, tmp_path, vectors):
        path = tmp_path / "embedding.json"
        path.write_text(json.dumps({"target": "linf", "vectors": vectors}))
        code, _, err = _run(
            capsys, "witness", "--n", "3", "--A", "1", "--B", "2", "--embedding", str(path)
        )
        assert code == 2
        assert err.startswith("Error:")

    def test_n0_size_limit(self, capsys):
        assert _run(capsys, "space", "--space", "N0", "--n", str(10**6))[0] == 2


    def test_missing_n(self, capsys):
        assert _run(capsys, "space")[0] == 2

    def test_dispatch_unknown(self):
        with pytest.raises(UsageError):
            dispatch(CommandRequest(subcommand="nope"))

    def test_dispatch_report(self):
        report = dispatch(CommandRequest(subcommand="bijection-constants", options={"n": 2}))
        assert report.exit_code == 0
        assert report.results["product"] == "4/1"
        assert report.wall_time_ms >= 0

    def test_verbose_goes_to_stderr(self, capsys):
        code, out, err = _run(capsys, "space", "--n", "1", "--verbose")
        assert code == 0
        assert "[CLI]" in err
        assert "[CLI]" not in out
        assert VERBOSE_ENV not in os.environ
