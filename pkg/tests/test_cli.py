import json
import subprocess
import sys

import pytest

from ultragreedy import bhargava_greedoid, is_pm_ordering, level_sets, points_from_mask
from ultragreedy.cli import main


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def parity5_file(tmp_path, capsys):
    path = tmp_path / "parity5.json"
    code, _, _ = run(
        capsys,
        "generate", "--family", "mod", "--points", "1,2,3,4,5",
        "--m", "2", "--eps", "1", "--alpha", "2", "--out", str(path),
    )
    assert code == 0
    return path


@pytest.fixture()
def parity5_full_file(parity5_file, tmp_path):
    doc = json.loads(parity5_file.read_text())
    doc["selfdist"] = ["1"] * 5
    path = tmp_path / "parity5_full.json"
    path.write_text(json.dumps(doc))
    return path


class TestValidateCommand:
    def test_ok_instance(self, capsys, parity5_file):
        code, out, _ = run(capsys, "validate", str(parity5_file))
        assert code == 0
        assert json.loads(out) == {"ok": True, "violations": []}

    def test_violation_reported(self, capsys, parity5_file, tmp_path):
        doc = json.loads(parity5_file.read_text())
        doc["distances"][2][0] = "9"
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "validate", str(bad))
        assert code == 1
        report = json.loads(out)
        assert not report["ok"]
        assert any(set(v["points"]) >= {"1", "3"} for v in report["violations"])

    def test_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "broken.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2
        assert "JSON" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "validate", str(tmp_path / "nope.json"))
        assert code == 2

    def test_cap_exceeded(self, capsys, parity5_file):
        code, _, err = run(capsys, "validate", str(parity5_file), "--cap", "3")
        assert code == 2 and "cap" in err


class TestGreedyCommand:
    def test_full_permutation(self, capsys, parity5_file):
        code, out, _ = run(capsys, "greedy", str(parity5_file), "--m", "5")
        assert code == 0
        doc = json.loads(out)
        assert doc["mode"] == "permutation"
        assert doc["traces"][0]["points"] == ["1", "2", "3", "4", "5"]
        assert doc["traces"][0]["prefix_perimeters"][2] == "5"

    def test_ties_all(self, capsys, parity5_file):
        code, out, _ = run(capsys, "greedy", str(parity5_file), "--m", "2", "--ties", "all")
        assert code == 0
        assert len(json.loads(out)["traces"]) == 12

    def test_subset_restriction(self, capsys, parity5_file):
        code, out, _ = run(capsys, "greedy", str(parity5_file), "--subset", "1,3,5")
        assert code == 0
        assert len(json.loads(out)["traces"][0]["points"]) == 3

    def test_unknown_label(self, capsys, parity5_file):
        code, _, err = run(capsys, "greedy", str(parity5_file), "--subset", "9")
        assert code == 2 and "unknown point label" in err

    def test_subsequence_needs_selfdist(self, capsys, parity5_file):
        code, _, err = run(capsys, "greedy", str(parity5_file), "--mode", "subseq")
        assert code == 2 and "selfdist" in err

    def test_subsequence_runs_on_full(self, capsys, parity5_full_file):
        code, out, _ = run(
            capsys, "greedy", str(parity5_full_file), "--mode", "subseq", "--m", "7"
        )
        assert code == 0
        assert len(json.loads(out)["traces"][0]["points"]) == 7

    def test_subsequence_tie_enumeration_unsupported(self, capsys, parity5_full_file):
        code, _, _ = run(
            capsys, "greedy", str(parity5_full_file), "--mode", "subseq", "--ties", "all"
        )
        assert code == 2

    def test_m_too_large(self, capsys, parity5_file):
        code, _, _ = run(capsys, "greedy", str(parity5_file), "--m", "9")
        assert code == 2


class TestNuCommand:
    def test_value(self, capsys, parity5_file):
        code, out, _ = run(capsys, "nu", str(parity5_file), "--k", "2")
        assert code == 0 and out.strip() == '"2"'

    def test_subsequence_mode(self, capsys, parity5_full_file):
        code, out, _ = run(
            capsys, "nu", str(parity5_full_file), "--k", "7", "--mode", "subseq"
        )
        assert code == 0
        assert json.loads(out) == "9"

    def test_bad_k(self, capsys, parity5_file):
        code, _, _ = run(capsys, "nu", str(parity5_file), "--k", "0")
        assert code == 2


class TestGreedoidCommand:
    def test_emit_sets_matches_library(self, capsys, parity5_file, parity5):
        code, out, _ = run(capsys, "greedoid", str(parity5_file), "--emit", "sets")
        assert code == 0
        doc = json.loads(out)
        assert doc["ground"] == 5 and doc["labels"] == ["1", "2", "3", "4", "5"]
        s = bhargava_greedoid(parity5)
        by_k = {lvl["k"]: lvl["sets"] for lvl in doc["levels"]}
        for k in range(6):
            want = [list(points_from_mask(m)) for m in level_sets(s, k).members()]
            assert sorted(by_k[k]) == sorted(want)

    def test_check_passes(self, capsys, parity5_file):
        code, out, _ = run(capsys, "greedoid", str(parity5_file))
        assert code == 0
        assert json.loads(out)["all_hold"] is True

    def test_check_system_file_failure(self, capsys, tmp_path):
        path = tmp_path / "system.json"
        path.write_text(json.dumps({"ground": 4, "sets": [[], [0, 1], [2, 3]]}))
        code, out, _ = run(capsys, "greedoid", "--system", str(path))
        assert code == 1
        doc = json.loads(out)
        assert doc["all_hold"] is False
        failed = [a["axiom"] for a in doc["axioms"] if not a["holds"]]
        assert "ii" in failed

    def test_instance_and_system_conflict(self, capsys, parity5_file, tmp_path):
        path = tmp_path / "system.json"
        path.write_text(json.dumps({"ground": 1, "sets": [[]]}))
        code, _, _ = run(capsys, "greedoid", str(parity5_file), "--system", str(path))
        assert code == 2

    def test_neither_input(self, capsys):
        code, _, _ = run(capsys, "greedoid")
        assert code == 2

    def test_ground_cap(self, capsys, parity5_file):
        code, _, _ = run(capsys, "greedoid", str(parity5_file), "--cap", "2")
        assert code == 2


class TestGenerateCommand:
    def test_constant(self, capsys):
        code, out, _ = run(capsys, "generate", "--family", "constant", "--n", "3")
        assert code == 0
        doc = json.loads(out)
        assert doc["distances"] == [[], ["1"], ["1", "1"]]

    def test_padic(self, capsys):
        code, out, _ = run(
            capsys, "generate", "--family", "padic", "--points", "0,3", "--p", "3"
        )
        assert code == 0
        assert json.loads(out)["distances"][1] == ["1/3"]

    def test_padic_log(self, capsys):
        code, out, _ = run(
            capsys, "generate", "--family", "padic-log", "--points", "0,4", "--p", "2"
        )
        assert code == 0
        assert json.loads(out)["distances"][1] == ["-2"]

    def test_rseq(self, capsys):
        code, out, _ = run(
            capsys,
            "generate", "--family", "rseq", "--points", "0,1,2",
            "--r", "1,2", "--c", "2,1",
        )
        assert code == 0
        assert json.loads(out)["distances"][2] == ["1", "2"]

    def test_random_deterministic(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            code, _, _ = run(
                capsys,
                "generate", "--family", "random", "--seed", "7", "--n", "6",
                "--out", str(path),
            )
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_weights_applied(self, capsys):
        code, out, _ = run(
            capsys,
            "generate", "--family", "constant", "--n", "2", "--weights", "1/2,-3",
        )
        assert code == 0
        assert json.loads(out)["weights"] == ["1/2", "-3"]

    def test_missing_params(self, capsys):
        code, _, _ = run(capsys, "generate", "--family", "mod", "--points", "1,2")
        assert code == 2

    def test_composite_p(self, capsys):
        code, _, _ = run(
            capsys, "generate", "--family", "padic", "--points", "0,1", "--p", "4"
        )
        assert code == 2

    def test_float_weight_rejected(self, capsys):
        code, _, _ = run(
            capsys, "generate", "--family", "constant", "--n", "2", "--weights", "0.5,1"
        )
        assert code == 2


class TestTreeCommand:
    def test_star(self, capsys, tmp_path):
        tree = tmp_path / "star.txt"
        tree.write_text("root r\nx r 1\ny r 2\n")
        code, out, _ = run(capsys, "tree", str(tree))
        assert code == 0
        doc = json.loads(out)
        assert doc["points"] == ["x", "y"]
        assert doc["weights"] == ["1", "2"]
        assert doc["distances"] == [[], ["0"]]

    def test_output_validates(self, capsys, tmp_path):
        tree = tmp_path / "t.txt"
        tree.write_text("root r\na r 1\nb a 1/2\nc a 2\n")
        out_file = tmp_path / "inst.json"
        code, _, _ = run(capsys, "tree", str(tree), "--out", str(out_file))
        assert code == 0
        code, out, _ = run(capsys, "validate", str(out_file))
        assert code == 0

    def test_missing_root(self, capsys, tmp_path):
        tree = tmp_path / "t.txt"
        tree.write_text("a b 1\n")
        code, _, err = run(capsys, "tree", str(tree))
        assert code == 2 and "root" in err

    def test_bad_line(self, capsys, tmp_path):
        tree = tmp_path / "t.txt"
        tree.write_text("root r\na r\n")
        code, _, _ = run(capsys, "tree", str(tree))
        assert code == 2

    def test_leafset_directive(self, capsys, tmp_path):
        tree = tmp_path / "t.txt"
        tree.write_text("root r\nleaves a,b\nr a 1\na b 1\n")
        code, out, _ = run(capsys, "tree", str(tree))
        assert code == 0
        doc = json.loads(out)
        assert doc["points"] == ["a", "b"]
        assert doc["distances"][1] == ["-2"]


class TestPorderingCommand:
    def test_ordering_self_checks(self, capsys):
        code, out, _ = run(capsys, "pordering", "--p", "2", "--points", "1,2,3,4", "--m", "4")
        assert code == 0
        assert is_pm_ordering([1, 2, 3, 4], 2, json.loads(out))

    def test_check_true(self, capsys):
        code, out, _ = run(
            capsys, "pordering", "--p", "2", "--points", "1,2,3,4,9", "--check", "1,2,3,4"
        )
        assert code == 0 and json.loads(out) is True

    def test_check_false_exit_one(self, capsys):
        code, out, _ = run(
            capsys, "pordering", "--p", "2", "--points", "0,1", "--check", "5"
        )
        assert code == 1 and json.loads(out) is False

    def test_m_zero(self, capsys):
        code, out, _ = run(capsys, "pordering", "--p", "3", "--points", "4,5", "--m", "0")
        assert code == 0 and json.loads(out) == []

    def test_composite_p(self, capsys):
        code, _, _ = run(capsys, "pordering", "--p", "9", "--points", "1,2")
        assert code == 2


class TestEnvCap:
    def test_env_cap_applies(self, capsys, parity5_file, monkeypatch):
        monkeypatch.setenv("ULTRAGREEDY_CAP", "3")
        code, _, _ = run(capsys, "validate", str(parity5_file))
        assert code == 2

    def test_flag_beats_env(self, capsys, parity5_file, monkeypatch):
        monkeypatch.setenv("ULTRAGREEDY_CAP", "3")
        code, _, _ = run(capsys, "validate", str(parity5_file), "--cap", "10")
        assert code == 0

    def test_bad_env_value(self, capsys, parity5_file, monkeypatch):
        monkeypatch.setenv("ULTRAGREEDY_CAP", "lots")
        code, _, err = run(capsys, "validate", str(parity5_file))
        assert code == 2 and "ULTRAGREEDY_CAP" in err


class TestParsing:
    def test_no_arguments(self, capsys):
        assert main([]) == 2

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_module_entry_point(self, parity5_file):
        proc = subprocess.run(
            [sys.executable, "-m", "ultragreedy", "validate", str(parity5_file)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["ok"] is True
