"""Command-line behavior: golden outputs, exit codes, formats, seeds."""

import json

import pytest

from qnetdet.cli import (
    EXIT_DISCONNECTED,
    EXIT_INVALID_POVM,
    EXIT_NOT_SERIES_PARALLEL,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATIONS,
    main,
)

GOLDEN_REDUCE = [
    "single_link",
    "chain",
    "parallel_pair",
    "triangle",
    "parallel_then_series",
    "nested_qutrit",
]


@pytest.fixture
def run(tmp_path, monkeypatch, repo_root):
    """Invoke the entry point from the repository root, capturing the
    output file text and the exit code."""
    monkeypatch.chdir(repo_root)

    def _run(*argv, out_name="out.txt"):
        out = tmp_path / out_name
        code = main([*argv, "--out", str(out)])
        text = out.read_text(encoding="utf-8") if out.exists() else ""
        return code, text

    return _run


class TestReduceGoldens:
    @pytest.mark.parametrize("name", GOLDEN_REDUCE)
    def test_json_bytes_match(self, run, golden_dir, name):
        code, text = run("reduce", f"networks/{name}.json")
        assert code == EXIT_OK
        expected = (golden_dir / f"reduce_{name}.json").read_text(encoding="utf-8")
        assert text == expected

    def test_csv_bytes_match(self, run, golden_dir):
        code, text = run("reduce", "networks/parallel_then_series.json", "--format", "csv")
        assert code == EXIT_OK
        expected = (golden_dir / "reduce_parallel_then_series.csv").read_text(encoding="utf-8")
        assert text == expected

    @pytest.mark.parametrize("name", GOLDEN_REDUCE)
    def test_json_validates_against_schema(self, run, schema_validator, name):
        _, text = run("reduce", f"networks/{name}.json")
        schema_validator("reduce_output.schema.json").validate(json.loads(text))

    def test_pretty_is_not_json(self, run):
        code, text = run("reduce", "networks/triangle.json", "--pretty")
        assert code == EXIT_OK
        with pytest.raises(json.JSONDecodeError):
            json.loads(text)
        assert "topology" in text and "SeriesThenParallel" in text

    def test_stdout_equals_file_output(self, monkeypatch, repo_root, golden_dir, capsys):
        monkeypatch.chdir(repo_root)
        assert main(["reduce", "networks/chain.json"]) == EXIT_OK
        captured = capsys.readouterr()
        expected = (golden_dir / "reduce_chain.json").read_text(encoding="utf-8")
        assert captured.out == expected


class TestReduceFailures:
    def test_bridge_not_series_parallel(self, run, capsys):
        code, _ = run("reduce", "networks/bridge.json")
        assert code == EXIT_NOT_SERIES_PARALLEL
        assert "reduction stalled" in capsys.readouterr().err

    def test_disconnected_terminals(self, tmp_path, run):
        doc = {
            "dimension": 2,
            "terminals": ["A", "B"],
            "edges": [
                {"u": "A", "v": "X", "schmidt": [0.9, 0.1]},
                {"u": "Y", "v": "B", "schmidt": [0.9, 0.1]},
            ],
        }
        path = tmp_path / "split.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, _ = run("reduce", str(path))
        assert code == EXIT_DISCONNECTED

    def test_schema_error(self, tmp_path, run):
        path = tmp_path / "bad.json"
        path.write_text('{"dimension": 2}', encoding="utf-8")
        code, _ = run("reduce", str(path))
        assert code == EXIT_USAGE

    def test_missing_file(self, run):
        code, _ = run("reduce", "networks/no_such_network.json")
        assert code == EXIT_USAGE


class TestVerify:
    def test_bytes_identical_across_runs(self, run):
        args = ("verify", "lemmas", "--trials", "20", "--seed", "7")
        code1, text1 = run(*args, out_name="a.json")
        code2, text2 = run(*args, out_name="b.json")
        assert code1 == code2 == EXIT_OK
        assert text1 == text2

    def test_json_validates_against_schema(self, run, schema_validator):
        code, text = run("verify", "all", "--trials", "5", "--seed", "1")
        assert code == EXIT_OK
        doc = json.loads(text)
        schema_validator("verify_output.schema.json").validate(doc)
        assert len(doc["reports"]) == 15
        assert doc["manifest"]["config"]["trials"] == 5

    def test_violations_exit_code(self, run):
        code, text = run("verify", "lemma_det_preserving", "--trials", "10", "--tol", "1e-18")
        assert code == EXIT_VIOLATIONS
        doc = json.loads(text)
        assert doc["reports"][0]["passed"] is False
        assert doc["reports"][0]["violations"]

    def test_unknown_selector(self, run, capsys):
        code, _ = run("verify", "bogus_check")
        assert code == EXIT_USAGE
        assert "bogus_check" in capsys.readouterr().err

    def test_qubit_only_check_rejects_other_dimension(self, run):
        code, _ = run("verify", "theorem_worst_case_d2", "--d", "3", "--trials", "5")
        assert code == EXIT_USAGE

    def test_group_skips_qubit_only_check(self, run):
        code, text = run("verify", "theorems", "--d", "3", "--trials", "5")
        assert code == EXIT_OK
        by_name = {r["name"]: r for r in json.loads(text)["reports"]}
        assert by_name["theorem_worst_case_d2"]["trials_run"] == 0
        assert "skipped" in by_name["theorem_worst_case_d2"]["extras"]

    def test_pretty_table(self, run):
        code, text = run("verify", "amgm", "--trials", "10", "--pretty")
        assert code == EXIT_OK
        assert text.startswith("PASS  reverse_amgm")
        assert "1/1 checks passed" in text

    def test_seed_env_fallback(self, run, monkeypatch):
        _, explicit = run("verify", "amgm", "--trials", "10", "--seed", "42", out_name="a.json")
        monkeypatch.setenv("QNETDET_SEED", "42")
        _, from_env = run("verify", "amgm", "--trials", "10", out_name="b.json")
        assert explicit == from_env
        monkeypatch.setenv("QNETDET_SEED", "not-a-number")
        code, _ = run("verify", "amgm", "--trials", "10", out_name="c.json")
        assert code == EXIT_USAGE

    def test_bad_config_is_usage_error(self, run):
        code, _ = run("verify", "all", "--d", "99", "--trials", "5")
        assert code == EXIT_USAGE
        code, _ = run("verify", "all", "--trials", "0")
        assert code == EXIT_USAGE


class TestOutcomes:
    def test_bell_golden_bytes(self, run, golden_dir):
        code, text = run("outcomes", "--links", "0.9,0.1", "0.9,0.1", "--povm", "bell")
        assert code == EXIT_OK
        expected = (golden_dir / "outcomes_bell.json").read_text(encoding="utf-8")
        assert text == expected

    def test_json_validates_against_schema(self, run, schema_validator):
        _, text = run("outcomes", "--links", "0.8,0.2", "0.7,0.3")
        schema_validator("outcomes_output.schema.json").validate(json.loads(text))

    def test_deterministic_povm_uniform_probabilities(self, run):
        code, text = run("outcomes", "--links", "0.5,0.3,0.2", "0.6,0.3,0.1")
        assert code == EXIT_OK
        doc = json.loads(text)
        assert doc["element_count"] == 9
        assert len(doc["outcomes"]) == 9
        for entry in doc["outcomes"]:
            assert entry["probability"] == pytest.approx(1.0 / 9.0, abs=1e-12)
        vec0 = doc["outcomes"][0]["vector"]
        for entry in doc["outcomes"][1:]:
            assert entry["vector"] == pytest.approx(vec0, abs=1e-9)

    def test_links_normalized_descending(self, run):
        code, text = run("outcomes", "--links", "1,9", "0.1,0.9")
        assert code == EXIT_OK
        doc = json.loads(text)
        assert doc["manifest"]["inputs"]["links"] == [[0.9, 0.1], [0.9, 0.1]]

    def test_chain_file_matches_links(self, run):
        _, from_file = run("outcomes", "networks/chain.json", out_name="a.json")
        _, from_links = run("outcomes", "--links", "0.9,0.1", "0.9,0.1", out_name="b.json")
        a, b = json.loads(from_file), json.loads(from_links)
        assert a["outcomes"] == b["outcomes"]
        assert a["averages"] == b["averages"]

    def test_random_povm_seed_determinism(self, run):
        args = ("outcomes", "--links", "0.9,0.1", "0.9,0.1", "--povm", "random:6", "--seed", "5")
        _, a = run(*args, out_name="a.json")
        _, b = run(*args, out_name="b.json")
        assert a == b
        doc = json.loads(a)
        assert doc["element_count"] == 6
        total = sum(e["probability"] for e in doc["outcomes"])
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_bell_needs_qubits(self, run, capsys):
        code, _ = run("outcomes", "--links", "0.5,0.3,0.2", "0.6,0.3,0.1", "--povm", "bell")
        assert code == EXIT_INVALID_POVM
        assert "dimension" in capsys.readouterr().err

    def test_undersized_random_povm(self, run):
        code, _ = run("outcomes", "--links", "0.9,0.1", "0.9,0.1", "--povm", "random:2")
        assert code == EXIT_INVALID_POVM

    def test_unknown_povm_name(self, run):
        code, _ = run("outcomes", "--links", "0.9,0.1", "0.9,0.1", "--povm", "mystery")
        assert code == EXIT_USAGE

    def test_file_xor_links(self, run):
        code, _ = run("outcomes", "networks/chain.json", "--links", "0.9,0.1", "0.9,0.1")
        assert code == EXIT_USAGE
        code, _ = run("outcomes")
        assert code == EXIT_USAGE

    def test_mismatched_link_lengths(self, run):
        code, _ = run("outcomes", "--links", "0.9,0.1", "0.5,0.3,0.2")
        assert code == EXIT_USAGE

    def test_wrong_file_shape(self, run, capsys):
        code, _ = run("outcomes", "networks/triangle.json")
        assert code == EXIT_USAGE
        assert "two links" in capsys.readouterr().err

    def test_pretty_table(self, run):
        code, text = run(
            "outcomes", "--links", "0.9,0.1", "0.9,0.1", "--povm", "bell", "--pretty"
        )
        assert code == EXIT_OK
        lines = text.splitlines()
        assert lines[0].startswith("probability")
        assert len(lines) == 6
        assert lines[-1].startswith("averages:")


class TestManifest:
    def test_timestamp_off_by_default(self, run):
        _, text = run("reduce", "networks/single_link.json")
        assert json.loads(text)["manifest"]["timestamp"] is None

    def test_timestamp_flag(self, run):
        _, text = run("reduce", "networks/single_link.json", "--timestamp")
        stamp = json.loads(text)["manifest"]["timestamp"]
        assert isinstance(stamp, str) and stamp.endswith("+00:00")

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert capsys.readouterr().out.startswith("qnetdet ")

    def test_usage_error_exit_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["reduce", "--format", "xml", "x.json"])
        assert exc.value.code == 2
