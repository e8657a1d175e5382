"""CLI dispatch, exit codes, file outputs, and reproducibility."""

import json
import subprocess
import sys

import pytest

from misrecon.cli import main
from misrecon.graphs import graph_from_text


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGenerate:
    def test_writes_valid_graph_and_reports_degree(self, tmp_path, capsys):
        out = tmp_path / "g.txt"
        code, stdout, _ = run_cli(
            ["generate", "--family", "thm2", "--n", "9", "--delta", "2",
             "--seed", "1", "--out", str(out)],
            capsys,
        )
        assert code == 0
        g = graph_from_text(out.read_text())
        assert g.n == 9 and g.delta <= 2
        assert "max_degree" in stdout and "seed=1" in stdout

    def test_degree_zero_graph_is_empty(self, tmp_path, capsys):
        out = tmp_path / "g.txt"
        code, _, _ = run_cli(
            ["generate", "--family", "random", "--n", "10", "--delta", "0",
             "--seed", "1", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert graph_from_text(out.read_text()).num_edges == 0

    def test_invalid_parameters_exit_nonzero(self, capsys):
        code, _, err = run_cli(
            ["generate", "--family", "random", "--n", "5", "--delta", "10",
             "--seed", "1"],
            capsys,
        )
        assert code == 2
        assert "error" in err

    def test_byte_identical_reruns(self, tmp_path, capsys):
        outs = []
        for name in ("a.txt", "b.txt"):
            out = tmp_path / name
            code, stdout, _ = run_cli(
                ["generate", "--family", "random", "--n", "20", "--delta", "4",
                 "--density", "0.5", "--seed", "7", "--out", str(out)],
                capsys,
            )
            assert code == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestReconstruct:
    def test_cff_pipeline_exact_match(self, tmp_path, capsys):
        out = tmp_path / "dec.txt"
        code, stdout, _ = run_cli(
            ["reconstruct", "--n", "8", "--delta", "2", "--family", "random",
             "--seed", "11", "--scheme-kind", "cff", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert "exact-match: true" in stdout
        assert out.read_text().rstrip().endswith("unknown 0")

    def test_undersized_scheme_reports_unknowns(self, tmp_path, capsys):
        out = tmp_path / "dec.txt"
        code, stdout, _ = run_cli(
            ["reconstruct", "--n", "12", "--delta", "2", "--seed", "11",
             "--scheme-kind", "randomized", "--c", "0.1", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert "unknown 0" not in out.read_text()

    def test_corrupted_scheme_file_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "scheme.txt"
        bad.write_text("this is not a scheme\n")
        code, _, err = run_cli(
            ["reconstruct", "--n", "6", "--delta", "2", "--seed", "1",
             "--scheme", str(bad)],
            capsys,
        )
        assert code == 2
        assert "error" in err

    def test_transcript_output(self, tmp_path, capsys):
        tr = tmp_path / "tr.jsonl"
        code, _, _ = run_cli(
            ["reconstruct", "--n", "6", "--delta", "1", "--seed", "3",
             "--scheme-kind", "cff", "--transcript-out", str(tr),
             "--out", str(tmp_path / "d.txt")],
            capsys,
        )
        assert code == 0
        first = json.loads(tr.read_text().splitlines()[0])
        assert set(first) == {"query", "answer"}


class TestExperimentDispatch:
    def test_alpha_bound_passes(self, capsys):
        code, stdout, _ = run_cli(
            ["experiment", "alpha-bound", "--w", "2", "--r", "10",
             "--grid", "10000"],
            capsys,
        )
        assert code == 0
        assert "overall: PASS" in stdout

    def test_family_count_pass_and_fail_exit_codes(self, capsys):
        code, stdout, _ = run_cli(
            ["experiment", "family-count", "--n", "9", "--delta", "2"], capsys
        )
        assert code == 0
        assert "exact_count = 28" in stdout
        # delta far above n/3 breaks the chain: binomial bound hits zero
        code, stdout, _ = run_cli(
            ["experiment", "family-count", "--n", "6", "--delta", "5"], capsys
        )
        assert code == 1
        assert "overall: FAIL" in stdout

    def test_exact_t_reports_value(self, capsys):
        code, stdout, _ = run_cli(
            ["experiment", "exact-t", "--n", "6", "--w", "1", "--r", "1"], capsys
        )
        assert code == 0
        assert "measured t = 4" in stdout

    def test_cap_exceeded_exits_three(self, capsys):
        code, _, err = run_cli(
            ["experiment", "profile-count", "--n", "12", "--delta", "4",
             "--queries", "2", "--seed", "1", "--enum-cap", "5"],
            capsys,
        )
        assert code == 3
        assert "capacity exceeded" in err

    def test_missing_required_flag_exits_two(self, capsys):
        code, _, err = run_cli(["experiment", "alpha-bound", "--w", "2"], capsys)
        assert code == 2
        assert "--r" in err

    def test_missing_seed_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["experiment", "dq-stats", "--n", "30", "--delta", "6"])
        assert exc.value.code == 2

    def test_json_output_parses(self, capsys):
        code, stdout, _ = run_cli(
            ["experiment", "lemma7", "--sets", "6", "--ground", "8",
             "--density", "0.5", "--w", "1", "--r", "2", "--trials", "200",
             "--seed", "5", "--json"],
            capsys,
        )
        assert code == 0
        payload = json.loads(stdout)
        assert payload["passed"] is True

    def test_duality_experiment(self, capsys):
        code, stdout, _ = run_cli(
            ["experiment", "duality", "--n", "6", "--delta", "2",
             "--queries", "6", "--seed", "9"],
            capsys,
        )
        assert code == 0
        assert "overall: PASS" in stdout

    def test_bound_table_csv(self, tmp_path, capsys):
        csv_path = tmp_path / "table.csv"
        code, _, _ = run_cli(
            ["experiment", "bound-table", "--n-list", "6,9", "--delta-list",
             "1,2", "--emit-csv", str(csv_path), "--out", str(tmp_path / "r.txt")],
            capsys,
        )
        assert code == 0
        assert csv_path.read_text().startswith("n,delta,clamped")


class TestDeterminism:
    def test_report_bytes_stable_across_threads(self, tmp_path, capsys):
        outputs = []
        for threads in ("1", "8", "1"):
            out = tmp_path / f"r{len(outputs)}.txt"
            code, _, _ = run_cli(
                ["experiment", "dq-stats", "--n", "40", "--delta", "5",
                 "--trials", "200", "--seed", "6", "--threads", threads,
                 "--out", str(out)],
                capsys,
            )
            assert code == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]

    def test_module_entry_point(self, tmp_path):
        result = subprocess.run(
            [sys.executable, "-m", "misrecon", "experiment", "exact-t",
             "--n", "2", "--w", "1", "--r", "1"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "measured t = 2" in result.stdout
