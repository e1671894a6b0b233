import json
import subprocess
import sys

import pytest

from dci.cli import main
from dci.config import DEFAULT_SWEEP_GRID
from dci.report import parse_results_json


def make_corpus_tree(root):
    """A small two-language corpus layout exercising every manifest feature."""
    data = root / "data"
    data.mkdir()

    def doc_lines(polar_pos, polar_neg, extra, labeled):
        lines = []
        for i in range(4):
            label = " #label#:positive" if labeled else ""
            lines.append(f"{polar_pos}:2 {extra}:1 common{i % 2}:1{label}")
            label = " #label#:negative" if labeled else ""
            lines.append(f"{polar_neg}:2 {extra}:1 common{i % 2}:1{label}")
        return "\n".join(lines) + "\n"

    (data / "books_labeled.txt").write_text(doc_lines("good", "bad", "plot", True))
    (data / "books_unlabeled.txt").write_text(doc_lines("good", "bad", "plot", False))
    (data / "dvd_labeled.txt").write_text(doc_lines("good", "bad", "screen", True))
    (data / "dvd_unlabeled.txt").write_text(doc_lines("good", "bad", "screen", False))
    (data / "dvd_test.txt").write_text(doc_lines("good", "bad", "screen", True))
    (data / "de_books_labeled.txt").write_text(doc_lines("gut", "schlecht", "satz", True))
    (data / "de_books_unlabeled.txt").write_text(
        doc_lines("gut", "schlecht", "satz", False))
    (data / "dict_de_en.txt").write_text(
        "gut\tgood\nschlecht\tbad\ncommon0\tcommon0\ncommon1\tcommon1\n")

    manifest = root / "manifest.toml"
    manifest.write_text(
        'default_language = "en"\n'
        '\n'
        '[pools.en-books]\n'
        'labeled = ["data/books_labeled.txt"]\n'
        'unlabeled = ["data/books_unlabeled.txt"]\n'
        '\n'
        '[pools.en-dvd]\n'
        'labeled = ["data/dvd_labeled.txt"]\n'
        'unlabeled = ["data/dvd_unlabeled.txt"]\n'
        'test = ["data/dvd_test.txt"]\n'
        '\n'
        '[pools.de-books]\n'
        'labeled = ["data/de_books_labeled.txt"]\n'
        'unlabeled = ["data/de_books_unlabeled.txt"]\n')
    return manifest, data / "dict_de_en.txt"


SMALL = ["--min-support", "2", "--folds", "2", "--pivots", "4",
         "--c-grid", "0.1,1,10"]


class TestParserBasics:
    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "run" in capsys.readouterr().out

    def test_subcommand_help(self, capsys):
        assert main(["run", "--help"]) == 0
        out = capsys.readouterr().out
        assert "--with-baselines" in out

    def test_no_subcommand_is_usage_error(self, capsys):
        assert main([]) == 2

    def test_unknown_flag_is_usage_error(self, capsys):
        assert main(["run", "--frobnicate"]) == 2


class TestPrintConfig:
    def test_defaults(self, capsys):
        assert main(["run", "--print-config"]) == 0
        config = json.loads(capsys.readouterr().out)
        assert config["c_grid"] == [10.0 ** i for i in range(-5, 6)]
        assert len(config["c_grid"]) == 11
        assert config["n_pivots"] == 0
        assert config["n_pivots_default_cross_domain"] == 1000
        assert config["n_pivots_default_cross_lingual"] == 450
        assert config["sweep_grid"] == list(DEFAULT_SWEEP_GRID)
        assert config["sweep_grid"] == [10, 25, 50, 100, 250, 500, 1000,
                                        1500, 2000, 2500, 5000]
        assert config["sweep_cap_cross_lingual"] == 1500
        assert config["min_support"] == 10
        assert config["standardize_docs"] is True
        assert config["standardize_fit"] == "both"
        assert config["folds"] == 5
        assert config["seed"] == 0

    def test_flags_are_reflected(self, capsys):
        assert main(["run", "--print-config", "--dcf", "linear", "--pivots",
                     "250", "--no-standardize-docs", "--c-grid", "1,0.1"]) == 0
        config = json.loads(capsys.readouterr().out)
        assert config["dcf"] == "linear"
        assert config["n_pivots"] == 250
        assert config["standardize_docs"] is False
        assert config["c_grid"] == [1.0, 0.1]


class TestSyntheticRun:
    def test_happy_path_writes_reports(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["run", "--synthetic", "--seed", "42", "--with-baselines",
                     "--out", str(out)])
        captured = capsys.readouterr()
        assert code == 0
        for name in ("results.json", "results.csv", "report.md", "timings.csv"):
            assert (out / name).exists()
        assert list(out.glob("pivots_*_cosine.tsv"))
        assert "| Task |" in captured.out
        assert "**" in captured.out  # a best cell is bolded
        assert "wrote" in captured.err
        results = parse_results_json((out / "results.json").read_text())
        assert {r.method for r in results} == {"Lower", "Upper", "DCI-Cosine"}

    def test_dcf_both_runs_two_variants(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["run", "--synthetic", "--dcf", "both", "--out", str(out),
                     "--synthetic-docs", "40"])
        assert code == 0
        results = parse_results_json((out / "results.json").read_text())
        assert {r.method for r in results} == {"DCI-Linear", "DCI-Cosine"}

    def test_bad_c_grid_is_config_error(self, tmp_path, capsys):
        assert main(["run", "--synthetic", "--c-grid", "abc",
                     "--out", str(tmp_path)]) == 2
        assert "error:" in capsys.readouterr().err

    def test_without_synthetic_or_manifest(self, capsys):
        assert main(["run", "--out", "unused"]) == 2
        assert "--synthetic" in capsys.readouterr().err


class TestManifestRun:
    def test_monolingual_tasks(self, tmp_path, capsys):
        manifest, _ = make_corpus_tree(tmp_path)
        out = tmp_path / "out"
        code = main(["run", "--manifest", str(manifest),
                     "--task", "books:dvd", "--with-baselines",
                     "--out", str(out)] + SMALL)
        captured = capsys.readouterr()
        assert code == 0, captured.err
        results = parse_results_json((out / "results.json").read_text())
        assert {r.task for r in results} == {"en-books->en-dvd"}
        assert {r.method for r in results} == {"Lower", "Upper", "DCI-Cosine"}

    def test_cross_lingual_task_with_dict_flag(self, tmp_path, capsys):
        manifest, dict_path = make_corpus_tree(tmp_path)
        out = tmp_path / "out"
        code = main(["run", "--manifest", str(manifest),
                     "--task", "de-books:dvd", "--dict", str(dict_path),
                     "--out", str(out)] + SMALL)
        captured = capsys.readouterr()
        assert code == 0, captured.err
        results = parse_results_json((out / "results.json").read_text())
        assert results[0].task == "de-books->en-dvd"

    def test_cross_lingual_without_dictionary(self, tmp_path, capsys):
        manifest, _ = make_corpus_tree(tmp_path)
        code = main(["run", "--manifest", str(manifest),
                     "--task", "de-books:dvd", "--out", str(tmp_path / "o")]
                    + SMALL)
        assert code == 2
        err = capsys.readouterr().err
        assert "dictionary" in err and "--dict" in err

    def test_missing_dictionary_file(self, tmp_path, capsys):
        manifest, _ = make_corpus_tree(tmp_path)
        code = main(["run", "--manifest", str(manifest),
                     "--task", "de-books:dvd",
                     "--dict", str(tmp_path / "absent_dict.txt"),
                     "--out", str(tmp_path / "o")] + SMALL)
        assert code == 2
        assert "absent_dict.txt" in capsys.readouterr().err

    def test_missing_dataset_file(self, tmp_path, capsys):
        manifest = tmp_path / "m.toml"
        manifest.write_text('[pools.en-books]\nlabeled = ["gone.txt"]\n'
                            '[pools.en-dvd]\ntest = ["gone.txt"]\n')
        code = main(["run", "--manifest", str(manifest),
                     "--task", "books:dvd", "--out", str(tmp_path / "o")])
        assert code == 2
        assert "gone.txt" in capsys.readouterr().err

    def test_unknown_pool(self, tmp_path, capsys):
        manifest, _ = make_corpus_tree(tmp_path)
        code = main(["run", "--manifest", str(manifest),
                     "--task", "books:kitchen", "--out", str(tmp_path / "o")])
        assert code == 2
        assert "kitchen" in capsys.readouterr().err

    def test_bad_task_syntax(self, tmp_path, capsys):
        manifest, _ = make_corpus_tree(tmp_path)
        code = main(["run", "--manifest", str(manifest),
                     "--task", "books-dvd", "--out", str(tmp_path / "o")])
        assert code == 2
        assert "SOURCE:TARGET" in capsys.readouterr().err


class TestSweepCommand:
    def test_synthetic_sweep(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["sweep", "--synthetic", "--grid", "5,10",
                     "--out", str(out), "--synthetic-docs", "40"])
        captured = capsys.readouterr()
        assert code == 0, captured.err
        lines = captured.out.strip().splitlines()
        assert lines[0] == "n_pivots,mean_accuracy,total_seconds"
        assert len(lines) == 3
        assert (out / "sweep.csv").exists()
        assert (out / "results.json").exists()

    def test_empty_grid(self, tmp_path, capsys):
        assert main(["sweep", "--synthetic", "--grid", ",",
                     "--out", str(tmp_path)]) == 2

    def test_descending_grid(self, tmp_path, capsys):
        assert main(["sweep", "--synthetic", "--grid", "100,10",
                     "--out", str(tmp_path)]) == 2

    def test_cross_lingual_clamp_note(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["sweep", "--synthetic", "--cross-lingual",
                     "--grid", "5,2000", "--out", str(out),
                     "--synthetic-docs", "40"])
        captured = capsys.readouterr()
        assert code == 0, captured.err
        assert "1500" in captured.err
        lines = captured.out.strip().splitlines()
        assert len(lines) == 2  # header plus the one surviving grid point


class TestTtestCommand:
    def _write_results(self, path, accs, method="DCI-Cosine"):
        from dci.harness import RunResult
        from dci.report import render_json
        results = [RunResult(source=f"en-s{i}", target=f"en-t{i}",
                             method=method, accuracy=a, best_c=1.0,
                             n_pivots_used=10,
                             timings={"pivot_s": 0.0, "dci_s": 0.0, "svm_s": 0.0})
                   for i, a in enumerate(accs)]
        path.write_text(render_json(results))

    def test_happy_path(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        self._write_results(a, [0.80, 0.85, 0.78, 0.90, 0.83])
        self._write_results(b, [0.70, 0.80, 0.72, 0.80, 0.79], method="Lower")
        code = main(["ttest", str(a), str(b)])
        out = capsys.readouterr().out
        assert code == 0
        assert "t = " in out and "df = 4" in out
        assert "significant at alpha=0.05" in out

    def test_extra_alpha_reported(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        self._write_results(a, [0.8, 0.9, 0.7])
        self._write_results(b, [0.6, 0.8, 0.5])
        assert main(["ttest", str(a), str(b), "--alpha", "0.1"]) == 0
        assert "alpha=0.1:" in capsys.readouterr().out

    def test_identical_accuracies_degenerate(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        # dyadic accuracies so every pairwise difference is exactly 0.25
        self._write_results(a, [0.75, 0.875, 0.625])
        self._write_results(b, [0.5, 0.625, 0.375])
        assert main(["ttest", str(a), str(b)]) == 2
        assert "zero variance" in capsys.readouterr().err

    def test_mismatched_task_sets(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        self._write_results(a, [0.8, 0.9, 0.7])
        self._write_results(b, [0.7, 0.8])
        assert main(["ttest", str(a), str(b)]) == 2
        assert "only in" in capsys.readouterr().err

    def test_single_common_task(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        self._write_results(a, [0.8])
        self._write_results(b, [0.7])
        assert main(["ttest", str(a), str(b)]) == 2
        assert "at least 2" in capsys.readouterr().err

    def test_multiple_methods_need_disambiguation(self, tmp_path, capsys):
        from dci.harness import RunResult
        from dci.report import render_json
        accs = {"Lower": [0.5, 0.75, 0.625], "DCI-Cosine": [0.75, 0.875, 0.8125]}
        results = []
        for method, values in accs.items():
            for i, acc in enumerate(values):
                results.append(RunResult(
                    source=f"en-s{i}", target=f"en-t{i}", method=method,
                    accuracy=acc, best_c=1.0, n_pivots_used=5,
                    timings={}))
        a = tmp_path / "a.json"
        a.write_text(render_json(results))
        assert main(["ttest", str(a), str(a)]) == 2
        assert "--method-a" in capsys.readouterr().err

        code = main(["ttest", str(a), str(a), "--method-a", "DCI-Cosine",
                     "--method-b", "Lower"])
        assert code == 0
        out = capsys.readouterr().out
        assert "A: DCI-Cosine" in out and "B: Lower" in out

    def test_sweep_file_rejected(self, tmp_path, capsys):
        from dci.harness import SweepResult
        from dci.report import render_json
        sweeps = [SweepResult(n_pivots=10, task_accuracies={"t": 0.5},
                              mean_accuracy=0.5, total_seconds=0.1)]
        a = tmp_path / "a.json"
        a.write_text(render_json(sweeps))
        assert main(["ttest", str(a), str(a)]) == 2
        assert "sweep" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["ttest", str(tmp_path / "no.json"),
                     str(tmp_path / "no.json")]) == 2


class TestConsoleEntryPoint:
    def test_installed_script(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "dci.cli", "run", "--print-config"],
            capture_output=True, text=True, cwd=tmp_path)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["folds"] == 5
