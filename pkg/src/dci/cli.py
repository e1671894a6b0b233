"""Command-line front end: single runs, pivot sweeps, and significance tests.

Exit codes: 0 success, 1 internal failure, 2 usage or configuration error
(bad flags, malformed files, missing datasets, degenerate statistics).
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path

from .config import (DEFAULT_SWEEP_GRID, CROSS_LINGUAL_SWEEP_CAP, RunConfig,
                     STANDARDIZE_FIT_CHOICES, default_output_dir)
from .corpus import build_task, load_dictionary
from .errors import ConfigError, DciError
from .harness import run_batch, sweep_pivots
from .manifest import CorpusStore, load_manifest
from .pivots import DEFAULT_MIN_SUPPORT
from .report import (parse_results_json, render_markdown, render_sweep_csv,
                     write_run_reports, write_sweep_reports)
from .stats import ALPHAS, paired_ttest
from .svm import DEFAULT_FOLDS
from .synth import make_synthetic_task


def _add_common_arguments(p: argparse.ArgumentParser, dcf_choices) -> None:
    p.add_argument("--manifest", type=Path, default=None,
                   help="dataset manifest (TOML) describing pools and dictionaries")
    p.add_argument("--task", action="append", default=[], metavar="SRC:TGT",
                   help="transfer task as source:target pool tags; repeatable; "
                        "tags are '<language>-<domain>' or bare '<domain>' in the "
                        "manifest's default language")
    p.add_argument("--dict", type=Path, default=None, dest="dict_path",
                   help="bilingual dictionary file, overriding the manifest entry")
    p.add_argument("--dcf", choices=dcf_choices, default="cosine",
                   help="distributional correspondence function (default: cosine)")
    p.add_argument("--pivots", type=int, default=0,
                   help="number of pivots; 0 selects 1000 (same-language) or "
                        "450 (cross-lingual)")
    p.add_argument("--min-support", type=int, default=DEFAULT_MIN_SUPPORT,
                   help="minimum document frequency for pivot candidates on "
                        "both sides (default: %(default)s)")
    p.add_argument("--no-standardize-docs", dest="standardize_docs",
                   action="store_false",
                   help="skip z-scoring of projected document vectors")
    p.add_argument("--standardize-fit", choices=STANDARDIZE_FIT_CHOICES,
                   default="both",
                   help="population the document standardizer is fitted on "
                        "(default: %(default)s)")
    p.add_argument("--no-standardize-features", dest="standardize_features",
                   action="store_false",
                   help="skip per-pivot standardization of correspondence matrices")
    p.add_argument("--sublinear-tf", action="store_true",
                   help="use 1+ln(tf) instead of raw term counts")
    p.add_argument("--c-grid", default=None, metavar="C1,C2,...",
                   help="comma-separated SVM C values "
                        "(default: 1e-5..1e5, decade steps)")
    p.add_argument("--folds", type=int, default=DEFAULT_FOLDS,
                   help="cross-validation folds for the C grid search "
                        "(default: %(default)s)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for fold splits, solver permutations and "
                        "synthetic data (default: %(default)s)")
    p.add_argument("--out", type=Path, default=None,
                   help="output directory (default: $DCI_OUTPUT_DIR or ./dci-output)")
    p.add_argument("--synthetic", action="store_true",
                   help="run on a generated two-domain task instead of a manifest")
    p.add_argument("--synthetic-docs", type=int, default=60, metavar="N",
                   help="documents per split for --synthetic (default: %(default)s)")
    p.add_argument("--cross-lingual", action="store_true",
                   help="make the --synthetic task cross-lingual "
                        "(distinct target vocabulary plus dictionary)")
    p.add_argument("--print-config", action="store_true",
                   help="print the resolved configuration as JSON and exit")


def _parse_c_grid(text):
    values = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            values.append(float(piece))
        except ValueError:
            raise ConfigError(f"bad C value {piece!r} in --c-grid") from None
    if not values:
        raise ConfigError("--c-grid is empty")
    return tuple(values)


def _config_from_args(args) -> RunConfig:
    config = RunConfig(
        manifest=args.manifest,
        tasks=[_split_task(t) for t in args.task],
        dcf="cosine" if args.dcf == "both" else args.dcf,
        n_pivots=args.pivots,
        min_support=args.min_support,
        standardize_docs=args.standardize_docs,
        standardize_fit=args.standardize_fit,
        standardize_features=args.standardize_features,
        sublinear_tf=args.sublinear_tf,
        folds=args.folds,
        seed=args.seed,
        output_dir=args.out if args.out is not None else default_output_dir(),
    )
    if args.c_grid is not None:
        config = RunConfig(**{**config.__dict__, "c_grid": _parse_c_grid(args.c_grid)})
    return config.validate()


def _split_task(text: str):
    parts = text.split(":")
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise ConfigError(f"bad --task {text!r}; expected SOURCE:TARGET pool tags")
    return parts[0], parts[1]


def _build_tasks(args, config: RunConfig):
    if args.synthetic:
        return [make_synthetic_task(config.seed, args.synthetic_docs,
                                    cross_lingual=args.cross_lingual)]
    if config.manifest is None or not config.tasks:
        raise ConfigError(
            "either --synthetic or both --manifest and at least one --task are required")
    store = CorpusStore(load_manifest(config.manifest))
    tasks = []
    for src_tag, tgt_tag in config.tasks:
        source = store.pool(src_tag)
        target = store.pool(tgt_tag)
        if args.dict_path is not None and source.language != target.language:
            store.set_dictionary(source.language, target.language, args.dict_path)
        dictionary = store.dictionary(source.language, target.language)
        tasks.append(build_task(source, target, dictionary=dictionary))
    return tasks


def cmd_run(args) -> int:
    config = _config_from_args(args)
    if args.print_config:
        print(json.dumps(config.as_dict(), indent=2))
        return 0
    tasks = _build_tasks(args, config)
    dcf_kinds = ("linear", "cosine") if args.dcf == "both" else (args.dcf,)
    results = run_batch(tasks, config, dcf_kinds=dcf_kinds,
                        with_baselines=args.with_baselines,
                        outdir=config.output_dir)
    paths = write_run_reports(results, config, config.output_dir)
    print(render_markdown(results, config))
    for path in paths.values():
        print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    config = _config_from_args(args)
    if args.print_config:
        print(json.dumps(config.as_dict(), indent=2))
        return 0
    tasks = _build_tasks(args, config)
    if args.grid is None:
        grid = list(DEFAULT_SWEEP_GRID)
    else:
        try:
            grid = [int(piece) for piece in args.grid.split(",") if piece.strip()]
        except ValueError:
            raise ConfigError(f"bad --grid {args.grid!r}; expected comma-separated "
                              "integers") from None
        if not grid:
            raise ConfigError("--grid is empty")
    if any(t.cross_lingual for t in tasks) and any(g > CROSS_LINGUAL_SWEEP_CAP
                                                   for g in grid):
        print(f"note: cross-lingual sweep grid clamped at "
              f"{CROSS_LINGUAL_SWEEP_CAP} pivots", file=sys.stderr)
    sweeps = sweep_pivots(tasks, args.dcf, grid, config)
    paths = write_sweep_reports(sweeps, config, config.output_dir)
    print(render_sweep_csv(sweeps), end="")
    for path in paths.values():
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _accuracies_by_task(path: Path, method_flag, flag_name: str):
    results = parse_results_json(path.read_text(encoding="utf-8"))
    if not results or not hasattr(results[0], "method"):
        raise ConfigError(f"{path}: not a run-results file (is it a sweep?)")
    methods = []
    for r in results:
        if r.method not in methods:
            methods.append(r.method)
    if method_flag is not None:
        if method_flag not in methods:
            raise ConfigError(f"{path}: no results for method {method_flag!r}; "
                              f"available: {', '.join(methods)}")
        method = method_flag
    elif len(methods) == 1:
        method = methods[0]
    else:
        raise ConfigError(f"{path}: multiple methods present "
                          f"({', '.join(methods)}); disambiguate with {flag_name}")
    table = {}
    for r in results:
        if r.method != method:
            continue
        if r.task in table:
            raise ConfigError(f"{path}: duplicate result for task {r.task}")
        table[r.task] = r.accuracy
    return method, table


def cmd_ttest(args) -> int:
    method_a, table_a = _accuracies_by_task(args.results_a, args.method_a,
                                            "--method-a")
    method_b, table_b = _accuracies_by_task(args.results_b, args.method_b,
                                            "--method-b")
    only_a = sorted(set(table_a) - set(table_b))
    only_b = sorted(set(table_b) - set(table_a))
    if only_a or only_b:
        detail = []
        if only_a:
            detail.append(f"only in {args.results_a}: {', '.join(only_a)}")
        if only_b:
            detail.append(f"only in {args.results_b}: {', '.join(only_b)}")
        raise ConfigError("task sets differ; " + "; ".join(detail))
    tasks = sorted(table_a)
    if len(tasks) < 2:
        raise ConfigError(
            f"need at least 2 common tasks to pair, found {len(tasks)}")
    result = paired_ttest([table_a[t] for t in tasks], [table_b[t] for t in tasks])
    levels = sorted(set(ALPHAS) | ({args.alpha} if args.alpha else set()),
                    reverse=True)
    print(f"paired two-tailed t-test over {len(tasks)} tasks")
    print(f"  A: {method_a} ({args.results_a})")
    print(f"  B: {method_b} ({args.results_b})")
    print(f"  t = {result.t_statistic:.6f}  df = {result.degrees_of_freedom}  "
          f"p = {result.p_value:.6g}")
    for alpha in levels:
        verdict = "yes" if result.p_value < alpha else "no"
        print(f"  significant at alpha={alpha:g}: {verdict}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dci",
        description="Cross-domain and cross-lingual text classification through "
                    "distributional correspondence pivot projections.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser(
        "run", help="run transfer tasks and write result files")
    _add_common_arguments(p_run, dcf_choices=("linear", "cosine", "both"))
    p_run.add_argument("--with-baselines", action="store_true",
                       help="also run the Lower and Upper baselines")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser(
        "sweep", help="run the pipeline across a grid of pivot counts")
    _add_common_arguments(p_sweep, dcf_choices=("linear", "cosine"))
    p_sweep.add_argument("--grid", default=None, metavar="N1,N2,...",
                         help="ascending pivot counts "
                              f"(default: {','.join(map(str, DEFAULT_SWEEP_GRID))})")
    p_sweep.set_defaults(func=cmd_sweep)

    p_ttest = sub.add_parser(
        "ttest", help="paired two-tailed t-test between two results.json files")
    p_ttest.add_argument("results_a", type=Path, help="first results.json")
    p_ttest.add_argument("results_b", type=Path, help="second results.json")
    p_ttest.add_argument("--method-a", default=None,
                         help="method to read from the first file when several "
                              "are present")
    p_ttest.add_argument("--method-b", default=None,
                         help="method to read from the second file")
    p_ttest.add_argument("--alpha", type=float, default=None,
                         help="additional significance level to report")
    p_ttest.set_defaults(func=cmd_ttest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DciError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
