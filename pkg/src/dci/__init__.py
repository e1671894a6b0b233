"""Cross-domain / cross-lingual text classification via pivot projections.

The pipeline: pick label-predictive pivot terms frequent on both sides of a
transfer task, score every term's distributional correspondence to each pivot
within its own domain, project tf-idf documents into the resulting shared
pivot space, and train a grid-searched linear SVM on the projected source
data.  Lower/Upper baselines, per-phase timing, pivot-count sweeps and paired
significance tests round out the experimental harness; the ``dci`` command
exposes it all.
"""

from ._version import __version__
from .config import (CROSS_LINGUAL_SWEEP_CAP, DEFAULT_SWEEP_GRID, RunConfig,
                     default_output_dir)
from .corpus import (NEGATIVE, POSITIVE, Document, DomainPool, TranslationOracle,
                     TransferTask, Vocabulary, build_task, load_dictionary,
                     load_processed_file, translate_document)
from .dcf import build_correspondence_matrix, dcf_cosine, dcf_linear
from .errors import ConfigError, DciError, DegenerateInputError, ParseError
from .harness import (RunResult, SweepResult, TaskContext, run_batch, run_dci,
                      run_lower, run_upper, sweep_pivots, synthetic_batch)
from .manifest import CorpusStore, Manifest, load_manifest
from .pivots import PivotSet, mutual_information, rank_pivot_candidates, select_pivots
from .projection import (ProjectedMatrix, Standardizer, project, standardize_apply,
                         standardize_fit)
from .report import (parse_results_json, render_csv, render_json, render_markdown,
                     write_run_reports, write_sweep_reports)
from .stats import PairedTTestResult, accuracy, paired_ttest, t_cdf
from .svm import (DEFAULT_C_GRID, GridSearchResult, SvmModel, grid_search_c,
                  predict, train_svm)
from .synth import SyntheticSpec, make_synthetic_task
from .vectorize import (ProfileIndex, WeightedDoc, build_profile_index,
                        l2_normalize_rows, tfidf_transform)

__all__ = [
    "__version__",
    "CROSS_LINGUAL_SWEEP_CAP", "DEFAULT_SWEEP_GRID", "RunConfig", "default_output_dir",
    "NEGATIVE", "POSITIVE", "Document", "DomainPool", "TranslationOracle",
    "TransferTask", "Vocabulary", "build_task", "load_dictionary",
    "load_processed_file", "translate_document",
    "build_correspondence_matrix", "dcf_cosine", "dcf_linear",
    "ConfigError", "DciError", "DegenerateInputError", "ParseError",
    "RunResult", "SweepResult", "TaskContext", "run_batch", "run_dci",
    "run_lower", "run_upper", "sweep_pivots", "synthetic_batch",
    "CorpusStore", "Manifest", "load_manifest",
    "PivotSet", "mutual_information", "rank_pivot_candidates", "select_pivots",
    "ProjectedMatrix", "Standardizer", "project", "standardize_apply",
    "standardize_fit",
    "parse_results_json", "render_csv", "render_json", "render_markdown",
    "write_run_reports", "write_sweep_reports",
    "PairedTTestResult", "accuracy", "paired_ttest", "t_cdf",
    "DEFAULT_C_GRID", "GridSearchResult", "SvmModel", "grid_search_c",
    "predict", "train_svm",
    "SyntheticSpec", "make_synthetic_task",
    "ProfileIndex", "WeightedDoc", "build_profile_index", "l2_normalize_rows",
    "tfidf_transform",
]
