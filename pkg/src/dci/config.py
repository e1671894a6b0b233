"""Run configuration: every knob of the pipeline with its standard default.

The defaults reproduce the reference experimental setup: an 11-point C grid
(10^-5 .. 10^5), 1000 pivots for same-language tasks and 450 for
cross-lingual ones, document standardization on, and the standard pivot-count
sweep grid capped at 1500 for cross-lingual tasks.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .corpus import DEFAULT_PIVOTS_CROSS_DOMAIN, DEFAULT_PIVOTS_CROSS_LINGUAL
from .dcf import DCF_KINDS
from .errors import ConfigError
from .pivots import DEFAULT_MIN_SUPPORT
from .svm import DEFAULT_C_GRID, DEFAULT_FOLDS

DEFAULT_SWEEP_GRID = (10, 25, 50, 100, 250, 500, 1000, 1500, 2000, 2500, 5000)
CROSS_LINGUAL_SWEEP_CAP = 1500

OUTPUT_DIR_ENV = "DCI_OUTPUT_DIR"

STANDARDIZE_FIT_CHOICES = ("both", "source-only")


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "dci-output"))


@dataclass
class RunConfig:
    manifest: Optional[Path] = None
    tasks: list = field(default_factory=list)  # (source tag, target tag) pairs
    dcf: str = "cosine"
    n_pivots: int = 0  # 0 means the per-task-kind default (1000 / 450)
    min_support: int = DEFAULT_MIN_SUPPORT
    standardize_docs: bool = True
    standardize_fit: str = "both"
    standardize_features: bool = True
    sublinear_tf: bool = False
    c_grid: tuple = DEFAULT_C_GRID
    folds: int = DEFAULT_FOLDS
    seed: int = 0
    output_dir: Path = field(default_factory=default_output_dir)

    def validate(self) -> "RunConfig":
        if self.dcf not in DCF_KINDS:
            raise ConfigError(f"unknown DCF {self.dcf!r}; choose from {DCF_KINDS}")
        if self.n_pivots < 0:
            raise ConfigError(f"n_pivots must be >= 0, got {self.n_pivots}")
        if self.min_support < 1:
            raise ConfigError(f"min_support must be >= 1, got {self.min_support}")
        if self.standardize_fit not in STANDARDIZE_FIT_CHOICES:
            raise ConfigError(
                f"standardize_fit must be one of {STANDARDIZE_FIT_CHOICES}, "
                f"got {self.standardize_fit!r}")
        if not self.c_grid:
            raise ConfigError("c_grid must not be empty")
        if any(c <= 0 for c in self.c_grid):
            raise ConfigError("c_grid values must be positive")
        if self.folds < 2:
            raise ConfigError(f"folds must be >= 2, got {self.folds}")
        return self

    def with_pivots(self, n_pivots: int) -> "RunConfig":
        return replace(self, n_pivots=n_pivots)

    def as_dict(self) -> dict:
        """Plain-value view used by --print-config and the JSON report."""
        return {
            "manifest": str(self.manifest) if self.manifest else None,
            "tasks": [f"{s}:{t}" for s, t in self.tasks],
            "dcf": self.dcf,
            "n_pivots": self.n_pivots,
            "n_pivots_default_cross_domain": DEFAULT_PIVOTS_CROSS_DOMAIN,
            "n_pivots_default_cross_lingual": DEFAULT_PIVOTS_CROSS_LINGUAL,
            "min_support": self.min_support,
            "standardize_docs": self.standardize_docs,
            "standardize_fit": self.standardize_fit,
            "standardize_features": self.standardize_features,
            "sublinear_tf": self.sublinear_tf,
            "c_grid": list(self.c_grid),
            "folds": self.folds,
            "seed": self.seed,
            "sweep_grid": list(DEFAULT_SWEEP_GRID),
            "sweep_cap_cross_lingual": CROSS_LINGUAL_SWEEP_CAP,
            "output_dir": str(self.output_dir),
        }
