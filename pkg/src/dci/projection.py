"""Projection of weighted documents into pivot space, plus z-scoring helpers.

Each projected row is the weight-scaled sum of the correspondence rows of the
document's terms, then L2-normalized.  Before composing, weights are divided
by the document's largest absolute weight: the true quotients are unchanged
by any common factor, and IEEE division rounds equal true quotients to equal
floats, so the final unit vector is bit-identical for d and alpha*d whenever
the scaled weights are themselves exact.  This gives scale invariance as an
exact equality rather than a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .vectorize import WeightedDoc, docs_to_csr


@dataclass
class ProjectedMatrix:
    """Dense n_docs x n_pivots representation; ``side`` is "source" or "target"."""

    rows: np.ndarray
    side: str


@dataclass
class Standardizer:
    """Per-dimension mean and (guarded, strictly positive) standard deviation."""

    mean: np.ndarray
    std: np.ndarray


def project(docs: list[WeightedDoc], matrix: np.ndarray,
            side: str = "source") -> ProjectedMatrix:
    """Project documents through a (n_terms, n_pivots) correspondence matrix.

    Terms whose matrix row is zero (never seen in the domain) contribute
    nothing; a term id outside the matrix's vocabulary is a hard error.
    Empty documents yield zero rows, which survive the L2 step untouched.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2:
        raise ValueError("correspondence matrix must be 2-dimensional")
    n_terms = matrix.shape[0]
    canon = []
    for doc in docs:
        entries = doc.entries
        if entries:
            top = max(entries, key=lambda t: abs(entries[t]))
            if entries[top] == 0.0:
                canon.append(WeightedDoc(entries={}))
                continue
            scale = abs(entries[top])
            canon.append(WeightedDoc(entries={t: w / scale for t, w in entries.items()}))
        else:
            canon.append(WeightedDoc(entries={}))
    try:
        x = docs_to_csr(canon, n_terms)
    except ValueError as exc:
        raise ValueError(f"document vocabulary does not match matrix: {exc}") from exc
    rows = x @ matrix
    norms = np.linalg.norm(rows, axis=1)
    nz = norms > 0.0
    rows[nz] /= norms[nz, None]
    return ProjectedMatrix(rows=rows, side=side)


def standardize_fit(rows: np.ndarray) -> Standardizer:
    """Fit per-dimension mean and population std; near-constant dims get std 1.

    Raises ValueError for fewer than two rows, where a spread is undefined.
    """
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[0] < 2:
        raise ValueError("standardization needs at least 2 rows")
    mean = rows.mean(axis=0)
    std = rows.std(axis=0)
    std = np.where(std < 1e-12, 1.0, std)
    return Standardizer(mean=mean, std=std)


def standardize_apply(rows: np.ndarray, standardizer: Standardizer) -> np.ndarray:
    """Z-score rows with a fitted Standardizer; shapes must agree."""
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != standardizer.mean.shape[0]:
        raise ValueError(
            f"row dimension {rows.shape} does not match standardizer of size "
            f"{standardizer.mean.shape[0]}")
    return (rows - standardizer.mean) / standardizer.std
