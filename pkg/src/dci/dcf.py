"""Distributional correspondence functions and the term-by-pivot matrix.

A DCF scores how closely a term's document profile tracks a pivot's profile
within one domain, from co-occurrence counts alone.  The scalar functions are
the reference semantics; ``build_correspondence_matrix`` computes the same
values for all (term, pivot) pairs at once through a sparse co-occurrence
product, then optionally standardizes each pivot column and finally scales
every term row to unit L2 norm.
"""

from __future__ import annotations

import math

import numpy as np

from .vectorize import ProfileIndex

DCF_KINDS = ("linear", "cosine")

# columns are standardized over rows whose term actually occurs; a spread this
# small means the column is constant there, so it is left unscaled
_STD_FLOOR = 1e-12


def _check_term(index: ProfileIndex, term: int, role: str) -> None:
    if not 0 <= term < index.n_terms:
        raise ValueError(f"{role} id {term} outside indexed vocabulary of size {index.n_terms}")


def presence_overlap(index: ProfileIndex, f: int, p: int) -> int:
    """Number of documents containing both terms."""
    _check_term(index, f, "term")
    _check_term(index, p, "pivot")
    return int(np.intersect1d(index.postings[f], index.postings[p],
                              assume_unique=True).size)


def dcf_linear(index: ProfileIndex, f: int, p: int) -> float:
    """P(f|p) - P(f|not p); 0.0 when the pivot occurs in no or in all documents."""
    _check_term(index, f, "term")
    _check_term(index, p, "pivot")
    n = index.n_docs
    df_p = index.df(p)
    if df_p == 0 or df_p == n:
        return 0.0
    both = presence_overlap(index, f, p)
    return both / df_p - (index.df(f) - both) / (n - df_p)


def dcf_cosine(index: ProfileIndex, f: int, p: int) -> float:
    """Angular overlap of the binary profiles minus its expectation under
    independence; 0.0 when either term never occurs."""
    _check_term(index, f, "term")
    _check_term(index, p, "pivot")
    n = index.n_docs
    df_f = index.df(f)
    df_p = index.df(p)
    if df_f == 0 or df_p == 0:
        return 0.0
    both = presence_overlap(index, f, p)
    return both / math.sqrt(df_f * df_p) - math.sqrt((df_f / n) * (df_p / n))


SCALAR_DCFS = {"linear": dcf_linear, "cosine": dcf_cosine}


def build_correspondence_matrix(index: ProfileIndex, pivot_ids,
                                kind: str = "cosine",
                                standardize: bool = True) -> np.ndarray:
    """Dense (n_terms, n_pivots) float64 matrix of DCF values for one domain.

    Rows for terms absent from the pool are exactly zero and are excluded from
    the per-column standardization statistics (which are skipped entirely when
    fewer than two occurring terms exist).  Every row is L2-normalized last,
    so non-zero rows are unit vectors in pivot space.
    """
    if kind not in SCALAR_DCFS:
        raise ValueError(f"unknown DCF kind {kind!r}; expected one of {DCF_KINDS}")
    pivot_ids = np.asarray(pivot_ids, dtype=np.int64)
    if pivot_ids.ndim != 1:
        raise ValueError("pivot_ids must be a flat sequence of term ids")
    if pivot_ids.size and (pivot_ids.min() < 0 or pivot_ids.max() >= index.n_terms):
        raise ValueError("pivot id outside indexed vocabulary")

    n = index.n_docs
    presence = index.presence_matrix()
    co = np.asarray((presence.T @ presence[:, pivot_ids]).todense(), dtype=np.float64)
    df = index.df_array().astype(np.float64)
    df_f = df[:, None]
    df_p = df[pivot_ids][None, :]

    with np.errstate(divide="ignore", invalid="ignore"):
        if kind == "linear":
            eta = co / df_p - (df_f - co) / (n - df_p)
            eta[:, (df_p[0] == 0) | (df_p[0] == n)] = 0.0
        else:
            eta = co / np.sqrt(df_f * df_p) - np.sqrt((df_f / n) * (df_p / n))
            eta[df[:, None] * df[pivot_ids][None, :] == 0] = 0.0

    active = df > 0
    if standardize and int(active.sum()) >= 2:
        sub = eta[active]
        mean = sub.mean(axis=0)
        std = sub.std(axis=0)
        std = np.where(std < _STD_FLOOR, 1.0, std)
        eta[active] = (sub - mean) / std

    norms = np.linalg.norm(eta, axis=1)
    nz = norms > 0.0
    eta[nz] /= norms[nz, None]
    return eta
