"""Binary occurrence profiles and tf-idf weighting over a domain pool.

The profile index is built over ``labeled + unlabeled`` documents only; test
documents never contribute distributional evidence.  Presence is binary
(count >= 1).  The tf-idf variant mirrors the smoothed formulation
``idf(f) = ln((1 + n) / (1 + df(f))) + 1`` so that unseen terms receive the
maximal idf instead of dividing by zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .corpus import Document, DomainPool
from .errors import ConfigError


@dataclass
class WeightedDoc:
    """Sparse map from term id to a finite non-negative tf-idf weight."""

    entries: dict[int, float]


class ProfileIndex:
    """Inverted index of binary term presence over a fixed document pool."""

    def __init__(self, n_docs: int, postings: list[np.ndarray]):
        self.n_docs = n_docs
        self.postings = postings
        self._df = np.array([len(p) for p in postings], dtype=np.int64)
        self._presence = None

    @property
    def n_terms(self) -> int:
        return len(self.postings)

    def df(self, term: int) -> int:
        """Document frequency of a term; 0 for ids outside the indexed range."""
        if 0 <= term < len(self._df):
            return int(self._df[term])
        return 0

    def df_array(self, size: int | None = None) -> np.ndarray:
        """Document frequencies as an int64 vector, zero-padded to ``size``."""
        if size is None or size == len(self._df):
            return self._df
        if size < len(self._df):
            raise ValueError(f"size {size} smaller than indexed vocabulary {len(self._df)}")
        out = np.zeros(size, dtype=np.int64)
        out[:len(self._df)] = self._df
        return out

    def presence_matrix(self) -> sp.csr_matrix:
        """Binary docs x terms CSR matrix (built lazily, cached)."""
        if self._presence is None:
            indptr = np.zeros(self.n_terms + 1, dtype=np.int64)
            indptr[1:] = np.cumsum(self._df)
            indices = (np.concatenate(self.postings) if self.n_terms else
                       np.empty(0, dtype=np.int32))
            data = np.ones(len(indices), dtype=np.float64)
            csc = sp.csc_matrix((data, indices, indptr), shape=(self.n_docs, self.n_terms))
            self._presence = csc.tocsr()
        return self._presence


def index_documents(docs: list[Document], n_terms: int) -> ProfileIndex:
    """Build a presence index over an explicit document list."""
    lists: list[list[int]] = [[] for _ in range(n_terms)]
    for doc_idx, doc in enumerate(docs):
        for tid in doc.terms:
            lists[tid].append(doc_idx)
    postings = [np.array(sorted(set(ids)), dtype=np.int32) for ids in lists]
    return ProfileIndex(n_docs=len(docs), postings=postings)


def build_profile_index(pool: DomainPool) -> ProfileIndex:
    """Index the pool's estimation documents (labeled then unlabeled, test excluded)."""
    docs = pool.labeled + pool.unlabeled
    if not docs:
        raise ConfigError(f"{pool.tag}: cannot build profiles over an empty pool")
    return index_documents(docs, len(pool.vocabulary))


def smoothed_idf(df: np.ndarray, n_docs: int) -> np.ndarray:
    return np.log((1.0 + n_docs) / (1.0 + df)) + 1.0


def tfidf_transform(docs: list[Document], index: ProfileIndex,
                    sublinear_tf: bool = False) -> list[WeightedDoc]:
    """Weight documents as tf * idf against the given profile index.

    tf is the raw count (or ``1 + ln(count)`` when ``sublinear_tf``); terms
    unknown to the index get the maximal smoothed idf.  No per-document
    normalization happens here.
    """
    n = index.n_docs
    idf_known = smoothed_idf(index.df_array(), n)
    idf_unseen = float(np.log(1.0 + n) + 1.0)
    out = []
    for doc in docs:
        entries = {}
        for tid, count in doc.terms.items():
            tf = 1.0 + np.log(count) if sublinear_tf else float(count)
            idf = idf_known[tid] if tid < index.n_terms else idf_unseen
            entries[tid] = tf * idf
        out.append(WeightedDoc(entries=entries))
    return out


def docs_to_csr(docs: list[WeightedDoc], n_features: int) -> sp.csr_matrix:
    """Stack weighted documents into a CSR matrix with sorted column indices."""
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for doc in docs:
        for tid in sorted(doc.entries):
            if tid >= n_features:
                raise ValueError(f"term id {tid} outside feature space of size {n_features}")
            indices.append(tid)
            data.append(doc.entries[tid])
        indptr.append(len(indices))
    return sp.csr_matrix(
        (np.asarray(data, dtype=np.float64),
         np.asarray(indices, dtype=np.int32),
         np.asarray(indptr, dtype=np.int64)),
        shape=(len(docs), n_features))


def l2_normalize_rows(x: sp.csr_matrix) -> sp.csr_matrix:
    """Return a copy of ``x`` with every non-zero row scaled to unit L2 norm."""
    x = x.copy()
    norms = np.sqrt(np.asarray(x.multiply(x).sum(axis=1)).ravel())
    scale = np.where(norms > 0.0, 1.0 / np.where(norms > 0.0, norms, 1.0), 0.0)
    x = sp.diags(scale) @ x
    return x.tocsr()
