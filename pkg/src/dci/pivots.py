"""Pivot selection: label-predictive terms frequent on both sides of a task.

Candidates must clear a document-frequency floor on the source side and, after
dictionary translation in the cross-lingual case, on the target side too.
They are ranked by mutual information with the sentiment label on the source
labeled documents; ties break toward higher source df, then lower term id, so
that runs are bit-reproducible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .corpus import POSITIVE, DomainPool, TransferTask
from .errors import ConfigError
from .vectorize import ProfileIndex

logger = logging.getLogger(__name__)

DEFAULT_MIN_SUPPORT = 10


@dataclass
class PivotSet:
    """Ordered pivot pairs (source term id, target term id) with their MI scores."""

    pairs: list[tuple[int, int]]
    scores: np.ndarray
    requested: int

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def shortfall(self) -> int:
        return self.requested - len(self.pairs)

    @property
    def source_ids(self) -> np.ndarray:
        return np.array([p[0] for p in self.pairs], dtype=np.int64)

    @property
    def target_ids(self) -> np.ndarray:
        return np.array([p[1] for p in self.pairs], dtype=np.int64)


def _mi_from_counts(n, n_pos, n1, n11):
    """Mutual information (bits) of binary presence vs binary label.

    Accepts scalars or numpy arrays for ``n1`` / ``n11``; zero cells contribute
    zero by the 0*log(0) := 0 convention.
    """
    n1 = np.asarray(n1, dtype=np.float64)
    n11 = np.asarray(n11, dtype=np.float64)
    n = float(n)
    n_neg = n - n_pos
    cells = [
        (n11, n1, n_pos),                    # present, positive
        (n1 - n11, n1, n_neg),               # present, negative
        (n_pos - n11, n - n1, n_pos),        # absent, positive
        (n_neg - (n1 - n11), n - n1, n_neg), # absent, negative
    ]
    mi = np.zeros_like(n1)
    for joint, row, col in cells:
        with np.errstate(divide="ignore", invalid="ignore"):
            term = (joint / n) * np.log2(joint * n / (row * col))
        mi += np.where(joint > 0, term, 0.0)
    # clamp the tiny negative round-off a zero-MI table can produce
    return np.maximum(mi, 0.0)


def _label_presence_counts(pool: DomainPool, n_terms: int):
    """Per-term presence counts over the labeled documents, total and positive-only."""
    n1 = np.zeros(n_terms, dtype=np.int64)
    n11 = np.zeros(n_terms, dtype=np.int64)
    n_pos = 0
    for doc in pool.labeled:
        positive = doc.label == POSITIVE
        if positive:
            n_pos += 1
        for tid in doc.terms:
            if tid < n_terms:
                n1[tid] += 1
                if positive:
                    n11[tid] += 1
    return len(pool.labeled), n_pos, n1, n11


def mutual_information(term: int, pool: DomainPool) -> float:
    """MI (bits) between a term's presence and the label on the pool's labeled docs.

    Raises ValueError for a term id outside the pool's vocabulary and
    ConfigError when the pool has no labeled documents.
    """
    if not 0 <= term < len(pool.vocabulary):
        raise ValueError(f"term id {term} outside vocabulary of size {len(pool.vocabulary)}")
    if not pool.labeled:
        raise ConfigError(f"{pool.tag}: mutual information needs labeled documents")
    n = len(pool.labeled)
    n_pos = sum(1 for d in pool.labeled if d.label == POSITIVE)
    n1 = sum(1 for d in pool.labeled if term in d.terms)
    n11 = sum(1 for d in pool.labeled if term in d.terms and d.label == POSITIVE)
    return float(_mi_from_counts(n, n_pos, n1, n11))


def rank_pivot_candidates(task: TransferTask, source_index: ProfileIndex,
                          target_index: ProfileIndex,
                          min_support: int = DEFAULT_MIN_SUPPORT) -> PivotSet:
    """Rank every admissible pivot pair for the task, best first.

    Candidates are source terms with df >= ``min_support`` in the source index
    whose counterpart (the identical term, or its dictionary translation) has
    df >= ``min_support`` in the target index; duplicate target terms keep only
    their best-ranked source.  ``select_pivots`` is a prefix of this ranking,
    which is what lets pivot-count sweeps share one ranking run.
    """
    if task.cross_lingual and task.dictionary is None:
        raise ConfigError(f"task {task.tag}: cross-lingual pivot selection needs a dictionary")
    if not task.source.labeled:
        raise ConfigError(f"task {task.tag}: source pool has no labeled documents")

    n_src_terms = source_index.n_terms
    df_src = source_index.df_array()
    supported = np.flatnonzero(df_src >= min_support)

    # map each supported source term to its target-side term id (or -1)
    tgt_ids = np.full(n_src_terms, -1, dtype=np.int64)
    if task.cross_lingual:
        src_vocab = task.source.vocabulary
        tgt_vocab = task.target.vocabulary
        for f in supported:
            translated = task.dictionary.translate(src_vocab.term(int(f)))
            if translated is None:
                continue
            tid = tgt_vocab.id_of(translated)
            if tid is not None and target_index.df(tid) >= min_support:
                tgt_ids[f] = tid
    else:
        for f in supported:
            if target_index.df(int(f)) >= min_support:
                tgt_ids[f] = f

    candidates = supported[tgt_ids[supported] >= 0]
    if candidates.size == 0:
        raise ConfigError(
            f"task {task.tag}: no pivot candidates at min_support={min_support}; "
            "lower the support threshold")

    n, n_pos, n1, n11 = _label_presence_counts(task.source, n_src_terms)
    mi = _mi_from_counts(n, n_pos, n1[candidates], n11[candidates])

    order = np.lexsort((candidates, -df_src[candidates], -mi))
    pairs: list[tuple[int, int]] = []
    scores: list[float] = []
    used_targets: set[int] = set()
    for k in order:
        f = int(candidates[k])
        t = int(tgt_ids[f])
        if t in used_targets:
            continue
        used_targets.add(t)
        pairs.append((f, t))
        scores.append(float(mi[k]))

    return PivotSet(pairs=pairs, scores=np.asarray(scores, dtype=np.float64),
                    requested=len(pairs))


def truncate_pivots(ranking: PivotSet, n_pivots: int) -> PivotSet:
    """The first ``n_pivots`` pairs of a ranking, with the shortfall recorded."""
    return PivotSet(pairs=ranking.pairs[:n_pivots],
                    scores=ranking.scores[:n_pivots],
                    requested=n_pivots)


def select_pivots(task: TransferTask, source_index: ProfileIndex,
                  target_index: ProfileIndex,
                  min_support: int = DEFAULT_MIN_SUPPORT) -> PivotSet:
    """Select the task's top ``task.n_pivots`` pivot pairs.

    If fewer candidates exist, all are returned and the shortfall recorded on
    the result.
    """
    ranking = rank_pivot_candidates(task, source_index, target_index, min_support)
    result = truncate_pivots(ranking, task.n_pivots)
    if result.shortfall > 0:
        logger.info("task %s: only %d of %d requested pivots available",
                    task.tag, len(result), task.n_pivots)
    return result


def dump_pivots(pivot_set: PivotSet, task: TransferTask, path) -> None:
    """Write pivots as ``rank<TAB>source_term<TAB>target_term<TAB>mi_score`` lines."""
    src_vocab = task.source.vocabulary
    tgt_vocab = task.target.vocabulary
    with open(path, "w", encoding="utf-8") as fh:
        for rank, ((f, t), score) in enumerate(zip(pivot_set.pairs, pivot_set.scores), start=1):
            fh.write(f"{rank}\t{src_vocab.term(f)}\t{tgt_vocab.term(t)}\t{float(score)!r}\n")
