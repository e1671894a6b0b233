"""L2-regularized squared-hinge linear SVM trained by dual coordinate descent.

The primal problem  min_w 1/2 ||w||^2 + C sum_i max(0, 1 - y_i (w.x_i + b))^2
is solved in the dual:  min_a 1/2 a'(Q + D)a - e'a  subject to a >= 0, with
D_ii = 1/(2C) and the bias absorbed as a constant-1 feature appended to every
row.  One coordinate update is closed-form; coordinates are visited in a
seeded random permutation each epoch and the run stops when the largest
projected-gradient violation in an epoch drops below ``tol``.

The per-epoch inner loop is jit-compiled when numba is importable and falls
back to the identical pure-Python code otherwise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import ConfigError, DegenerateInputError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-4
DEFAULT_MAX_ITER = 1000
DEFAULT_C_GRID = tuple(10.0 ** i for i in range(-5, 6))
DEFAULT_FOLDS = 5

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn
        return wrap


@dataclass
class SvmModel:
    weights: np.ndarray
    bias: float
    c: float
    # solver diagnostics, not part of the decision function
    n_epochs: int = 0
    objective_trace: list = field(default_factory=list)


@dataclass
class GridSearchResult:
    best_c: float
    cv_accuracy: dict
    folds: int


@njit(cache=True)
def _epoch(indptr, indices, data, y, qd, inv2c, w, alpha, order):
    """One pass of coordinate descent; returns the epoch's max |PG|."""
    nb = w.size - 1  # index of the virtual bias feature
    max_pg = 0.0
    for k in range(order.size):
        i = order[k]
        start = indptr[i]
        end = indptr[i + 1]
        dot = w[nb]
        for j in range(start, end):
            dot += w[indices[j]] * data[j]
        g = y[i] * dot - 1.0 + alpha[i] * inv2c
        if alpha[i] == 0.0:
            pg = g if g < 0.0 else 0.0
        else:
            pg = g
        apg = -pg if pg < 0.0 else pg
        if apg > max_pg:
            max_pg = apg
        if pg != 0.0:
            new_a = alpha[i] - g / qd[i]
            if new_a < 0.0:
                new_a = 0.0
            step = (new_a - alpha[i]) * y[i]
            if step != 0.0:
                for j in range(start, end):
                    w[indices[j]] += step * data[j]
                w[nb] += step
            alpha[i] = new_a
    return max_pg


def _as_csr(x) -> sp.csr_matrix:
    if sp.issparse(x):
        x = x.tocsr()
    else:
        x = sp.csr_matrix(np.asarray(x, dtype=np.float64))
    if not np.all(np.isfinite(x.data)):
        raise ValueError("feature matrix contains non-finite values")
    return x


def _dual_objective(alpha: np.ndarray, w: np.ndarray, inv2c: float) -> float:
    """Dual objective in max form: e'a - 1/2 ||w_full||^2 - (1/(4C)) sum a^2."""
    return float(alpha.sum() - 0.5 * (w @ w) - 0.5 * inv2c * (alpha @ alpha))


def _solve_dual(x: sp.csr_matrix, y: np.ndarray, c: float, tol: float,
                max_iter: int, seed: int):
    """Run coordinate descent; returns (w_full, alpha, objective trace, epochs)."""
    n, d = x.shape
    indptr = np.asarray(x.indptr, dtype=np.int64)
    indices = np.asarray(x.indices, dtype=np.int64)
    data = np.asarray(x.data, dtype=np.float64)
    yf = np.asarray(y, dtype=np.float64)
    inv2c = 1.0 / (2.0 * c)
    sq = np.asarray(x.multiply(x).sum(axis=1)).ravel()
    qd = sq + 1.0 + inv2c  # + 1.0 is the bias feature's contribution
    w = np.zeros(d + 1, dtype=np.float64)
    alpha = np.zeros(n, dtype=np.float64)
    rng = np.random.default_rng(seed)
    trace = []
    epochs = 0
    for _ in range(max_iter):
        order = rng.permutation(n).astype(np.int64)
        max_pg = _epoch(indptr, indices, data, yf, qd, inv2c, w, alpha, order)
        epochs += 1
        trace.append(_dual_objective(alpha, w, inv2c))
        if max_pg < tol:
            break
    else:
        logger.debug("coordinate descent hit max_iter=%d (tol=%g)", max_iter, tol)
    return w, alpha, trace, epochs


def warm_solver() -> None:
    """Trigger jit compilation of the inner loop so later runs are not billed for it."""
    x = sp.csr_matrix(np.array([[1.0], [-1.0]]))
    _solve_dual(x, np.array([1, -1]), 1.0, DEFAULT_TOL, 5, seed=0)


def train_svm(x, y, c: float, tol: float = DEFAULT_TOL,
              max_iter: int = DEFAULT_MAX_ITER, seed: int = 0) -> SvmModel:
    """Train one model.  Requires both classes present and finite features."""
    if c <= 0.0:
        raise ValueError(f"C must be positive, got {c}")
    if tol <= 0.0 or max_iter < 1:
        raise ValueError("tol must be positive and max_iter at least 1")
    x = _as_csr(x)
    y = np.asarray(y)
    if x.shape[0] != y.shape[0]:
        raise ValueError(f"{x.shape[0]} rows but {y.shape[0]} labels")
    if y.shape[0] < 2:
        raise ValueError("training needs at least 2 documents")
    if not np.all(np.isin(y, (-1, 1))):
        raise ValueError("labels must be -1 or +1")
    if np.unique(y).size < 2:
        raise DegenerateInputError("training set contains a single class")
    w, _, trace, epochs = _solve_dual(x, y, c, tol, max_iter, seed)
    return SvmModel(weights=w[:-1].copy(), bias=float(w[-1]), c=float(c),
                    n_epochs=epochs, objective_trace=trace)


def decision_values(model: SvmModel, x) -> np.ndarray:
    x = _as_csr(x)
    if x.shape[1] != model.weights.shape[0]:
        raise ValueError(
            f"feature count {x.shape[1]} does not match model dimension "
            f"{model.weights.shape[0]}")
    return np.asarray(x @ model.weights).ravel() + model.bias


def predict(model: SvmModel, x) -> np.ndarray:
    """Sign of the decision value; an exact zero counts as +1."""
    dec = decision_values(model, x)
    return np.where(dec < 0.0, -1, 1).astype(np.int64)


def _stratified_folds(y: np.ndarray, folds: int, seed: int) -> np.ndarray:
    """Deterministic stratified fold assignment (class-wise shuffled round-robin)."""
    fold_of = np.empty(y.shape[0], dtype=np.int64)
    rng = np.random.default_rng(seed)
    for cls in (-1, 1):
        idx = np.flatnonzero(y == cls)
        idx = rng.permutation(idx)
        for k, i in enumerate(idx):
            fold_of[i] = k % folds
    return fold_of


def grid_search_c(x, y, c_grid=DEFAULT_C_GRID, folds: int = DEFAULT_FOLDS,
                  seed: int = 0, tol: float = DEFAULT_TOL,
                  max_iter: int = DEFAULT_MAX_ITER):
    """Pick C by stratified cross-validated accuracy; refit on everything.

    Returns ``(model, GridSearchResult)``.  The argmax tie goes to the
    smallest C in the grid, independent of grid order.
    """
    if folds < 2:
        raise ValueError(f"folds must be at least 2, got {folds}")
    c_grid = sorted(set(float(c) for c in c_grid))
    if not c_grid or any(c <= 0.0 for c in c_grid):
        raise ValueError("c_grid must be a non-empty collection of positive reals")
    x = _as_csr(x)
    y = np.asarray(y)
    if x.shape[0] != y.shape[0]:
        raise ValueError(f"{x.shape[0]} rows but {y.shape[0]} labels")
    for cls in (-1, 1):
        members = int(np.sum(y == cls))
        if members < folds:
            raise ConfigError(
                f"class {cls:+d} has {members} members, fewer than folds={folds}; "
                "use fewer folds")

    fold_of = _stratified_folds(y, folds, seed)
    means = {}
    for c in c_grid:
        accs = []
        for f in range(folds):
            val = fold_of == f
            train = ~val
            model = train_svm(x[train], y[train], c, tol=tol,
                              max_iter=max_iter, seed=seed)
            pred = predict(model, x[val])
            accs.append(float(np.mean(pred == y[val])))
        means[c] = float(np.mean(accs))

    best_mean = max(means.values())
    best_c = min(c for c, m in means.items() if m == best_mean)
    final = train_svm(x, y, best_c, tol=tol, max_iter=max_iter, seed=seed)
    return final, GridSearchResult(best_c=best_c, cv_accuracy=means, folds=folds)


def dump_model(model: SvmModel, path) -> None:
    """Write the decision function as a small text file."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n_features {model.weights.shape[0]}\n")
        fh.write(f"c {model.c!r}\n")
        fh.write(f"bias {model.bias!r}\n")
        fh.write("weights\n")
        for value in model.weights:
            fh.write(f"{float(value)!r}\n")
