"""Accuracy scoring and a paired two-tailed Student t-test.

The t distribution function is computed through the regularized incomplete
beta function, evaluated with a modified-Lentz continued fraction, so no
statistics library is needed at run time.  The two-tailed p-value is taken
directly as I_{df/(df+t^2)}(df/2, 1/2), which avoids the cancellation in
2*(1 - cdf) for large |t|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError

ALPHAS = (0.05, 0.01, 0.005)

_CF_EPS = 1e-15
_CF_MAX_ITER = 300
_CF_TINY = 1e-300


@dataclass
class PairedTTestResult:
    t_statistic: float
    degrees_of_freedom: int
    p_value: float
    significant_at: dict


def accuracy(predicted, gold) -> float:
    """Fraction of positions where the two label sequences agree."""
    predicted = np.asarray(predicted)
    gold = np.asarray(gold)
    if predicted.shape != gold.shape or predicted.ndim != 1:
        raise ValueError(
            f"label sequences must be equal-length vectors, got shapes "
            f"{predicted.shape} and {gold.shape}")
    if predicted.size == 0:
        raise ValueError("cannot score empty label sequences")
    return float(np.mean(predicted == gold))


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Lentz evaluation of the continued fraction for the incomplete beta."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError("shape parameters must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(log_front)
    # the continued fraction converges fast on the side of the symmetry point
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def t_cdf(t: float, df: int) -> float:
    """Student-t distribution function; t_cdf(0, df) is exactly 0.5."""
    if df < 1:
        raise ValueError(f"degrees of freedom must be at least 1, got {df}")
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x)
    return 1.0 - tail if t > 0.0 else tail


def two_tailed_p(t: float, df: int) -> float:
    """P(|T_df| >= |t|), computed without the 1 - cdf cancellation."""
    if df < 1:
        raise ValueError(f"degrees of freedom must be at least 1, got {df}")
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    p = regularized_incomplete_beta(df / 2.0, 0.5, x)
    return min(max(p, 0.0), 1.0)


def paired_ttest(a, b) -> PairedTTestResult:
    """Two-tailed paired t-test of the per-position differences a - b.

    Zero-variance differences make t undefined and raise
    DegenerateInputError instead of pretending certainty.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(
            f"paired samples must be equal-length vectors, got shapes "
            f"{a.shape} and {b.shape}")
    n = a.size
    if n < 2:
        raise ValueError("paired t-test needs at least 2 pairs")
    d = a - b
    sd = float(d.std(ddof=1))
    if sd == 0.0:
        raise DegenerateInputError(
            "paired differences have zero variance; t statistic undefined")
    t = float(d.mean() / (sd / math.sqrt(n)))
    df = n - 1
    p = two_tailed_p(t, df)
    return PairedTTestResult(
        t_statistic=t,
        degrees_of_freedom=df,
        p_value=p,
        significant_at={alpha: p < alpha for alpha in ALPHAS})
