"""Float kernels for large inputs: rank vectors, AUC and ROC area from raw scores.

Each kernel has a numba ``@njit`` implementation and a pure-numpy one. The
numba path is used when numba imports and ``RANKSUM_DISABLE_NUMBA`` is unset
or ``0``. Both are importable directly for benchmarking.
"""
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("RANKSUM_DISABLE_NUMBA", "0") in ("", "0")


def rank_vector_numpy(values):
    values = np.asarray(values, dtype=np.float64)
    n = values.shape[0]
    _, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    below = np.concatenate(([0], np.cumsum(counts)[:-1]))
    above = n - below - counts
    return (below - above)[inverse].astype(np.int64)


def auc_numpy(values, y, degenerate=0.5):
    y = np.asarray(y, dtype=np.int64)
    n1 = int(y.sum())
    n0 = y.shape[0] - n1
    if n1 == 0 or n0 == 0:
        return float(degenerate)
    rho = rank_vector_numpy(values)
    u = 0.5 * n0 * n1 + 0.5 * float(rho[y == 1].sum())
    return u / (n0 * n1)


def roc_area_numpy(values, y):
    values = np.asarray(values, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n1 = int(y.sum())
    n0 = y.shape[0] - n1
    if n1 == 0 or n0 == 0:
        return np.nan
    _, inverse = np.unique(values, return_inverse=True)
    pos = np.bincount(inverse, weights=y).astype(np.int64)
    neg = np.bincount(inverse, weights=1 - y).astype(np.int64)
    # walk classes from the top; each trapezoid is neg * (2 * tp_before + pos) / (2 n0 n1)
    pos, neg = pos[::-1], neg[::-1]
    tp_before = np.concatenate(([0], np.cumsum(pos)[:-1]))
    twice = int(np.sum(neg * (2 * tp_before + pos)))
    return twice / (2.0 * n0 * n1)


def _rank_vector_loop(sorted_values, order):
    n = sorted_values.shape[0]
    rho = np.empty(n, dtype=np.int64)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and sorted_values[stop] == sorted_values[start]:
            stop += 1
        r = start - (n - stop)
        for k in range(start, stop):
            rho[order[k]] = r
        start = stop
    return rho


def _auc_loop(sorted_values, sorted_y, degenerate):
    n = sorted_y.shape[0]
    n1 = 0
    for k in range(n):
        n1 += sorted_y[k]
    n0 = n - n1
    if n1 == 0 or n0 == 0:
        return degenerate
    # sum of rank-vector entries over positives, class by class
    s = 0
    start = 0
    while start < n:
        stop = start
        pos = 0
        while stop < n and sorted_values[stop] == sorted_values[start]:
            pos += sorted_y[stop]
            stop += 1
        s += pos * (start - (n - stop))
        start = stop
    return (0.5 * n0 * n1 + 0.5 * s) / (n0 * n1)


def _roc_area_loop(sorted_values, sorted_y):
    n = sorted_y.shape[0]
    n1 = 0
    for k in range(n):
        n1 += sorted_y[k]
    n0 = n - n1
    if n1 == 0 or n0 == 0:
        return np.nan
    # classes from the top; each trapezoid is neg * (2 * tp_before + pos) / (2 n0 n1)
    twice = 0
    tp = 0
    stop = n
    while stop > 0:
        start = stop
        pos = 0
        while start > 0 and sorted_values[start - 1] == sorted_values[stop - 1]:
            start -= 1
            pos += sorted_y[start]
        neg = stop - start - pos
        twice += neg * (2 * tp + pos)
        tp += pos
        stop = start
    return twice / (2.0 * n0 * n1)


def _sorted(values, y=None):
    values = np.ascontiguousarray(values, dtype=np.float64)
    # tie classes are found by equality, so the sort need not be stable
    order = np.argsort(values)
    if y is None:
        return values[order], order
    return values[order], np.ascontiguousarray(y, dtype=np.int64)[order]


if HAVE_NUMBA:
    # sorting stays in numpy, which beats numba's argsort; the compiled
    # loops do the per-class walk that numpy needs several passes for
    _rank_vector_numba = njit(cache=True)(_rank_vector_loop)
    _auc_numba = njit(cache=True)(_auc_loop)
    _roc_area_numba = njit(cache=True)(_roc_area_loop)

    def rank_vector_numba(values):
        return _rank_vector_numba(*_sorted(values))

    def auc_numba(values, y, degenerate=0.5):
        return float(_auc_numba(*_sorted(values, y), float(degenerate)))

    def roc_area_numba(values, y):
        return float(_roc_area_numba(*_sorted(values, y)))


def rank_vector_float(values):
    values = np.ascontiguousarray(values, dtype=np.float64)
    if USE_NUMBA:
        return rank_vector_numba(values)
    return rank_vector_numpy(values)


def auc_float(values, y, degenerate=0.5):
    """Empirical AUC of float scores ``values`` against 0/1 outcomes ``y``."""
    if USE_NUMBA:
        return auc_numba(values, y, degenerate)
    return auc_numpy(values, y, degenerate)


def roc_area_float(values, y):
    """Trapezoid area of the empirical ROC; NaN for degenerate outcomes."""
    if USE_NUMBA:
        return roc_area_numba(values, y)
    return roc_area_numpy(values, y)


def backend():
    return "numba" if USE_NUMBA else "numpy"
