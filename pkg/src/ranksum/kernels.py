"""Rank-sum scores on realised outcomes: u, AUC, Gini, ROC curves, marginal scores.

Every rank-sum score has the form ``g(y) + sum_i sigma_i(y) * rho_i(p)``;
:class:`ScoreKernel` carries that decomposition. The direct functions
(:func:`wmw_u`, :func:`auc`, :func:`roc_curve`) count pairs instead, so the two
routes can be checked against each other.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, Sequence

from ._rational import format_fraction, to_fraction
from .errors import DegenerateOutcomeError, InvalidInputError
from .preorder import TotalPreorder, rank_vector

HALF = Fraction(1, 2)


def as_outcomes(y: Sequence) -> tuple[int, ...]:
    out = []
    for v in y:
        if v == 0 or v == 1:
            out.append(int(v))
        else:
            raise InvalidInputError(f"outcomes must be 0 or 1, got {v!r}")
    if not out:
        raise InvalidInputError("empty outcome vector")
    return tuple(out)


def counts(y: Sequence[int]) -> tuple[int, int]:
    """``(n0, n1)`` for an outcome vector."""
    n1 = sum(y)
    return len(y) - n1, n1


def is_degenerate(y: Sequence[int]) -> bool:
    n0, n1 = counts(y)
    return n0 == 0 or n1 == 0


def _check_lengths(y, p):
    if len(y) != p.n:
        raise InvalidInputError(f"outcome length {len(y)} does not match preorder size {p.n}")


def wmw_u(y: Sequence[int], p: TotalPreorder) -> Fraction:
    """Count (negative, positive) pairs with the positive ranked higher; ties count half."""
    y = as_outcomes(y)
    _check_lengths(y, p)
    twice_u = 0
    neg_below = 0
    for cls in p.classes:
        pos = sum(y[i - 1] for i in cls)
        neg = len(cls) - pos
        twice_u += 2 * pos * neg_below + pos * neg
        neg_below += neg
    return Fraction(twice_u, 2)


def alpha(y: Sequence[int]) -> tuple[Fraction, ...]:
    y = as_outcomes(y)
    n0, n1 = counts(y)
    if n0 == 0 or n1 == 0:
        return tuple(Fraction(0) for _ in y)
    d = n0 * n1
    return tuple(Fraction(v, d) for v in y)


def auc(y: Sequence[int], p: TotalPreorder, degenerate=HALF) -> Fraction:
    """Empirical AUC; ``degenerate`` is returned when all outcomes agree."""
    y = as_outcomes(y)
    _check_lengths(y, p)
    n0, n1 = counts(y)
    if n0 == 0 or n1 == 0:
        return to_fraction(degenerate)
    return wmw_u(y, p) / (n0 * n1)


def gini(y: Sequence[int], p: TotalPreorder, degenerate=HALF) -> Fraction:
    return 2 * auc(y, p, degenerate) - 1


# -- kernels in (g, sigma) form ---------------------------------------------


@dataclass(frozen=True)
class ScoreKernel:
    """A rank-sum score ``g(y) + sum_i sigma_i(y) rho_i``."""

    name: str
    g: Callable[[tuple[int, ...]], Fraction]
    sigma: Callable[[tuple[int, ...]], tuple[Fraction, ...]]

    def score(self, y: Sequence[int], p: TotalPreorder) -> Fraction:
        y = as_outcomes(y)
        _check_lengths(y, p)
        rho = rank_vector(p)
        return self.g(y) + sum((s * r for s, r in zip(self.sigma(y), rho)), Fraction(0))

    def __call__(self, y, p):
        return self.score(y, p)


def _u_g(y):
    n0, n1 = counts(y)
    return HALF * n0 * n1


def _u_sigma(y):
    return tuple(HALF * v for v in y)


def _auc_g(y, degenerate):
    return to_fraction(degenerate) if is_degenerate(y) else HALF


def _auc_sigma(y):
    return tuple(HALF * a for a in alpha(y))


def _gini_g(y, degenerate):
    return 2 * _auc_g(y, degenerate) - 1


def _gini_sigma(y):
    return alpha(y)


def u_kernel() -> ScoreKernel:
    return ScoreKernel("u", _u_g, _u_sigma)


def auc_kernel(degenerate=HALF) -> ScoreKernel:
    return ScoreKernel("auc", partial(_auc_g, degenerate=to_fraction(degenerate)), _auc_sigma)


def gini_kernel(degenerate=HALF) -> ScoreKernel:
    return ScoreKernel("gini", partial(_gini_g, degenerate=to_fraction(degenerate)), _gini_sigma)


KERNELS = {"u": u_kernel, "auc": auc_kernel, "gini": gini_kernel}


def get_kernel(name: str, degenerate=HALF) -> ScoreKernel:
    try:
        factory = KERNELS[name]
    except KeyError:
        raise InvalidInputError(
            f"unknown kernel {name!r}, expected one of {', '.join(KERNELS)}"
        ) from None
    return factory() if name == "u" else factory(degenerate)


# -- ROC ---------------------------------------------------------------------


@dataclass(frozen=True)
class ROCCurve:
    """Empirical ROC from ``(1, 1)`` down to ``(0, 0)``, one point per tie class."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def area(self) -> Fraction:
        total = Fraction(0)
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            total += (x0 - x1) * (y0 + y1) / 2
        return total

    def to_csv(self, decimal: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["fpr", "tpr"])
        for fpr, tpr in self.points:
            if decimal:
                w.writerow([repr(float(fpr)), repr(float(tpr))])
            else:
                w.writerow([format_fraction(fpr), format_fraction(tpr)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ROCCurve":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [h.strip() for h in rows[0]] != ["fpr", "tpr"]:
            raise InvalidInputError("ROC CSV must start with header 'fpr,tpr'")
        return cls(tuple((to_fraction(a), to_fraction(b)) for a, b in rows[1:]))


def roc_curve(y: Sequence[int], p: TotalPreorder) -> ROCCurve:
    y = as_outcomes(y)
    _check_lengths(y, p)
    n0, n1 = counts(y)
    if n0 == 0 or n1 == 0:
        raise DegenerateOutcomeError("ROC curve is undefined when all outcomes are equal")
    points = [(Fraction(1), Fraction(1))]
    neg_above, pos_above = n0, n1
    for cls in p.classes:
        pos = sum(y[i - 1] for i in cls)
        neg_above -= len(cls) - pos
        pos_above -= pos
        points.append((Fraction(neg_above, n0), Fraction(pos_above, n1)))
    return ROCCurve(tuple(points))


# -- marginal scoring rules --------------------------------------------------


def _brier(y, q):
    return -((y - q) ** 2)


def _log(y, q):
    if y == 1:
        return math.log(q) if q > 0 else -math.inf
    return math.log(1 - q) if q < 1 else -math.inf


def _spherical(y, q):
    q = float(q)
    return (y * q + (1 - y) * (1 - q)) / math.sqrt(q * q + (1 - q) ** 2)


MARGINAL_RULES = {"brier": _brier, "log": _log, "spherical": _spherical}


def marginal_score_sum(y: Sequence[int], m: Sequence, rule: str = "brier"):
    """Sum of per-element scores of marginal forecasts ``m``.

    Brier sums stay exact (``Fraction``); log and spherical are floats. A log
    score of a boundary forecast on the wrong outcome is ``-inf``.
    """
    y = as_outcomes(y)
    if len(m) != len(y):
        raise InvalidInputError("forecast and outcome lengths differ")
    try:
        fn = MARGINAL_RULES[rule]
    except KeyError:
        raise InvalidInputError(f"unknown rule {rule!r}") from None
    qs = [to_fraction(q) for q in m]
    if any(q < 0 or q > 1 for q in qs):
        raise InvalidInputError("marginal forecasts must lie in [0, 1]")
    if rule == "brier":
        return sum((fn(yi, qi) for yi, qi in zip(y, qs)), Fraction(0))
    return math.fsum(fn(yi, qi) for yi, qi in zip(y, qs))
