"""Theoretical AUC of a finite covariate/response model and its link to expected empirical AUC."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping

from ._rational import to_fraction
from .errors import InvalidInputError, ResourceLimitError
from .kernels import HALF, auc
from .preorder import induce_preorder

IID_TERM_CAP = 10**6


@dataclass(frozen=True)
class PairModel:
    """Joint law of one ``(x, y)`` pair: atoms ``(x, y, probability)``."""

    support: tuple[tuple[Hashable, int, Fraction], ...]

    def __post_init__(self):
        atoms = []
        seen = set()
        for x, y, p in self.support:
            p = to_fraction(p)
            if y not in (0, 1):
                raise InvalidInputError(f"response must be 0 or 1, got {y!r}")
            if p <= 0:
                raise InvalidInputError("atom probabilities must be positive")
            if (x, y) in seen:
                raise InvalidInputError(f"atom {(x, y)} listed twice")
            seen.add((x, y))
            atoms.append((x, int(y), p))
        if sum(p for *_, p in atoms) != 1:
            raise InvalidInputError("pair model probabilities must sum to 1")
        object.__setattr__(self, "support", tuple(atoms))

    def pi(self, c: int) -> Fraction:
        return sum((p for _, y, p in self.support if y == c), Fraction(0))

    @property
    def covariates(self) -> tuple:
        return tuple(dict.fromkeys(x for x, _, _ in self.support))

    @classmethod
    def from_dict(cls, obj) -> "PairModel":
        try:
            return cls(tuple((a["x"], a["y"], to_fraction(a["p"])) for a in obj["support"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed pair model ({exc})") from exc


def scalar_map(table: Mapping) -> dict:
    """Normalise a covariate-to-number table (e.g. a parsed ``{"f": {...}}`` JSON)."""
    if "f" in table and isinstance(table["f"], Mapping):
        table = table["f"]
    return {x: to_fraction(v) for x, v in table.items()}


def _f(f, x):
    try:
        return f[x]
    except KeyError:
        raise InvalidInputError(f"scalar map undefined at covariate {x!r}") from None


def theoretical_auc(theta: PairModel, f: Mapping) -> Fraction:
    """``P(f(X1) > f(X2)) + P(f(X1) = f(X2)) / 2`` given ``Y1 = 1, Y2 = 0``."""
    pi1, pi0 = theta.pi(1), theta.pi(0)
    if pi0 == 0 or pi1 == 0:
        raise InvalidInputError("theoretical AUC needs both responses to have positive probability")
    total = Fraction(0)
    for x1, y1, p1 in theta.support:
        if y1 != 1:
            continue
        for x2, y2, p2 in theta.support:
            if y2 != 0:
                continue
            a, b = _f(f, x1), _f(f, x2)
            if a > b:
                total += p1 * p2
            elif a == b:
                total += HALF * p1 * p2
    return total / (pi1 * pi0)


def expected_empirical_auc(theta: PairModel, f: Mapping, n: int, degenerate=HALF,
                           cap: int = IID_TERM_CAP) -> Fraction:
    """``E[auc(Y, preorder induced by f(X))]`` over ``n`` i.i.d. pairs, by enumeration."""
    terms = len(theta.support) ** n
    if terms > cap:
        raise ResourceLimitError(
            f"{terms} joint configurations exceed the enumeration cap of {cap}", cap=cap
        )
    total = Fraction(0)
    for config in itertools.product(theta.support, repeat=n):
        prob = Fraction(1)
        for *_, p in config:
            prob *= p
        y = [a[1] for a in config]
        order = induce_preorder([_f(f, a[0]) for a in config])
        total += prob * auc(y, order, degenerate)
    return total


def verify_expected_auc_identity(theta: PairModel, f: Mapping, n: int, degenerate=HALF,
                                 cap: int = IID_TERM_CAP) -> tuple[Fraction, Fraction]:
    """Return ``(enumerated expectation, closed form)``; they should be equal.

    The closed form is ``(1 - pi0^n - pi1^n) tauc + c (pi0^n + pi1^n)`` with
    ``c`` the degenerate-outcome constant.
    """
    c = to_fraction(degenerate)
    lhs = expected_empirical_auc(theta, f, n, c, cap)
    pi0n, pi1n = theta.pi(0) ** n, theta.pi(1) ** n
    rhs = (1 - pi0n - pi1n) * theoretical_auc(theta, f) + c * (pi0n + pi1n)
    return lhs, rhs


def load_pair_model(path) -> PairModel:
    with open(path) as fh:
        return PairModel.from_dict(json.load(fh))
