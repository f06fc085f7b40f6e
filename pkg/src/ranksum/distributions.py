"""Finite distributions on ``{0,1}^n`` with exact expectations.

Supports are sparse: only outcomes with positive probability are stored.
Product and mixture distributions expand to a joint support on demand.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from ._rational import format_fraction, to_fraction
from .errors import InvalidInputError, ResourceLimitError
from .kernels import ScoreKernel, as_outcomes
from .preorder import (
    DEFAULT_CAP,
    TotalPreorder,
    contained_set,
    induce_preorder,
    rank_vector,
)

EXPANSION_CAP = 20


@dataclass(frozen=True)
class JointDistribution:
    n: int
    support: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInputError(f"n must be a positive integer, got {self.n!r}")
        if not self.support:
            raise InvalidInputError("distribution has empty support")
        atoms = []
        seen = set()
        for y, p in self.support:
            y = as_outcomes(y)
            p = to_fraction(p)
            if len(y) != self.n:
                raise InvalidInputError(f"outcome {y} has length {len(y)}, expected {self.n}")
            if y in seen:
                raise InvalidInputError(f"outcome {y} listed twice")
            if p <= 0:
                raise InvalidInputError(f"probability of {y} must be positive, got {p}")
            seen.add(y)
            atoms.append((y, p))
        total = sum(p for _, p in atoms)
        if total != 1:
            raise InvalidInputError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "support", tuple(atoms))

    @classmethod
    def from_pairs(cls, pairs) -> "JointDistribution":
        pairs = [(tuple(y), p) for y, p in pairs]
        if not pairs:
            raise InvalidInputError("distribution has empty support")
        return cls(len(pairs[0][0]), tuple(pairs))

    @classmethod
    def point_mass(cls, y) -> "JointDistribution":
        y = tuple(y)
        return cls(len(y), ((y, Fraction(1)),))

    def expectation(self, fn) -> Fraction:
        return sum((p * fn(y) for y, p in self.support), Fraction(0))

    def expand(self, cap: int = EXPANSION_CAP) -> "JointDistribution":
        return self


@dataclass(frozen=True)
class ProductDistribution:
    """Independent coordinates with success probabilities ``p``."""

    p: tuple[Fraction, ...]

    def __post_init__(self):
        ps = tuple(to_fraction(v) for v in self.p)
        if not ps:
            raise InvalidInputError("empty probability vector")
        if any(v < 0 or v > 1 for v in ps):
            raise InvalidInputError("probabilities must lie in [0, 1]")
        object.__setattr__(self, "p", ps)

    @property
    def n(self) -> int:
        return len(self.p)

    def prob(self, y: Sequence[int]) -> Fraction:
        out = Fraction(1)
        for yi, pi in zip(y, self.p):
            out *= pi if yi else 1 - pi
        return out

    def expand(self, cap: int = EXPANSION_CAP) -> JointDistribution:
        if self.n > cap:
            raise ResourceLimitError(
                f"expanding {self.n} independent coordinates exceeds the cap of {cap}", cap=cap
            )
        atoms = []
        for y in itertools.product((0, 1), repeat=self.n):
            q = self.prob(y)
            if q:
                atoms.append((y, q))
        return JointDistribution(self.n, tuple(atoms))


@dataclass(frozen=True)
class MixtureDistribution:
    components: tuple[tuple[Fraction, ProductDistribution], ...]

    def __post_init__(self):
        comps = []
        for w, comp in self.components:
            w = to_fraction(w)
            if w <= 0:
                raise InvalidInputError("mixture weights must be positive")
            if not isinstance(comp, ProductDistribution):
                comp = ProductDistribution(tuple(comp))
            comps.append((w, comp))
        if not comps:
            raise InvalidInputError("mixture has no components")
        if len({c.n for _, c in comps}) != 1:
            raise InvalidInputError("mixture components differ in dimension")
        total = sum(w for w, _ in comps)
        if total != 1:
            raise InvalidInputError(f"mixture weights sum to {total}, not 1")
        object.__setattr__(self, "components", tuple(comps))

    @property
    def n(self) -> int:
        return self.components[0][1].n

    def marginals(self) -> tuple[Fraction, ...]:
        return tuple(
            sum((w * c.p[i] for w, c in self.components), Fraction(0)) for i in range(self.n)
        )

    def expand(self, cap: int = EXPANSION_CAP) -> JointDistribution:
        if self.n > cap:
            raise ResourceLimitError(
                f"expanding a mixture over {self.n} coordinates exceeds the cap of {cap}", cap=cap
            )
        atoms = []
        for y in itertools.product((0, 1), repeat=self.n):
            q = sum((w * c.prob(y) for w, c in self.components), Fraction(0))
            if q:
                atoms.append((y, q))
        return JointDistribution(self.n, tuple(atoms))


def _joint(P, cap=EXPANSION_CAP) -> JointDistribution:
    return P if isinstance(P, JointDistribution) else P.expand(cap)


# -- functionals ---------------------------------------------------------------


def marginal_functional(P) -> tuple[Fraction, ...]:
    """``E[Y]``, the vector of marginal success probabilities."""
    if isinstance(P, ProductDistribution):
        return P.p
    if isinstance(P, MixtureDistribution):
        return P.marginals()
    m = [Fraction(0)] * P.n
    for y, p in P.support:
        for i, yi in enumerate(y):
            if yi:
                m[i] += p
    return tuple(m)


def exact_rank(P) -> TotalPreorder:
    return induce_preorder(marginal_functional(P))


class Relation(enum.Enum):
    PRECEDES = "≺"
    TIED = "∼"
    FOLLOWS = "≻"

    def flipped(self) -> "Relation":
        return {Relation.PRECEDES: Relation.FOLLOWS, Relation.FOLLOWS: Relation.PRECEDES}.get(
            self, self
        )


def pairwise_rank(P, i: int, j: int) -> Relation:
    """Compare ``i`` and ``j`` via ``P[Y_i > Y_j]`` against ``P[Y_i < Y_j]`` (1-based)."""
    P = _joint(P)
    for k in (i, j):
        if not 1 <= k <= P.n:
            raise InvalidInputError(f"index {k} outside 1..{P.n}")
    if i == j:
        raise InvalidInputError("pairwise_rank needs two distinct indices")
    above = sum((p for y, p in P.support if y[i - 1] > y[j - 1]), Fraction(0))
    below = sum((p for y, p in P.support if y[i - 1] < y[j - 1]), Fraction(0))
    if above < below:
        return Relation.PRECEDES
    if above > below:
        return Relation.FOLLOWS
    return Relation.TIED


def weak_rank_members(P, cap: int = DEFAULT_CAP) -> Iterator[TotalPreorder]:
    return contained_set(exact_rank(P), cap)


def expected_sigma(P, k: ScoreKernel) -> tuple[Fraction, ...]:
    P = _joint(P)
    acc = [Fraction(0)] * P.n
    for y, p in P.support:
        for i, s in enumerate(k.sigma(y)):
            acc[i] += p * s
    return tuple(acc)


def expected_g(P, k: ScoreKernel) -> Fraction:
    return _joint(P).expectation(k.g)


def expected_score(P, k: ScoreKernel, order: TotalPreorder) -> Fraction:
    """``E[g(Y)] + sum_i E[sigma_i(Y)] rho_i(order)``."""
    P = _joint(P)
    if order.n != P.n:
        raise InvalidInputError(f"preorder ranks {order.n} indices, distribution has {P.n}")
    rho = rank_vector(order)
    return expected_g(P, k) + sum(
        (s * r for s, r in zip(expected_sigma(P, k), rho)), Fraction(0)
    )


def expected_score_direct(P, k: ScoreKernel, order: TotalPreorder) -> Fraction:
    """Expected score by summing ``k.score`` over the support."""
    P = _joint(P)
    return P.expectation(lambda y: k.score(y, order))


def optimal_preorders(P, k: ScoreKernel, cap: int = DEFAULT_CAP):
    """The preorder induced by ``E[sigma]`` and a stream of every preorder it contains.

    Every member of the stream maximises the expected score.
    """
    outer = induce_preorder(expected_sigma(P, k))
    return outer, contained_set(outer, cap)


# -- JSON ----------------------------------------------------------------------


def distribution_from_dict(obj):
    if not isinstance(obj, dict):
        raise InvalidInputError("distribution spec must be a JSON object")
    if "product" in obj:
        return ProductDistribution(tuple(to_fraction(v) for v in obj["product"]))
    if "mixture" in obj:
        return MixtureDistribution(
            tuple(
                (to_fraction(c["w"]), ProductDistribution(tuple(to_fraction(v) for v in c["product"])))
                for c in obj["mixture"]
            )
        )
    if "support" in obj:
        atoms = tuple((tuple(a["y"]), to_fraction(a["p"])) for a in obj["support"])
        n = obj.get("n", len(atoms[0][0]) if atoms else 0)
        return JointDistribution(int(n), atoms)
    raise InvalidInputError("distribution spec needs one of 'support', 'product', 'mixture'")


def distribution_to_dict(P) -> dict:
    if isinstance(P, ProductDistribution):
        return {"product": [format_fraction(v) for v in P.p]}
    if isinstance(P, MixtureDistribution):
        return {
            "mixture": [
                {"w": format_fraction(w), "product": [format_fraction(v) for v in c.p]}
                for w, c in P.components
            ]
        }
    return {
        "n": P.n,
        "support": [{"y": list(y), "p": format_fraction(p)} for y, p in P.support],
    }


def load_distribution(path):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(
                f"{path}: JSON error at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
    try:
        return distribution_from_dict(obj)
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"{path}: malformed distribution spec ({exc})") from exc
