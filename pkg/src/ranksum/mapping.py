"""Scoring of covariate-to-prediction mappings on finite models.

A mapping is scored by applying an ordinary scoring function to
``(y, f(x))``. The expected mapping score splits over covariate values, so
the best mapping picks the best prediction for each conditional law of
``Y`` given ``X = x`` separately.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Mapping, Optional, Sequence

from ._rational import to_fraction
from .distributions import JointDistribution, exact_rank, marginal_functional
from .errors import InvalidInputError, ResourceLimitError
from .kernels import as_outcomes, auc, marginal_score_sum, wmw_u
from .preorder import TotalPreorder, all_preorders, induce_preorder
from .theoretical import PairModel

QUARTER_GRID = tuple(Fraction(k, 4) for k in range(5))
CANDIDATE_CAP = 10**5


@dataclass(frozen=True)
class CovariateModel:
    """Joint law of ``(X, Y)`` with atoms ``(x tuple, y tuple, probability)``."""

    n: int
    support: tuple[tuple[tuple, tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        atoms = {}
        for x, y, p in self.support:
            x, y, p = tuple(x), as_outcomes(y), to_fraction(p)
            if len(x) != self.n or len(y) != self.n:
                raise InvalidInputError(f"atom {(x, y)} does not have length {self.n}")
            if p <= 0:
                raise InvalidInputError("atom probabilities must be positive")
            if (x, y) in atoms:
                raise InvalidInputError(f"atom {(x, y)} listed twice")
            atoms[(x, y)] = p
        if sum(atoms.values()) != 1:
            raise InvalidInputError("model probabilities must sum to 1")
        object.__setattr__(self, "support", tuple((x, y, p) for (x, y), p in atoms.items()))

    @classmethod
    def iid(cls, theta: PairModel, n: int) -> "CovariateModel":
        """``n`` independent copies of one ``(x, y)`` pair law."""
        atoms = []
        for config in itertools.product(theta.support, repeat=n):
            p = Fraction(1)
            for *_, q in config:
                p *= q
            atoms.append((tuple(a[0] for a in config), tuple(a[1] for a in config), p))
        return cls(n, tuple(atoms))

    @classmethod
    def from_conditionals(cls, x_law: Mapping[tuple, Fraction],
                          y_given_x: Callable[[tuple], Sequence]) -> "CovariateModel":
        """Model with ``X ~ x_law`` and independent ``Y_i | X = x`` with success ``y_given_x(x)[i]``."""
        atoms = []
        n = None
        for x, px in x_law.items():
            probs = [to_fraction(q) for q in y_given_x(x)]
            n = len(probs)
            for y in itertools.product((0, 1), repeat=n):
                p = to_fraction(px)
                for yi, q in zip(y, probs):
                    p *= q if yi else 1 - q
                if p:
                    atoms.append((tuple(x), y, p))
        return cls(n, tuple(atoms))

    @classmethod
    def from_dict(cls, obj) -> "CovariateModel":
        try:
            atoms = tuple((tuple(a["x"]), tuple(a["y"]), to_fraction(a["p"])) for a in obj["support"])
            return cls(int(obj.get("n", len(atoms[0][1]))), atoms)
        except (KeyError, TypeError, IndexError) as exc:
            raise InvalidInputError(f"malformed covariate model ({exc})") from exc

    def x_law(self) -> dict[tuple, Fraction]:
        out: dict[tuple, Fraction] = {}
        for x, _, p in self.support:
            out[x] = out.get(x, Fraction(0)) + p
        return out

    def conditional(self, x: tuple) -> JointDistribution:
        """Law of ``Y`` given ``X = x``."""
        px = self.x_law().get(tuple(x))
        if px is None:
            raise InvalidInputError(f"covariate {x!r} has zero probability")
        atoms = tuple((y, p / px) for xx, y, p in self.support if xx == tuple(x))
        return JointDistribution(self.n, atoms)


@dataclass(frozen=True)
class FullMapping:
    """Arbitrary table from covariate tuples to predictions."""

    table: Mapping[tuple, object]

    def __call__(self, x):
        try:
            return self.table[tuple(x)]
        except KeyError:
            raise InvalidInputError(f"mapping undefined at covariate {tuple(x)!r}") from None


@dataclass(frozen=True)
class CoordinateMapping:
    """Same per-coordinate table ``f_`` for every index.

    With ``as_rank`` the prediction is the preorder induced by the mapped values.
    """

    table: Mapping[Hashable, Fraction]
    as_rank: bool = False

    def values(self, x) -> tuple[Fraction, ...]:
        try:
            return tuple(to_fraction(self.table[xi]) for xi in x)
        except KeyError as exc:
            raise InvalidInputError(f"mapping undefined at covariate value {exc.args[0]!r}") from None

    def __call__(self, x):
        vals = self.values(x)
        return induce_preorder(vals) if self.as_rank else vals


# -- scoring functions taking (y, prediction) --------------------------------


def brier_sum(y, m) -> Fraction:
    return marginal_score_sum(y, m, "brier")


def _as_order(pred) -> TotalPreorder:
    return pred if isinstance(pred, TotalPreorder) else induce_preorder(pred)


def u_score(y, pred) -> Fraction:
    """Mann-Whitney u of a preorder, or of the preorder induced by a numeric vector."""
    return wmw_u(y, _as_order(pred))


def auc_score(y, pred) -> Fraction:
    return auc(y, _as_order(pred))


def mapping_score(x, y, f, s):
    return s(y, f(x))


def expected_mapping_score(model: CovariateModel, f, s) -> Fraction:
    """Direct sum over the joint support."""
    return sum((p * s(y, f(x)) for x, y, p in model.support), Fraction(0))


def conditional_expected_score(cond: JointDistribution, pred, s) -> Fraction:
    return sum((p * s(y, pred) for y, p in cond.support), Fraction(0))


def expected_mapping_score_iterated(model: CovariateModel, f, s) -> Fraction:
    """Outer expectation over ``X`` of the conditional expected score."""
    return sum(
        (px * conditional_expected_score(model.conditional(x), f(x), s)
         for x, px in model.x_law().items()),
        Fraction(0),
    )


# -- optimal mappings ------------------------------------------------------------


def conditional_functional(cond: JointDistribution, functional: str):
    if functional == "mean":
        return marginal_functional(cond)
    if functional == "rank":
        return exact_rank(cond)
    raise InvalidInputError(f"unknown functional {functional!r}, expected 'mean' or 'rank'")


def conditional_functional_mapping(model: CovariateModel, functional: str = "mean") -> FullMapping:
    """``x -> T(law of Y given X = x)``."""
    return FullMapping({x: conditional_functional(model.conditional(x), functional)
                        for x in model.x_law()})


def candidate_predictions(n: int, functional: str, grid: Sequence = QUARTER_GRID,
                          cap: int = CANDIDATE_CAP):
    if functional == "mean":
        grid = tuple(to_fraction(g) for g in grid)
        if len(grid) ** n > cap:
            raise ResourceLimitError(f"{len(grid)}^{n} grid predictions exceed the cap of {cap}", cap=cap)
        return list(itertools.product(grid, repeat=n))
    if functional == "rank":
        return list(all_preorders(n))
    raise InvalidInputError(f"unknown functional {functional!r}")


def best_pool_score(model: CovariateModel, s, functional: str = "mean",
                    grid: Sequence = QUARTER_GRID, cap: int = CANDIDATE_CAP,
                    restrict: Optional[Callable] = None) -> Fraction:
    """Maximal expected score over every mapping from the x-support into the candidate set.

    Because the expected score is a sum over ``x`` of separately chosen terms,
    the maximum is taken per ``x``. ``restrict(x, pred)`` can exclude candidates.
    """
    cands = candidate_predictions(model.n, functional, grid, cap)
    total = Fraction(0)
    for x, px in model.x_law().items():
        cond = model.conditional(x)
        pool = [c for c in cands if restrict is None or restrict(x, c)]
        total += px * max(conditional_expected_score(cond, c, s) for c in pool)
    return total


def verify_map_opt(model: CovariateModel, s, functional: str = "mean",
                   grid: Sequence = QUARTER_GRID, cap: int = CANDIDATE_CAP) -> bool:
    """True when the conditional-functional mapping scores at least as well as every pool mapping."""
    opt = conditional_functional_mapping(model, functional)
    return expected_mapping_score(model, opt, s) >= best_pool_score(model, s, functional, grid, cap)


@dataclass(frozen=True)
class MapCoordResult:
    condition_i: bool
    condition_ii: bool
    optimal_is_coordinatewise: bool
    coordinatewise_optimal: Optional[bool]

    @property
    def conditions_hold(self) -> bool:
        return self.condition_i and self.condition_ii

    @property
    def passed(self) -> bool:
        return not self.conditions_hold or bool(self.coordinatewise_optimal)


def _coordinate_conditionals(model: CovariateModel) -> list[dict]:
    """``P(Y_i = 1 | X_i = a)`` for each coordinate ``i``."""
    out = []
    for i in range(model.n):
        num: dict = {}
        den: dict = {}
        for x, y, p in model.support:
            den[x[i]] = den.get(x[i], Fraction(0)) + p
            num[x[i]] = num.get(x[i], Fraction(0)) + p * y[i]
        out.append({a: num[a] / den[a] for a in den})
    return out


def conditional_independence_holds(model: CovariateModel) -> bool:
    """Each ``Y_i`` depends on ``X`` only through ``X_i`` (conditional success probabilities)."""
    per_coord = _coordinate_conditionals(model)
    for x in model.x_law():
        m = marginal_functional(model.conditional(x))
        if any(m[i] != per_coord[i][x[i]] for i in range(model.n)):
            return False
    return True


def identical_conditionals_hold(model: CovariateModel) -> bool:
    per_coord = _coordinate_conditionals(model)
    merged: dict = {}
    for table in per_coord:
        for a, q in table.items():
            if merged.setdefault(a, q) != q:
                return False
    return True


def coordinate_mapping_from_model(model: CovariateModel, as_rank: bool = False) -> CoordinateMapping:
    table: dict = {}
    for coord in _coordinate_conditionals(model):
        for a, q in coord.items():
            table.setdefault(a, q)
    return CoordinateMapping(table, as_rank)


def verify_map_coord(model: CovariateModel, s, functional: str = "mean",
                     grid: Sequence = QUARTER_GRID, cap: int = CANDIDATE_CAP) -> MapCoordResult:
    """Check both family conditions and, when they hold, that the optimum is coordinate-wise.

    The optimal mapping is coordinate-wise when one per-value table reproduces
    the conditional functional at every covariate tuple. Under the two
    conditions that table's expected score must also reach the best score of
    the full (not coordinate-wise) candidate pool.
    """
    cond_i = conditional_independence_holds(model)
    cond_ii = identical_conditionals_hold(model)
    as_rank = functional == "rank"
    coord = coordinate_mapping_from_model(model, as_rank)
    opt = conditional_functional_mapping(model, functional)
    try:
        coordinatewise = all(coord(x) == opt(x) for x in model.x_law())
    except InvalidInputError:
        coordinatewise = False
    claim = None
    if cond_i and cond_ii:
        claim = coordinatewise and expected_mapping_score(model, coord, s) >= best_pool_score(
            model, s, functional, grid, cap
        )
    return MapCoordResult(cond_i, cond_ii, coordinatewise, claim)


def load_covariate_model(path) -> CovariateModel:
    with open(path) as fh:
        return CovariateModel.from_dict(json.load(fh))
