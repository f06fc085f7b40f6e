"""Propriety checks for rank-sum kernels against the weak rank functional.

A kernel is proper for ``P`` when the preorder induced by ``E_P[sigma(Y)]``
keeps every strict comparison of ``E_P[Y]``. The fast path decides this
directly; ``cross_check=True`` also enumerates every preorder and compares
the argmax set.
"""
from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

from ._rational import format_fraction, to_fraction
from .distributions import (
    EXPANSION_CAP,
    JointDistribution,
    MixtureDistribution,
    ProductDistribution,
    _joint,
    distribution_to_dict,
    exact_rank,
    expected_g,
    expected_score,
    expected_sigma,
)
from .errors import InvalidInputError, PreconditionError, ResourceLimitError
from .kernels import HALF, ScoreKernel, auc_kernel, counts
from .preorder import (
    DEFAULT_CAP,
    TotalPreorder,
    all_preorders,
    contained_set,
    induce_preorder,
    is_contained,
    rank_vector,
)

PROPER = "proper-here"
IMPROPER = "improper"


@dataclass(frozen=True)
class ProprietyCertificate:
    kernel: str
    distribution: JointDistribution
    verdict: str
    sigma_order: TotalPreorder
    exact_order: TotalPreorder
    witness: Optional[TotalPreorder] = None
    beating: Optional[TotalPreorder] = None
    witness_score: Optional[Fraction] = None
    beating_score: Optional[Fraction] = None
    brute_force_agrees: Optional[bool] = None

    @property
    def proper(self) -> bool:
        return self.verdict == PROPER

    @property
    def strict_gap(self) -> bool:
        """True when the beating preorder scores strictly more than every honest one."""
        return self.beating_score is not None and self.beating_score > self.witness_score

    def to_dict(self) -> dict:
        out = {
            "kernel": self.kernel,
            "distribution": distribution_to_dict(self.distribution),
            "verdict": self.verdict,
            "exact_order": str(self.exact_order),
            "sigma_order": str(self.sigma_order),
        }
        if not self.proper:
            out.update(
                witness=str(self.witness),
                witness_score=format_fraction(self.witness_score),
                beating=str(self.beating),
                beating_score=format_fraction(self.beating_score),
                strict_gap=self.strict_gap,
            )
        if self.brute_force_agrees is not None:
            out["brute_force_agrees"] = self.brute_force_agrees
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kw)


def _refine(outer: TotalPreorder, weights: Sequence[Fraction]) -> TotalPreorder:
    """Split each class of ``outer`` by ``weights``, keeping exact ties."""
    classes = []
    for cls in outer.classes:
        ordered = sorted(cls, key=lambda i: weights[i - 1])
        for _, grp in itertools.groupby(ordered, key=lambda i: weights[i - 1]):
            classes.append(tuple(grp))
    return TotalPreorder(outer.n, tuple(classes))


def brute_force_optimal(P, k: ScoreKernel, cap: int = DEFAULT_CAP):
    """Maximal expected score over every total preorder, and the set attaining it."""
    P = _joint(P)
    sig = expected_sigma(P, k)
    base = expected_g(P, k)
    best = None
    winners = []
    for order in all_preorders(P.n, cap):
        score = base + sum((s * r for s, r in zip(sig, rank_vector(order))), Fraction(0))
        if best is None or score > best:
            best, winners = score, [order]
        elif score == best:
            winners.append(order)
    return best, frozenset(winners)


def check_propriety(
    P, k: ScoreKernel, cross_check: bool = False, cap: int = DEFAULT_CAP
) -> ProprietyCertificate:
    P = _joint(P)
    exact = exact_rank(P)
    sig = expected_sigma(P, k)
    sig_order = induce_preorder(sig)
    proper = is_contained(sig_order, exact)
    agrees = None
    if cross_check:
        _, winners = brute_force_optimal(P, k, cap)
        honest = frozenset(contained_set(exact, cap))
        agrees = winners == frozenset(contained_set(sig_order, cap)) and (
            proper == (winners <= honest)
        )
    if proper:
        return ProprietyCertificate(k.name, P, PROPER, sig_order, exact, brute_force_agrees=agrees)
    witness = _refine(exact, sig)
    return ProprietyCertificate(
        k.name,
        P,
        IMPROPER,
        sig_order,
        exact,
        witness=witness,
        beating=sig_order,
        witness_score=expected_score(P, k, witness),
        beating_score=expected_score(P, k, sig_order),
        brute_force_agrees=agrees,
    )


# -- sufficient conditions -----------------------------------------------------


def verify_known_count(P, k: Optional[ScoreKernel] = None, cross_check: bool = False) -> bool:
    """AUC propriety when every outcome in the support has the same number of positives."""
    P = _joint(P)
    k = k or auc_kernel()
    n1s = {counts(y)[1] for y, _ in P.support}
    if len(n1s) != 1:
        raise PreconditionError(f"positive count is not constant on the support: {sorted(n1s)}")
    cert = check_propriety(P, k, cross_check=cross_check)
    if cross_check and not cert.brute_force_agrees:
        return False
    return cert.proper


def independence_pair_terms(p: ProductDistribution, i: int, j: int, cap: int = EXPANSION_CAP):
    """Both sides of ``E[a_i] - E[a_j] = (E[Y_i] - E[Y_j]) E[1/((1+n0')(1+n1'))]``.

    ``n0'`` and ``n1'`` count zeros and ones among the coordinates other than
    ``i`` and ``j``; ``a`` is the AUC weight vector ``y / (n0 n1)``.
    """
    P = p.expand(cap)
    k = auc_kernel()
    # sigma of the auc kernel is alpha / 2
    ea = [2 * s for s in expected_sigma(P, k)]
    lhs = ea[i - 1] - ea[j - 1]
    others = [q for idx, q in enumerate(p.p, start=1) if idx not in (i, j)]
    weight = Fraction(0)
    for rest in itertools.product((0, 1), repeat=len(others)):
        prob = Fraction(1)
        for r, q in zip(rest, others):
            prob *= q if r else 1 - q
        if prob:
            n1 = sum(rest)
            n0 = len(rest) - n1
            weight += prob / ((1 + n0) * (1 + n1))
    rhs = (p.p[i - 1] - p.p[j - 1]) * weight
    return lhs, rhs


def verify_independence(p: ProductDistribution, k: Optional[ScoreKernel] = None,
                        cap: int = EXPANSION_CAP) -> bool:
    """Check that ``E[alpha]`` and ``E[Y]`` induce the same preorder, plus the pairwise identity."""
    k = k or auc_kernel()
    P = p.expand(cap)
    same = induce_preorder(expected_sigma(P, k)) == exact_rank(p)
    for i, j in itertools.combinations(range(1, p.n + 1), 2):
        lhs, rhs = independence_pair_terms(p, i, j, cap)
        if lhs != rhs:
            return False
    return same


@dataclass(frozen=True)
class LatentCheck:
    condition_i: bool
    condition_ii: bool
    proper_here: bool
    component_orders: tuple[TotalPreorder, ...] = field(default=())

    @property
    def conditions_hold(self) -> bool:
        return self.condition_i and self.condition_ii


def verify_latent(mix: MixtureDistribution, k: Optional[ScoreKernel] = None,
                  cap: int = EXPANSION_CAP) -> LatentCheck:
    """Per-component agreement of sigma and marginal orders, and agreement across components."""
    k = k or auc_kernel()
    cond_i = True
    orders = []
    for _, comp in mix.components:
        y_order = exact_rank(comp)
        s_order = induce_preorder(expected_sigma(comp.expand(cap), k))
        cond_i = cond_i and y_order == s_order
        orders.append(y_order)
    cond_ii = all(o == orders[0] for o in orders)
    proper = check_propriety(mix.expand(cap), k).proper
    return LatentCheck(cond_i, cond_ii, proper, tuple(orders))


# -- grouped mixtures ------------------------------------------------------------


@dataclass(frozen=True)
class GroupedMixtureSpec:
    """Groups of exchangeable individuals under a finite mixture of i.i.d. models.

    ``groups`` holds ``(size, label)``; each component is ``(weight, probs)``
    with one success probability per group.
    """

    groups: tuple[tuple[int, str], ...]
    components: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]

    def __post_init__(self):
        groups = tuple((int(s), str(lbl)) for s, lbl in self.groups)
        if not groups:
            raise InvalidInputError("at least one group is required")
        if any(s < 1 for s, _ in groups):
            raise InvalidInputError("every group needs a positive size")
        comps = []
        for w, ps in self.components:
            w = to_fraction(w)
            ps = tuple(to_fraction(v) for v in ps)
            if w <= 0:
                raise InvalidInputError("component weights must be positive")
            if len(ps) != len(groups):
                raise InvalidInputError("each component needs one probability per group")
            if any(v < 0 or v > 1 for v in ps):
                raise InvalidInputError("probabilities must lie in [0, 1]")
            comps.append((w, ps))
        if not comps:
            raise InvalidInputError("at least one component is required")
        if sum(w for w, _ in comps) != 1:
            raise InvalidInputError("component weights must sum to 1")
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "components", tuple(comps))

    @property
    def n(self) -> int:
        return sum(s for s, _ in self.groups)

    def group_marginals(self) -> tuple[Fraction, ...]:
        return tuple(
            sum((w * ps[g] for w, ps in self.components), Fraction(0))
            for g in range(len(self.groups))
        )

    def group_indices(self) -> list[tuple[int, ...]]:
        out, start = [], 1
        for size, _ in self.groups:
            out.append(tuple(range(start, start + size)))
            start += size
        return out

    def individual_preorder(self, group_order: TotalPreorder) -> TotalPreorder:
        """Rank individuals by their group's position; members of a group stay tied."""
        self._check_order(group_order)
        idx = self.group_indices()
        classes = [tuple(i for g in cls for i in idx[g - 1]) for cls in group_order.classes]
        return TotalPreorder(self.n, tuple(classes))

    def to_mixture(self) -> MixtureDistribution:
        comps = []
        for w, ps in self.components:
            vec = tuple(ps[g] for g, (size, _) in enumerate(self.groups) for _ in range(size))
            comps.append((w, ProductDistribution(vec)))
        return MixtureDistribution(tuple(comps))

    def _check_order(self, group_order):
        if group_order.n != len(self.groups):
            raise InvalidInputError(
                f"group order ranks {group_order.n} groups, spec has {len(self.groups)}"
            )

    @classmethod
    def from_dict(cls, obj) -> "GroupedMixtureSpec":
        try:
            return cls(
                tuple((g["size"], g.get("label", str(i + 1))) for i, g in enumerate(obj["groups"])),
                tuple((c["w"], tuple(c["p"])) for c in obj["components"]),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed grouped mixture spec ({exc})") from exc

    def to_dict(self) -> dict:
        return {
            "groups": [{"size": s, "label": lbl} for s, lbl in self.groups],
            "components": [
                {"w": format_fraction(w), "p": [format_fraction(v) for v in ps]}
                for w, ps in self.components
            ],
        }


def _binomial_pmf(size: int, p: Fraction) -> list[Fraction]:
    return [comb(size, j) * p**j * (1 - p) ** (size - j) for j in range(size + 1)]


def expected_auc_grouped(spec: GroupedMixtureSpec, group_order: TotalPreorder,
                         degenerate=HALF) -> Fraction:
    """Exact expected AUC when individuals are ranked by group.

    Conditions on the mixture component, then on the number of positives in
    each group (binomial); given those counts the AUC of a group-tied ranking
    depends only on the counts.
    """
    spec._check_order(group_order)
    degenerate = to_fraction(degenerate)
    sizes = [s for s, _ in spec.groups]
    n = sum(sizes)
    auc_cache = {}

    def auc_given(ks):
        if ks not in auc_cache:
            n1 = sum(ks)
            n0 = n - n1
            if n0 == 0 or n1 == 0:
                auc_cache[ks] = degenerate
            else:
                u = Fraction(0)
                neg_below = 0
                for cls in group_order.classes:
                    pos = sum(ks[g - 1] for g in cls)
                    neg = sum(sizes[g - 1] - ks[g - 1] for g in cls)
                    u += pos * neg_below + HALF * pos * neg
                    neg_below += neg
                auc_cache[ks] = u / (n0 * n1)
        return auc_cache[ks]

    total = Fraction(0)
    for w, ps in spec.components:
        pmfs = [_binomial_pmf(s, p) for s, p in zip(sizes, ps)]
        for ks in itertools.product(*(range(s + 1) for s in sizes)):
            prob = w
            for pmf, kg in zip(pmfs, ks):
                prob *= pmf[kg]
            if prob:
                total += prob * auc_given(ks)
    return total


# -- counterexample search ------------------------------------------------------


def random_distribution(rng: random.Random, n: int, max_support: Optional[int] = None,
                        max_weight: int = 16) -> JointDistribution:
    """Sparse random distribution with few atoms and varied positive counts."""
    cells = 2**n
    limit = min(cells, max_support or cells)
    size = min(limit, 2 + int(rng.expovariate(0.6)))
    codes = rng.sample(range(cells), size)
    weights = [rng.randint(1, max_weight) for _ in codes]
    total = sum(weights)
    atoms = tuple(
        (tuple((c >> (n - 1 - b)) & 1 for b in range(n)), Fraction(w, total))
        for c, w in zip(codes, weights)
    )
    return JointDistribution(n, atoms)


def _trial(args):
    k, n, seed, index = args
    rng = random.Random(f"{seed}:{index}")
    cert = check_propriety(random_distribution(rng, n), k)
    return None if cert.proper else cert


def search_counterexamples(
    k: ScoreKernel,
    n: int,
    budget: int,
    seed: int,
    pool: Iterable = (),
    jobs: int = 1,
    cap: int = DEFAULT_CAP,
) -> Iterator[ProprietyCertificate]:
    """Yield improper certificates from ``pool`` then from ``budget`` seeded random trials.

    Trial ``i`` draws from ``random.Random(f"{seed}:{i}")``, so output is the
    same for any ``jobs``.
    """
    if n < 2:
        raise InvalidInputError(f"search needs n >= 2, got {n}")
    if n > cap:
        raise ResourceLimitError(f"search dimension {n} exceeds the preorder enumeration cap", cap=cap)
    for P in pool:
        cert = check_propriety(P, k)
        if not cert.proper:
            yield cert
    tasks = ((k, n, seed, i) for i in range(budget))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for cert in ex.map(_trial, tasks, chunksize=256):
                if cert is not None:
                    yield cert
    else:
        for t in tasks:
            cert = _trial(t)
            if cert is not None:
                yield cert
