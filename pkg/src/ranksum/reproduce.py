"""Reference reproductions printed by ``ranksum reproduce``."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from ._rational import format_fraction
from .distributions import exact_rank, expected_score, expected_sigma, marginal_functional
from .kernels import auc_kernel, u_kernel
from .preorder import induce_preorder, rank_vector
from .propriety import check_propriety, expected_auc_grouped
from .reference_cases import (
    INDUCED_GROUP_ORDER,
    OPPOSITE_GROUP_ORDER,
    binary_pair_model,
    counterexample_distribution,
    two_model_spec,
)
from .sequential import iter_sequence, run_sequence
from .theoretical import verify_expected_auc_identity

F = Fraction


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    computed: str
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: reference={self.expected} computed={self.computed}"


def _fmt(v):
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, Fraction):
        return format_fraction(v)
    return str(v)


def _eq(name, expected, computed):
    return Check(name, _fmt(expected), _fmt(computed), expected == computed)


def example3():
    P = counterexample_distribution()
    k = auc_kernel()
    order_p = exact_rank(P)
    alpha_mean = tuple(2 * s for s in expected_sigma(P, k))
    order_a = induce_preorder(alpha_mean)
    cert = check_propriety(P, k, cross_check=True)
    return [
        _eq("E[Y]", (F(1, 2), F(1, 2), F(7, 16), F(1, 16)), marginal_functional(P)),
        _eq("E[alpha(Y)]", (F(1, 8), F(1, 8), F(7, 48), F(1, 48)), alpha_mean),
        _eq("rho(marginal order)", (2, 2, -1, -3), rank_vector(order_p)),
        _eq("rho(alpha order)", (0, 0, 3, -3), rank_vector(order_a)),
        _eq("E[auc] under marginal order", F(31, 48), expected_score(P, k, order_p)),
        _eq("E[auc] under alpha order", F(33, 48), expected_score(P, k, order_a)),
        _eq("auc verdict", "improper", cert.verdict),
        _eq("u verdict", "proper-here", check_propriety(P, u_kernel(), cross_check=True).verdict),
        _eq("brute force agrees", True, cert.brute_force_agrees),
    ]


def example5(tol=5e-4):
    spec = two_model_spec()
    marg = spec.group_marginals()
    induced = expected_auc_grouped(spec, INDUCED_GROUP_ORDER)
    opposite = expected_auc_grouped(spec, OPPOSITE_GROUP_ORDER)
    return [
        _eq("group marginals", (F(27, 40), F(7, 10)), marg),
        Check("E[auc] induced ranking", "0.496", f"{float(induced):.6f}",
              abs(float(induced) - 0.496) <= tol),
        Check("E[auc] opposite ranking", "0.504", f"{float(opposite):.6f}",
              abs(float(opposite) - 0.504) <= tol),
        Check("opposite beats induced", "True", str(opposite > induced), opposite > induced),
    ]


def theorem2():
    theta = binary_pair_model()
    out = []
    for n in (2, 3, 4):
        lhs, rhs = verify_expected_auc_identity(theta, {0: 0, 1: 1}, n)
        out.append(Check(f"expected AUC identity n={n}", _fmt(rhs), _fmt(lhs), lhs == rhs))
    lhs, rhs = verify_expected_auc_identity(theta, {0: 0, 1: 0}, 3)
    out.append(Check("constant map n=3", "1/2", _fmt(lhs), lhs == rhs == F(1, 2)))
    return out


def random_sequence(seed=0, length=10):
    """Seeded 0/1 sequence containing both outcomes."""
    rng = random.Random(seed)
    while True:
        ys = [rng.randint(0, 1) for _ in range(length)]
        if 0 < sum(ys) < length:
            return ys


def sequence_trace(ys):
    """One line per reveal: the outcome seen and the ranking that includes the next index."""
    lines = []
    for state in list(iter_sequence(ys))[1:]:
        lines.append(f"step {state.t:2d}  y={state.outcomes[-1]}  ranking {state.current}")
    final, value = run_sequence(ys)
    lines.append(f"final ranking {final}  auc={_fmt(value)}")
    return lines


def sequential(seed=0, length=10):
    ys = random_sequence(seed, length)
    _, final_auc = run_sequence(ys)
    out = [_eq(f"random sequence {''.join(map(str, ys))}", F(1), final_auc)]
    bad = incompatible = 0
    for m in range(2, 9):
        for seq in itertools.product((0, 1), repeat=m):
            if 0 < sum(seq) < m and run_sequence(seq)[1] != 1:
                bad += 1
            states = list(iter_sequence(seq))
            incompatible += sum(
                b.current.restrict(a.current.n) != a.current or not b.separated()
                for a, b in zip(states, states[1:])
            )
    out.append(_eq("non-degenerate sequences up to length 8 reaching AUC 1", 0, bad))
    out.append(_eq("steps breaking compatibility or separation", 0, incompatible))
    return out


CASES = {"example3": example3, "example5": example5, "theorem2": theorem2, "sequential": sequential}


def run(case: str, seed: int = 0):
    if case == "sequential":
        return sequential(seed)
    return CASES[case]()
