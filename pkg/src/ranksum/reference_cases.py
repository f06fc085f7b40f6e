"""Canonical inputs: the four-outcome AUC counterexample, the two-model grouped mixture,
and the small covariate model used by the reproduction reports."""
from fractions import Fraction

from .distributions import JointDistribution
from .preorder import parse_preorder
from .propriety import GroupedMixtureSpec
from .theoretical import PairModel


def counterexample_distribution() -> JointDistribution:
    return JointDistribution(
        4,
        (
            ((1, 1, 0, 0), Fraction(1, 2)),
            ((0, 0, 1, 0), Fraction(7, 16)),
            ((0, 0, 0, 1), Fraction(1, 16)),
        ),
    )


def two_model_spec() -> GroupedMixtureSpec:
    """100 outcomes, 10 carrying feature U; models A and B equally likely."""
    return GroupedMixtureSpec(
        ((10, "U"), (90, "notU")),
        (
            (Fraction(1, 2), (Fraction(2, 5), Fraction(1, 2))),
            (Fraction(1, 2), (Fraction(19, 20), Fraction(9, 10))),
        ),
    )


# groups listed lowest first: U below notU follows the marginals 0.675 < 0.7
INDUCED_GROUP_ORDER = parse_preorder("[1][2]")
OPPOSITE_GROUP_ORDER = parse_preorder("[2][1]")


def binary_pair_model() -> PairModel:
    return PairModel(
        (
            (1, 1, Fraction(3, 10)),
            (1, 0, Fraction(1, 10)),
            (0, 1, Fraction(2, 10)),
            (0, 0, Fraction(4, 10)),
        )
    )
