"""Sequential ranking: keep every revealed positive above every revealed negative.

After each outcome is revealed, the next unobserved index is inserted as a
singleton class between the block of observed zeros and the block of
observed ones. The ranking of earlier indices is never changed, and the
realised AUC ends at 1 for any sequence containing both outcomes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InvalidInputError
from .kernels import HALF, as_outcomes, auc
from .preorder import TotalPreorder


@dataclass(frozen=True)
class SequentialState:
    """``t`` revealed outcomes and a ranking ``current`` of indices ``1..t+1``."""

    t: int
    outcomes: tuple[int, ...]
    current: TotalPreorder

    def __post_init__(self):
        if len(self.outcomes) != self.t or self.current.n != self.t + 1:
            raise InvalidInputError("state needs t outcomes and a ranking of t+1 indices")

    @classmethod
    def initial(cls) -> "SequentialState":
        return cls(0, (), TotalPreorder(1, ((1,),)))

    def observe(self, outcome: int) -> "SequentialState":
        """Reveal the outcome of index ``t+1`` and rank index ``t+2``."""
        (outcome,) = as_outcomes((outcome,))
        outcomes = self.outcomes + (outcome,)
        return SequentialState(self.t + 1, outcomes, insert_next(outcomes, self.current))

    def separated(self) -> bool:
        """Every observed one is ranked strictly above every observed zero."""
        obs = self.current.restrict(self.t) if self.t else None
        if obs is None:
            return True
        ones = [i for i, y in enumerate(self.outcomes, 1) if y == 1]
        zeros = [i for i, y in enumerate(self.outcomes, 1) if y == 0]
        return all(obs.lt(i, j) for i in zeros for j in ones)


def insert_next(outcomes: Sequence[int], ranked: TotalPreorder) -> TotalPreorder:
    """Extend ``ranked`` (on ``1..t``) with index ``t+1`` between observed zeros and ones.

    With no observed ones the new index goes on top; with no observed zeros
    it goes to the bottom.
    """
    t = len(outcomes)
    if ranked.n != t:
        raise InvalidInputError(f"ranking covers {ranked.n} indices but {t} outcomes were given")
    new = t + 1
    classes = list(ranked.classes)
    cut = len(classes)
    for pos, cls in enumerate(classes):
        if any(outcomes[i - 1] == 1 for i in cls):
            cut = pos
            break
    classes.insert(cut, (new,))
    return TotalPreorder(new, tuple(classes))


def iter_sequence(outcomes: Sequence[int]) -> Iterator[SequentialState]:
    """States after each reveal, starting from the initial state."""
    state = SequentialState.initial()
    yield state
    for y in as_outcomes(outcomes):
        state = state.observe(y)
        yield state


def run_sequence(outcomes: Sequence[int], degenerate=HALF) -> tuple[TotalPreorder, Fraction]:
    """Final ranking of the revealed indices and its realised AUC."""
    *_, last = iter_sequence(outcomes)
    final = last.current.restrict(last.t)
    return final, auc(last.outcomes, final, degenerate)
