import itertools
from fractions import Fraction as F

import pytest

from ranksum.errors import InvalidInputError
from ranksum.preorder import TotalPreorder, is_contained, parse_preorder
from ranksum.sequential import SequentialState, insert_next, iter_sequence, run_sequence

P = parse_preorder


def test_initial_state():
    s = SequentialState.initial()
    assert s.t == 0 and str(s.current) == "[1]"


@pytest.mark.parametrize("outcomes, expected", [
    ((0, 1), "[1][3][2]"),
    ((0, 0, 1), "[1][2][4][3]"),
    ((1,), "[2][1]"),
    ((0,), "[1][2]"),
])
def test_insert_examples(outcomes, expected):
    *_, last = iter_sequence(outcomes)
    assert str(last.current) == expected


def test_insert_next_direct():
    assert insert_next((0, 1), P("[1][2]")) == P("[1][3][2]")
    with pytest.raises(InvalidInputError):
        insert_next((0, 1, 1), P("[1][2]"))


@pytest.mark.parametrize("outcomes, expected", [((0, 1, 0, 1, 1), F(1)), ((1, 1, 1), F(1, 2))])
def test_run_examples(outcomes, expected):
    assert run_sequence(outcomes)[1] == expected


def test_empty_sequence_rejected():
    with pytest.raises(InvalidInputError):
        run_sequence(())


def test_degenerate_constant_passes_through():
    assert run_sequence((0, 0), degenerate=F(0))[1] == 0


def test_exhaustive_up_to_eight():
    checked = 0
    for length in range(1, 9):
        for outcomes in itertools.product((0, 1), repeat=length):
            states = list(iter_sequence(outcomes))
            for prev, nxt in zip(states, states[1:]):
                # the earlier ranking is kept verbatim
                assert nxt.current.restrict(prev.current.n) == prev.current
                assert nxt.separated()
                assert len(nxt.current.classes) == nxt.current.n
            final, value = run_sequence(outcomes)
            if 0 < sum(outcomes) < length:
                assert value == 1
                checked += 1
            else:
                assert value == F(1, 2)
            assert is_contained(final, final)
    assert checked == sum(2**k - 2 for k in range(2, 9))


def test_state_validation():
    with pytest.raises(InvalidInputError):
        SequentialState(1, (0,), TotalPreorder(1, ((1,),)))
    with pytest.raises(InvalidInputError):
        SequentialState.initial().observe(3)
