"""Total preorders on ``{1..n}`` stored as ordered partitions.

A preorder is a sequence of tie classes listed from lowest to highest rank.
Indices are 1-based throughout, matching the ``"[4][3][1,2]"`` text form.
"""
from __future__ import annotations

import itertools
import re
from math import comb
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from ._rational import to_fraction
from .errors import InvalidInputError, ResourceLimitError

DEFAULT_CAP = 8

_CLASS_RE = re.compile(r"\[([^\[\]]*)\]")


@dataclass(frozen=True)
class TotalPreorder:
    n: int
    classes: tuple[tuple[int, ...], ...]
    _position: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInputError(f"n must be a positive integer, got {self.n!r}")
        classes = tuple(tuple(sorted(int(i) for i in c)) for c in self.classes)
        position = [-1] * self.n
        for pos, cls in enumerate(classes):
            if not cls:
                raise InvalidInputError("empty tie class")
            for i in cls:
                if not 1 <= i <= self.n:
                    raise InvalidInputError(f"index {i} outside 1..{self.n}")
                if position[i - 1] != -1:
                    raise InvalidInputError(f"index {i} appears twice")
                position[i - 1] = pos
        if -1 in position:
            missing = [i + 1 for i, p in enumerate(position) if p == -1]
            raise InvalidInputError(f"indices {missing} are not ranked")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "_position", tuple(position))

    @classmethod
    def from_classes(cls, classes: Sequence[Sequence[int]]) -> "TotalPreorder":
        classes = [tuple(c) for c in classes]
        return cls(sum(len(c) for c in classes), tuple(classes))

    @classmethod
    def total_order(cls, order: Sequence[int]) -> "TotalPreorder":
        """Preorder with singleton classes, ``order`` listed lowest first."""
        return cls.from_classes([(i,) for i in order])

    def position(self, i: int) -> int:
        """0-based class position of index ``i``."""
        return self._position[i - 1]

    def le(self, i: int, j: int) -> bool:
        return self._position[i - 1] <= self._position[j - 1]

    def lt(self, i: int, j: int) -> bool:
        return self._position[i - 1] < self._position[j - 1]

    def tied(self, i: int, j: int) -> bool:
        return self._position[i - 1] == self._position[j - 1]

    @property
    def is_total_order(self) -> bool:
        return len(self.classes) == self.n

    def reversed(self) -> "TotalPreorder":
        return TotalPreorder(self.n, self.classes[::-1])

    def restrict(self, m: int) -> "TotalPreorder":
        """Restriction to the indices ``1..m``."""
        if not 1 <= m <= self.n:
            raise InvalidInputError(f"cannot restrict to 1..{m} from n={self.n}")
        kept = [tuple(i for i in c if i <= m) for c in self.classes]
        return TotalPreorder(m, tuple(c for c in kept if c))

    def relation_pairs(self) -> frozenset[tuple[int, int]]:
        """All pairs ``(i, j)`` with ``i ≼ j``."""
        r = range(1, self.n + 1)
        return frozenset((i, j) for i in r for j in r if self.le(i, j))

    def rank_vector(self) -> tuple[int, ...]:
        return rank_vector(self)

    def __str__(self) -> str:
        return "".join("[" + ",".join(map(str, c)) + "]" for c in self.classes)


def parse_preorder(text: str, n: int | None = None) -> TotalPreorder:
    """Parse the ``"[4][3][1,2]"`` form; whitespace is ignored."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise InvalidInputError("empty preorder text")
    pos = 0
    classes = []
    for m in _CLASS_RE.finditer(compact):
        if m.start() != pos:
            raise InvalidInputError(f"unexpected text at position {pos} in {text!r}")
        body = m.group(1)
        try:
            classes.append(tuple(int(tok) for tok in body.split(",")) if body else ())
        except ValueError as exc:
            raise InvalidInputError(f"bad index in class {m.group(0)!r}") from exc
        pos = m.end()
    if pos != len(compact):
        raise InvalidInputError(f"unexpected text at position {pos} in {text!r}")
    p = TotalPreorder.from_classes(classes)
    if n is not None and p.n != n:
        raise InvalidInputError(f"preorder ranks {p.n} indices, expected {n}")
    return p


def induce_preorder(values: Sequence) -> TotalPreorder:
    """Preorder with ``i ≼ j`` iff ``values[i] <= values[j]``; exact ties share a class."""
    vals = [to_fraction(v) for v in values]
    if not vals:
        raise InvalidInputError("cannot induce a preorder from an empty vector")
    order = sorted(range(len(vals)), key=vals.__getitem__)
    classes = []
    for _, grp in itertools.groupby(order, key=vals.__getitem__):
        classes.append(tuple(i + 1 for i in grp))
    return TotalPreorder(len(vals), tuple(classes))


def rank_vector(p: TotalPreorder) -> tuple[int, ...]:
    """Net count of strictly preceding minus strictly following elements."""
    rho = [0] * p.n
    below = 0
    for cls in p.classes:
        above = p.n - below - len(cls)
        for i in cls:
            rho[i - 1] = below - above
        below += len(cls)
    return tuple(rho)


def is_contained(inner: TotalPreorder, outer: TotalPreorder) -> bool:
    """True iff ``i ≼_inner j`` implies ``i ≼_outer j`` for every pair."""
    if inner.n != outer.n:
        raise InvalidInputError(f"size mismatch: {inner.n} vs {outer.n}")
    # inner may only split outer's classes, never reorder them
    for i in range(1, inner.n + 1):
        for j in range(1, inner.n + 1):
            if inner.le(i, j) and not outer.le(i, j):
                return False
    return True


def ordered_bell(n: int) -> int:
    """Number of total preorders on ``n`` elements."""
    return _ordered_bell(n)


@lru_cache(maxsize=None)
def _ordered_bell(n):
    if n == 0:
        return 1
    return sum(comb(n, k) * _ordered_bell(n - k) for k in range(1, n + 1))


def _ordered_partitions(items: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    if not items:
        yield ()
        return
    for size in range(1, len(items) + 1):
        for first in itertools.combinations(items, size):
            rest = tuple(i for i in items if i not in first)
            for tail in _ordered_partitions(rest):
                yield (first,) + tail


def _check_cap(n, cap, what):
    if cap is not None and n > cap:
        raise ResourceLimitError(
            f"{what} over {n} indices exceeds the enumeration cap of {cap}", cap=cap
        )


def enumerate_preorders(n: int, cap: int | None = DEFAULT_CAP) -> Iterator[TotalPreorder]:
    """Lazily yield every total preorder on ``{1..n}`` exactly once."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    _check_cap(n, cap, "enumeration")
    items = tuple(range(1, n + 1))
    return (TotalPreorder(n, parts) for parts in _ordered_partitions(items))


def contained_set(outer: TotalPreorder, cap: int | None = DEFAULT_CAP) -> Iterator[TotalPreorder]:
    """Yield every total preorder contained in ``outer``.

    Each tie class of ``outer`` is expanded independently into its ordered
    partitions; the class sequence itself is preserved.
    """
    _check_cap(max(len(c) for c in outer.classes), cap, "tie-class expansion")
    per_class = [list(_ordered_partitions(c)) for c in outer.classes]

    def gen():
        for combo in itertools.product(*per_class):
            yield TotalPreorder(outer.n, tuple(itertools.chain.from_iterable(combo)))

    return gen()


@lru_cache(maxsize=16)
def all_preorders(n: int, cap: int | None = DEFAULT_CAP) -> tuple[TotalPreorder, ...]:
    """Materialised and cached ``enumerate_preorders(n)``."""
    return tuple(enumerate_preorders(n, cap))
