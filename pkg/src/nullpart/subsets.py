"""Subsets of [n] as bit masks, graded reverse lexicographic order, and the
even/odd pairing S <-> S ^ {n}.

Bit i-1 of a mask stands for the integer i.  The ambient size n travels with
every Subset so that the empty set over [4] and over [5] are different values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_SUBSET_N = 20


class AmbientMismatch(ValueError):
    """Two subsets over different ground sets were combined."""


class LimitExceeded(ValueError):
    """A size parameter is outside the configured range."""


@dataclass(frozen=True, slots=True)
class Subset:
    mask: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"ambient size must be non-negative, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#b} has members outside 1..{self.n}")

    @classmethod
    def of(cls, members: Iterable[int], n: int) -> Subset:
        mask = 0
        for i in members:
            if not 1 <= i <= n:
                raise ValueError(f"member {i} outside 1..{n}")
            mask |= 1 << (i - 1)
        return cls(mask, n)

    @classmethod
    def empty(cls, n: int) -> Subset:
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> Subset:
        return cls((1 << n) - 1, n)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    @property
    def is_even(self) -> bool:
        return self.mask.bit_count() % 2 == 0

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and 1 <= i <= self.n and bool(self.mask >> (i - 1) & 1)

    def __xor__(self, other: Subset) -> Subset:
        return symmetric_difference(self, other)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"

    def __repr__(self) -> str:
        return f"Subset({self}, n={self.n})"


def parse_subset(text: str, n: int) -> Subset:
    """Inverse of ``str(Subset)``: ``"{1,2,5}"`` -> Subset."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"not a brace list: {text!r}")
    body = body[1:-1].strip()
    if not body:
        return Subset.empty(n)
    return Subset.of((int(tok) for tok in body.split(",")), n)


def _same_ambient(s: Subset, t: Subset) -> None:
    if s.n != t.n:
        raise AmbientMismatch(f"subsets of [{s.n}] and [{t.n}] are not comparable")


def grevlex_compare(s: Subset, t: Subset) -> int:
    """Return 1 if s > t, 0 if equal, -1 if s < t in grevlex.

    Larger cardinality wins; on a tie, s is greater when the right-most
    nonzero coordinate of v_s - v_t is negative, i.e. t owns the largest
    element on which the two sets disagree.
    """
    _same_ambient(s, t)
    ks, kt = s.mask.bit_count(), t.mask.bit_count()
    if ks != kt:
        return 1 if ks > kt else -1
    diff = s.mask ^ t.mask
    if not diff:
        return 0
    top = diff.bit_length() - 1
    return -1 if s.mask >> top & 1 else 1


def grevlex_key(mask: int) -> tuple[int, int]:
    """Sort key that is ascending in grevlex for masks over a common [n].

    Equal-size sets disagree first (from the right) at the highest differing
    bit, and the set lacking that bit is the greater one, so a smaller mask
    is grevlex-greater.
    """
    return (mask.bit_count(), -mask)


def symmetric_difference(s: Subset, t: Subset) -> Subset:
    _same_ambient(s, t)
    return Subset(s.mask ^ t.mask, s.n)


def pair_of(s: Subset) -> Subset:
    """The partner label S ^ {n}; flips parity and is its own inverse."""
    if s.n < 1:
        raise ValueError("pairing needs n >= 1")
    return Subset(s.mask ^ (1 << (s.n - 1)), s.n)


class GrevlexIndex:
    """Even subsets (rows) and odd subsets (columns) of [n], each in descending
    grevlex order, with reverse lookup from mask to position."""

    __slots__ = ("n", "row_masks", "col_masks", "row_rank", "col_rank")

    def __init__(self, n: int, row_masks: tuple[int, ...], col_masks: tuple[int, ...]):
        self.n = n
        self.row_masks = row_masks
        self.col_masks = col_masks
        self.row_rank = {m: i for i, m in enumerate(row_masks)}
        self.col_rank = {m: i for i, m in enumerate(col_masks)}

    @property
    def size(self) -> int:
        return len(self.row_masks)

    @property
    def row_order(self) -> list[Subset]:
        return [Subset(m, self.n) for m in self.row_masks]

    @property
    def col_order(self) -> list[Subset]:
        return [Subset(m, self.n) for m in self.col_masks]

    def row_of(self, s: Subset) -> int:
        if s.n != self.n:
            raise AmbientMismatch(f"row label over [{s.n}], index over [{self.n}]")
        return self.row_rank[s.mask]

    def col_of(self, s: Subset) -> int:
        if s.n != self.n:
            raise AmbientMismatch(f"column label over [{s.n}], index over [{self.n}]")
        return self.col_rank[s.mask]

    def __repr__(self) -> str:
        return f"GrevlexIndex(n={self.n}, size={self.size})"


def build_index(n: int, max_n: int = MAX_SUBSET_N) -> GrevlexIndex:
    if not 1 <= n <= max_n:
        raise LimitExceeded(f"n={n} outside 1..{max_n}")
    ordered = sorted(range(1 << n), key=grevlex_key, reverse=True)
    rows = tuple(m for m in ordered if m.bit_count() % 2 == 0)
    cols = tuple(m for m in ordered if m.bit_count() % 2 == 1)
    return GrevlexIndex(n, rows, cols)
