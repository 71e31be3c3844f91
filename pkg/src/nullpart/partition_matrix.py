"""The partition matrix of an integer multiset and its permutation decomposition.

Rows are the even subsets of [n], columns the odd subsets, both in
descending grevlex.  Cell (S, T) holds w_k exactly when S ^ T = {k}.  Every
nonzero cell also remembers *which* weight index put it there, so repeated
weight values (W = {1, 1, 2}) do not hide structural defects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .matrix import IntMatrix
from .subsets import GrevlexIndex, LimitExceeded, Subset, build_index

MAX_N = 14


@dataclass(frozen=True)
class WeightSet:
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("a weight set needs at least one integer")
        for w in self.weights:
            if type(w) is not int:
                raise TypeError(f"weights must be integers, got {w!r}")

    @classmethod
    def of(cls, weights: Iterable[int]) -> WeightSet:
        return cls(tuple(weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    def __getitem__(self, k: int) -> int:
        """1-based access: ``W[k]`` is w_k."""
        if not 1 <= k <= self.n:
            raise IndexError(f"weight index {k} outside 1..{self.n}")
        return self.weights[k - 1]

    def __iter__(self):
        return iter(self.weights)

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.weights)) + "}"


def as_weight_set(w: WeightSet | Sequence[int]) -> WeightSet:
    return w if isinstance(w, WeightSet) else WeightSet.of(w)


@dataclass(frozen=True)
class PermutationPi:
    """Positions of w_k: ``sigma[i] = j`` iff cell (i, j) carries index k."""

    k: int
    sigma: tuple[int, ...]

    def is_permutation(self) -> bool:
        return sorted(self.sigma) == list(range(len(self.sigma)))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.sigma))

    def is_involution(self) -> bool:
        s = self.sigma
        return all(s[j] == i for i, j in enumerate(s))

    def then(self, other: PermutationPi) -> tuple[int, ...]:
        """Index map of the matrix product (self)(other)."""
        return tuple(other.sigma[j] for j in self.sigma)

    def commutes_with(self, other: PermutationPi) -> bool:
        return self.then(other) == other.then(self)

    def to_matrix(self) -> IntMatrix:
        m = len(self.sigma)
        return IntMatrix(tuple(tuple(int(self.sigma[i] == j) for j in range(m)) for i in range(m)))


@dataclass(frozen=True)
class PartitionMatrix:
    weights: WeightSet
    index: GrevlexIndex
    body: IntMatrix
    # positions[i] maps column j -> weight index k for every labeled cell of row i
    positions: tuple[dict[int, int], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.weights.n

    @property
    def dim(self) -> int:
        return self.index.size

    def weight_index(self, i: int, j: int) -> int:
        """k if cell (i, j) is the position of w_k, else 0."""
        return self.positions[i].get(j, 0)

    def nonzero_cells(self) -> list[tuple[int, int, int]]:
        return [(i, j, k) for i, row in enumerate(self.positions) for j, k in sorted(row.items())]

    def to_text(self) -> str:
        return self.body.to_text()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "weights": list(self.weights),
            "rows": [str(s) for s in self.index.row_order],
            "cols": [str(s) for s in self.index.col_order],
            "entries": [list(c) for c in self.nonzero_cells()],
        }


def build(weights: WeightSet | Sequence[int], max_n: int = MAX_N) -> PartitionMatrix:
    w = as_weight_set(weights)
    n = w.n
    if n > max_n:
        raise LimitExceeded(f"n={n} exceeds limit {max_n}")
    idx = build_index(n, max_n=max_n)
    dim = idx.size
    positions = []
    rows = []
    for r in idx.row_masks:
        cells = {}
        row = [0] * dim
        for k in range(1, n + 1):
            j = idx.col_rank[r ^ (1 << (k - 1))]
            cells[j] = k
            row[j] = w.weights[k - 1]
        positions.append(cells)
        rows.append(tuple(row))
    body = IntMatrix(tuple(rows), tuple(idx.row_order), tuple(idx.col_order))
    return PartitionMatrix(w, idx, body, tuple(positions))


class ParityError(ValueError):
    pass


def entry(pm: PartitionMatrix, s_row: Subset, s_col: Subset) -> int:
    if not s_row.is_even:
        raise ParityError(f"row label {s_row} must have even cardinality")
    if s_col.is_even:
        raise ParityError(f"column label {s_col} must have odd cardinality")
    return pm.body[pm.index.row_of(s_row), pm.index.col_of(s_col)]


def decompose(pm: PartitionMatrix) -> list[PermutationPi]:
    """Pi_1..Pi_n as index maps.  Rows lacking some k map to -1."""
    sigmas = [[-1] * pm.dim for _ in range(pm.n)]
    for i, row in enumerate(pm.positions):
        for j, k in row.items():
            if 1 <= k <= pm.n:
                sigmas[k - 1][i] = j
    return [PermutationPi(k + 1, tuple(s)) for k, s in enumerate(sigmas)]


@dataclass
class PropertyReport:
    results: dict[str, bool] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    def record(self, name: str, ok: bool, note: str = "") -> None:
        self.results[name] = ok
        if note and not ok:
            self.notes[name] = note

    def lines(self) -> list[str]:
        out = []
        for name, ok in self.results.items():
            line = f"{'PASS' if ok else 'FAIL'} {name}"
            if name in self.notes:
                line += f"  ({self.notes[name]})"
            out.append(line)
        return out


def _first_bad(pairs: Iterable[tuple[int, int]], pred) -> str:
    for i, j in pairs:
        if not pred(i, j):
            return f"at ({i}, {j})"
    return ""


def check_properties(pm: PartitionMatrix) -> PropertyReport:
    report = PropertyReport()
    n, dim = pm.n, pm.dim
    w = pm.weights
    a = pm.body.rows
    pos = pm.positions
    idx = pm.index
    all_cells = list(itertools.product(range(dim), repeat=2))

    bad = _first_bad(
        all_cells,
        lambda i, j: a[i][j] == a[j][i] and pos[i].get(j) == pos[j].get(i),
    )
    report.record("symmetric", not bad, bad)

    bad = _first_bad(((i, i) for i in range(dim)), lambda i, _: a[i][i] == w[n] and pos[i].get(i) == n)
    report.record("diagonal_is_w_n", not bad, bad)

    full = list(range(1, n + 1))
    cols: list[list[int]] = [[] for _ in range(dim)]
    bad = ""
    for i, row in enumerate(pos):
        if sorted(row.values()) != full and not bad:
            bad = f"row {i}"
        for j, k in row.items():
            cols[j].append(k)
    if not bad:
        bad = next((f"column {j}" for j, ks in enumerate(cols) if sorted(ks) != full), "")
    report.record("once_per_row_and_column", not bad, bad)

    def rule(i: int, j: int) -> bool:
        diff = idx.row_masks[i] ^ idx.col_masks[j]
        k = pos[i].get(j, 0)
        if diff.bit_count() == 1:
            return k == diff.bit_length()
        return k == 0

    bad = _first_bad(all_cells, rule)
    report.record("symmetric_difference_rule", not bad, bad)

    pis = decompose(pm)
    perms_ok = all(p.is_permutation() for p in pis)
    report.record("pi_are_permutations", perms_ok)
    report.record("pi_n_identity", perms_ok and pis[-1].is_identity())
    report.record("pi_involutory", perms_ok and all(p.is_involution() for p in pis))
    bad = ""
    if perms_ok:
        for p, q in itertools.combinations(pis, 2):
            if not p.commutes_with(q):
                bad = f"Pi_{p.k} Pi_{q.k}"
                break
    report.record("pi_pairwise_commute", perms_ok and not bad, bad or ("" if perms_ok else "not permutations"))

    expected = [[0] * dim for _ in range(dim)]
    for p in pis:
        for i, j in enumerate(p.sigma):
            if j >= 0:
                expected[i][j] += w[p.k]
    bad = _first_bad(all_cells, lambda i, j: expected[i][j] == a[i][j])
    report.record("sum_w_k_pi_k_reconstructs", not bad, bad)
    return report
