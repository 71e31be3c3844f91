"""Exact dense linear algebra over Z and Q.

Determinants use fraction-free (Bareiss) elimination so every intermediate
is an integer minor.  Linear solves run the same elimination on the
augmented matrix and finish with rational back substitution.  Pivoting is
always "first nonzero entry at or below the diagonal", which keeps results
reproducible.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

MAX_DIM = 2**13


class SingularMatrixError(ArithmeticError):
    pass


class DimensionLimitError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]
    row_labels: tuple[Any, ...] | None = None
    col_labels: tuple[Any, ...] | None = None

    def __post_init__(self) -> None:
        m = len(self.rows)
        if any(len(r) != m for r in self.rows):
            raise ValueError("matrix must be square")
        for labels in (self.row_labels, self.col_labels):
            if labels is not None and len(labels) != m:
                raise ValueError(f"expected {m} labels, got {len(labels)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], row_labels=None, col_labels=None) -> IntMatrix:
        return cls(
            tuple(tuple(int(x) for x in r) for r in rows),
            tuple(row_labels) if row_labels is not None else None,
            tuple(col_labels) if col_labels is not None else None,
        )

    @classmethod
    def identity(cls, m: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows)) if self.rows else (), self.col_labels, self.row_labels)

    def with_column(self, j: int, column: Sequence[int]) -> IntMatrix:
        if len(column) != self.dim:
            raise ValueError("column length mismatch")
        return IntMatrix(
            tuple(r[:j] + (int(c),) + r[j + 1 :] for r, c in zip(self.rows, column)),
            self.row_labels,
            self.col_labels,
        )

    def matvec(self, x: Sequence[Fraction | int]) -> list[Fraction]:
        return [sum((Fraction(a) * b for a, b in zip(r, x) if a), Fraction(0)) for r in self.rows]

    def to_text(self) -> str:
        """Bordered table; labels (if any) go on the left and on top."""
        cells = [[str(x) for x in r] for r in self.rows]
        width = max((len(c) for r in cells for c in r), default=1)
        if self.col_labels is not None:
            width = max(width, *(len(str(c)) for c in self.col_labels))
        lines = []
        if self.row_labels is None and self.col_labels is None:
            for r in cells:
                lines.append("[" + " ".join(c.rjust(width) for c in r) + "]")
            return "\n".join(lines)
        rl = [str(x) for x in self.row_labels] if self.row_labels is not None else [""] * self.dim
        lw = max((len(x) for x in rl), default=0)
        if self.col_labels is not None:
            head = " ".join(str(c).rjust(width) for c in self.col_labels)
            lines.append(" " * lw + " | " + head)
            lines.append("=" * lw + "=+=" + "=" * len(head))
        for label, r in zip(rl, cells):
            lines.append(label.rjust(lw) + " | " + " ".join(c.rjust(width) for c in r))
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(self.rows)
        return buf.getvalue()


def _as_rows(a: IntMatrix | Sequence[Sequence[int]]) -> list[list[int]]:
    rows = a.rows if isinstance(a, IntMatrix) else a
    out = [list(map(int, r)) for r in rows]
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix must be square")
    return out


def _guard(m: int, max_dim: int) -> None:
    if m > max_dim:
        raise DimensionLimitError(f"dimension {m} exceeds limit {max_dim}")


def _structurally_singular(rows: list[list[int]]) -> bool:
    if any(not any(r) for r in rows):
        return True
    live = [False] * len(rows)
    for r in rows:
        for j, x in enumerate(r):
            if x:
                live[j] = True
    return not all(live)


def bareiss_determinant(a: IntMatrix | Sequence[Sequence[int]], max_dim: int = MAX_DIM) -> int:
    rows = _as_rows(a)
    m = len(rows)
    _guard(m, max_dim)
    if m == 0:
        return 1
    if _structurally_singular(rows):
        return 0
    sign = 1
    prev = 1
    # ``rows[i]`` holds only the columns not yet eliminated.
    for k in range(m - 1):
        if rows[k][0] == 0:
            for i in range(k + 1, m):
                if rows[i][0] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot_row = rows[k]
        pivot = pivot_row[0]
        tail = pivot_row[1:]
        for i in range(k + 1, m):
            row = rows[i]
            f = row[0]
            if f:
                rows[i] = [(pivot * x - f * y) // prev for x, y in zip(row[1:], tail)]
            elif pivot == prev:
                rows[i] = row[1:]
            else:
                rows[i] = [pivot * x // prev for x in row[1:]]
        prev = pivot
    return sign * rows[m - 1][0]


def _common_denominator(values: Sequence[Fraction | int]) -> int:
    return math.lcm(*(Fraction(v).denominator for v in values)) if values else 1


def _scaled_integers(values: Sequence[Fraction | int]) -> tuple[list[int], int]:
    d = _common_denominator(values)
    return [int(Fraction(v) * d) for v in values], d


def solve_with_determinant(
    a: IntMatrix | Sequence[Sequence[int]],
    rhs: Sequence[Fraction | int],
    max_dim: int = MAX_DIM,
) -> tuple[list[Fraction], int]:
    """Solve ``a x = rhs`` exactly and return ``(x, det(a))``.

    Raises SingularMatrixError when some column has no nonzero pivot.
    """
    rows = _as_rows(a)
    m = len(rows)
    _guard(m, max_dim)
    if len(rhs) != m:
        raise ValueError(f"rhs length {len(rhs)} != dimension {m}")
    b, scale = _scaled_integers(rhs)
    aug = [r + [bi] for r, bi in zip(rows, b)]
    sign = 1
    prev = 1
    # Upper-triangular rows keep their full width; only the trailing part is
    # updated at each step.
    for k in range(m):
        if aug[k][k] == 0:
            for i in range(k + 1, m):
                if aug[i][k] != 0:
                    aug[k], aug[i] = aug[i], aug[k]
                    sign = -sign
                    break
            else:
                raise SingularMatrixError(f"no pivot in column {k}")
        pivot_row = aug[k]
        pivot = pivot_row[k]
        tail = pivot_row[k + 1 :]
        for i in range(k + 1, m):
            row = aug[i]
            f = row[k]
            if f:
                row[k + 1 :] = [(pivot * x - f * y) // prev for x, y in zip(row[k + 1 :], tail)]
            elif pivot != prev:
                row[k + 1 :] = [pivot * x // prev for x in row[k + 1 :]]
            row[k] = 0
        prev = pivot
    det = sign * aug[m - 1][m - 1] if m else 1
    x = [Fraction(0)] * m
    for k in range(m - 1, -1, -1):
        row = aug[k]
        acc = Fraction(row[m])
        for j in range(k + 1, m):
            if row[j]:
                acc -= row[j] * x[j]
        x[k] = acc / row[k]
    if scale != 1:
        x = [v / scale for v in x]
    return x, det


def solve_exact(
    a: IntMatrix | Sequence[Sequence[int]],
    rhs: Sequence[Fraction | int],
    max_dim: int = MAX_DIM,
) -> list[Fraction]:
    return solve_with_determinant(a, rhs, max_dim)[0]


def cramer_component(
    a: IntMatrix | Sequence[Sequence[int]],
    rhs: Sequence[Fraction | int],
    j: int,
    max_dim: int = MAX_DIM,
    det: int | None = None,
) -> Fraction:
    """x_j = det(a with column j replaced by rhs) / det(a).

    ``det`` may be passed in when the caller already knows det(a).
    """
    rows = _as_rows(a)
    m = len(rows)
    if len(rhs) != m:
        raise ValueError(f"rhs length {len(rhs)} != dimension {m}")
    if not 0 <= j < m:
        raise IndexError(f"column {j} out of range for dimension {m}")
    if det is None:
        det = bareiss_determinant(rows, max_dim)
    if det == 0:
        raise SingularMatrixError("Cramer's rule needs a nonzero determinant")
    b, scale = _scaled_integers(rhs)
    replaced = [r[:j] + [bi] + r[j + 1 :] for r, bi in zip(rows, b)]
    return Fraction(bareiss_determinant(replaced, max_dim), det * scale)
