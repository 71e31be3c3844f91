"""Nullstellensatz refutations for Partition.

W is encoded as x_i^2 - 1 = 0 (i = 1..n) together with sum w_i x_i = 0.  When
W has no equal-sum split, the identity

    1 = sum_i (sum_S c_{i,S} x^S)(x_i^2 - 1) + (sum_T b_T x^T)(sum_i w_i x_i)

holds with S ranging over even subsets of [n] \\ {i} and T over odd subsets
of [n].  The b_T solve the partition-matrix system; each c_{i,S} is then
forced to be -w_i b_{S+i}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra import SparsePolynomial, sign_vectors, square_free
from .matrix import (
    SingularMatrixError,
    bareiss_determinant,
    cramer_component,
    solve_with_determinant,
)
from .partition_matrix import MAX_N, PartitionMatrix, WeightSet, as_weight_set, build
from .subsets import AmbientMismatch, GrevlexIndex, LimitExceeded, Subset, build_index

BRUTE_FORCE_MAX_N = 30


@dataclass(frozen=True)
class PolynomialSystem:
    weights: WeightSet
    generators: tuple[SparsePolynomial, ...]

    @property
    def n(self) -> int:
        return self.weights.n

    @property
    def squares(self) -> tuple[SparsePolynomial, ...]:
        return self.generators[:-1]

    @property
    def linear(self) -> SparsePolynomial:
        return self.generators[-1]

    def evaluate(self, point: Sequence[int]) -> list[Fraction]:
        return [g.evaluate(point) for g in self.generators]

    def vanishes_at(self, point: Sequence[int]) -> bool:
        return not any(self.evaluate(point))


def encode(weights: WeightSet | Sequence[int]) -> PolynomialSystem:
    w = as_weight_set(weights)
    n = w.n
    gens = [SparsePolynomial(n, {((i, 2),): 1, (): -1}) for i in range(1, n + 1)]
    gens.append(SparsePolynomial(n, {((i, 1),): wi for i, wi in enumerate(w, start=1)}))
    return PolynomialSystem(w, tuple(gens))


@dataclass(frozen=True)
class PartitionWitness:
    """An equal-sum split; ``side`` always contains n."""

    side: Subset
    weights: WeightSet

    @property
    def complement(self) -> Subset:
        return Subset(self.side.mask ^ ((1 << self.side.n) - 1), self.side.n)

    def sums(self) -> tuple[int, int]:
        return (
            sum(self.weights[i] for i in self.side),
            sum(self.weights[i] for i in self.complement),
        )

    def is_valid(self) -> bool:
        a, b = self.sums()
        return a == b and self.side.n == self.weights.n and self.weights.n in self.side

    def __str__(self) -> str:
        return f"{self.side} | {self.complement}"


def _first_by_sum(weights: Sequence[int]) -> dict[int, tuple[int, ...]]:
    """Signed sum -> lexicographically first sign vector reaching it."""
    first: dict[int, tuple[int, ...]] = {}
    for sv in sign_vectors(len(weights)):
        first.setdefault(sum(s * x for s, x in zip(sv, weights)), sv)
    return first


def brute_force_partition(
    weights: WeightSet | Sequence[int], max_n: int = BRUTE_FORCE_MAX_N
) -> PartitionWitness | None:
    """First equal-sum split in lexicographic sign order (+1 before -1), w_n
    fixed on the positive side, or None.

    Meet in the middle: the sign vector is split into a prefix and a suffix;
    walking prefixes in order and taking the first suffix that closes the sum
    reproduces the plain lexicographic scan in O(2^(n/2)) time.
    """
    w = as_weight_set(weights)
    n = w.n
    if n > max_n:
        raise LimitExceeded(f"n={n} exceeds brute-force limit {max_n}")
    head, last = list(w.weights[:-1]), w.weights[-1]
    h = len(head) // 2
    prefix_w, suffix_w = head[:h], head[h:]
    suffixes = _first_by_sum(suffix_w)
    for pv in sign_vectors(len(prefix_w)):
        need = -(sum(s * x for s, x in zip(pv, prefix_w)) + last)
        sv = suffixes.get(need)
        if sv is not None:
            signs = pv + sv
            mask = 1 << (n - 1)
            for i, s in enumerate(signs):
                if s == 1:
                    mask |= 1 << i
            return PartitionWitness(Subset(mask, n), w)
    return None


class NotCertifiable(Exception):
    """W is partitionable, so no refutation exists."""

    def __init__(self, witness: PartitionWitness):
        super().__init__(f"partitionable: {witness}")
        self.witness = witness


class ConsistencyError(ArithmeticError):
    """The coefficient equations are violated; indicates a solver defect."""


def _rhs(index: GrevlexIndex) -> list[int]:
    e = [0] * index.size
    e[index.row_rank[0]] = 1
    return e


def _witness_or_raise(w: WeightSet) -> NotCertifiable:
    witness = brute_force_partition(w)
    if witness is None:
        raise ConsistencyError(f"partition matrix of {w} is singular but no split was found")
    return NotCertifiable(witness)


def _solve(w: WeightSet, max_n: int, method: str) -> tuple[PartitionMatrix, list[Fraction], int]:
    pm = build(w, max_n=max_n)
    rhs = _rhs(pm.index)
    if method == "solve":
        try:
            b, det = solve_with_determinant(pm.body, rhs)
        except SingularMatrixError:
            raise _witness_or_raise(w) from None
    elif method == "cramer":
        det = bareiss_determinant(pm.body)
        if det == 0:
            raise _witness_or_raise(w)
        b = [cramer_component(pm.body, rhs, j, det=det) for j in range(pm.dim)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return pm, b, det


def solve_b(
    weights: WeightSet | Sequence[int], max_n: int = MAX_N, method: str = "solve"
) -> list[Fraction]:
    """b_T for every odd T, ordered like the partition-matrix columns."""
    return _solve(as_weight_set(weights), max_n, method)[1]


def derive_c(
    weights: WeightSet | Sequence[int],
    b: Sequence[Fraction],
    index: GrevlexIndex | None = None,
) -> dict[tuple[int, int], Fraction]:
    """All c_{i,S}, keyed by ``(i, mask of S)``, after checking every
    coefficient equation of the expanded identity."""
    w = as_weight_set(weights)
    n = w.n
    if index is None:
        index = build_index(n)
    if len(b) != index.size:
        raise ValueError(f"expected {index.size} b-values, got {len(b)}")
    b_of = dict(zip(index.col_masks, map(Fraction, b)))
    c: dict[tuple[int, int], Fraction] = {}
    for t, bt in b_of.items():
        for i in range(1, n + 1):
            bit = 1 << (i - 1)
            if t & bit:
                c[(i, t ^ bit)] = -w[i] * bt

    constant = -sum(c[(i, 0)] for i in range(1, n + 1))
    if constant != 1:
        raise ConsistencyError(f"constant term is {constant}, not 1")
    for s in index.row_masks:
        if s == 0:
            continue
        total = Fraction(0)
        for j in range(1, n + 1):
            bit = 1 << (j - 1)
            if s & bit:
                total += b_of[s ^ bit] * w[j]
            else:
                total -= c[(j, s)]
        if total:
            raise ConsistencyError(f"coefficient of x^{Subset(s, n)} is {total}, not 0")
    return c


@dataclass
class Certificate:
    weights: WeightSet
    beta_squares: list[SparsePolynomial]
    beta_linear: SparsePolynomial
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.weights.n

    def b(self, s: Subset) -> Fraction:
        return self.beta_linear.coefficient(square_free(s.mask))

    def c(self, i: int, s: Subset) -> Fraction:
        return self.beta_squares[i - 1].coefficient(square_free(s.mask))

    def degree(self) -> int:
        return max(p.degree() for p in [*self.beta_squares, self.beta_linear])

    def support_violations(self) -> list[str]:
        """Monomials lying outside the template's allowed support."""
        out = []
        for m in self.beta_linear.terms:
            if any(e != 1 for _, e in m) or len(m) % 2 == 0:
                out.append(f"beta_linear has {m}")
        for i, p in enumerate(self.beta_squares, start=1):
            for m in p.terms:
                if any(e != 1 for _, e in m) or len(m) % 2 or any(v == i for v, _ in m):
                    out.append(f"beta_squares[{i}] has {m}")
        return out

    def zero_b_labels(self, index: GrevlexIndex) -> list[Subset]:
        """Odd subsets whose b-coefficient came out zero."""
        return [s for s in index.col_order if not self.b(s)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "weights": list(self.weights),
            "beta_squares": [p.to_json() for p in self.beta_squares],
            "beta_linear": self.beta_linear.to_json(),
            "meta": dict(self.meta),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> Certificate:
        if not isinstance(data, dict):
            raise ValueError("certificate must be a JSON object")
        missing = {"n", "weights", "beta_squares", "beta_linear"} - set(data)
        if missing:
            raise ValueError(f"certificate lacks {sorted(missing)}")
        n = data["n"]
        if type(n) is not int or n < 1:
            raise ValueError(f"bad n {n!r}")
        raw_w = data["weights"]
        if not isinstance(raw_w, list) or not all(type(x) is int for x in raw_w) or not raw_w:
            raise ValueError("weights must be a nonempty list of integers")
        squares = data["beta_squares"]
        if not isinstance(squares, list) or len(squares) != n:
            raise ValueError(f"beta_squares must list {n} polynomials")
        meta = data.get("meta", {})
        if not isinstance(meta, dict):
            raise ValueError("meta must be an object")
        return cls(
            WeightSet(tuple(raw_w)),
            [SparsePolynomial.from_json(n, p) for p in squares],
            SparsePolynomial.from_json(n, data["beta_linear"]),
            meta,
        )

    @classmethod
    def loads(cls, text: str) -> Certificate:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"not JSON: {exc}") from exc
        return cls.from_json(data)

    def to_text(self) -> str:
        lines = ["1 ="]
        for i, p in enumerate(self.beta_squares, start=1):
            lines.append(f"  {'+ ' if i > 1 else ''}({p}) * (x{i}^2 - 1)")
        lin = " + ".join(f"{w}*x{i}" for i, w in enumerate(self.weights, start=1))
        lines.append(f"  + ({self.beta_linear}) * ({lin})")
        return "\n".join(lines)


def assemble(w: WeightSet, index: GrevlexIndex, b: Sequence[Fraction], meta: dict | None = None) -> Certificate:
    n = w.n
    c = derive_c(w, b, index)
    terms: list[dict] = [{} for _ in range(n)]
    for (i, s), v in c.items():
        if v:
            terms[i - 1][square_free(s)] = v
    squares = [SparsePolynomial(n, t) for t in terms]
    linear = SparsePolynomial(n, {square_free(t): v for t, v in zip(index.col_masks, b) if v})
    return Certificate(w, squares, linear, dict(meta or {}))


def build_certificate(
    weights: WeightSet | Sequence[int], max_n: int = MAX_N, method: str = "solve"
) -> Certificate:
    """Raises NotCertifiable (carrying a witness) when W is partitionable."""
    w = as_weight_set(weights)
    pm, b, det = _solve(w, max_n, method)
    return assemble(w, pm.index, b, {"det": str(det), "method": method})


@dataclass(frozen=True)
class Verification:
    passed: bool
    residual: SparsePolynomial


def expand(cert: Certificate, system: PolynomialSystem) -> SparsePolynomial:
    if cert.n != system.n:
        raise AmbientMismatch(f"certificate for n={cert.n}, system for n={system.n}")
    total = cert.beta_linear * system.linear
    for beta, g in zip(cert.beta_squares, system.squares):
        total = total + beta * g
    return total


def verify_certificate(cert: Certificate, system: PolynomialSystem) -> Verification:
    residual = expand(cert, system) - SparsePolynomial.constant(system.n, 1)
    return Verification(not residual, residual)


def template_slots(n: int) -> Iterator[tuple[int, int]]:
    """Every coefficient position of the template as ``(generator, mask)``:
    generator i in 1..n is x_i^2 - 1 (mask even, avoiding i); 0 is the
    linear form (mask odd)."""
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        for s in range(1 << n):
            if not s & bit and s.bit_count() % 2 == 0:
                yield (i, s)
    for t in range(1 << n):
        if t.bit_count() % 2:
            yield (0, t)


def perturbed(cert: Certificate, slot: tuple[int, int], delta: Fraction | int = 1) -> Certificate:
    i, mask = slot
    bump = SparsePolynomial(cert.n, {square_free(mask): delta})
    squares = list(cert.beta_squares)
    linear = cert.beta_linear
    if i == 0:
        linear = linear + bump
    else:
        squares[i - 1] = squares[i - 1] + bump
    return Certificate(cert.weights, squares, linear, dict(cert.meta))

