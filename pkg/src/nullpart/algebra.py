"""Exact rationals and sparse multivariate polynomials over Q.

Rationals are ``fractions.Fraction`` (always reduced, positive denominator).
A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable,
with no zero exponents; ``()`` is the constant monomial.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .subsets import AmbientMismatch, grevlex_key

Rational = Fraction
Monomial = tuple[tuple[int, int], ...]
Coefficient = Union[int, Fraction]

ONE: Monomial = ()


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a) + Fraction(b)


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a) * Fraction(b)


def rat_neg(a: Fraction) -> Fraction:
    return -Fraction(a)


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    if b == 0:
        raise ZeroDivisionError("rational division by zero")
    return Fraction(a) / Fraction(b)


def format_rational(q: Coefficient) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {type(text).__name__}")
    num, sep, den = text.strip().partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc


def monomial(exponents: Mapping[int, int] | Iterable[tuple[int, int]]) -> Monomial:
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    merged: dict[int, int] = {}
    for var, exp in items:
        if exp < 0:
            raise ValueError(f"negative exponent {exp} on x{var}")
        if exp:
            merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items()))


def square_free(mask: int) -> Monomial:
    """x^S for the subset with bit mask ``mask``."""
    out = []
    var = 1
    while mask:
        if mask & 1:
            out.append((var, 1))
        mask >>= 1
        var += 1
    return tuple(out)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for var, exp in b:
        merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items()))


def monomial_degree(m: Monomial) -> int:
    return sum(exp for _, exp in m)


def monomial_support(m: Monomial) -> int:
    mask = 0
    for var, _ in m:
        mask |= 1 << (var - 1)
    return mask


def _serial_key(m: Monomial) -> tuple:
    return (grevlex_key(monomial_support(m)), monomial_degree(m))


class SparsePolynomial:
    """Polynomial in x_1..x_n with exact rational coefficients.

    ``terms`` maps Monomial -> nonzero Fraction.  Instances are treated as
    immutable; arithmetic returns new objects.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, Coefficient] | None = None):
        self.n = n
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            for var, _ in m:
                if not 1 <= var <= n:
                    raise ValueError(f"variable x{var} outside x1..x{n}")
            if c:
                clean[m] = Fraction(c)
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict[Monomial, Fraction]) -> SparsePolynomial:
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    @classmethod
    def constant(cls, n: int, c: Coefficient) -> SparsePolynomial:
        return cls(n, {ONE: c})

    @classmethod
    def variable(cls, n: int, i: int, coeff: Coefficient = 1) -> SparsePolynomial:
        return cls(n, {((i, 1),): coeff})

    @classmethod
    def zero(cls, n: int) -> SparsePolynomial:
        return cls._raw(n, {})

    def _check(self, other: SparsePolynomial) -> None:
        if self.n != other.n:
            raise AmbientMismatch(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other: SparsePolynomial) -> SparsePolynomial:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return self._raw(self.n, out)

    def __neg__(self) -> SparsePolynomial:
        return self._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: SparsePolynomial) -> SparsePolynomial:
        return self + (-other)

    def __mul__(self, other: SparsePolynomial | Coefficient) -> SparsePolynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for (ma, ca), (mb, cb) in itertools.product(self.terms.items(), other.terms.items()):
            m = monomial_mul(ma, mb)
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return self._raw(self.n, out)

    __rmul__ = __mul__

    def scale(self, c: Coefficient) -> SparsePolynomial:
        if not c:
            return self.zero(self.n)
        return self._raw(self.n, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def is_one(self) -> bool:
        return self.terms == {ONE: 1}

    def degree(self) -> int:
        return max((monomial_degree(m) for m in self.terms), default=-1)

    def evaluate(self, point: Sequence[Coefficient]) -> Fraction:
        if len(point) != self.n:
            raise AmbientMismatch(f"point of length {len(point)} for {self.n} variables")
        total = Fraction(0)
        for m, c in self.terms.items():
            total += c * math.prod(Fraction(point[v - 1]) ** e for v, e in m)
        return total

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in serialization order: descending grevlex of support, then
        descending total degree."""
        return sorted(self.terms.items(), key=lambda kv: _serial_key(kv[0]), reverse=True)

    def to_json(self) -> list[dict]:
        return [
            {"coeff": format_rational(c), "monomial": [[v, e] for v, e in m]}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, n: int, data: list) -> SparsePolynomial:
        if not isinstance(data, list):
            raise ValueError("polynomial must be a list of terms")
        terms: dict[Monomial, Fraction] = {}
        for term in data:
            if not isinstance(term, dict) or set(term) != {"coeff", "monomial"}:
                raise ValueError(f"bad term {term!r}")
            pairs = term["monomial"]
            if not isinstance(pairs, list) or not all(
                isinstance(p, list) and len(p) == 2 and all(type(x) is int for x in p) for p in pairs
            ):
                raise ValueError(f"bad monomial {pairs!r}")
            if any(e <= 0 for _, e in pairs) or len({v for v, _ in pairs}) != len(pairs):
                raise ValueError(f"non-canonical monomial {pairs!r}")
            m = monomial((v, e) for v, e in pairs)
            if m in terms:
                raise ValueError(f"duplicate monomial {pairs!r}")
            terms[m] = parse_rational(term["coeff"])
        return cls(n, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in m)
            if not mono:
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{format_rational(abs(c))}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {body}" if parts else ("-" + body if c < 0 else body))
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"SparsePolynomial(n={self.n}, {self})"


def poly_add(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    return p + q


def poly_mul(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    return p * q


class PartitionProduct(NamedTuple):
    value: int
    factors: list[int]
    signs: list[tuple[int, ...]]


def sign_vectors(length: int) -> Iterable[tuple[int, ...]]:
    """All vectors in {1,-1}^length, lexicographic with +1 before -1."""
    return itertools.product((1, -1), repeat=length)


def partition_polynomial(weights: Sequence[int]) -> PartitionProduct:
    """Evaluate the product over sign vectors s of (sum s_i w_i for i < n) + w_n.

    The last weight is pinned to +1 so each split of W is counted once.
    Factors are listed in the order of ``sign_vectors``.
    """
    w = [int(x) for x in weights]
    if not w:
        raise ValueError("need at least one weight")
    head, last = w[:-1], w[-1]
    signs = list(sign_vectors(len(head)))
    factors = [sum(s * x for s, x in zip(sv, head)) + last for sv in signs]
    return PartitionProduct(math.prod(factors), factors, signs)
