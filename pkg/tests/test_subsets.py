import itertools

import pytest
from hypothesis import given, strategies as st

from nullpart.subsets import (
    AmbientMismatch,
    LimitExceeded,
    Subset,
    build_index,
    grevlex_compare,
    grevlex_key,
    pair_of,
    parse_subset,
    symmetric_difference,
)
from oracles import grevlex_greater


def S(*members, n):
    return Subset.of(members, n)


def all_subsets(n):
    return [Subset(m, n) for m in range(1 << n)]


def test_grevlex_examples():
    assert grevlex_compare(S(2, 3, 4, 5, n=5), S(1, 2, 5, n=5)) == 1
    assert grevlex_compare(S(2, 3, n=5), S(1, 4, n=5)) == 1
    assert grevlex_compare(S(1, 3, n=5), S(1, 3, n=5)) == 0
    assert grevlex_compare(S(1, 2, 4, 5, n=5), S(2, 3, 4, n=5)) == 1
    assert grevlex_compare(S(2, 3, n=5), S(1, 5, n=5)) == 1


def test_grevlex_rejects_mixed_ambient():
    with pytest.raises(AmbientMismatch):
        grevlex_compare(Subset.empty(4), Subset.empty(5))


@pytest.mark.parametrize("n", range(1, 7))
def test_grevlex_matches_literal_definition(n):
    subs = all_subsets(n)
    for s, t in itertools.product(subs, repeat=2):
        expected = 1 if grevlex_greater(s.members, t.members, n) else (0 if s == t else -1)
        assert grevlex_compare(s, t) == expected


@pytest.mark.parametrize("n", range(1, 7))
def test_grevlex_is_strict_total_order(n):
    subs = all_subsets(n)
    for s, t in itertools.product(subs, repeat=2):
        assert grevlex_compare(s, t) == -grevlex_compare(t, s)
        assert (grevlex_compare(s, t) == 0) == (s == t)
        if len(s) > len(t):
            assert grevlex_compare(s, t) == 1
    if n <= 5:
        for a, b, c in itertools.product(subs, repeat=3):
            if grevlex_compare(a, b) == 1 and grevlex_compare(b, c) == 1:
                assert grevlex_compare(a, c) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_sort_key_agrees_with_comparator(n):
    subs = all_subsets(n)
    for s, t in itertools.combinations(subs, 2):
        ks, kt = grevlex_key(s.mask), grevlex_key(t.mask)
        assert (ks > kt) == (grevlex_compare(s, t) == 1)


# Reference pairing table: odd subsets over even subsets of [5].
PAIRING_5 = [
    ("12345", "1234"), ("123", "1235"), ("124", "1245"), ("134", "1345"), ("234", "2345"),
    ("125", "12"), ("135", "13"), ("235", "23"), ("145", "14"), ("245", "24"), ("345", "34"),
    ("1", "15"), ("2", "25"), ("3", "35"), ("4", "45"), ("5", ""),
]


def test_build_index_reproduces_pairing_table():
    idx = build_index(5)
    assert [str(s) for s in idx.col_order] == ["{" + ",".join(c) + "}" for c, _ in PAIRING_5]
    assert [str(s) for s in idx.row_order] == ["{" + ",".join(r) + "}" for _, r in PAIRING_5]


def test_build_index_small_cases():
    idx1 = build_index(1)
    assert idx1.row_order == [Subset.empty(1)]
    assert idx1.col_order == [S(1, n=1)]
    idx3 = build_index(3)
    assert idx3.col_order == [S(1, 2, 3, n=3), S(1, n=3), S(2, n=3), S(3, n=3)]
    assert idx3.row_order == [S(1, 2, n=3), S(1, 3, n=3), S(2, 3, n=3), Subset.empty(3)]


@pytest.mark.parametrize("n", range(1, 11))
def test_index_invariants_and_pair_rank_alignment(n):
    idx = build_index(n)
    rows, cols = idx.row_order, idx.col_order
    assert len(rows) == len(cols) == 2 ** (n - 1)
    assert len(set(rows)) == len(rows) and len(set(cols)) == len(cols)
    assert rows[-1] == Subset.empty(n)
    assert all(s.is_even for s in rows) and not any(s.is_even for s in cols)
    for seq in (rows, cols):
        assert all(grevlex_compare(a, b) == 1 for a, b in zip(seq, seq[1:]))
    top = Subset.of([n], n)
    for r, c in zip(rows, cols):
        assert r ^ c == top
        assert pair_of(r) == c and pair_of(c) == r
        assert idx.row_of(r) == idx.col_of(pair_of(r))


def test_build_index_range():
    with pytest.raises(LimitExceeded):
        build_index(0)
    with pytest.raises(LimitExceeded):
        build_index(21)
    with pytest.raises(LimitExceeded):
        build_index(6, max_n=5)


def test_symmetric_difference_examples():
    a = S(1, 2, 3, n=4)
    assert symmetric_difference(a, S(3, 4, n=4)) == S(1, 2, 4, n=4)
    assert symmetric_difference(a, Subset.empty(4)) == a
    assert symmetric_difference(a, a) == Subset.empty(4)
    with pytest.raises(AmbientMismatch):
        symmetric_difference(a, S(1, n=5))


def test_pair_of_examples():
    assert pair_of(S(1, 2, n=5)) == S(1, 2, 5, n=5)
    assert pair_of(S(1, 5, n=5)) == S(1, n=5)
    assert pair_of(Subset.empty(4)) == S(4, n=4)


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1))))
def test_pair_of_is_parity_flipping_involution(case):
    n, mask = case
    s = Subset(mask, n)
    assert pair_of(pair_of(s)) == s
    assert pair_of(s).is_even != s.is_even


def test_empty_sets_differ_by_ambient():
    assert Subset.empty(4) != Subset.empty(5)


def test_rendering_and_parsing():
    assert str(S(1, 2, 5, n=5)) == "{1,2,5}"
    assert str(Subset.empty(3)) == "{}"
    for s in all_subsets(5):
        assert parse_subset(str(s), 5) == s
    with pytest.raises(ValueError):
        parse_subset("1,2", 3)


def test_subset_validation():
    with pytest.raises(ValueError):
        Subset(0b1000, 3)
    with pytest.raises(ValueError):
        Subset.of([0], 3)
    s = S(2, 4, n=4)
    assert len(s) == 2 and 2 in s and 3 not in s and list(s) == [2, 4]
