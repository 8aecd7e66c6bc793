"""Cyclic order, weak separation, and the bitmask subset layer."""

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from positroid_lab.cyclic import (
    InvalidInputError,
    KSet,
    cyclic_sort,
    cyclically_ordered,
    format_labels,
    kset_leq,
    pairwise_weakly_separated,
    parse_labels,
    quasi_adjacent,
    weakly_separated,
    weakly_separated_masks,
    _has_witness,
)


def ks(elements, n):
    return KSet.of(elements, n)


def test_cyclically_ordered_examples():
    assert cyclically_ordered((1, 2, 3))
    assert cyclically_ordered((3, 1, 2))
    assert not cyclically_ordered((1, 3, 4, 2))
    assert cyclically_ordered((5,))
    assert cyclically_ordered((4, 2))


def test_cyclically_ordered_rejects_duplicates():
    with pytest.raises(InvalidInputError):
        cyclically_ordered((1, 2, 2))


@given(st.lists(st.integers(min_value=1, max_value=20), min_size=1, max_size=8, unique=True),
       st.integers(min_value=0, max_value=7))
def test_cyclically_ordered_rotation_invariant(seq, r):
    r %= len(seq)
    rotated = seq[r:] + seq[:r]
    assert cyclically_ordered(seq) == cyclically_ordered(rotated)


def test_cyclic_sort_examples():
    assert cyclic_sort(2, ks([1, 3], 4)) == (3, 1)
    assert cyclic_sort(1, ks([2, 4], 4)) == (2, 4)
    assert cyclic_sort(4, ks([1, 3], 4)) == (1, 3)


def test_cyclic_sort_empty_rejected():
    with pytest.raises(InvalidInputError):
        cyclic_sort(1, KSet(0, 4))


def test_weakly_separated_examples():
    assert not weakly_separated(ks([1, 3], 4), ks([2, 4], 4))
    assert weakly_separated(ks([1, 2], 4), ks([2, 3], 4))
    assert weakly_separated(ks([1, 2, 4, 9], 9), ks([1, 2, 6, 7], 9))


def test_weakly_separated_mismatched_ground_sets():
    with pytest.raises(InvalidInputError):
        weakly_separated(ks([1, 2], 4), ks([1, 2], 5))


def test_weak_separation_chord_equals_witness_search():
    # The O(k) chord test and the definition's quadruple search agree on every
    # pair of k-subsets for small ground sets.
    for n in range(3, 9):
        for k in range(1, min(n, 5)):
            subsets = list(combinations(range(1, n + 1), k))
            for a, b in combinations(subsets, 2):
                x, y = ks(a, n), ks(b, n)
                assert weakly_separated(x, y) == (not _has_witness(x, y)), (a, b, n)


def test_weakly_separated_accepts_unequal_sizes():
    assert weakly_separated(ks([1, 2, 3], 6), ks([4, 5], 6))
    assert not weakly_separated(ks([1, 4], 6), ks([2, 3, 5], 6))


@given(st.integers(min_value=3, max_value=12), st.data())
def test_weakly_separated_symmetric_and_reflexive(n, data):
    bits = st.integers(min_value=0, max_value=(1 << n) - 1)
    a = KSet(data.draw(bits), n)
    b = KSet(data.draw(bits), n)
    assert weakly_separated(a, b) == weakly_separated(b, a)
    assert weakly_separated(a, a)


@given(st.integers(min_value=3, max_value=12), st.data())
def test_weakly_separated_small_difference(n, data):
    # |a \ b| <= 1 can never produce an interleaving witness.
    bits = data.draw(st.integers(min_value=0, max_value=(1 << n) - 1))
    a = KSet(bits, n)
    others = [i for i in range(1, n + 1) if i not in a]
    if not a.elements():
        return
    drop = data.draw(st.sampled_from(a.elements()))
    replacement = data.draw(st.sampled_from(others)) if others else None
    moved = set(a.elements()) - {drop}
    if replacement is not None:
        moved.add(replacement)
    assert weakly_separated(a, KSet.of(moved, n))


def test_pairwise_examples():
    assert pairwise_weakly_separated([])
    coll = [ks(s, 4) for s in ((1, 2), (2, 3), (3, 4), (1, 4), (1, 3))]
    assert pairwise_weakly_separated(coll)
    assert not pairwise_weakly_separated([ks([1, 3], 4), ks([2, 4], 4)])


def test_kset_leq_examples():
    assert kset_leq(1, ks([1, 2], 4), ks([1, 3], 4))
    assert kset_leq(2, ks([2, 3], 4), ks([1, 3], 4))
    assert not kset_leq(1, ks([1, 3], 4), ks([1, 2], 4))


def test_kset_leq_size_mismatch():
    with pytest.raises(InvalidInputError):
        kset_leq(1, ks([1], 4), ks([1, 2], 4))


def test_kset_leq_is_a_partial_order():
    n, k = 6, 3
    subsets = [ks(c, n) for c in combinations(range(1, n + 1), k)]
    for anchor in range(1, n + 1):
        for a in subsets:
            assert kset_leq(anchor, a, a)
        for a, b in combinations(subsets, 2):
            if kset_leq(anchor, a, b) and kset_leq(anchor, b, a):
                assert a == b
        smaller = {
            (a.bits, b.bits)
            for a in subsets
            for b in subsets
            if kset_leq(anchor, a, b)
        }
        for a in subsets:
            for b in subsets:
                if (a.bits, b.bits) not in smaller:
                    continue
                for c in subsets:
                    if (b.bits, c.bits) in smaller:
                        assert (a.bits, c.bits) in smaller


def test_quasi_adjacent_examples():
    assert quasi_adjacent(ks([1, 2], 4), ks([2, 3], 4))
    assert not quasi_adjacent(ks([1, 2], 4), ks([3, 4], 4))
    assert quasi_adjacent(ks([1, 2, 3, 4], 9), ks([2, 3, 4, 5], 9))
    assert not quasi_adjacent(ks([1, 2], 4), ks([1, 2], 4))


def test_label_text_round_trip():
    assert format_labels((1, 2, 4, 9)) == "1 2 4 9"
    assert format_labels((3, 10)) == "3 (10)"
    assert parse_labels("3 (10)") == (3, 10)
    assert parse_labels("1 2 4 9") == (1, 2, 4, 9)
    with pytest.raises(InvalidInputError):
        parse_labels("1 x")


def test_kset_validation():
    with pytest.raises(InvalidInputError):
        KSet.of([0], 4)
    with pytest.raises(InvalidInputError):
        KSet.of([5], 4)
    with pytest.raises(InvalidInputError):
        KSet.of([1, 1], 4)
    with pytest.raises(InvalidInputError):
        KSet(1, 40)


def test_mask_level_chord_test_matches_public_api():
    a, b = ks([1, 2, 5], 6), ks([2, 3, 6], 6)
    assert weakly_separated_masks(a.bits, b.bits) == weakly_separated(a, b)
