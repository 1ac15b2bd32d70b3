from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autsplit.brauer import (BrauerClass, CSADescriptor, GroupDescriptor,
                             NotDivisionInput, base_change_csa,
                             base_change_group, d_part, descent_form,
                             galois_subfield_exists, invariant,
                             non_split_witness, splits_globally_charp,
                             splits_over_subfield, wedderburn)


def test_invariant_examples():
    assert invariant(CSADescriptor(3, 1)) == BrauerClass(1, 3)
    assert invariant(CSADescriptor(1, 0)) == BrauerClass(0, 1)
    assert invariant(CSADescriptor(4, 2)) == BrauerClass(1, 2)


def test_wedderburn_examples():
    assert wedderburn(CSADescriptor(4, 2)) == (2, CSADescriptor(2, 1))
    assert wedderburn(CSADescriptor(3, 1)) == (1, CSADescriptor(3, 1))
    a, div = wedderburn(CSADescriptor(6, 4))
    assert (a, div) == (2, CSADescriptor(3, 2))
    assert invariant(div) == invariant(CSADescriptor(6, 4))


def test_base_change_examples():
    assert base_change_csa(CSADescriptor(3, 1), 1) == CSADescriptor(3, 1)
    split = base_change_csa(CSADescriptor(3, 1), 3)
    assert invariant(split) == BrauerClass(0, 1)
    chained = wedderburn(base_change_csa(CSADescriptor(4, 1), 2))
    assert chained == (2, CSADescriptor(2, 1))


def test_base_change_group_examples():
    g = base_change_group(GroupDescriptor(1, CSADescriptor(4, 1)), 2)
    assert g == GroupDescriptor(2, CSADescriptor(2, 1))
    g = base_change_group(GroupDescriptor(2, CSADescriptor(3, 1)), 1)
    assert g == GroupDescriptor(2, CSADescriptor(3, 1))
    g = base_change_group(GroupDescriptor(2, CSADescriptor(3, 1)), 3)
    assert g == GroupDescriptor(6, CSADescriptor(1, 1))
    assert g.n * g.algebra.d == 6  # total degree preserved
    with pytest.raises(NotDivisionInput):
        base_change_group(GroupDescriptor(1, CSADescriptor(4, 2)), 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.integers(0, 11), st.integers(1, 12))
def test_invariant_base_change_compatible(d, r, m):
    A = CSADescriptor(d, r % d if d > 1 else 0)
    lhs = invariant(base_change_csa(A, m)).as_fraction()
    rhs = (invariant(A).as_fraction() * m) % 1
    assert lhs == rhs


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.integers(0, 11))
def test_wedderburn_preserves_class(d, r):
    A = CSADescriptor(d, r % d if d > 1 else 0)
    a, div = wedderburn(A)
    assert a * div.d == A.d
    assert gcd(div.d, div.r) == 1 or div.d == 1
    assert invariant(div) == invariant(A)


def test_splits_over_subfield_examples():
    assert not splits_over_subfield(1, 2, 2)
    assert splits_over_subfield(2, 2, 2)
    assert splits_over_subfield(1, 3, 2)


def test_galois_subfield_exists_examples():
    assert galois_subfield_exists(2, 1, 2, 5)      # q = p branch
    assert galois_subfield_exists(2, 2, 3, 1)      # 3 | 6
    assert not galois_subfield_exists(3, 1, 5, 1)  # 5 does not divide 2


def test_splits_globally_examples():
    assert splits_globally_charp(1, 3, 2, 1)
    assert not splits_globally_charp(1, 3, 2, 2)
    assert splits_globally_charp(3, 3, 2, 2)


def test_non_split_witness():
    assert non_split_witness(1, 3, 2, 2) == 3
    assert non_split_witness(1, 2, 2, 1) == 2
    assert non_split_witness(3, 3, 2, 2) is None
    w = non_split_witness(1, 2, 3, 2)   # gcd(2, 2*8) = 2 does not divide 1
    assert w is not None and not splits_over_subfield(1, 2, w)


def test_splits_globally_matches_subfield_conjunction():
    # cross-validation by enumerating realizable prime-power degrees <= nd
    for p in (2, 3, 5):
        for i in range(1, 5):
            for d in range(1, 7):
                for n in range(1, 7):
                    conj = True
                    nd = n * d
                    q = 2
                    while q <= nd:
                        is_prime = all(q % k for k in range(2, q))
                        if is_prime:
                            a = 1
                            while q ** a <= nd:
                                if galois_subfield_exists(p, i, q, a):
                                    conj &= splits_over_subfield(n, d, q ** a)
                                a += 1
                        q += 1
                    assert conj == splits_globally_charp(n, d, p, i), \
                        (p, i, d, n)


def test_d_part_examples():
    assert d_part(63, 6) == (7, 9)
    assert d_part(10, 1) == (10, 1)
    assert d_part(3, 3) == (1, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 400), st.integers(1, 40))
def test_d_part_properties(m, d):
    a, b = d_part(m, d)
    assert a * b == m
    assert gcd(a, b) == 1
    assert gcd(d, a) == 1
    # every prime of b divides d
    bb = b
    q = 2
    while q <= bb:
        if bb % q == 0:
            assert d % q == 0
            while bb % q == 0:
                bb //= q
        q += 1


def test_descent_form_examples():
    form = descent_form(1, 3, 1, 2)
    assert form == GroupDescriptor(1, CSADescriptor(3, 2))
    back = base_change_group(form, 2)
    assert back.n == 1
    assert invariant(back.algebra) == BrauerClass(1, 3)
    form = descent_form(2, 2, 1, 2)
    assert form.n == 1 and form.algebra.d == 4 and form.algebra.r % 2 == 1
    assert descent_form(1, 3, 1, 1) == GroupDescriptor(1, CSADescriptor(3, 1))
    assert descent_form(1, 2, 1, 2) is None


def test_descent_round_trip_exhaustive():
    for n in range(1, 5):
        for d in range(1, 5):
            for r in range(d):
                if gcd(d, r) != 1 and not (d == 1 and r == 0):
                    continue
                for m in range(1, 5):
                    form = descent_form(n, d, r, m)
                    if form is None:
                        assert not splits_over_subfield(n, d, m)
                        continue
                    back = base_change_group(form, m)
                    assert back.n == n
                    assert back.algebra.d == d
                    assert invariant(back.algebra) == invariant(
                        CSADescriptor(d, r))
