import pytest
from hypothesis import given
from hypothesis import strategies as st

from dfc.invariance import (
    DefiningSet,
    _below,
    cyclotomic_coset,
    defining_set,
    digits,
    is_affine_invariant,
    is_affine_invariant_local,
    p_adic_leq,
)


def test_coset_examples():
    assert cyclotomic_coset(1, 26, 3) == [1, 3, 9]
    assert cyclotomic_coset(4, 26, 3) == [4, 12, 10]
    assert cyclotomic_coset(13, 26, 3) == [13]
    assert cyclotomic_coset(0, 26, 3) == [0]


@pytest.mark.parametrize("p,m", [(3, 3), (3, 4), (3, 5), (5, 3), (7, 3), (3, 6)])
def test_coset_sizes_divide_m_and_partition(p, m):
    n = p**m - 1
    seen = set()
    for j in range(n):
        if j in seen:
            continue
        coset = cyclotomic_coset(j, n, p)
        assert m % len(coset) == 0
        assert not seen & set(coset)
        seen.update(coset)
    assert seen == set(range(n))


@pytest.mark.parametrize("family", ["c1", "c2"])
@pytest.mark.parametrize("p,m", [(3, 3), (3, 4), (3, 5), (5, 3), (7, 3)])
def test_defining_sets_are_affine_invariant(code, family, p, m):
    spec = code(family, p, m)
    ds = defining_set(spec)
    assert ds.closed_under(p)
    assert is_affine_invariant(ds.members, p, m) == (True, None)
    assert is_affine_invariant_local(ds.members, p, m)[0]


def test_defining_set_contents(code):
    ds = defining_set(code("c1", 3, 3))
    assert sorted(ds) == [0, 1, 2, 3, 4, 6, 9, 10, 12, 18]
    assert len(defining_set(code("c2", 3, 3))) == 7


def test_synthetic_failure_witness():
    ok, witness = is_affine_invariant({0, 4}, 3, 2)
    assert not ok
    s, r = witness
    assert s == 4 and r == 1
    assert p_adic_leq(r, s, 3, 2) and r not in {0, 4}
    assert not is_affine_invariant_local({0, 4}, 3, 2)[0]


def test_missing_zero_fails():
    ok, witness = is_affine_invariant({1, 3, 9}, 3, 3)
    assert not ok and witness == (1, 0)


def test_digits():
    assert digits(10, 3, 3) == [1, 0, 1]
    assert p_adic_leq(1, 10, 3, 3)
    assert not p_adic_leq(2, 10, 3, 3)


@given(st.integers(0, 3**4 - 1))
def test_below_matches_definition(s):
    want = [r for r in range(s + 1) if p_adic_leq(r, s, 3, 4)]
    assert list(_below(s, 3, 4)) == want


@given(st.sets(st.integers(0, 3**3 - 1), max_size=12))
def test_local_and_full_tests_agree(members):
    assert is_affine_invariant(members, 3, 3)[0] == is_affine_invariant_local(members, 3, 3)[0]


@given(st.sets(st.integers(0, 5**2 - 1), max_size=10))
def test_downward_closure_is_invariant(members):
    closure = {r for s in members for r in _below(s, 5, 2)} | {0}
    assert is_affine_invariant(closure, 5, 2)[0]


def test_defining_set_container():
    ds = DefiningSet(26, frozenset({0, 1, 3, 9}))
    assert 3 in ds and 2 not in ds
    assert list(ds) == [0, 1, 3, 9]
    assert ds.closed_under(3)
