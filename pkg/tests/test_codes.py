import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfc.codes import (
    CodeSpec,
    closed_form_rows,
    codeword,
    dimension_check,
    hamming_weight,
    minimum_distance,
    weight1_core,
    weight_distribution_bruteforce,
    weight_distribution_closed,
    weight_from_counts,
    weight_of,
)
from dfc.gf import make_field

CASES = [
    ("c1", 3, 3, 1),
    ("c1", 3, 4, 1),
    ("c1", 3, 4, 3),
    ("c1", 5, 3, 1),
    ("c2", 3, 3, 1),
    ("c2", 3, 4, 1),
    ("c2", 3, 5, 1),
    ("c2", 5, 3, 1),
    ("c2", 5, 4, 1),
]


@pytest.mark.parametrize("family,p,m,l", CASES)
def test_bruteforce_matches_closed_form(code, family, p, m, l):
    spec = code(family, p, m, l)
    brute = weight_distribution_bruteforce(spec)
    assert brute == weight_distribution_closed(spec)
    assert sum(brute.values()) == spec.size


@pytest.mark.parametrize("family,p,m,l", CASES)
def test_dimension(code, family, p, m, l):
    spec = code(family, p, m, l)
    assert dimension_check(spec) == spec.expected_dimension


@pytest.mark.parametrize(
    "family,p,m,d",
    [("c1", 3, 3, 9), ("c1", 3, 4, 36), ("c2", 3, 3, 15), ("c2", 3, 4, 45), ("c2", 5, 3, 95)],
)
def test_minimum_distance(code, family, p, m, d):
    assert minimum_distance(weight_distribution_bruteforce(code(family, p, m))) == d


def test_printed_row_differs_beyond_m3():
    # the printed c1 odd-m factor ends in +2, the enumerated one in +p^(m-3)+1
    assert weight1_core(3, 3) == weight1_core(3, 3, as_printed=True)
    assert weight1_core(3, 5) - weight1_core(3, 5, as_printed=True) == 3**2 - 1


def test_printed_row_mismatch_at_m5(code):
    # frozen from exhaustive enumeration at (3, 5); see test_acceptance for the full run
    spec = code("c1", 3, 5)
    printed = dict(closed_form_rows(spec, as_printed=True))
    derived = dict(closed_form_rows(spec))
    assert derived[162] == 20158116
    assert printed[162] == 20152308


@pytest.mark.parametrize("p,m", [(3, 7), (5, 5), (7, 5), (3, 6), (5, 6), (11, 3)])
@pytest.mark.parametrize("family", ["c1", "c2"])
def test_closed_form_totals(family, p, m):
    spec = CodeSpec(family, make_field(p, m))
    dist = weight_distribution_closed(spec)
    assert sum(dist.values()) == spec.size
    # at m = 3 a general row also lands on weight p^m and merges with the constants
    assert dist[p**m] >= p - 1
    assert closed_form_rows(spec)[-1] == (p**m, p - 1)


def test_codeword_weight_paths_agree(code):
    spec = code("c1", 3, 4)
    rng = np.random.default_rng(7)
    for a, b, c, h in zip(*(rng.integers(0, 81, 1000) for _ in range(3)), rng.integers(0, 3, 1000)):
        a, b, c, h = int(a), int(b), int(c), int(h)
        assert hamming_weight(codeword(spec, a, b, c, h)) == weight_of(spec, a, b, c, h)


field_34 = make_field(3, 4)
spec_34 = CodeSpec("c2", field_34)
params = st.integers(0, field_34.q - 1)


@given(params, params, params, params, st.integers(0, 2))
@settings(max_examples=60, deadline=None)
def test_code_is_linear(a1, c1, a2, c2, h):
    f = field_34
    w1 = codeword(spec_34, a1, 0, c1, h)
    w2 = codeword(spec_34, a2, 0, c2, 0)
    w3 = codeword(spec_34, f.add(a1, a2), 0, f.add(c1, c2), h)
    assert np.array_equal((w1.astype(int) + w2) % 3, w3)


def test_weight_from_counts():
    # N = (5, 2, 2) at q = 9: h = 0 keeps 4 nonzero, h = 1 moves the 2s at j = 2 to 0
    assert weight_from_counts([5, 2, 2], 0, 9) == 4
    assert weight_from_counts([5, 2, 2], 1, 9) == 7


def test_c2_rejects_quadratic_term(code):
    with pytest.raises(ValueError):
        codeword(code("c2", 3, 3), 1, 1, 0, 0)


@pytest.mark.parametrize("family,p,m,l", [("c3", 3, 3, 1), ("c1", 3, 2, 1), ("c1", 3, 4, 2)])
def test_codespec_rejects(field_cache, family, p, m, l):
    with pytest.raises(ValueError):
        CodeSpec(family, field_cache(p, m), l)
