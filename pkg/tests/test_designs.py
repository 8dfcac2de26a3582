from collections import defaultdict
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from dfc.codes import codeword, weight_distribution_bruteforce
from dfc.designs import (
    Design,
    DesignParams,
    EmptyDesignError,
    NotADesignError,
    check_weight,
    closed_form_lambdas,
    extract_design,
    lambda_from_identity,
    pair_coverage,
    support_bound,
    verify_2_design,
)
from dfc.sums import BudgetExceeded


def scan_bound(p, d, n):
    return max(w for w in range(n + 1) if w - (w + p - 2) // (p - 1) < d)


@pytest.mark.parametrize("p,d,n,want", [(3, 9, 27, 17), (3, 45, 81, 81), (3, 36, 81, 71), (5, 95, 125, 125), (3, 100, 81, 81)])
def test_support_bound(p, d, n, want):
    assert support_bound(p, d, n) == want == scan_bound(p, d, n)


@pytest.mark.parametrize(
    "family,p,m,i,b,lam",
    [
        ("c1", 3, 3, 9, 39, 4),
        ("c1", 3, 3, 12, 702, 132),
        ("c1", 3, 3, 15, 7020, 2100),
        ("c2", 3, 3, 15, 351, 105),
        ("c2", 3, 3, 18, 390, 170),
        ("c2", 3, 3, 21, 351, 210),
        ("c2", 3, 4, 45, 180, 55),
        ("c2", 3, 4, 72, 90, 71),
    ],
)
def test_small_designs(code, family, p, m, i, b, lam):
    design = extract_design(code(family, p, m), i)
    assert design.b == b
    assert verify_2_design(design) == lam
    assert lambda_from_identity(b, i, p**m) == lam
    assert set(design.multiplicity.tolist()) == {p - 1}


def test_blocks_sorted_and_distinct(code):
    design = extract_design(code("c1", 3, 3), 9)
    blocks = design.blocks
    assert blocks == sorted(blocks)
    assert len(set(blocks)) == len(blocks)
    assert all(len(blk) == 9 for blk in blocks)


def test_scalar_multiples_share_supports(code):
    # spot check: codewords with a common support are exactly the p - 1 scalar multiples
    spec = code("c1", 3, 3)
    f = spec.field
    groups = defaultdict(list)
    rng = np.random.default_rng(3)
    for _ in range(4000):
        a, b, c = (int(x) for x in rng.integers(0, f.q, 3))
        h = int(rng.integers(0, 3))
        w = codeword(spec, a, b, c, h)
        if np.count_nonzero(w) == 9:
            groups[tuple(np.flatnonzero(w))].append(w)
    assert groups
    for words in groups.values():
        ref = words[0]
        for w in words:
            assert any(np.array_equal(w, (k * ref.astype(int)) % 3) for k in (1, 2))


def test_beyond_bound_blocks_merge(code):
    design = extract_design(code("c1", 3, 3), 24)
    # 702 codewords collapse onto 117 supports; constant coverage still holds
    assert design.b == 117
    assert int(design.multiplicity.sum()) == 702
    assert verify_2_design(design) == 92


def test_pair_coverage_against_counter():
    rng = np.random.default_rng(0)
    blocks = {tuple(sorted(rng.choice(9, 4, replace=False).tolist())) for _ in range(20)}
    design = Design.from_blocks(9, blocks)
    want = []
    for i in range(9):
        for j in range(i + 1, 9):
            want.append(sum(1 for blk in blocks if i in blk and j in blk))
    assert pair_coverage(design).tolist() == want


def test_degenerate_design():
    assert verify_2_design(Design.from_blocks(2, [(0, 1)])) == 1


def test_fano_plane():
    fano = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    design = Design.from_blocks(7, fano)
    assert verify_2_design(design) == 1
    assert DesignParams(7, 3, 1, 7).consistent


def test_not_a_design_witness():
    with pytest.raises(NotADesignError) as exc:
        verify_2_design(Design.from_blocks(4, [(0, 1), (0, 2)]))
    assert exc.value.count != exc.value.reference


def test_empty_design_errors(code):
    with pytest.raises(EmptyDesignError):
        Design.from_blocks(5, [])
    with pytest.raises(EmptyDesignError):
        extract_design(code("c1", 3, 3), 10)


def test_block_cap(code):
    with pytest.raises(BudgetExceeded):
        extract_design(code("c1", 3, 3), 18, max_blocks=100)


def test_shards_do_not_change_design(code):
    spec = code("c2", 3, 4)
    one = extract_design(spec, 54, shards=1)
    two = extract_design(spec, 54, shards=2)
    assert np.array_equal(one.incidence, two.incidence)


@pytest.mark.parametrize(
    "b,k,v,want",
    [(39, 9, 27, 4), (720, 36, 81, 140), (2280, 54, 81, 1007), (1, 3, 4, Fraction(1, 2))],
)
def test_lambda_identity(b, k, v, want):
    assert lambda_from_identity(b, k, v) == want


def test_lambda_identity_rejects():
    with pytest.raises(ValueError):
        lambda_from_identity(1, 5, 4)


@pytest.mark.parametrize(
    "family,p,m,want",
    [
        ("c2", 3, 3, {(15, 105), (18, 170), (21, 210)}),
        ("c2", 3, 4, {(45, 55), (54, 1007), (48, 846), (57, 2394), (72, 71)}),
    ],
)
def test_closed_form_lambdas(code, family, p, m, want):
    assert {(f.i, f.lam) for f in closed_form_lambdas(code(family, p, m))} == want


def test_closed_form_lambdas_c1_even(code):
    got = {(f.i, f.lam) for f in closed_form_lambdas(code("c1", 3, 4)) if f.applies}
    assert {(36, 140), (63, 18445), (45, 9185), (60, 39825)} <= got


@pytest.mark.parametrize("family,p,m", [("c1", 3, 5), ("c1", 5, 5), ("c1", 3, 6), ("c2", 3, 6), ("c2", 5, 5), ("c1", 7, 4)])
def test_closed_form_lambdas_match_identity(family, p, m):
    # formula lambda must agree with b C(k,2) / C(v,2) using b = A_i/(p-1)
    from dfc.codes import CodeSpec, weight_distribution_closed
    from dfc.gf import make_field

    spec = CodeSpec(family, make_field(p, m))
    dist = weight_distribution_closed(spec)
    for f in closed_form_lambdas(spec):
        if f.applies:
            b = Fraction(dist[f.i], p - 1)
            assert f.lam == b * comb(f.i, 2) / comb(p**m, 2), f


def test_check_weight_rows(code):
    spec = code("c1", 3, 3)
    dist = weight_distribution_bruteforce(spec)
    formulas = closed_form_lambdas(spec)
    row = check_weight(spec, 9, dist[9], 17, formulas)
    assert (row.i, row.b, row.lam, row.lam_formula, row.verdict) == (9, 39, 4, "4", "OK")
    row = check_weight(spec, 21, dist[21], 17, formulas)
    assert row.lam == 4060 and row.verdict == "FLAG"


def test_m3_list_rows(code):
    spec = code("c1", 3, 3)
    rows = [f for f in closed_form_lambdas(spec) if f.source == "c1 m=3"]
    assert [(f.i, f.lam) for f in rows] == [(9, Fraction(1, 2)), (12, 132), (15, 2100)]
    for f in rows[1:]:
        assert verify_2_design(extract_design(spec, f.i)) == f.lam
