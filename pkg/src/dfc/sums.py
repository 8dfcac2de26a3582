"""Exponential sums S(a,b,c) and S(a,b) over GF(q), evaluated exactly.

Every sum is obtained from the fiber counts N_j = |{x : Tr(f(x)) = j}| of
its argument, so one pass over the field gives both the sum value and the
Hamming weights of all p affine translates of the corresponding codeword.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from ._kernels import trace_counts_block
from .cyclo import CycInt, ValueDistribution, from_trace_counts, gauss_sum
from .gf import FieldParams, legendre, solve_linearized

DEFAULT_MAX_WORK = 2 * 10**10
_BLOCK_BYTES = 64 << 20


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SumSpec:
    field: FieldParams
    l: int = 1

    def __post_init__(self):
        if self.l < 1 or gcd(self.field.m, self.l) != 1:
            raise ValueError(f"need l >= 1 with gcd(m, l) = 1, got m={self.field.m}, l={self.l}")

    @property
    def kasami_exponent(self):
        return self.field.p**self.l + 1


def polynomial_values(spec, a, b, c):
    """a x^(p^l+1) + b x^2 + c x for every field index x."""
    f = spec.field
    x = np.arange(f.q)
    t1 = f.mul(a, f.pow(x, spec.kasami_exponent))
    t2 = f.mul(b, f.pow(x, 2))
    t3 = f.mul(c, x)
    return f.add(f.add(t1, t2), t3)


def trace_counts_abc(spec, a, b, c):
    """N_j = |{x : Tr(a x^(p^l+1) + b x^2 + c x) = j}| for j = 0..p-1."""
    tr = spec.field.trace(polynomial_values(spec, a, b, c))
    return np.bincount(tr, minlength=spec.field.p)


def S_abc(spec, a, b, c):
    return from_trace_counts(spec.field.p, trace_counts_abc(spec, a, b, c))


def S_ab_direct(spec, a, b):
    return from_trace_counts(spec.field.p, trace_counts_abc(spec, a, 0, b))


def S_ab_closed(spec, a, b):
    """S(a, b) from the permutation behaviour of x -> a^(p^l) x^(p^(2l)) + a x."""
    f = spec.field
    p, m, q = f.p, f.m, f.q
    if a == 0:
        raise ValueError("closed form needs a != 0")
    rhs = f.neg(f.pow(b, p**spec.l))
    sol = solve_linearized(f, a, spec.l, rhs)

    def chi_term(x0):
        e = f.trace(f.neg(f.mul(a, f.pow(x0, spec.kasami_exponent))))
        return CycInt.zeta(p, e)

    if m % 2 == 1:
        return gauss_sum(p) ** m * f.eta(a) * chi_term(sol.particular)
    sign = (-1) ** (m // 2)
    if f.pow(a, (q - 1) // (p + 1)) != f.from_prime(sign):
        return sign * p ** (m // 2) * chi_term(sol.particular)
    if sol.particular is None:
        return CycInt.rational(p, 0)
    return -sign * p ** (m // 2 + 1) * chi_term(sol.particular)


# -- exhaustive enumeration ----------------------------------------------------


def trace_tables(spec):
    """Residue tables T[u, x] = Tr(u * g(x)) for g = x^(p^l+1), x^2, x."""
    f = spec.field
    u = np.arange(f.q)[:, None]
    x = np.arange(f.q)[None, :]
    tables = []
    for g in (f.pow(x, spec.kasami_exponent), f.pow(x, 2), x):
        tables.append(np.ascontiguousarray(f.trace_table[f.mul(u, g)]))
    return tables


def family_tables(spec, quadratic=True):
    ta, tb, tc = trace_tables(spec)
    if not quadratic:
        tb = np.zeros((1, spec.field.q), dtype=np.uint8)
    return ta, tb, tc


def enumeration_work(q, quadratic=True):
    """x-evaluations needed to enumerate every parameter tuple once."""
    return q ** (4 if quadratic else 3)


def check_budget(q, quadratic, max_work):
    work = enumeration_work(q, quadratic)
    if max_work is not None and work > max_work:
        raise BudgetExceeded(f"enumeration needs {work} work units, cap is {max_work}")


def count_blocks(tables, p, a_lo, a_hi):
    """Yield (a_start, counts) with counts[a, b, c, j] over [a_lo, a_hi)."""
    ta, tb, tc = tables
    per_a = tb.shape[0] * tc.shape[0] * p * 4
    step = max(1, _BLOCK_BYTES // per_a)
    for lo in range(a_lo, a_hi, step):
        hi = min(a_hi, lo + step)
        out = np.zeros((hi - lo, tb.shape[0], tc.shape[0], p), dtype=np.int32)
        trace_counts_block(ta, tb, tc, p, lo, hi, out)
        yield lo, out


def _histogram_rows(rows, q):
    p = rows.shape[1]
    if (q + 1) ** p < 2**62:
        base = (q + 1) ** np.arange(p, dtype=np.int64)
        keys, counts = np.unique(rows.astype(np.int64) @ base, return_counts=True)
        out = {}
        for key, n in zip(keys.tolist(), counts.tolist()):
            vec = []
            for _ in range(p):
                key, r = divmod(key, q + 1)
                vec.append(r)
            out[tuple(vec)] = n
        return out
    uniq, counts = np.unique(rows, axis=0, return_counts=True)
    return {tuple(r): n for r, n in zip(uniq.tolist(), counts.tolist())}


def _histogram_shard(args):
    tables, p, q, lo, hi = args
    hist = Counter()
    for _, block in count_blocks(tables, p, lo, hi):
        hist.update(_histogram_rows(block.reshape(-1, p), q))
    return hist


def shard_ranges(n, shards):
    shards = max(1, min(shards, n))
    edges = np.linspace(0, n, shards + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def default_shards():
    return int(os.environ.get("DFC_SHARDS", "1"))


def count_vector_histogram(spec, quadratic=True, shards=None, max_work=DEFAULT_MAX_WORK):
    """Histogram of fiber-count vectors over every (a, b, c) (or (a, c)).

    Keys are tuples (N_0, ..., N_{p-1}).  The parameter space is split on a
    into ``shards`` pieces; with more than one shard the pieces run in worker
    processes and the partial histograms are summed.
    """
    f = spec.field
    check_budget(f.q, quadratic, max_work)
    tables = family_tables(spec, quadratic)
    shards = default_shards() if shards is None else shards
    jobs = [(tables, f.p, f.q, lo, hi) for lo, hi in shard_ranges(f.q, shards)]
    total = Counter()
    if len(jobs) == 1:
        total.update(_histogram_shard(jobs[0]))
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            for part in pool.map(_histogram_shard, jobs):
                total.update(part)
    return total


def value_distribution_abc(spec, shards=None, max_work=DEFAULT_MAX_WORK):
    """Exact multiset {S(a,b,c) : a, b, c in GF(q)}."""
    p = spec.field.p
    dist = ValueDistribution()
    for counts, n in count_vector_histogram(spec, True, shards, max_work).items():
        dist[from_trace_counts(p, counts)] += n
    return dist


def value_distribution_ab(spec, shards=None, max_work=DEFAULT_MAX_WORK):
    """Exact multiset {S(a,b) : a, b in GF(q)}."""
    p = spec.field.p
    dist = ValueDistribution()
    for counts, n in count_vector_histogram(spec, False, shards, max_work).items():
        dist[from_trace_counts(p, counts)] += n
    return dist


# -- tabulated value distributions ---------------------------------------------


def _whole(x):
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"table multiplicity {x} is not an integer")
    return x.numerator


def expected_table(spec):
    """The tabulated value distribution of S(a,b,c) for this (p, m).

    Each row is materialised as exact CycInt values; the quadratic-residue
    factor attached to zeta^j rows is the Legendre symbol of -j mod p.
    """
    f = spec.field
    p, m, q = f.p, f.m, f.q
    if m < 3:
        raise ValueError("tables hold for m >= 3")
    P = lambda e: Fraction(p) ** e
    G = gauss_sum(p)
    one = CycInt.rational(p, 1)
    z = lambda j: CycInt.zeta(p, j)
    rows = []  # (value, multiplicity)

    def add(value, mult):
        rows.append((value, _whole(mult)))

    if m % 2 == 1:
        h1, hp, h3 = (m - 1) // 2, (m + 1) // 2, (m - 3) // 2
        core = P(m) - P(m - 1) - P(m - 2) + 1
        for eps in (1, -1):
            add(eps * G * p**h1, P(m + 1) * core * (q - 1) / (2 * (p**2 - 1)))
            for j in range(1, p):
                mult = P((m + 3) // 2) * (P(h1) + eps * legendre(-j, p)) * core * (q - 1) / (2 * (p**2 - 1))
                add(eps * z(j) * G * p**h1, mult)
        add(one * p**hp, P(m - 2) * (P(h1) + 1) * (P(h1) + p - 1) * (q - 1) / 2)
        add(-one * p**hp, P(m - 2) * (P(h1) - 1) * (P(h1) - p + 1) * (q - 1) / 2)
        for eps in (1, -1):
            for j in range(1, p):
                add(eps * z(j) * p**hp, P(m - 2) * (P(m - 1) - 1) * (q - 1) / 2)
            add(eps * G * p**hp, P(m - 3) * (P(m - 1) - 1) * (q - 1) / (2 * (p**2 - 1)))
            for j in range(1, p):
                mult = P(h3) * (P(h3) + eps * legendre(-j, p)) * (P(m - 1) - 1) * (q - 1) / (2 * (p**2 - 1))
                add(eps * z(j) * G * p**hp, mult)
    else:
        k = m // 2
        plus = P(m) - P(m - 1) - P(m - 2) + P(k) - P(k - 1) + 1
        minus = P(m) - P(m - 1) - P(m - 2) - P(k) + P(k - 1) + 1
        d = 2 * (p**2 - 1)
        add(one * p**k, (P(k) + p - 1) * plus * P(k + 1) * (q - 1) / d)
        add(-one * p**k, P(k + 1) * (P(k) - p + 1) * minus * (q - 1) / d)
        for j in range(1, p):
            add(z(j) * p**k, P(k + 1) * (P(k) - 1) * plus * (q - 1) / d)
            add(-z(j) * p**k, P(k + 1) * (P(k) + 1) * minus * (q - 1) / d)
        for eps in (1, -1):
            add(eps * G * p**k, P(2 * m - 3) * (q - 1) / 2)
            for j in range(1, p):
                add(eps * z(j) * G * p**k, P(3 * k - 2) * (P(k - 1) + eps * legendre(-j, p)) * (q - 1) / 2)
        add(one * p ** (k + 1), P(k - 2) * (P(k - 1) + 1) * (P(k) - 1) * (P(k - 1) + p - 1) * (q - 1) / d)
        add(-one * p ** (k + 1), P(k - 2) * (P(k - 1) - 1) * (P(k) + 1) * (P(k - 1) - p + 1) * (q - 1) / d)
        for j in range(1, p):
            add(z(j) * p ** (k + 1), P(k - 2) * (P(k) - 1) * (P(m - 2) - 1) * (q - 1) / d)
            add(-z(j) * p ** (k + 1), P(k - 2) * (P(k) + 1) * (P(m - 2) - 1) * (q - 1) / d)
    add(CycInt.rational(p, 0), (q - 1) * (P(2 * m - 1) - P(2 * m - 2) + P(2 * m - 3) - P(m - 2) + 1))
    add(one * q, 1)

    dist = ValueDistribution()
    for value, mult in rows:
        if mult:
            dist[value] += mult
    return dist
