"""The two trace codes of length q and their weight distributions.

``c1``: {(Tr(a x^(p^l+1) + b x^2 + c x) + h)_x : a, b, c in GF(q), h in GF(p)}
``c2``: {(Tr(a x^(p^l+1) + c x) + h)_x : a, c in GF(q), h in GF(p)}

Coordinate i of a codeword is the value at the field element with canonical
index i, so coordinate 0 is x = 0 and coordinate i >= 1 is x = alpha^(i-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .gf import FieldParams, rank_mod_p
from .sums import (
    DEFAULT_MAX_WORK,
    SumSpec,
    count_vector_histogram,
    polynomial_values,
    trace_counts_abc,
)

FAMILIES = ("c1", "c2")


@dataclass(frozen=True)
class CodeSpec:
    family: str
    field: FieldParams
    l: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.field.m < 3:
            raise ValueError("the code families are defined for m >= 3")
        if self.l < 1 or gcd(self.field.m, self.l) != 1:
            raise ValueError(f"need gcd(m, l) = 1, got m={self.field.m}, l={self.l}")

    @property
    def quadratic(self):
        return self.family == "c1"

    @property
    def sum_spec(self):
        return SumSpec(self.field, self.l)

    @property
    def length(self):
        return self.field.q

    @property
    def expected_dimension(self):
        return (3 if self.quadratic else 2) * self.field.m + 1

    @property
    def size(self):
        return self.field.p**self.expected_dimension


def codeword(spec, a, b, c, h):
    """Dense codeword for parameters (a, b, c, h); b is the x^2 coefficient."""
    if not spec.quadratic and b != 0:
        raise ValueError("c2 codewords have no x^2 term; pass b=0")
    f = spec.field
    tr = f.trace(polynomial_values(spec.sum_spec, a, b, c))
    return ((tr + h) % f.p).astype(np.uint8)


def hamming_weight(word):
    return int(np.count_nonzero(word))


def weight_from_counts(counts, h, q):
    """Weight of the translate by h: positions with Tr(...) + h != 0."""
    p = len(counts)
    return q - int(counts[(-h) % p])


def weight_of(spec, a, b, c, h):
    counts = trace_counts_abc(spec.sum_spec, a, b, c)
    return weight_from_counts(counts, h, spec.field.q)


def weights_from_histogram(hist, q):
    dist = {}
    for counts, n in hist.items():
        for h in range(len(counts)):
            w = weight_from_counts(counts, h, q)
            dist[w] = dist.get(w, 0) + n
    return dict(sorted(dist.items()))


def weight_distribution_bruteforce(spec, shards=None, max_work=DEFAULT_MAX_WORK):
    """Exact weight histogram by enumerating every parameter tuple once."""
    hist = count_vector_histogram(spec.sum_spec, spec.quadratic, shards, max_work)
    return weights_from_histogram(hist, spec.field.q)


def _whole(x):
    if x.denominator != 1:
        raise ArithmeticError(f"table multiplicity {x} is not an integer")
    return x.numerator


def weight1_core(p, m, as_printed=False):
    """Bracketed factor of A_(p^(m-1)(p-1)) for c1, m odd: A = p (p^m - 1) core.

    The printed table ends this factor in ``+ 2``; summing the value
    distribution of S(a,b,c) over the sums that give this weight yields
    ``+ p^(m-3) + 1`` instead.  Both agree at m = 3 only; enumeration at m = 5
    confirms the derived form.
    """
    P = lambda e: Fraction(p) ** e
    head = 2 * P(2 * m - 1) - 2 * P(2 * m - 2) + P(2 * m - 3) - P(2 * m - 4) + P(m - 1) - P(m - 2)
    return head + 2 if as_printed else head + P(m - 3) + 1


def closed_form_rows(spec, as_printed=False):
    """(weight, multiplicity) rows of the weight table for this code and m.

    ``as_printed=True`` uses the printed c1 odd-m row for weight
    p^(m-1)(p-1), which undercounts for m >= 5 (see :func:`weight1_core`).
    """
    p, m = spec.field.p, spec.field.m
    P = lambda e: Fraction(p) ** e
    n = P(m) - 1
    base = P(m - 1) * (p - 1)
    rows = [(0, 1)]
    if spec.quadratic and m % 2 == 1:
        h1, hp, h3 = (m - 1) // 2, (m + 1) // 2, (m - 3) // 2
        rows += [
            (base, p * weight1_core(p, m, as_printed) * n),
            (P(h1) * (P(hp) - P(h1) - p + 1), P((3 * m - 3) // 2) * n * (P(h1) + 1) / 2),
            (P(h1) * (P(hp) - P(h1) + p - 1), P((3 * m - 3) // 2) * n * (P(h1) - 1) / 2),
            (P(h1) * (P(hp) - P(h1) + 1), P(m) * n * (P(m + 2) - P(m + 1) - P(m - 2) + P(hp) - P(h3) + p**2) / (2 * (p + 1))),
            (P(h1) * (P(hp) - P(h1) - 1), P(m) * n * (P(m + 2) - P(m + 1) - P(m - 2) - P(hp) + P(h3) + p**2) / (2 * (p + 1))),
            (P(hp) * (P(h1) - P(h3) + 1), P(m - 2) * n * (P(m - 1) - 1) / (2 * (p + 1))),
            (P(hp) * (P(h1) - P(h3) - 1), P(m - 2) * n * (P(m - 1) - 1) / (2 * (p + 1))),
        ]
    elif spec.quadratic:
        k = m // 2
        plus = P(m) - P(m - 1) - P(m - 2) + P(k) - P(k - 1) + 1
        minus = P(m) - P(m - 1) - P(m - 2) - P(k) + P(k - 1) + 1
        rows += [
            (base, p * (P(2 * m - 1) - P(2 * m - 2) + 2 * P(2 * m - 3) - P(m - 2) + 1) * n),
            (P(k - 1) * (P(k + 1) - P(k) - p + 1), P(m + 2) * n * plus / (2 * (p**2 - 1))),
            (P(k) * (P(k) - P(k - 1) - p + 1), P(m - 2) * n * (P(k) - 1) * (P(k - 1) + 1) / (2 * (p**2 - 1))),
            (P(k - 1) * (P(k + 1) - P(k) + p - 1), P(m + 2) * n * minus / (2 * (p**2 - 1))),
            (P(k) * (P(k) - P(k - 1) + p - 1), P(m - 2) * n * (P(k) + 1) * (P(k - 1) - 1) / (2 * (p**2 - 1))),
            (P(k - 1) * (P(k + 1) - P(k) + 1), P(m + 2) * n * plus / (2 * (p + 1))),
            (P(k) * (P(k) - P(k - 1) + 1), P(m - 2) * n * (P(m + 2) - P(m) + P(m - 1) + P(k) - P(k - 1) - 1) / (2 * (p + 1))),
            (P(k - 1) * (P(k + 1) - P(k) - 1), P(m + 2) * n * minus / (2 * (p + 1))),
            (P(k) * (P(k) - P(k - 1) - 1), P(m - 2) * n * (P(m + 2) - P(m) + P(m - 1) - P(k) + P(k - 1) - 1) / (2 * (p + 1))),
        ]
    elif m % 2 == 1:
        h1 = (m - 1) // 2
        rows += [
            (base, p * (P(m - 1) + 1) * n),
            (base + P(h1), P(m) * (p - 1) * n / 2),
            (base - P(h1), P(m) * (p - 1) * n / 2),
        ]
    else:
        k = m // 2
        s = (-1) ** k
        rows += [
            (base, p * (P(m - 1) - P(m - 2) + 1) * n),
            (base - s * P(k - 1) * (p - 1), P(m + 1) * n / (p + 1)),
            (base + s * P(k - 1), P(m + 1) * (p - 1) * n / (p + 1)),
            (base + s * P(k) * (p - 1), P(m - 2) * n / (p + 1)),
            (base - s * P(k), P(m - 2) * (p - 1) * n / (p + 1)),
        ]
    rows.append((P(m), p - 1))
    return [(_whole(Fraction(w)), _whole(Fraction(a))) for w, a in rows]


def weight_distribution_closed(spec, as_printed=False):
    """Weight histogram from the closed-form tables; coinciding weights merge."""
    dist = {}
    for w, a in closed_form_rows(spec, as_printed):
        if a:
            dist[w] = dist.get(w, 0) + a
    return dict(sorted(dist.items()))


def minimum_distance(dist):
    return min(w for w, a in dist.items() if w > 0 and a > 0)


def generator_matrix(spec):
    """Rows: the all-ones word and Tr(u g(x)) for u in a GF(p)-basis of GF(q)."""
    f = spec.field
    basis = [f.alpha_pow(i) for i in range(f.m)]
    rows = [np.ones(f.q, dtype=np.int64)]
    coefficient_slots = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] if spec.quadratic else [(1, 0, 0), (0, 0, 1)]
    for slot in coefficient_slots:
        for u in basis:
            a, b, c = (u if s else 0 for s in slot)
            rows.append(f.trace(polynomial_values(spec.sum_spec, a, b, c)))
    return np.array(rows)


def dimension_check(spec):
    """Rank of the parameter -> codeword map over GF(p)."""
    return rank_mod_p(generator_matrix(spec), spec.field.p)
