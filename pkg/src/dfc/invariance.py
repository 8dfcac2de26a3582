"""Cyclotomic cosets, defining sets and the Kasami-Lin-Peterson test.

An extended primitive cyclic code of length p^m is affine-invariant exactly
when its defining set is closed downward under the digitwise order on base-p
expansions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


def cyclotomic_coset(j, n, p):
    """Orbit of j under multiplication by p modulo n, in generation order."""
    coset = [j % n]
    x = (j * p) % n
    while x != coset[0]:
        coset.append(x)
        x = (x * p) % n
    return coset


@dataclass(frozen=True)
class DefiningSet:
    n: int
    members: frozenset[int]
    extended: bool = True

    def __contains__(self, s):
        return s in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def closed_under(self, p):
        return all((s * p) % self.n in self.members for s in self.members if s != 0)


def defining_set(spec):
    """Defining set of the extended dual cyclic code behind ``spec``.

    c1: C_1 u C_2 u C_(p^l+1) u {0};  c2: C_1 u C_(p^l+1) u {0}.
    """
    p, m = spec.field.p, spec.field.m
    n = p**m - 1
    leaders = [1, 2, p**spec.l + 1] if spec.quadratic else [1, p**spec.l + 1]
    members = {0}
    for j in leaders:
        members.update(cyclotomic_coset(j, n, p))
    return DefiningSet(n, frozenset(members))


def digits(s, p, m):
    return [(s // p**i) % p for i in range(m)]


def p_adic_leq(r, s, p, m):
    return all(ri <= si for ri, si in zip(digits(r, p, m), digits(s, p, m)))


def _below(s, p, m):
    """All r with r <= s digitwise, in increasing order."""
    ranges = [range(d + 1) for d in reversed(digits(s, p, m))]
    for ds in itertools.product(*ranges):
        yield sum(d * p**i for i, d in enumerate(reversed(ds)))


def is_affine_invariant(members, p, m):
    """Return (True, None) if ``members`` is downward closed, else (False, (s, r)).

    The witness is the smallest s in the set with some missing r <= s, and
    the smallest such r.
    """
    members = set(members)
    for s in sorted(members):
        for r in _below(s, p, m):
            if r not in members:
                return False, (s, r)
    return True, None


def is_affine_invariant_local(members, p, m):
    """Same test, checking only single-digit decrements of each member."""
    members = set(members)
    for s in sorted(members):
        for i in range(m):
            if (s // p**i) % p and s - p**i not in members:
                return False, (s, s - p**i)
    return True, None
