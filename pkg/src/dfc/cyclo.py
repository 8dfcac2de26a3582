"""Exact arithmetic in the cyclotomic integers Z[zeta_p].

A value is stored in the power basis ``1, zeta, ..., zeta^(p-2)``; the
relation ``1 + zeta + ... + zeta^(p-1) = 0`` eliminates ``zeta^(p-1)``.
Because that basis is a Z-basis, two values are equal exactly when their
coefficient tuples are, so :class:`CycInt` can be hashed and used as a
dictionary key when tallying sum values.
"""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass

from .gf import legendre


def _canonical(full):
    """Reduce a length-p coefficient list (exponents 0..p-1) to p-1 coords."""
    top = full[-1]
    return tuple(c - top for c in full[:-1])


@dataclass(frozen=True)
class CycInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"expected {self.p - 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_exponents(cls, p, full):
        """Build from a length-p vector whose entry k multiplies zeta^k."""
        return cls(p, _canonical([int(c) for c in full]))

    @classmethod
    def rational(cls, p, r):
        return cls(p, (int(r),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p, k=1):
        full = [0] * p
        full[k % p] = 1
        return cls.from_exponents(p, full)

    def _full(self):
        return list(self.coeffs) + [0]

    def _check(self, other):
        if isinstance(other, int):
            return CycInt.rational(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"mismatched primes {self.p} and {other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[(i + j) % p] += a * b
        return CycInt.from_exponents(p, full)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not integral")
        result = CycInt.rational(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, k):
        return CycInt(self.p, tuple(k * a for a in self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(c * z**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return f"CycInt[p={self.p}]({' + '.join(terms) or '0'})"


def cyc_add(x, y):
    return x + y


def cyc_neg(x):
    return -x


def cyc_mul(x, y):
    return x * y


def cyc_scale(x, k):
    return x.scale(k)


def from_trace_counts(p, counts):
    """Sum_j counts[j] * zeta^j, i.e. the character sum with fiber counts N_j."""
    if len(counts) != p:
        raise ValueError(f"need {p} counts, got {len(counts)}")
    return CycInt.from_exponents(p, counts)


def gauss_sum(p):
    """The quadratic Gauss sum over GF(p); it squares to (-1)^((p-1)/2) p."""
    return CycInt.from_exponents(p, [legendre(v, p) for v in range(p)])


def p_star(p):
    return (-1) ** ((p - 1) // 2) * p


def galois(y, x):
    """Apply the automorphism zeta -> zeta^y."""
    p = x.p
    if y % p == 0:
        raise ValueError("y must be a unit mod p")
    full = [0] * p
    for k, c in enumerate(x.coeffs):
        full[(k * y) % p] += c
    return CycInt.from_exponents(p, full)


class ValueDistribution(Counter):
    """Multiset of CycInt values; shards merge with ``+``."""

    def total(self):
        return sum(self.values())
