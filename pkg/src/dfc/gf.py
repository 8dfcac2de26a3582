"""Arithmetic in GF(p) and GF(p^m) for odd p.

Elements are plain integers ("canonical indices"): index 0 is the zero
element and index ``i >= 1`` is ``alpha**(i-1)`` for the primitive root
``alpha`` of the chosen modulus.  Multiplication is index arithmetic mod
``q - 1``; addition goes through coefficient vectors in the polynomial
basis ``1, alpha, ..., alpha**(m-1)``.

All element methods accept either Python ints or numpy integer arrays and
broadcast the usual way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from sympy import factorint, isprime

DEFAULT_MAX_Q = 3**16
# q*q entries above this are not worth caching as a dense addition table
_ADD_TABLE_MAX_ENTRIES = 1 << 16


class FieldError(ValueError):
    pass


def _polymulmod(f, g, mod, p):
    """Multiply coefficient lists (low degree first) modulo a monic ``mod``."""
    m = len(mod) - 1
    prod = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                prod[i + j] = (prod[i + j] + fi * gj) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for j in range(m + 1):
                prod[k - m + j] = (prod[k - m + j] - c * mod[j]) % p
    return (prod + [0] * m)[:m]


def _polypowmod(base, e, mod, p):
    result = [1] + [0] * (len(mod) - 2)
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


def is_primitive(modulus, p):
    """True if the monic ``modulus`` (low degree first) is primitive over GF(p).

    The root ``x`` has order exactly ``p**m - 1`` in GF(p)[x]/(modulus); that
    forces every nonzero residue to be a unit, hence irreducibility too.
    """
    m = len(modulus) - 1
    if modulus[-1] != 1 or modulus[0] % p == 0:
        return False
    order = p**m - 1
    one = [1] + [0] * (m - 1)
    x = [0, 1] + [0] * (m - 2) if m > 1 else [(-modulus[0]) % p]
    if _polypowmod(x, order, modulus, p) != one:
        return False
    return all(
        _polypowmod(x, order // r, modulus, p) != one for r in factorint(order)
    )


def smallest_primitive_polynomial(p, m):
    """Lexicographically smallest primitive monic polynomial of degree m.

    Coefficients are compared low degree first.
    """
    for low in itertools.product(range(p), repeat=m):
        modulus = (*low, 1)
        if is_primitive(modulus, p):
            return modulus
    raise FieldError(f"no primitive polynomial of degree {m} over GF({p})")


class FieldParams:
    """A concrete GF(p^m) with log/antilog tables and the trace map.

    Instances are immutable after construction and safe to share between
    worker processes (they pickle as their tables).
    """

    def __init__(self, p, m, modulus=None):
        self.p = p
        self.m = m
        self.q = p**m
        if modulus is None:
            modulus = smallest_primitive_polynomial(p, m)
        elif not is_primitive(tuple(modulus), p):
            raise FieldError(f"{modulus} is not primitive over GF({p})")
        self.modulus = tuple(int(c) for c in modulus)
        self._build_tables()

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        weights = p ** np.arange(m, dtype=np.int64)
        # coeffs[i] = polynomial-basis coordinates of the element with index i
        coeffs = np.zeros((q, m), dtype=np.int64)
        cur = [1] + [0] * (m - 1)
        for k in range(q - 1):
            coeffs[k + 1] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * r) % p for c, r in zip(cur, self.modulus)]
        vec = coeffs @ weights
        index_of = np.full(q, -1, dtype=np.int64)
        index_of[vec] = np.arange(q)
        if (index_of < 0).any():
            raise FieldError("modulus does not generate the multiplicative group")

        self._weights = weights
        self.coeffs = coeffs
        self.vec = vec
        self.index_of = index_of
        for arr in (coeffs, vec, index_of):
            arr.setflags(write=False)
        self._add_table = None
        if q * q <= _ADD_TABLE_MAX_ENTRIES:
            idx = np.arange(q)
            self._add_table = self._add_slow(idx[:, None], idx[None, :])
            self._add_table.setflags(write=False)

        # Tr(x) = x + x^p + ... + x^(p^(m-1)), evaluated in the field
        idx = np.arange(q)
        acc = np.zeros(q, dtype=np.int64)
        for i in range(m):
            acc = self.add(acc, self.pow(idx, p**i))
        if (self.coeffs[acc][:, 1:] != 0).any():
            raise FieldError("trace left the prime subfield")
        self.trace_table = self.coeffs[acc][:, 0].astype(np.uint8)
        self.trace_table.setflags(write=False)

    def __repr__(self):
        return f"FieldParams(p={self.p}, m={self.m}, modulus={self.modulus})"

    def __reduce__(self):
        return (FieldParams, (self.p, self.m, self.modulus))

    # -- element helpers ---------------------------------------------------

    @property
    def alpha(self):
        return 2 if self.q > 2 else 1

    def elements(self):
        return range(self.q)

    def from_prime(self, j):
        """Embed the residue ``j`` of GF(p) as a field element index."""
        return _out(self.index_of[np.asarray(j) % self.p])

    def to_prime(self, x):
        """Inverse of :meth:`from_prime`; raises if ``x`` is not in GF(p)."""
        c = self.coeffs[np.asarray(x)]
        if (c[..., 1:] != 0).any():
            raise FieldError("element is not in the prime subfield")
        return _out(c[..., 0])

    def alpha_pow(self, k):
        return _out(np.asarray(k) % (self.q - 1) + 1)

    # -- arithmetic -----------------------------------------------------------

    def _add_slow(self, x, y):
        s = (self.coeffs[x] + self.coeffs[y]) % self.p
        return self.index_of[s @ self._weights]

    def add(self, x, y):
        x, y = np.asarray(x), np.asarray(y)
        if self._add_table is not None:
            return _out(self._add_table[x, y])
        return _out(self._add_slow(x, y))

    def neg(self, x):
        c = (-self.coeffs[np.asarray(x)]) % self.p
        return _out(self.index_of[c @ self._weights])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        x, y = np.asarray(x), np.asarray(y)
        n = self.q - 1
        r = np.where((x == 0) | (y == 0), 0, (x + y - 2) % n + 1)
        return _out(r)

    def inv(self, x):
        x = np.asarray(x)
        if (x == 0).any():
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return _out((1 - x) % (self.q - 1) + 1)

    def pow(self, x, k):
        x = np.asarray(x)
        k = int(k)
        n = self.q - 1
        if k == 0:
            return _out(np.ones_like(x))
        if k < 0 and (x == 0).any():
            raise ZeroDivisionError("negative power of zero")
        return _out(np.where(x == 0, 0, ((x - 1) * k) % n + 1))

    def trace(self, x):
        return _out(self.trace_table[np.asarray(x)].astype(np.int64))

    def eta(self, x):
        """Quadratic character of GF(q)^*, extended by eta(0) = 0."""
        x = np.asarray(x)
        return _out(np.where(x == 0, 0, np.where((x - 1) % 2 == 0, 1, -1)))

    def eta_prime(self, j):
        return legendre(j, self.p)


def legendre(j, p):
    """Quadratic character of GF(p) on the residue ``j`` (0 at 0)."""
    j %= p
    if j == 0:
        return 0
    return 1 if pow(j, (p - 1) // 2, p) == 1 else -1


def _out(a):
    a = np.asarray(a)
    return int(a) if a.ndim == 0 else a


def make_field(p, m, max_q=DEFAULT_MAX_Q):
    """Build GF(p^m) from the lexicographically smallest primitive polynomial."""
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise FieldError(f"p must be an odd prime, got {p!r}")
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"m must be a positive integer, got {m!r}")
    if p**m > max_q:
        raise FieldError(f"q = {p}^{m} exceeds the enumeration bound {max_q}")
    return FieldParams(p, m)


# -- linear algebra over GF(p) ---------------------------------------------


def rref_mod_p(a, p):
    """Reduced row echelon form over GF(p); returns (matrix, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        others = np.arange(rows) != r
        a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(a, p):
    return len(rref_mod_p(a, p)[1])


def solve_mod_p(a, b, p):
    """Solve ``a @ x = b`` over GF(p).

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.
    """
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    aug = np.concatenate([a, np.asarray(b, dtype=np.int64).reshape(rows, 1)], axis=1)
    red, pivots = rref_mod_p(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = red[i, cols]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-red[i, f]) % p
        basis.append(v)
    return x, basis


@dataclass(frozen=True)
class LinearizedSolution:
    """Solution set of ``a^(p^l) x^(p^(2l)) + a x = rhs`` over GF(q).

    ``particular`` is None when there is no solution; otherwise the full set is
    ``particular + span(kernel)`` with every element given as a field index.
    """

    field: FieldParams
    particular: int | None
    kernel: tuple[int, ...]

    @property
    def count(self):
        if self.particular is None:
            return 0
        return self.field.p ** len(self.kernel)

    @property
    def unique(self):
        return self.particular is not None and not self.kernel

    def solutions(self):
        if self.particular is None:
            return []
        f = self.field
        out = []
        for combo in itertools.product(range(f.p), repeat=len(self.kernel)):
            x = self.particular
            for coef, k in zip(combo, self.kernel):
                x = f.add(x, f.mul(f.from_prime(coef), k))
            out.append(x)
        return sorted(out)


def linearized_map(field, a, l):
    """The map x -> a^(p^l) x^(p^(2l)) + a x as field indices for every x."""
    x = np.arange(field.q)
    coef = field.pow(a, field.p**l)
    return field.add(field.mul(coef, field.pow(x, field.p ** (2 * l))), field.mul(a, x))


def solve_linearized(field, a, l, rhs):
    """Solve a^(p^l) x^(p^(2l)) + a x = rhs by elimination over GF(p)."""
    if a == 0:
        raise FieldError("a must be nonzero")
    if np.gcd(field.m, l) != 1:
        raise FieldError(f"gcd(m, l) must be 1, got m={field.m}, l={l}")
    p, m = field.p, field.m
    basis = [field.alpha_pow(j) for j in range(m)]
    images = linearized_map(field, a, l)[basis]
    matrix = field.coeffs[images].T  # column j = image of alpha^j
    sol = solve_mod_p(matrix, field.coeffs[rhs], p)
    if sol is None:
        return LinearizedSolution(field, None, ())
    x, kernel = sol
    as_index = lambda v: int(field.index_of[int(v @ field._weights)])
    return LinearizedSolution(field, as_index(x), tuple(as_index(v) for v in kernel))
