"""Compiled enumeration kernels."""

import numba
import numpy as np


@numba.njit(cache=True)
def trace_counts_block(ta, tb, tc, p, a_lo, a_hi, out):
    """Fiber counts of x -> ta[a,x] + tb[b,x] + tc[c,x] (mod p).

    ``out[a - a_lo, b, c, j]`` receives |{x : value == j}|.  Tables hold
    residues in [0, p).
    """
    q = ta.shape[1]
    modtab = np.empty(3 * p, np.uint8)
    for i in range(3 * p):
        modtab[i] = i % p
    s = np.empty(q, np.uint8)
    for a in range(a_lo, a_hi):
        for b in range(tb.shape[0]):
            for x in range(q):
                s[x] = ta[a, x] + tb[b, x]
            for c in range(tc.shape[0]):
                row = tc[c]
                o = out[a - a_lo, b, c]
                for x in range(q):
                    o[modtab[s[x] + row[x]]] += 1
