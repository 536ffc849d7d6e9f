"""Vectorised double-double arithmetic.

A double-double number is an unevaluated sum ``hi + lo`` of two float64
values with ``|lo| <= ulp(hi)/2``, giving roughly 106 bits of significand.
All functions operate elementwise on numpy arrays (or scalars) and return
``(hi, lo)`` tuples. Error-free transformations follow Dekker and Knuth;
no FMA is assumed.
"""
import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    err = b - (s - a)
    return s, err


def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    """Exact product ``a*b == p + e`` (barring overflow)."""
    p = a * b
    ahi, alo = split(a)
    bhi, blo = split(b)
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd_add(ahi, alo, bhi, blo):
    s, e = two_sum(ahi, bhi)
    t, f = two_sum(alo, blo)
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def dd_mul(ahi, alo, bhi, blo):
    p, e = two_prod(ahi, bhi)
    e = e + (ahi * blo + alo * bhi)
    return quick_two_sum(p, e)


def dd_mul_d(ahi, alo, b):
    p, e = two_prod(ahi, b)
    e = e + alo * b
    return quick_two_sum(p, e)


def dd_convolve(ahi, alo, bhi, blo):
    """Double-double coefficient convolution of two polynomials.

    Every partial product is formed exactly and accumulated in double-double,
    so the only rounding is the final ~2**-104 relative truncation per step.
    """
    ahi, alo, bhi, blo = (np.asarray(x, dtype=np.float64) for x in (ahi, alo, bhi, blo))
    n = ahi.size + bhi.size - 1
    rhi = np.zeros(n)
    rlo = np.zeros(n)
    for i in range(ahi.size):
        if ahi[i] == 0.0 and alo[i] == 0.0:
            continue
        phi, plo = dd_mul(np.full(bhi.size, ahi[i]), np.full(bhi.size, alo[i]), bhi, blo)
        sl = slice(i, i + bhi.size)
        rhi[sl], rlo[sl] = dd_add(rhi[sl], rlo[sl], phi, plo)
    return rhi, rlo
