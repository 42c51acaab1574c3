"""Batch int64 kernels for range scans.

Two interchangeable implementations of each kernel: a numba ``@njit`` row
loop and a pure-numpy column sweep.  ``ZECK_NUMBA=1`` forces numba,
``ZECK_NUMBA=0`` forces numpy, unset tries numba and quietly falls back.
Exact big-int arithmetic lives in ``numeration``/``duality``; these kernels
only handle values that fit comfortably in int64 (callers check).

Digit extraction, membership and the dual count all share one structure:
walk the weights from the top, peel off the capped digit (the floor
quotient clipped to the extraction-pattern cap), and match it against the
scan caps.  A digit under its cap closes the current block (pattern
restarts), a digit equal to its cap keeps the block open, a digit over its
cap decides non-membership, at which point the dual count is the sub
weight one above the open block's top plus the value of the digits already
passed.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE = os.environ.get("ZECK_NUMBA", "").strip()

_HAVE_NUMBA = False
if _FORCE != "0":
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        if _FORCE == "1":
            raise
        _HAVE_NUMBA = False


def kernels_enabled() -> bool:
    """True when the numba path is active."""
    return _HAVE_NUMBA


def digit_matrix(xs, weights, caps):
    """Member digits of each x over ``weights``/``caps``; column k is index k+1.

    The floor quotient is clipped to the cyclic cap at the current pattern
    offset (a plain quotient can overshoot what the block pattern allows).
    """
    xs = np.asarray(xs, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    caps = np.asarray(caps, dtype=np.int64)
    m = len(weights)
    N = len(caps)
    out = np.empty((len(xs), m), dtype=np.int64)
    rem = xs.copy()
    pos = np.zeros(len(xs), dtype=np.int64)
    for k in range(m - 1, -1, -1):
        cap = caps[pos % N]
        d = np.minimum(rem // weights[k], cap)
        out[:, k] = d
        rem -= d * weights[k]
        cont = d == cap
        pos[cont] += 1
        pos[~cont] = 0
    return out


# -- numpy column sweeps ----------------------------------------------------


def _member_flags_np(ns, sup_w, sup_caps, caps):
    digits = digit_matrix(ns, sup_w, sup_caps)
    nrows, m = digits.shape
    N = len(caps)
    failed = np.zeros(nrows, dtype=bool)
    pos = np.zeros(nrows, dtype=np.int64)
    for j in range(m, 0, -1):
        d = digits[:, j - 1]
        cap = caps[pos % N]
        live = ~failed
        failed |= live & (d > cap)
        closes = live & (d < cap)
        keeps = live & (d == cap)
        pos[closes] = 0
        pos[keeps] += 1
    return ~failed


def _dual_counts_np(xs, sup_w, sup_caps, caps, sub_w):
    digits = digit_matrix(xs, sup_w, sup_caps)
    nrows, m = digits.shape
    N = len(caps)
    failed = np.zeros(nrows, dtype=bool)
    pos = np.zeros(nrows, dtype=np.int64)
    done = np.zeros(nrows, dtype=np.int64)  # value of closed blocks, sub weights
    cur = np.zeros(nrows, dtype=np.int64)  # value of the open block so far
    z = np.zeros(nrows, dtype=np.int64)
    for j in range(m, 0, -1):
        d = digits[:, j - 1]
        cap = caps[pos % N]
        live = ~failed
        over = live & (d > cap)
        if over.any():
            t0 = j + pos[over]  # top of the block the scan was inside
            z[over] = sub_w[t0] + done[over]  # sub_w[i] is the weight of index i+1
            failed[over] = True
        ok = live & ~over
        cur[ok] += d[ok] * sub_w[j - 1]
        closes = ok & (d < cap)
        done[closes] += cur[closes]
        cur[closes] = 0
        pos[closes] = 0
        pos[ok & (d == cap)] += 1
    alive = ~failed
    z[alive] = done[alive] + cur[alive]
    return z


# -- numba row loops --------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _member_flags_nb(ns, sup_w, sup_caps, caps):
        n = ns.shape[0]
        m = sup_w.shape[0]
        Ns = sup_caps.shape[0]
        N = caps.shape[0]
        out = np.empty(n, dtype=np.bool_)
        for i in range(n):
            rem = ns[i]
            spos = 0
            pos = 0
            ok = True
            for j in range(m, 0, -1):
                w = sup_w[j - 1]
                d = rem // w
                scap = sup_caps[spos % Ns]
                if d > scap:
                    d = scap
                rem -= d * w
                if d == scap:
                    spos += 1
                else:
                    spos = 0
                cap = caps[pos % N]
                if d > cap:
                    ok = False
                    break
                if d < cap:
                    pos = 0
                else:
                    pos += 1
            out[i] = ok
        return out

    @njit(cache=True)
    def _dual_counts_nb(xs, sup_w, sup_caps, caps, sub_w):
        n = xs.shape[0]
        m = sup_w.shape[0]
        Ns = sup_caps.shape[0]
        N = caps.shape[0]
        out = np.empty(n, dtype=np.int64)
        for i in range(n):
            rem = xs[i]
            spos = 0
            pos = 0
            done = np.int64(0)
            cur = np.int64(0)
            res = np.int64(-1)
            for j in range(m, 0, -1):
                w = sup_w[j - 1]
                d = rem // w
                scap = sup_caps[spos % Ns]
                if d > scap:
                    d = scap
                rem -= d * w
                if d == scap:
                    spos += 1
                else:
                    spos = 0
                cap = caps[pos % N]
                if d > cap:
                    t0 = j + pos
                    res = sub_w[t0] + done
                    break
                cur += d * sub_w[j - 1]
                if d < cap:
                    done += cur
                    cur = 0
                    pos = 0
                else:
                    pos += 1
            if res < 0:
                res = done + cur
            out[i] = res
        return out


def member_flags(ns, sup_w, sup_caps, caps):
    """Membership of the sup-expansion of each n in the ``caps`` pattern."""
    if _HAVE_NUMBA:
        return _member_flags_nb(ns, sup_w, sup_caps, caps)
    return _member_flags_np(ns, sup_w, sup_caps, caps)


def dual_counts(xs, sup_w, sup_caps, caps, sub_w):
    """Exact expressible count below each x; ``sub_w`` must extend one past ``sup_w``."""
    if _HAVE_NUMBA:
        return _dual_counts_nb(xs, sup_w, sup_caps, caps, sub_w)
    return _dual_counts_np(xs, sup_w, sup_caps, caps, sub_w)
