"""numba implementations of the hot loops.

Every function here has a twin with the same signature in ``_numpy``.
"""

import numpy as np
from numba import njit

UNSEEN = 255


@njit(cache=True, inline="always")
def _popcount64(v):
    v = v - ((v >> np.uint64(1)) & np.uint64(0x5555555555555555))
    v = (v & np.uint64(0x3333333333333333)) + ((v >> np.uint64(2)) & np.uint64(0x3333333333333333))
    v = (v + (v >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (v * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True, inline="always")
def _mask_of(code, basis):
    m = np.uint64(0)
    k = 0
    while code:
        if code & np.uint64(1):
            m ^= basis[k]
        code >>= np.uint64(1)
        k += 1
    return m


@njit(cache=True, nogil=True)
def form_masks(codes, basis):
    out = np.empty(codes.shape[0], dtype=np.uint64)
    for r in range(codes.shape[0]):
        out[r] = _mask_of(codes[r], basis)
    return out


@njit(cache=True, nogil=True)
def character_sum_masks(codes, basis, full):
    """Rows of ``codes`` are multisets of forms; returns (ones, twos) masks."""
    rows, w = codes.shape
    ones = np.empty(rows, dtype=np.uint64)
    twos = np.empty(rows, dtype=np.uint64)
    for r in range(rows):
        a1 = np.uint64(0)
        a2 = np.uint64(0)
        for k in range(w):
            b2 = _mask_of(codes[r, k], basis)
            b1 = full & ~b2
            za = full & ~(a1 | a2)
            # a character is never 0, so only 0+b, 1+1 = 2 and 2+2 = 1 survive
            n1 = (za & b1) | (a2 & b2)
            n2 = (za & b2) | (a1 & b1)
            a1 = n1
            a2 = n2
        ones[r] = a1
        twos[r] = a2
    return ones, twos


@njit(cache=True, nogil=True)
def all_form_masks(width, basis):
    size = 1 << width
    out = np.empty(size, dtype=np.uint64)
    out[0] = np.uint64(0)
    for c in range(1, size):
        low = c & -c
        b = 0
        while (low >> b) != 1:
            b += 1
        out[c] = out[c ^ low] ^ basis[b]
    return out


@njit(cache=True, nogil=True)
def union_support_hist(u_mask, masks, nbins):
    hist = np.zeros(nbins, dtype=np.int64)
    for k in range(masks.shape[0]):
        hist[_popcount64(u_mask | masks[k])] += 1
    return hist


@njit(cache=True, nogil=True)
def witt_classify(codes, n, pi, pj):
    """Witt rank and residual kind (2*nonconstant + constant) per code."""
    rows = codes.shape[0]
    ranks = np.empty(rows, dtype=np.int8)
    kinds = np.empty(rows, dtype=np.int8)
    adj = np.zeros(n, dtype=np.int64)
    npairs = pi.shape[0]
    lmask = (1 << n) - 1
    for r in range(rows):
        code = np.int64(codes[r])
        const = code & 1
        lin = (code >> 1) & lmask
        for s in range(n):
            adj[s] = 0
        for k in range(npairs):
            if (code >> (1 + n + k)) & 1:
                adj[pi[k]] |= 1 << pj[k]
                adj[pj[k]] |= 1 << pi[k]
        rank = 0
        for i in range(n):
            if adj[i] == 0:
                continue
            low = adj[i] & -adj[i]
            j = 0
            while (low >> j) != 1:
                j += 1
            m1 = adj[j]
            c1 = (lin >> j) & 1
            m2 = adj[i]
            c2 = (lin >> i) & 1
            for s in range(n):
                t = 0
                if (m1 >> s) & 1:
                    t ^= m2
                if (m2 >> s) & 1:
                    t ^= m1
                adj[s] = (adj[s] ^ t) & ~(1 << s)
            lin ^= m1 & m2
            if c2:
                lin ^= m1
            if c1:
                lin ^= m2
            const ^= c1 & c2
            rank += 1
        ranks[r] = rank
        kinds[r] = 2 * (lin != 0) + const
    return ranks, kinds


@njit(cache=True, nogil=True)
def bfs_expand(levels, k, gen_ones, gen_twos, full, enc, dec_ones, dec_twos, half_states):
    """Mark every unseen neighbour of a level-``k`` state with ``k + 1``."""
    found = 0
    ng = gen_ones.shape[0]
    for s in range(levels.shape[0]):
        if levels[s] != k:
            continue
        lo = s % half_states
        hi = s // half_states
        a1 = dec_ones[lo] | (dec_ones[hi] << 8)
        a2 = dec_twos[lo] | (dec_twos[hi] << 8)
        za = full & ~(a1 | a2)
        for g in range(ng):
            b1 = gen_ones[g]
            b2 = gen_twos[g]
            zb = full & ~(b1 | b2)
            n1 = (a1 & zb) | (za & b1) | (a2 & b2)
            n2 = (a2 & zb) | (za & b2) | (a1 & b1)
            idx = (enc[n1 & 255] + 2 * enc[n2 & 255]
                   + half_states * (enc[n1 >> 8] + 2 * enc[n2 >> 8]))
            if levels[idx] == UNSEEN:
                levels[idx] = k + 1
                found += 1
    return found
