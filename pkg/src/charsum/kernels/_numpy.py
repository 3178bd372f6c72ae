"""Vectorised numpy twins of the ``_numba`` kernels."""

import numpy as np

UNSEEN = 255

_FRONTIER_CHUNK = 1 << 8
_SCAN_BLOCK = 1 << 22


def form_masks(codes, basis):
    codes = np.asarray(codes, dtype=np.uint64)
    out = np.zeros(codes.shape, dtype=np.uint64)
    zero = np.uint64(0)
    for k in range(basis.shape[0]):
        bit = (codes >> np.uint64(k)) & np.uint64(1)
        out ^= np.where(bit == 1, basis[k], zero)
    return out


def character_sum_masks(codes, basis, full):
    masks = form_masks(codes, basis)
    full = np.uint64(full)
    a1 = np.zeros(codes.shape[0], dtype=np.uint64)
    a2 = np.zeros(codes.shape[0], dtype=np.uint64)
    for k in range(codes.shape[1]):
        b2 = masks[:, k]
        b1 = full & ~b2
        za = full & ~(a1 | a2)
        a1, a2 = (za & b1) | (a2 & b2), (za & b2) | (a1 & b1)
    return a1, a2


def all_form_masks(width, basis):
    out = np.zeros(1, dtype=np.uint64)
    for k in range(width):
        out = np.concatenate([out, out ^ basis[k]])
    return out


def union_support_hist(u_mask, masks, nbins):
    counts = np.bitwise_count(np.uint64(u_mask) | masks)
    return np.bincount(counts, minlength=nbins).astype(np.int64)


def witt_classify(codes, n, pi, pj):
    codes = np.asarray(codes, dtype=np.int64)
    rows = codes.shape[0]
    cols = np.arange(rows)
    const = codes & 1
    lin = (codes >> 1) & ((1 << n) - 1)
    adj = np.zeros((n, rows), dtype=np.int64)
    for k in range(pi.shape[0]):
        bit = (codes >> (1 + n + k)) & 1
        adj[pi[k]] |= bit << pj[k]
        adj[pj[k]] |= bit << pi[k]
    lowbit_index = np.zeros(1 << n, dtype=np.int64)
    for v in range(1, 1 << n):
        lowbit_index[v] = (v & -v).bit_length() - 1
    rank = np.zeros(rows, dtype=np.int8)
    for i in range(n):
        active = adj[i] != 0
        if not active.any():
            continue
        j = lowbit_index[adj[i]]
        m2 = np.where(active, adj[i], 0)
        m1 = np.where(active, adj[j, cols], 0)
        c1 = np.where(active, (lin >> j) & 1, 0)
        c2 = np.where(active, (lin >> i) & 1, 0)
        for s in range(n):
            t = (((m1 >> s) & 1) * m2) ^ (((m2 >> s) & 1) * m1)
            adj[s] = (adj[s] ^ t) & ~(1 << s)
        lin = lin ^ (m1 & m2) ^ (c2 * m1) ^ (c1 * m2)
        const = const ^ (c1 & c2)
        rank += active.astype(np.int8)
    kinds = (2 * (lin != 0) + const).astype(np.int8)
    return rank, kinds


def bfs_expand(levels, k, gen_ones, gen_twos, full, enc, dec_ones, dec_twos, half_states):
    before = np.count_nonzero(levels == k + 1)
    b1 = gen_ones.astype(np.int64)[None, :]
    b2 = gen_twos.astype(np.int64)[None, :]
    full = int(full)
    zb = full & ~(b1 | b2)
    for start in range(0, levels.shape[0], _SCAN_BLOCK):
        block = levels[start:start + _SCAN_BLOCK]
        states = np.flatnonzero(block == k) + start
        for f0 in range(0, states.shape[0], _FRONTIER_CHUNK):
            s = states[f0:f0 + _FRONTIER_CHUNK]
            lo = s % half_states
            hi = s // half_states
            a1 = (dec_ones[lo].astype(np.int64) | (dec_ones[hi].astype(np.int64) << 8))[:, None]
            a2 = (dec_twos[lo].astype(np.int64) | (dec_twos[hi].astype(np.int64) << 8))[:, None]
            za = full & ~(a1 | a2)
            n1 = (a1 & zb) | (za & b1) | (a2 & b2)
            n2 = (a2 & zb) | (za & b2) | (a1 & b1)
            idx = enc[n1 & 255] + 2 * enc[n2 & 255] + half_states * (enc[n1 >> 8] + 2 * enc[n2 >> 8])
            idx = idx.ravel()
            fresh = idx[levels[idx] == UNSEEN]
            levels[fresh] = k + 1
    return int(np.count_nonzero(levels == k + 1) - before)
