"""Lookup tables shared by both kernel backends."""

from functools import lru_cache

import numpy as np

from ..forms import code_width, full_mask, pair_list, variable_masks

# Number of base-3 digits handled by one decode table entry.
HALF_DIGITS = 8
HALF_STATES = 3 ** HALF_DIGITS


@lru_cache(maxsize=None)
def basis_masks(n: int) -> np.ndarray:
    """Truth mask of each code bit's monomial (n <= 6, masks fit in uint64)."""
    if n > 6:
        raise ValueError("bit-parallel tables need n <= 6")
    vm = variable_masks(n)
    out = [full_mask(n)]
    out += list(vm)
    out += [vm[i] & vm[j] for i, j in pair_list(n)]
    assert len(out) == code_width(n)
    arr = np.array(out, dtype=np.uint64)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    pairs = pair_list(n)
    pi = np.array([p[0] for p in pairs], dtype=np.int64)
    pj = np.array([p[1] for p in pairs], dtype=np.int64)
    return pi, pj


@lru_cache(maxsize=None)
def base3_encode_lut() -> np.ndarray:
    """lut[m] = sum of 3^k over the set bits k of the byte m."""
    lut = np.zeros(256, dtype=np.int64)
    for m in range(256):
        lut[m] = sum(3 ** k for k in range(8) if (m >> k) & 1)
    return lut


@lru_cache(maxsize=None)
def base3_decode_luts() -> tuple[np.ndarray, np.ndarray]:
    """For each 8-digit base-3 number, the byte masks of its 1- and 2-digits."""
    ones = np.zeros(HALF_STATES, dtype=np.uint32)
    twos = np.zeros(HALF_STATES, dtype=np.uint32)
    for v in range(HALF_STATES):
        x = v
        for k in range(HALF_DIGITS):
            d = x % 3
            x //= 3
            if d == 1:
                ones[v] |= 1 << k
            elif d == 2:
                twos[v] |= 1 << k
    return ones, twos
