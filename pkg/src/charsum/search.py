"""Experiments over sums of quadratic characters.

Covers the exact minimum-weight search at n <= 4, support histograms of
random sums, the exhaustive weight-3 enumeration over Witt normal forms at
n = 6, the (ones, twos) occupancy grid and the search for two tables that
add up to AND.

Random draws are organised in chunks of ``CHUNK`` consecutive samples; chunk
``c`` reads from its own generator seeded by ``SeedSequence(seed,
spawn_key=(c,))``. Results therefore do not depend on how chunks are spread
over workers.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .characters import (
    CharacterSum,
    FunctionTable,
    and_table,
    sum_table,
)
from .forms import FormatError, QuadraticForm, code_width, full_mask, random_form, witt_normal_forms

CHUNK = 1 << 14
UNSEEN = 255
BFS_MAX_N = 4
FAST_MAX_N = 6


class CapacityError(ValueError):
    """Raised when a request exceeds what the exact search can hold."""


# result types -------------------------------------------------------------------

@dataclass
class Histogram:
    bins: dict[int, int]
    total: int
    weighted: bool = False
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if sum(self.bins.values()) != self.total:
            raise ValueError("bin counts do not sum to the total")

    @classmethod
    def from_array(cls, counts: np.ndarray, weighted: bool = False, **meta) -> "Histogram":
        bins = {int(s): int(c) for s, c in enumerate(counts) if c}
        return cls(bins, int(sum(bins.values())), weighted, {k: str(v) for k, v in meta.items()})

    def proportion(self, s: int) -> float:
        return self.bins.get(s, 0) / self.total

    def normalized(self, scale: int = 100_000) -> dict[int, float]:
        return {s: c * scale / self.total for s, c in self.bins.items()}

    def mode(self) -> int:
        return max(self.bins, key=lambda s: (self.bins[s], -s))

    def to_csv(self) -> str:
        out = io.StringIO()
        for k, v in self.meta.items():
            out.write(f"# {k}={v}\n")
        if self.weighted:
            out.write("support,weighted_count,normalized\n")
            for s in sorted(self.bins):
                out.write(f"{s},{self.bins[s]},{self.bins[s] * 100_000 / self.total:.3f}\n")
        else:
            out.write("support,count\n")
            for s in sorted(self.bins):
                out.write(f"{s},{self.bins[s]}\n")
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Histogram":
        meta = {}
        lines = []
        for line in text.strip().splitlines():
            if line.startswith("#"):
                k, _, v = line[1:].strip().partition("=")
                meta[k] = v
            else:
                lines.append(line)
        header = lines[0].split(",")
        if header[:2] not in (["support", "count"], ["support", "weighted_count"]):
            raise FormatError(f"unexpected header {lines[0]!r}")
        bins = {}
        for line in lines[1:]:
            parts = line.split(",")
            bins[int(parts[0])] = int(parts[1])
        return cls(bins, sum(bins.values()), header[1] == "weighted_count", meta)


@dataclass
class OccupancyGrid:
    """cells[y, x] is set when some table had x ones and y twos."""

    n: int
    cells: np.ndarray

    @classmethod
    def empty(cls, n: int) -> "OccupancyGrid":
        size = (1 << n) + 1
        return cls(n, np.zeros((size, size), dtype=bool))

    def mark(self, table: FunctionTable) -> None:
        o = int(np.count_nonzero(table.values == 1))
        t = int(np.count_nonzero(table.values == 2))
        self.cells[t, o] = True

    def mark_counts(self, ones: np.ndarray, twos: np.ndarray) -> None:
        self.cells[twos, ones] = True

    def marked(self) -> list[tuple[int, int]]:
        """Marked (ones, twos) pairs."""
        ys, xs = np.nonzero(self.cells)
        return [(int(x), int(y)) for x, y in zip(xs, ys)]

    def __str__(self) -> str:
        return "\n".join("".join("1" if c else "0" for c in row) for row in self.cells)

    @classmethod
    def parse(cls, text: str) -> "OccupancyGrid":
        rows = text.strip().splitlines()
        size = len(rows)
        n = (size - 1).bit_length() - 1
        if (1 << n) + 1 != size or any(len(r) != size or set(r) - {"0", "1"} for r in rows):
            raise FormatError("grid must be (2^n+1) lines of (2^n+1) '0'/'1' characters")
        return cls(n, np.array([[c == "1" for c in r] for r in rows], dtype=bool))


@dataclass(frozen=True)
class WeightWitness:
    target: FunctionTable
    sum: CharacterSum
    weight: int

    def __post_init__(self):
        if self.sum.weight != self.weight:
            raise ValueError("witness weight does not match its term count")
        if sum_table(self.sum) != self.target:
            raise ValueError("witness does not sum to its target")

    def __str__(self) -> str:
        return f"target={self.target}\nweight={self.weight}\nsum={self.sum}"

    @classmethod
    def parse(cls, text: str) -> "WeightWitness":
        fields = {}
        for line in text.strip().splitlines():
            k, _, v = line.partition("=")
            fields[k.strip()] = v.strip()
        target = FunctionTable.parse(fields["target"])
        return cls(target, CharacterSum.parse(fields.get("sum", ""), target.n), int(fields["weight"]))


# random sums ---------------------------------------------------------------------

def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _chunk_codes(n: int, w: int, seed: int, chunk: int, size: int) -> np.ndarray:
    rng = chunk_rng(seed, chunk)
    return rng.integers(0, 1 << code_width(n), size=(size, w), dtype=np.uint64)


def _chunk_sizes(samples: int) -> list[int]:
    full, rest = divmod(samples, CHUNK)
    return [CHUNK] * full + ([rest] if rest else [])


def _chunk_masks(n, w, seed, chunk, size, backend):
    k = kernels.get(backend)
    codes = _chunk_codes(n, w, seed, chunk, size)
    return k.character_sum_masks(codes, kernels.basis_masks(n), np.uint64(full_mask(n)))


def _run_chunks(fn, samples: int, workers: int):
    """Apply ``fn(chunk, size)`` to every chunk, split into ``workers`` partitions."""
    sizes = _chunk_sizes(samples)
    jobs = list(enumerate(sizes))
    if workers <= 1 or len(jobs) <= 1:
        return [fn(c, s) for c, s in jobs]
    parts = [jobs[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda part: [(c, fn(c, s)) for c, s in part], parts))
    flat = dict(item for part in results for item in part)
    return [flat[c] for c in range(len(jobs))]


def sample_sum_masks(n: int, w: int, samples: int, seed: int = 0, backend: str | None = None
                     ) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """(ones, twos) masks of random weight-``w`` sums, one chunk at a time (n <= 6)."""
    if n > FAST_MAX_N:
        raise CapacityError("bit-parallel sampling needs n <= 6")
    for c, size in enumerate(_chunk_sizes(samples)):
        yield _chunk_masks(n, w, seed, c, size, backend)


def sample_tables(n: int, w: int, samples: int, seed: int = 0) -> list[FunctionTable]:
    """Random weight-``w`` character sums as tables, same stream as the histograms."""
    if n <= FAST_MAX_N:
        out = []
        for ones, twos in sample_sum_masks(n, w, samples, seed):
            out.extend(FunctionTable.from_masks(n, int(o), int(t)) for o, t in zip(ones, twos))
        return out
    return [sum_table(s) for s in _slow_sums(n, w, samples, seed)]


def _slow_sums(n: int, w: int, samples: int, seed: int) -> Iterator[CharacterSum]:
    for c, size in enumerate(_chunk_sizes(samples)):
        rng = chunk_rng(seed, c)
        for _ in range(size):
            yield CharacterSum(n, tuple(random_form(n, rng) for _ in range(w)))


def sample_histogram(n: int, w: int, samples: int, seed: int = 0, workers: int = 1,
                     backend: str | None = None) -> Histogram:
    """Support histogram of ``samples`` sums of ``w`` uniform quadratic characters."""
    if w < 1:
        raise ValueError("w must be >= 1")
    nbins = (1 << n) + 1
    if n <= FAST_MAX_N:
        def job(c, size):
            ones, twos = _chunk_masks(n, w, seed, c, size, backend)
            return np.bincount(np.bitwise_count(ones | twos), minlength=nbins)
        counts = sum(_run_chunks(job, samples, workers))
    else:
        counts = np.zeros(nbins, dtype=np.int64)
        for s in _slow_sums(n, w, samples, seed):
            counts[np.count_nonzero(sum_table(s).values)] += 1
    return Histogram.from_array(np.asarray(counts), n=n, w=w, samples=samples, seed=seed)


def occupancy_grid(n: int = 6, w: int = 3, samples: int = 10_000_000, seed: int = 0,
                   workers: int = 1, backend: str | None = None) -> OccupancyGrid:
    if n > FAST_MAX_N:
        raise CapacityError("occupancy grid sampling needs n <= 6")
    size = (1 << n) + 1

    def job(c, chunk_size):
        ones, twos = _chunk_masks(n, w, seed, c, chunk_size, backend)
        cells = np.zeros((size, size), dtype=bool)
        cells[np.bitwise_count(twos), np.bitwise_count(ones)] = True
        return cells

    grid = OccupancyGrid.empty(n)
    for cells in _run_chunks(job, samples, workers):
        grid.cells |= cells
    return grid


# Witt classes and the weight-3 enumeration -------------------------------------

_CLASSIFY_BLOCK = 1 << 18


def witt_classify_codes(n: int, codes: np.ndarray, backend: str | None = None
                        ) -> tuple[np.ndarray, np.ndarray]:
    """Per code: Witt rank and residual kind (2 * nonconstant + constant bit)."""
    if code_width(n) > 62:
        raise CapacityError("batch classification needs n <= 10")
    k = kernels.get(backend)
    pi, pj = kernels.pair_arrays(n)
    codes = np.asarray(codes, dtype=np.uint64)
    ranks = np.empty(codes.shape[0], dtype=np.int8)
    kinds = np.empty(codes.shape[0], dtype=np.int8)
    for s in range(0, codes.shape[0], _CLASSIFY_BLOCK):
        r, t = k.witt_classify(codes[s:s + _CLASSIFY_BLOCK], n, pi, pj)
        ranks[s:s + _CLASSIFY_BLOCK] = r
        kinds[s:s + _CLASSIFY_BLOCK] = t
    return ranks, kinds


def _normal_form_slot(n: int) -> dict[tuple[int, int], int]:
    """(rank, kind) -> position in ``witt_normal_forms(n)``."""
    slots = {}
    for pos, q in enumerate(witt_normal_forms(n)):
        rank = bin(q.quad).count("1")
        kind = 2 * (q.linear != 0) + q.constant
        slots[(rank, kind)] = pos
    return slots


def witt_class_sizes(n: int, backend: str | None = None) -> dict[QuadraticForm, int]:
    """How many of the 2^width forms have each Witt normal form."""
    codes = np.arange(1 << code_width(n), dtype=np.uint64)
    ranks, kinds = witt_classify_codes(n, codes, backend)
    flat = ranks.astype(np.int64) * 4 + kinds
    counts = np.bincount(flat, minlength=4 * (n // 2 + 1))
    nfs = witt_normal_forms(n)
    out = {}
    for (rank, kind), pos in _normal_form_slot(n).items():
        out[nfs[pos]] = int(counts[rank * 4 + kind])
    if sum(out.values()) != len(codes):
        raise AssertionError("classification produced a non-normal class")
    return out


def weight3_class_histograms(n: int, backend: str | None = None) -> dict[QuadraticForm, np.ndarray]:
    """For each normal form u, supports of 1 + 2^u + 2^v over every form v.

    The sum vanishes exactly where u and v are both 0, so the support is the
    size of the union of their 1-sets.
    """
    if n > FAST_MAX_N:
        raise CapacityError("weight-3 enumeration needs n <= 6")
    k = kernels.get(backend)
    width = code_width(n)
    masks = k.all_form_masks(width, kernels.basis_masks(n))
    nbins = (1 << n) + 1
    return {u: k.union_support_hist(np.uint64(u.truth_mask()), masks, nbins)
            for u in witt_normal_forms(n)}


def enumerate_weight3(n: int = 6, backend: str | None = None) -> Histogram:
    """Exact support distribution of weight-3 sums, weighted by Witt class size."""
    if n != 6:
        raise ValueError("the weight-3 enumeration is defined for n = 6")
    return _enumerate_weight3(n, backend)


def _enumerate_weight3(n: int, backend: str | None = None) -> Histogram:
    sizes = witt_class_sizes(n, backend)
    hists = weight3_class_histograms(n, backend)
    total = np.zeros((1 << n) + 1, dtype=np.int64)
    for u, h in hists.items():
        total += sizes[u] * h
    return Histogram.from_array(total, weighted=True, n=n, w=3)


# complementary pairs -----------------------------------------------------------

def pair_sums_to_and(a: FunctionTable, b: FunctionTable) -> bool:
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    return (a + b) == and_table(a.n)


def scan_complementary_pairs(pool: Sequence[FunctionTable], n: int | None = None
                             ) -> list[tuple[int, int]]:
    """All (i, j), i <= j, with pool[i] + pool[j] == AND_n.

    The partner of a table t is AND - t, so pairs are found by looking up that
    complement; bucketing on the (ones, twos) counts keeps the exact checks to
    candidates that can possibly match.
    """
    if not pool:
        return []
    n = pool[0].n if n is None else n
    if any(t.n != n for t in pool):
        raise ValueError("pool tables must all have the same n")
    target = and_table(n)
    buckets: dict[tuple[int, int], list[int]] = {}
    keys = []
    for i, t in enumerate(pool):
        key = (int(np.count_nonzero(t.values == 1)), int(np.count_nonzero(t.values == 2)))
        keys.append(key)
        buckets.setdefault(key, []).append(i)
    by_table: dict[bytes, list[int]] = {}
    for i, t in enumerate(pool):
        by_table.setdefault(t.values.tobytes(), []).append(i)
    out = set()
    for i, t in enumerate(pool):
        comp = FunctionTable(n, (target.values.astype(np.int64) - t.values) % 3)
        ck = (int(np.count_nonzero(comp.values == 1)), int(np.count_nonzero(comp.values == 2)))
        if ck not in buckets:
            continue
        for j in by_table.get(comp.values.tobytes(), ()):
            if pair_sums_to_and(t, pool[j]):
                out.add((min(i, j), max(i, j)))
    return sorted(out)


# exact minimum weight -------------------------------------------------------------

def generator_forms(n: int, family: str = "quadratic") -> list[QuadraticForm]:
    if family == "quadratic":
        count = 1 << code_width(n)
    elif family == "linear":
        count = 1 << (n + 1)
    else:
        raise ValueError(f"unknown generator family {family!r}")
    return [QuadraticForm.from_code(n, c) for c in range(count)]


def _encode_states(n: int, ones: np.ndarray, twos: np.ndarray) -> np.ndarray:
    enc = kernels.base3_encode_lut()
    o = np.asarray(ones, dtype=np.int64)
    t = np.asarray(twos, dtype=np.int64)
    return enc[o & 255] + 2 * enc[t & 255] + kernels.HALF_STATES * (enc[o >> 8] + 2 * enc[t >> 8])


def _add_tables(a1, a2, b1, b2, full):
    za = full & ~(a1 | a2)
    zb = full & ~(b1 | b2)
    return (a1 & zb) | (za & b1) | (a2 & b2), (a2 & zb) | (za & b2) | (a1 & b1)


def bfs_min_weight(target: FunctionTable, generators: str = "quadratic",
                   backend: str | None = None) -> WeightWitness:
    """Fewest generator characters summing to ``target``, by BFS from zero.

    One byte per function records its BFS level (3^16 bytes at n = 4).
    Before expanding level k the search checks whether the target is one step
    away from level k, so the last level is never expanded.
    """
    n = target.n
    if n > BFS_MAX_N:
        raise CapacityError(f"exact search holds 3^(2^n) states; n={n} exceeds {BFS_MAX_N}")
    kern = kernels.get(backend)
    forms = generator_forms(n, generators)
    full = full_mask(n)
    g2 = np.array([q.truth_mask() for q in forms], dtype=np.uint32)
    g1 = (full & ~g2).astype(np.uint32)
    t1, t2 = target.masks()
    tidx = int(_encode_states(n, np.array([t1]), np.array([t2]))[0])
    if tidx == 0:
        return WeightWitness(target, CharacterSum(n), 0)
    levels = np.full(3 ** (1 << n), UNSEEN, dtype=np.uint8)
    levels[0] = 0
    enc = kernels.base3_encode_lut()
    dec_o, dec_t = kernels.base3_decode_luts()
    # subtracting g is adding g+1, i.e. swapping its ones and twos
    g1i, g2i = g1.astype(np.int64), g2.astype(np.int64)
    k = 0
    while True:
        p1, p2 = _add_tables(t1, t2, g2i, g1i, full)
        if (levels[_encode_states(n, p1, p2)] == k).any():
            depth = k + 1
            break
        found = kern.bfs_expand(levels, np.uint8(k), g1, g2, np.uint32(full), enc,
                                dec_o, dec_t, kernels.HALF_STATES)
        if found == 0:
            raise RuntimeError("BFS exhausted the reachable states without meeting the target")
        k += 1
        if k >= UNSEEN - 1:
            raise RuntimeError("BFS depth overflow")
    terms = []
    c1, c2 = t1, t2
    for level in range(depth - 1, -1, -1):
        p1, p2 = _add_tables(c1, c2, g2i, g1i, full)
        hits = np.flatnonzero(levels[_encode_states(n, p1, p2)] == level)
        g = int(hits[0])
        terms.append(forms[g])
        c1, c2 = int(p1[g]), int(p2[g])
    if (c1, c2) != (0, 0):
        raise RuntimeError("witness walk did not end at the zero function")
    return WeightWitness(target, CharacterSum(n, tuple(reversed(terms))), depth)
