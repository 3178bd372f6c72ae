"""Time each hot kernel under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each workload runs once untimed (numba compiles or loads its cache), then
``--repeat`` times; the best wall time is reported with the speedup.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from charsum import kernels, search
from charsum.characters import and_table
from charsum.forms import code_width, full_mask


def workloads(quick: bool):
    rng = np.random.default_rng(0)
    samples = 1 << (15 if quick else 18)
    codes3 = rng.integers(0, 1 << 22, size=(samples, 3), dtype=np.uint64)
    basis6 = kernels.basis_masks(6)
    full6 = np.uint64(full_mask(6))
    pi, pj = kernels.pair_arrays(6)
    classify_codes = rng.integers(0, 1 << 22, size=samples, dtype=np.uint64)
    width = code_width(5 if quick else 6)
    basis_w = kernels.basis_masks(5 if quick else 6)

    def masks_for(mod):
        return mod.all_form_masks(width, basis_w)

    cached = {}

    yield (f"character_sum_masks ({samples} sums of 3)",
           lambda mod: mod.character_sum_masks(codes3, basis6, full6))
    yield (f"witt_classify ({samples} forms, n=6)",
           lambda mod: mod.witt_classify(classify_codes, 6, pi, pj))
    yield (f"all_form_masks (2^{width})", masks_for)

    def union(mod):
        masks = cached.setdefault(mod.__name__, masks_for(mod))
        return mod.union_support_hist(np.uint64(0xF0F0), masks, 65)

    yield f"union_support_hist (2^{width} forms)", union

    target = and_table(3)

    def bfs(mod):
        name = "numba" if mod.__name__.endswith("_numba") else "numpy"
        return search.bfs_min_weight(target, backend=name)

    yield "bfs_min_weight (AND_3, 3^8 states)", bfs


def best_time(fn, repeat: int) -> float:
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "numba" not in backends:
        print("numba is not importable; only the numpy path can be timed")
    print(f"{'kernel':<44}" + "".join(f"{b:>12}" for b in backends) + ("   speedup" if len(backends) == 2 else ""))
    for label, work in workloads(args.quick):
        times = {b: best_time(lambda b=b: work(kernels.get(b)), args.repeat) for b in backends}
        row = f"{label:<44}" + "".join(f"{times[b] * 1e3:>10.1f}ms" for b in backends)
        if len(backends) == 2:
            row += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
