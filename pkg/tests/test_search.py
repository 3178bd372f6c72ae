import numpy as np
import pytest

from charsum import search
from charsum.characters import CharacterSum, FunctionTable, and_table, character_table, sum_table, support
from charsum.forms import QuadraticForm, code_width, parse_form, witt_normal_forms


# exact search ---------------------------------------------------------------------------

def oracle_distances(n, family="quadratic"):
    """Plain set-based BFS from the zero table; maps table bytes to distance."""
    gens = [character_table(q).values.astype(np.int64) for q in search.generator_forms(n, family)]
    start = np.zeros(1 << n, dtype=np.int64)
    dist = {start.tobytes(): 0}
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for t in frontier:
            for g in gens:
                s = (t + g) % 3
                key = s.tobytes()
                if key not in dist:
                    dist[key] = d
                    nxt.append(s)
        frontier = nxt
    return dist


@pytest.mark.parametrize("n", [2, 3])
def test_bfs_matches_oracle(n):
    dist = oracle_distances(n)
    assert len(dist) == 3 ** (1 << n)
    rng = np.random.default_rng(n)
    targets = [and_table(n), FunctionTable(n, [0] * (1 << n))]
    targets += [FunctionTable(n, rng.integers(0, 3, size=1 << n)) for _ in range(25)]
    for t in targets:
        w = search.bfs_min_weight(t)
        expected = dist[t.values.astype(np.int64).tobytes()]
        assert w.weight == expected
        assert sum_table(w.sum) == t


def test_bfs_linear_generators_n3():
    dist = oracle_distances(3, "linear")
    w = search.bfs_min_weight(and_table(3), "linear")
    assert w.weight == dist[and_table(3).values.astype(np.int64).tobytes()]


def test_bfs_backends_agree():
    t = and_table(3)
    a = search.bfs_min_weight(t, backend="numba")
    b = search.bfs_min_weight(t, backend="numpy")
    assert a.weight == b.weight


def test_bfs_capacity():
    with pytest.raises(search.CapacityError):
        search.bfs_min_weight(and_table(5))
    with pytest.raises(ValueError):
        search.generator_forms(3, "cubic")


def test_witness_validation_and_text():
    s = CharacterSum.parse("0 ; x1x2+1 ; x3x4+1 ; x1x2+x3x4", 4)
    w = search.WeightWitness(and_table(4), s, 4)
    assert search.WeightWitness.parse(str(w)) == w
    with pytest.raises(ValueError):
        search.WeightWitness(and_table(4), s, 3)
    with pytest.raises(ValueError):
        search.WeightWitness(and_table(4), CharacterSum.parse("x1", 4), 1)


# sampling --------------------------------------------------------------------------------

def test_histogram_is_independent_of_worker_count():
    base = search.sample_histogram(6, 3, 50_000, seed=5, workers=1)
    for workers in (2, 3, 7):
        assert search.sample_histogram(6, 3, 50_000, seed=5, workers=workers).bins == base.bins


def test_histogram_backends_agree():
    a = search.sample_histogram(6, 4, 20_000, seed=9, backend="numba")
    b = search.sample_histogram(6, 4, 20_000, seed=9, backend="numpy")
    assert a.bins == b.bins


def test_histogram_seeds_differ_and_repeat():
    a = search.sample_histogram(6, 2, 20_000, seed=1)
    assert search.sample_histogram(6, 2, 20_000, seed=1).bins == a.bins
    assert search.sample_histogram(6, 2, 20_000, seed=2).bins != a.bins


def test_sampled_tables_agree_with_histogram():
    tables = search.sample_tables(6, 3, 3000, seed=4)
    hist = search.sample_histogram(6, 3, 3000, seed=4)
    counts = {}
    for t in tables:
        counts[support(t)] = counts.get(support(t), 0) + 1
    assert counts == hist.bins


def test_weight2_supports():
    h = search.sample_histogram(6, 2, 100_000, seed=3)
    assert set(h.bins) <= {0, 16, 24, 28, 32, 36, 40, 48, 64}
    assert h.total == 100_000 and h.mode() == 32


def test_slow_path_for_large_n():
    h = search.sample_histogram(7, 1, 40, seed=0)
    assert h.bins == {128: 40}


def test_histogram_csv_round_trip():
    h = search.sample_histogram(6, 2, 1000, seed=0)
    text = h.to_csv()
    assert text.startswith("# n=6\n") and "support,count" in text
    back = search.Histogram.from_csv(text)
    assert back.bins == h.bins and back.meta["seed"] == "0"
    w = search.enumerate_weight3()
    assert search.Histogram.from_csv(w.to_csv()).bins == w.bins


def test_sampling_rejects_bad_weight():
    with pytest.raises(ValueError):
        search.sample_histogram(6, 0, 10)


# occupancy grid ---------------------------------------------------------------------------

def test_grid_properties():
    g = search.occupancy_grid(6, 3, 200_000, seed=0)
    cells = g.marked()
    assert cells
    assert all((x + y) % 2 == 0 for x, y in cells)
    assert all(x + y <= 64 for x, y in cells)
    assert search.OccupancyGrid.parse(str(g)).cells.tolist() == g.cells.tolist()


def test_grid_zero_function_cell():
    g = search.OccupancyGrid.empty(6)
    q = parse_form("x1x2+x3", 6)
    g.mark(sum_table(CharacterSum(6, (q, q, q))))
    assert g.marked() == [(0, 0)]


def test_grid_is_deterministic_across_workers():
    a = search.occupancy_grid(6, 3, 40_000, seed=2, workers=1)
    b = search.occupancy_grid(6, 3, 40_000, seed=2, workers=4)
    assert np.array_equal(a.cells, b.cells)


def test_grid_parse_rejects_bad_shape():
    with pytest.raises(ValueError):
        search.OccupancyGrid.parse("010\n01\n000")


# exact weight-3 enumeration ------------------------------------------------------------------

def test_class_sizes_n6():
    sizes = {str(u): c for u, c in search.witt_class_sizes(6).items()}
    assert sum(sizes.values()) == 1 << 22
    assert sizes["0"] == sizes["1"] == 1
    assert sizes["x1"] == 63
    assert sizes["x1x2"] == 2604
    assert sizes["x1x2+x3x4+x5x6"] == 888832


def _brute_weight3_histogram(n):
    masks = np.array([QuadraticForm.from_code(n, c).truth_mask()
                      for c in range(1 << code_width(n))], dtype=np.uint64)
    a = masks[:, None, None]
    b = masks[None, :, None]
    c = masks[None, None, :]
    # the sum of three characters vanishes exactly where all three forms agree
    nonzero = (a ^ b) | (a ^ c)
    supports = np.bitwise_count(nonzero).ravel()
    return np.bincount(supports, minlength=(1 << n) + 1)


@pytest.mark.parametrize("n", [2, 3])
def test_weighted_enumeration_matches_all_triples(n):
    brute = _brute_weight3_histogram(n)
    h = search._enumerate_weight3(n)
    scaled = {s: c * (1 << code_width(n)) for s, c in h.bins.items()}
    assert scaled == {s: int(c) for s, c in enumerate(brute) if c}


def test_enumeration_backends_agree_n4():
    a = search._enumerate_weight3(4, backend="numba")
    b = search._enumerate_weight3(4, backend="numpy")
    assert a.bins == b.bins


def test_enumerate_weight3_only_for_n6():
    with pytest.raises(ValueError):
        search.enumerate_weight3(5)


def test_weight3_has_no_odd_support():
    h = search.enumerate_weight3()
    assert all(s % 2 == 0 for s in h.bins)
    assert len(witt_normal_forms(6)) == 14


# complementary pairs ---------------------------------------------------------------------------

def test_pair_scan_finds_planted_pair():
    left = sum_table(CharacterSum.parse("0 ; x1x2+1", 4))
    right = sum_table(CharacterSum.parse("x3x4+1 ; x1x2+x3x4", 4))
    assert search.pair_sums_to_and(left, right)
    pool = search.sample_tables(4, 2, 200, seed=1)
    pool = pool[:50] + [left] + pool[50:] + [right]
    found = search.scan_complementary_pairs(pool)
    assert (50, len(pool) - 1) in found
    for i, j in found:
        assert search.pair_sums_to_and(pool[i], pool[j])


def test_pair_scan_matches_quadratic_scan():
    pool = search.sample_tables(3, 2, 300, seed=8)
    quadratic = sorted({(i, j) for i in range(len(pool)) for j in range(i, len(pool))
                        if search.pair_sums_to_and(pool[i], pool[j])})
    assert search.scan_complementary_pairs(pool) == quadratic
    assert quadratic


def test_pair_scan_edge_cases():
    assert search.scan_complementary_pairs([]) == []
    with pytest.raises(ValueError):
        search.scan_complementary_pairs([and_table(2), and_table(3)])
