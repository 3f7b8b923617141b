import random

import pytest
from hypothesis import given, settings

from binpack.bench import random_instances
from binpack.core import lower_bound, verify_packing
from binpack.heuristics import (HEURISTICS, HeuristicId, OpenBin,
                                StartIndexMap, best_fit, best_fit_table,
                                close_full_bins, first_fit,
                                first_fit_decreasing, heapsort_order_desc,
                                max_rest, next_fit, next_fit_decreasing,
                                solve)

from conftest import inst, instances

ALL = list(HeuristicId)


def loads(instance, packing):
    return sorted(packing.loads(instance))


def test_table_names():
    assert [h.value for h in HeuristicId] == [
        "NF", "NFD", "NFD+", "FF", "FF+", "FF++", "FFD", "FFD+", "FFD++",
        "MR", "MR+", "BF", "BF-heap", "BF++"]
    assert set(HEURISTICS) == set(HeuristicId)
    with pytest.raises(ValueError, match="unknown heuristic"):
        HeuristicId.from_name("WF")


@pytest.mark.parametrize("h", ALL)
def test_empty_instance(h):
    assert solve(inst(10, []), h).bins == ()


def test_next_fit():
    assert next_fit(inst(10, [5, 5, 5])).bins == ((0, 1), (2,))
    assert next_fit(inst(6, [3, 1, 3, 1, 3, 1])).bins == ((0, 1), (2, 3), (4, 5))


def test_next_fit_decreasing():
    instance = inst(10, [1, 5, 5, 5, 1, 1])
    for sort in ("heapsort", "counting"):
        p = next_fit_decreasing(instance, sort)
        assert p.num_bins == 2
        assert loads(instance, p) == [8, 10]
    assert next_fit_decreasing(inst(2, [2, 2, 2])).num_bins == 3


def test_first_fit(example):
    for variant in ("naive", "compacting", "lookup"):
        assert first_fit(example, variant).bins == ((0, 2), (1,), (3,))
    assert first_fit(inst(10, [10])).num_bins == 1


def test_first_fit_decreasing(example):
    p = first_fit_decreasing(example)
    # sorted [6, 5, 5, 4]: {6, 4} then {5, 5}
    assert p.bins == ((1, 2), (0, 3))
    assert first_fit_decreasing(inst(7, [7, 7, 7])).num_bins == 3
    small = inst(5, [4, 1, 3, 1])
    assert first_fit_decreasing(small, "lookup", "counting").bins == ((0, 1), (2, 3))


def test_max_rest():
    for variant in ("naive", "priority_queue"):
        assert max_rest(inst(10, [6, 4, 6, 4]), variant).bins == ((0, 1), (2, 3))
        assert max_rest(inst(10, [5, 5, 5]), variant).bins == ((0, 1), (2,))


def test_max_rest_prefers_emptiest_bin():
    # bins hold 6 and 3 after two items; the 4 goes to the emptier second bin
    instance = inst(10, [6, 5, 4])
    assert max_rest(instance).bins == ((0,), (1, 2))
    # first-fit would have used bin 0
    assert first_fit(instance).bins == ((0, 2), (1,))


def test_best_fit(example):
    for variant in ("naive", "heap", "lookup_table"):
        assert best_fit(example, variant).bins == ((0, 3), (1, 2))


def test_best_fit_lookup_table_counts():
    table = best_fit_table(inst(10, [4, 4, 4]))
    assert table.counts[2] == 1 and table.counts[6] == 1
    assert table.used_bins() == 2
    assert all(table.counts[r] == len(table.bin_queues[r]) for r in range(10))
    assert table.counts[10] == 1  # one of the n = 3 candidate bins never opened


def test_start_index_map_against_brute_force():
    rng = random.Random(3)
    capacity = 40
    smap = StartIndexMap(capacity)
    recorded = []
    for _ in range(300):
        w, j = rng.randint(1, capacity), rng.randint(0, 100)
        smap.record(w, j)
        recorded.append((w, j))
        q = rng.randint(1, capacity)
        assert smap.query(q) == max([jj for ww, jj in recorded if ww <= q], default=0)


def test_close_full_bins_predicate():
    bins = [OpenBin(0, 8, 10), OpenBin(1, 7, 10), OpenBin(2, 1, 10)]
    kept = close_full_bins(10 - 3, bins)
    assert [b.index for b in kept] == [1, 2]
    assert kept[0].remaining == 3


@settings(max_examples=200)
@given(instances())
def test_validity_and_bracketing(instance):
    l1 = lower_bound(instance).l1
    for h in ALL:
        p = solve(instance, h)
        assert verify_packing(instance, p) is None, h
        if instance.n:
            assert l1 <= p.num_bins <= instance.n


@settings(max_examples=200)
@given(instances())
def test_variant_equivalence(instance):
    ff = first_fit(instance, "naive")
    assert first_fit(instance, "compacting") == ff
    assert first_fit(instance, "lookup") == ff
    assert max_rest(instance, "priority_queue") == max_rest(instance, "naive")
    bf = best_fit(instance, "naive")
    assert best_fit(instance, "heap") == bf
    assert loads(instance, best_fit(instance, "lookup_table")) == loads(instance, bf)


@settings(max_examples=200)
@given(instances())
def test_closing_neutral(instance):
    for h in ALL:
        assert solve(instance, h, close_full=True) == solve(instance, h, close_full=False), h


@given(instances())
def test_sort_neutral(instance):
    for variant in ("naive", "compacting", "lookup"):
        a = first_fit_decreasing(instance, variant, "heapsort")
        b = first_fit_decreasing(instance, variant, "counting")
        assert a.num_bins == b.num_bins and loads(instance, a) == loads(instance, b)
    a = next_fit_decreasing(instance, "heapsort")
    b = next_fit_decreasing(instance, "counting")
    assert a.num_bins == b.num_bins and loads(instance, a) == loads(instance, b)


@given(instances())
def test_ffd_is_ff_on_sorted_items(instance):
    order = heapsort_order_desc(instance.weights)
    permuted = inst(instance.capacity, [instance.weights[i] for i in order])
    ff = first_fit(permuted)
    ffd = first_fit_decreasing(instance, "lookup", "counting")
    assert ffd.bins == tuple(tuple(order[k] for k in b) for b in ff.bins)


@given(instances(max_n=20))
def test_single_bin_when_everything_fits(instance):
    if instance.n and sum(instance.weights) <= instance.capacity:
        for h in (HeuristicId.NF, HeuristicId.FF, HeuristicId.MR, HeuristicId.BF):
            assert solve(instance, h).num_bins == 1


def test_online_bins_numbered_in_opening_order():
    online = [h for h in ALL if "D" not in h.value]
    for instance in random_instances(50, 5, (1, 80), (10, 100)):
        for h in online:
            firsts = [b[0] for b in solve(instance, h).bins]
            assert firsts == sorted(firsts), h
