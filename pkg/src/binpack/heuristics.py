"""Next-Fit, First-Fit, Max-Rest and Best-Fit heuristics and their optimized
variants.

Every heuristic maps a :class:`~binpack.core.ProblemInstance` to a
:class:`~binpack.core.Packing` whose bins are numbered in order of opening.

Most functions take a ``close_full`` flag. A bin whose remaining capacity
drops below the smallest item weight of the instance can never accept another
item, so it may be retired and never scanned again. ``None`` selects the
variant's default: off for the plain textbook versions, on for the optimized
ones. Closing never changes the packing, only the work done to find it.
"""

from __future__ import annotations

import enum
import heapq
from collections import deque
from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .core import Packing, ProblemInstance, counting_order_desc


class HeuristicId(enum.Enum):
    NF = "NF"
    NFD = "NFD"
    NFD_PLUS = "NFD+"
    FF = "FF"
    FF_PLUS = "FF+"
    FF_PLUS_PLUS = "FF++"
    FFD = "FFD"
    FFD_PLUS = "FFD+"
    FFD_PLUS_PLUS = "FFD++"
    MR = "MR"
    MR_PLUS = "MR+"
    BF = "BF"
    BF_HEAP = "BF-heap"
    BF_LOOKUP = "BF++"

    @classmethod
    def from_name(cls, name: str) -> "HeuristicId":
        try:
            return cls(name)
        except ValueError:
            names = ", ".join(h.value for h in cls)
            raise ValueError(f"unknown heuristic {name!r} (choose from {names})") from None

    def __str__(self):
        return self.value


@dataclass
class OpenBin:
    index: int
    used: int
    capacity: int

    @property
    def remaining(self) -> int:
        return self.capacity - self.used


def close_full_bins(threshold: int, bins: Sequence[OpenBin]) -> List[OpenBin]:
    """Drop the bins whose used capacity exceeds ``threshold``.

    ``threshold`` is the limit capacity, i.e. bin capacity minus the smallest
    item weight; a bin above it has no room left for any item.
    """
    return [b for b in bins if b.used <= threshold]


def limit_capacity(inst: ProblemInstance) -> int:
    return inst.capacity - inst.min_weight


def _resolve(close_full: Optional[bool], default: bool) -> bool:
    return default if close_full is None else close_full


def _to_packing(inst: ProblemInstance, bins: List[List[int]]) -> Packing:
    return Packing(inst.capacity, tuple(tuple(b) for b in bins))


# -- sorting ---------------------------------------------------------------

def heapsort_order_desc(weights: Sequence[int]) -> list:
    """Reference comparison sort: indices by decreasing weight, ties by index."""
    heap = [(-w, i) for i, w in enumerate(weights)]
    heapq.heapify(heap)
    return [heapq.heappop(heap)[1] for _ in range(len(heap))]


def _decreasing_order(inst: ProblemInstance, sort: str) -> list:
    if sort == "counting":
        return counting_order_desc(inst.weights, inst.capacity)
    if sort == "heapsort":
        return heapsort_order_desc(inst.weights)
    raise ValueError(f"unknown sort {sort!r}")


# -- Next-Fit --------------------------------------------------------------

def _next_fit_order(inst: ProblemInstance, order, close_full: bool) -> Packing:
    cap = inst.capacity
    threshold = limit_capacity(inst)
    weights = inst.weights
    bins: List[List[int]] = []
    current: Optional[List[int]] = None
    load = 0
    for i in order:
        w = weights[i]
        if current is not None and load + w <= cap:
            current.append(i)
            load += w
        else:
            current = [i]
            bins.append(current)
            load = w
        if close_full and load > threshold:
            current = None
    return _to_packing(inst, bins)


def next_fit(inst: ProblemInstance, close_full: Optional[bool] = None) -> Packing:
    return _next_fit_order(inst, range(inst.n), _resolve(close_full, False))


def next_fit_decreasing(
    inst: ProblemInstance, sort: str = "counting", close_full: Optional[bool] = None
) -> Packing:
    """Next-Fit over the items in decreasing weight order.

    ``sort`` is ``"counting"`` (linear time) or ``"heapsort"`` (the comparison
    sort reference).
    """
    order = _decreasing_order(inst, sort)
    return _next_fit_order(inst, order, _resolve(close_full, False))


# -- First-Fit -------------------------------------------------------------

class StartIndexMap:
    """Prefix maximum over the weight domain ``[1, capacity]``.

    ``record(w, j)`` notes that an item of weight ``w`` went into bin ``j``;
    ``query(w)`` returns the largest ``j`` recorded for any weight ``<= w``,
    or 0. Every bin before that index was already too full for a lighter
    item, so a First-Fit scan for weight ``w`` may start there. Backed by a
    Fenwick tree, both operations are O(log capacity).
    """

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._tree = [0] * (capacity + 1)

    def record(self, weight: int, index: int) -> None:
        tree = self._tree
        k = weight
        while k <= self.capacity:
            if tree[k] < index:
                tree[k] = index
            k += k & -k

    def query(self, weight: int) -> int:
        tree = self._tree
        best = 0
        k = min(weight, self.capacity)
        while k > 0:
            if tree[k] > best:
                best = tree[k]
            k -= k & -k
        return best


def _ff_naive(inst, order, close_full):
    cap = inst.capacity
    threshold = limit_capacity(inst)
    weights = inst.weights
    bins: List[List[int]] = []
    loads: List[int] = []
    # bin ordinals still open, in increasing order
    open_ids: List[int] = []
    for i in order:
        w = weights[i]
        limit = cap - w
        if close_full:
            for pos, j in enumerate(open_ids):
                if loads[j] <= limit:
                    break
            else:
                pos = j = -1
        else:
            for j, load in enumerate(loads):
                if load <= limit:
                    break
            else:
                j = -1
            pos = j
        if j < 0:
            j = len(bins)
            bins.append([i])
            loads.append(w)
            if close_full:
                open_ids.append(j)
                pos = len(open_ids) - 1
        else:
            bins[j].append(i)
            loads[j] += w
        if close_full and loads[j] > threshold:
            del open_ids[pos]
    return bins


def _ff_compacting(inst, order, close_full):
    # Open bins live in a dense array of [load, ordinal] pairs kept in
    # opening order; closed bins are cut out so the scan never revisits them.
    cap = inst.capacity
    threshold = limit_capacity(inst)
    weights = inst.weights
    bins: List[List[int]] = []
    dense: List[List[int]] = []
    for i in order:
        w = weights[i]
        limit = cap - w
        for pos, slot in enumerate(dense):
            if slot[0] <= limit:
                break
        else:
            pos, slot = -1, None
        if slot is None:
            slot = [w, len(bins)]
            bins.append([i])
            dense.append(slot)
            pos = len(dense) - 1
        else:
            slot[0] += w
            bins[slot[1]].append(i)
        if close_full and slot[0] > threshold:
            del dense[pos]
    return bins


def _ff_lookup(inst, order, close_full):
    cap = inst.capacity
    threshold = limit_capacity(inst)
    weights = inst.weights
    starts = StartIndexMap(cap)
    bins: List[List[int]] = []
    loads: List[int] = []
    open_ids: List[int] = []
    for i in order:
        w = weights[i]
        limit = cap - w
        start = starts.query(w)
        j = -1
        if close_full:
            pos = bisect_left(open_ids, start)
            for pos in range(pos, len(open_ids)):
                if loads[open_ids[pos]] <= limit:
                    j = open_ids[pos]
                    break
        else:
            for k in range(start, len(loads)):
                if loads[k] <= limit:
                    j = k
                    break
        if j < 0:
            j = len(bins)
            bins.append([i])
            loads.append(w)
            if close_full:
                open_ids.append(j)
                pos = len(open_ids) - 1
        else:
            bins[j].append(i)
            loads[j] += w
        starts.record(w, j)
        if close_full and loads[j] > threshold:
            del open_ids[pos]
    return bins


_FF_VARIANTS = {
    "naive": (_ff_naive, False),
    "compacting": (_ff_compacting, True),
    "lookup": (_ff_lookup, True),
}


def first_fit(
    inst: ProblemInstance, variant: str = "naive", close_full: Optional[bool] = None
) -> Packing:
    """First-Fit in arrival order.

    ``variant`` selects the bin search: ``"naive"`` scans every bin,
    ``"compacting"`` scans a dense array that full bins are cut out of, and
    ``"lookup"`` starts each scan at the last bin that took an item no heavier
    than the current one. All three return the same packing.
    """
    impl, default = _FF_VARIANTS[variant]
    return _to_packing(inst, impl(inst, range(inst.n), _resolve(close_full, default)))


def first_fit_decreasing(
    inst: ProblemInstance,
    variant: str = "naive",
    sort: str = "heapsort",
    close_full: Optional[bool] = None,
) -> Packing:
    impl, default = _FF_VARIANTS[variant]
    order = _decreasing_order(inst, sort)
    return _to_packing(inst, impl(inst, order, _resolve(close_full, default)))


# -- Max-Rest --------------------------------------------------------------

def _mr_naive(inst, close_full):
    cap = inst.capacity
    threshold = limit_capacity(inst)
    bins: List[List[int]] = []
    loads: List[int] = []
    open_ids: List[int] = []
    for i, w in enumerate(inst.weights):
        # smallest index among the least-loaded bins
        k = -1
        candidates = open_ids if close_full else range(len(loads))
        best = cap + 1
        for pos, j in enumerate(candidates):
            if loads[j] < best:
                best = loads[j]
                k, kpos = j, pos
        if k >= 0 and best + w <= cap:
            bins[k].append(i)
            loads[k] += w
        else:
            k = len(bins)
            bins.append([i])
            loads.append(w)
            if close_full:
                open_ids.append(k)
                kpos = len(open_ids) - 1
        if close_full and loads[k] > threshold:
            del open_ids[kpos]
    return bins


def _mr_queue(inst, close_full):
    cap = inst.capacity
    threshold = limit_capacity(inst)
    bins: List[List[int]] = []
    # (used, ordinal): the top is the bin with most room, lowest ordinal first
    heap: List[tuple] = []
    for i, w in enumerate(inst.weights):
        if heap and heap[0][0] + w <= cap:
            used, k = heapq.heappop(heap)
            used += w
            bins[k].append(i)
        else:
            used, k = w, len(bins)
            bins.append([i])
        if not (close_full and used > threshold):
            heapq.heappush(heap, (used, k))
    return bins


def max_rest(
    inst: ProblemInstance, variant: str = "naive", close_full: Optional[bool] = None
) -> Packing:
    """Put each item into the bin with the most remaining room, if it fits.

    ``variant`` is ``"naive"`` (linear scan, O(n^2)) or ``"priority_queue"``
    (binary heap, O(n log n)); both break ties towards the lowest bin.
    """
    if variant == "naive":
        bins = _mr_naive(inst, _resolve(close_full, False))
    elif variant == "priority_queue":
        bins = _mr_queue(inst, _resolve(close_full, True))
    else:
        raise ValueError(f"unknown max_rest variant {variant!r}")
    return _to_packing(inst, bins)


# -- Best-Fit --------------------------------------------------------------

def _bf_naive(inst, close_full):
    cap = inst.capacity
    threshold = limit_capacity(inst)
    bins: List[List[int]] = []
    loads: List[int] = []
    open_ids: List[int] = []
    for i, w in enumerate(inst.weights):
        limit = cap - w
        k = -1
        best = -1
        candidates = open_ids if close_full else range(len(loads))
        for pos, j in enumerate(candidates):
            load = loads[j]
            if best < load <= limit:
                best = load
                k, kpos = j, pos
                if load == limit:
                    break
        if k >= 0:
            bins[k].append(i)
            loads[k] += w
        else:
            k = len(bins)
            bins.append([i])
            loads.append(w)
            if close_full:
                open_ids.append(k)
                kpos = len(open_ids) - 1
        if close_full and loads[k] > threshold:
            del open_ids[kpos]
    return bins


class _BinHeap:
    """Array max-heap of bin ordinals keyed by (remaining, -ordinal)."""

    def __init__(self, remaining: List[int]):
        self.remaining = remaining
        self.a: List[int] = []
        self.pos: Dict[int, int] = {}

    def _key(self, b):
        return (self.remaining[b], -b)

    def _swap(self, x, y):
        a = self.a
        a[x], a[y] = a[y], a[x]
        self.pos[a[x]] = x
        self.pos[a[y]] = y

    def _up(self, x):
        while x > 0:
            parent = (x - 1) >> 1
            if self._key(self.a[x]) <= self._key(self.a[parent]):
                break
            self._swap(x, parent)
            x = parent

    def _down(self, x):
        a = self.a
        n = len(a)
        while True:
            largest = x
            for child in (2 * x + 1, 2 * x + 2):
                if child < n and self._key(a[child]) > self._key(a[largest]):
                    largest = child
            if largest == x:
                return
            self._swap(x, largest)
            x = largest

    def push(self, b):
        self.a.append(b)
        self.pos[b] = len(self.a) - 1
        self._up(len(self.a) - 1)

    def decreased(self, b):
        self._down(self.pos[b])

    def remove(self, b):
        x = self.pos.pop(b)
        last = self.a.pop()
        if last != b:
            self.a[x] = last
            self.pos[last] = x
            self._up(x)
            self._down(self.pos[last])

    def best_fit(self, w) -> int:
        """Breadth-first search for the bin with least room that still holds
        ``w``; subtrees whose root lacks room are pruned. Returns -1 if none."""
        a, rem = self.a, self.remaining
        best = -1
        queue = deque([0] if a else [])
        while queue:
            x = queue.popleft()
            b = a[x]
            r = rem[b]
            if r < w:
                continue
            if best < 0 or r < rem[best] or (r == rem[best] and b < best):
                best = b
            for child in (2 * x + 1, 2 * x + 2):
                if child < len(a):
                    queue.append(child)
        return best


def _bf_heap(inst, close_full):
    cap = inst.capacity
    min_w = inst.min_weight
    bins: List[List[int]] = []
    remaining: List[int] = []
    heap = _BinHeap(remaining)
    for i, w in enumerate(inst.weights):
        k = heap.best_fit(w)
        if k >= 0:
            bins[k].append(i)
            remaining[k] -= w
            if close_full and remaining[k] < min_w:
                heap.remove(k)
            else:
                heap.decreased(k)
        else:
            k = len(bins)
            bins.append([i])
            remaining.append(cap - w)
            if not (close_full and remaining[k] < min_w):
                heap.push(k)
    return bins


@dataclass
class CapacityTable:
    """Open bins bucketed by exact remaining capacity.

    ``counts[r]`` is the number of bins with ``r`` units of room and
    ``bin_queues[r]`` holds their ordinals, oldest first. ``counts[capacity]``
    tracks the still-unopened bins, which have no ordinal yet.
    """

    counts: List[int]
    bin_queues: List[deque]

    @classmethod
    def empty(cls, capacity: int, n: int) -> "CapacityTable":
        counts = [0] * (capacity + 1)
        counts[capacity] = n
        return cls(counts, [deque() for _ in range(capacity + 1)])

    def used_bins(self) -> int:
        return sum(self.counts[:-1])


def _bf_table(inst: ProblemInstance, close_full: bool):
    cap = inst.capacity
    min_w = inst.min_weight
    table = CapacityTable.empty(cap, inst.n)
    counts, queues = table.counts, table.bin_queues
    bins: List[List[int]] = []
    for i, w in enumerate(inst.weights):
        for r in range(w, cap):
            if counts[r]:
                k = queues[r].popleft()
                break
        else:
            r = cap
            k = len(bins)
            bins.append([])
        counts[r] -= 1
        bins[k].append(i)
        r -= w
        if not (close_full and r < min_w):
            counts[r] += 1
            queues[r].append(k)
    return bins, table


def best_fit_table(inst: ProblemInstance, close_full: bool = False) -> CapacityTable:
    """Final lookup table of the table-driven Best-Fit run on ``inst``."""
    return _bf_table(inst, close_full)[1]


def best_fit(
    inst: ProblemInstance, variant: str = "naive", close_full: Optional[bool] = None
) -> Packing:
    """Put each item where it leaves the least room, opening a bin if needed.

    ``variant`` is ``"naive"`` (scan all bins), ``"heap"`` (pruned
    breadth-first search of a max-heap) or ``"lookup_table"`` (bins bucketed
    by remaining capacity, O(n * capacity)). Naive and heap pick the lowest
    index among equally good bins; the table picks the one longest in its
    bucket, so only the bin loads, not the assignment, are guaranteed to match.
    """
    if variant == "naive":
        bins = _bf_naive(inst, _resolve(close_full, False))
    elif variant == "heap":
        bins = _bf_heap(inst, _resolve(close_full, True))
    elif variant == "lookup_table":
        bins = _bf_table(inst, _resolve(close_full, True))[0]
    else:
        raise ValueError(f"unknown best_fit variant {variant!r}")
    return _to_packing(inst, bins)


# -- dispatch --------------------------------------------------------------

HEURISTICS: Dict[HeuristicId, Callable[..., Packing]] = {
    HeuristicId.NF: lambda inst, **kw: next_fit(inst, **kw),
    HeuristicId.NFD: lambda inst, **kw: next_fit_decreasing(inst, "heapsort", **kw),
    HeuristicId.NFD_PLUS: lambda inst, **kw: next_fit_decreasing(inst, "counting", **kw),
    HeuristicId.FF: lambda inst, **kw: first_fit(inst, "naive", **kw),
    HeuristicId.FF_PLUS: lambda inst, **kw: first_fit(inst, "compacting", **kw),
    HeuristicId.FF_PLUS_PLUS: lambda inst, **kw: first_fit(inst, "lookup", **kw),
    HeuristicId.FFD: lambda inst, **kw: first_fit_decreasing(inst, "naive", "heapsort", **kw),
    HeuristicId.FFD_PLUS: lambda inst, **kw: first_fit_decreasing(inst, "compacting", "counting", **kw),
    HeuristicId.FFD_PLUS_PLUS: lambda inst, **kw: first_fit_decreasing(inst, "lookup", "counting", **kw),
    HeuristicId.MR: lambda inst, **kw: max_rest(inst, "naive", **kw),
    HeuristicId.MR_PLUS: lambda inst, **kw: max_rest(inst, "priority_queue", **kw),
    HeuristicId.BF: lambda inst, **kw: best_fit(inst, "naive", **kw),
    HeuristicId.BF_HEAP: lambda inst, **kw: best_fit(inst, "heap", **kw),
    HeuristicId.BF_LOOKUP: lambda inst, **kw: best_fit(inst, "lookup_table", **kw),
}


def solve(inst: ProblemInstance, heuristic, close_full: Optional[bool] = None) -> Packing:
    """Run the heuristic named by ``heuristic`` (a :class:`HeuristicId` or its
    table name such as ``"FF++"``)."""
    if not isinstance(heuristic, HeuristicId):
        heuristic = HeuristicId.from_name(heuristic)
    return HEURISTICS[heuristic](inst, close_full=close_full)
