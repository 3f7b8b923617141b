"""Instance generators, timing harness and result tables."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import ProblemInstance, verify_packing
from .heuristics import HeuristicId, solve

MASK64 = (1 << 64) - 1

# The six configurations of the original results table.
PAPER_HEURISTICS = (
    HeuristicId.MR_PLUS,
    HeuristicId.FF_PLUS_PLUS,
    HeuristicId.FFD_PLUS_PLUS,
    HeuristicId.NF,
    HeuristicId.NFD_PLUS,
    HeuristicId.BF_LOOKUP,
)


class SplitMix64:
    """SplitMix64 (Steele, Lea & Flood 2014), chosen because it is fully
    specified and so reproduces the same stream on every platform."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer on ``[lo, hi]`` by rejection sampling."""
        span = hi - lo + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span


class BenchmarkError(RuntimeError):
    """A heuristic produced an infeasible packing during a benchmark."""


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str = "uniform"
    n: int = 100
    capacity: int = 1000
    min_w: int = 1
    max_w: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("uniform", "nf_adversarial"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        if self.capacity < 1:
            raise ValueError(f"capacity must be positive, got {self.capacity}")
        if self.max_w is None:
            object.__setattr__(self, "max_w", self.capacity)
        if not 1 <= self.min_w <= self.max_w <= self.capacity:
            raise ValueError(
                f"invalid weight range [{self.min_w}, {self.max_w}] for capacity {self.capacity}"
            )
        if not 0 <= self.seed <= MASK64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")


def generate_nf_adversarial(n: int, name: str = "") -> ProblemInstance:
    """Half-bin items alternating with items of ``1/(2n)`` of a bin, ``n`` of
    each, scaled to integer capacity ``2n``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return ProblemInstance(2 * n, (n, 1) * n, name or f"nf_adversarial_{n}")


def generate(spec: GeneratorSpec, name: Optional[str] = None) -> ProblemInstance:
    if spec.kind == "nf_adversarial":
        return generate_nf_adversarial(spec.n, name or "")
    rng = SplitMix64(spec.seed)
    weights = tuple(rng.randint(spec.min_w, spec.max_w) for _ in range(spec.n))
    if name is None:
        name = f"uniform_n{spec.n}_c{spec.capacity}_s{spec.seed}"
    return ProblemInstance(spec.capacity, weights, name)


def random_instances(count: int, seed: int, n_range: Tuple[int, int],
                     capacity_range: Tuple[int, int]) -> List[ProblemInstance]:
    """``count`` uniform instances whose size and capacity are themselves drawn
    from the given inclusive ranges."""
    rng = SplitMix64(seed)
    out = []
    for k in range(count):
        n = rng.randint(*n_range)
        capacity = rng.randint(*capacity_range)
        spec = GeneratorSpec("uniform", n, capacity, seed=rng.next_u64())
        out.append(generate(spec, name=f"rand{k}"))
    return out


def time_heuristic(inst: ProblemInstance, heuristic: HeuristicId,
                   repeats: int = 5) -> Tuple[int, float]:
    """Return ``(bins, seconds)``, seconds being the fastest of ``repeats``
    runs of the packing call alone."""
    if repeats < 1:
        raise ValueError(f"repeats must be at least 1, got {repeats}")
    best = float("inf")
    packing = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        packing = solve(inst, heuristic)
        elapsed = time.perf_counter() - t0
        best = min(best, elapsed)
    problem = verify_packing(inst, packing)
    if problem is not None:
        raise BenchmarkError(f"{heuristic} on {inst.name}: {problem}")
    return packing.num_bins, best


@dataclass(frozen=True)
class RunRecord:
    instance_name: str
    heuristic: HeuristicId
    bins: int
    seconds: float
    best_bins: bool = False
    best_time: bool = False


def mark_best(records: Sequence[RunRecord]) -> List[RunRecord]:
    """Set the best flags, per instance, on the minimum bins and minimum time."""
    groups = {}
    for r in records:
        groups.setdefault(r.instance_name, []).append(r)
    min_bins = {k: min(r.bins for r in g) for k, g in groups.items()}
    min_time = {k: min(r.seconds for r in g) for k, g in groups.items()}
    return [
        replace(r, best_bins=r.bins == min_bins[r.instance_name],
                best_time=r.seconds == min_time[r.instance_name])
        for r in records
    ]


def run_suite(instances: Sequence[ProblemInstance], heuristics: Sequence[HeuristicId],
              repeats: int = 5) -> List[RunRecord]:
    if not instances or not heuristics:
        raise ValueError("run_suite needs at least one instance and one heuristic")
    records = []
    for inst in instances:
        for h in heuristics:
            bins, seconds = time_heuristic(inst, h, repeats)
            records.append(RunRecord(inst.name, h, bins, seconds))
    return mark_best(records)


CSV_HEADER = ("instance", "heuristic", "bins", "seconds", "best_bins", "best_time")
DAGGER = "†"


def _markdown(records: Iterable[RunRecord]) -> str:
    lines = ["| Problem set | Algorithm | Bins | Time in s |",
             "|---|---|---|---|"]
    previous = None
    for r in records:
        label = r.instance_name if r.instance_name != previous else ""
        previous = r.instance_name
        bins = f"{r.bins}{DAGGER if r.best_bins else ''}"
        secs = f"{r.seconds:.6g}{DAGGER if r.best_time else ''}"
        lines.append(f"| {label} | {r.heuristic.value} | {bins} | {secs} |")
    return "\n".join(lines) + "\n"


def _csv(records: Iterable[RunRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([r.instance_name, r.heuristic.value, r.bins, repr(r.seconds),
                         int(r.best_bins), int(r.best_time)])
    return buf.getvalue()


def emit_table(records: Sequence[RunRecord], fmt: str = "markdown") -> str:
    if fmt == "markdown":
        return _markdown(records)
    if fmt == "csv":
        return _csv(records)
    raise ValueError(f"unknown table format {fmt!r}")


def parse_csv(text: str) -> List[RunRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    return [
        RunRecord(name, HeuristicId.from_name(h), int(bins), float(secs),
                  best_bins == "1", best_time == "1")
        for name, h, bins, secs, best_bins, best_time in reader
    ]
