"""Problem instances, packings, the instance file format and shared helpers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple, Union


class InstanceFormatError(ValueError):
    """Raised when an instance file cannot be parsed.

    ``line`` is the 1-based line number the problem was found on, or ``None``
    when the problem concerns the file as a whole.
    """

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class ProblemInstance:
    capacity: int
    weights: Tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if self.capacity < 1:
            raise ValueError(f"capacity must be positive, got {self.capacity}")
        for i, w in enumerate(self.weights):
            if w < 1:
                raise ValueError(f"weight {w} of item {i} is not positive")
            if w > self.capacity:
                raise ValueError(
                    f"weight {w} of item {i} exceeds capacity {self.capacity}"
                )

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def min_weight(self) -> int:
        """Smallest item weight; ``capacity + 1`` for an empty instance."""
        return min(self.weights, default=self.capacity + 1)


@dataclass(frozen=True)
class Packing:
    """Bins in order of opening, each a tuple of item indices."""

    capacity: int
    bins: Tuple[Tuple[int, ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "bins", tuple(tuple(b) for b in self.bins))

    @property
    def num_bins(self) -> int:
        return len(self.bins)

    def loads(self, inst: ProblemInstance) -> list:
        return [sum(inst.weights[i] for i in b) for b in self.bins]


@dataclass(frozen=True)
class LowerBoundReport:
    l1: int
    trivial_max: int


def parse_instance(text: Union[str, bytes], name: str = "") -> ProblemInstance:
    """Parse the ``n / capacity / w_1 .. w_n`` one-integer-per-line format."""
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise InstanceFormatError("instance file is not ASCII") from exc
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    def read_int(lineno: int) -> int:
        if lineno > len(lines):
            raise InstanceFormatError("unexpected end of file", lineno)
        raw = lines[lineno - 1].strip()
        try:
            return int(raw)
        except ValueError:
            raise InstanceFormatError(f"malformed integer {raw!r}", lineno) from None

    n = read_int(1)
    if n < 0:
        raise InstanceFormatError(f"negative item count {n}", 1)
    capacity = read_int(2)
    if capacity < 1:
        raise InstanceFormatError(f"capacity {capacity} is not positive", 2)

    weights = []
    for lineno in range(3, 3 + n):
        if lineno > len(lines):
            raise InstanceFormatError(
                f"item count mismatch: declared {n}, found {len(weights)}", lineno
            )
        w = read_int(lineno)
        if w < 1:
            raise InstanceFormatError(f"weight {w} is not positive", lineno)
        if w > capacity:
            raise InstanceFormatError(
                f"weight {w} exceeds capacity {capacity}", lineno
            )
        weights.append(w)

    extra = [ln for ln in lines[2 + n:] if ln.strip()]
    if extra:
        raise InstanceFormatError(
            f"item count mismatch: declared {n}, found {n + len(extra)}", 3 + n
        )
    return ProblemInstance(capacity, tuple(weights), name)


def write_instance(inst: ProblemInstance) -> str:
    parts = [str(inst.n), str(inst.capacity)]
    parts.extend(str(w) for w in inst.weights)
    return "\n".join(parts) + "\n"


def read_instance_file(path) -> ProblemInstance:
    from pathlib import Path

    p = Path(path)
    return parse_instance(p.read_bytes(), name=p.stem)


def verify_packing(inst: ProblemInstance, packing: Packing) -> Optional[str]:
    """Return ``None`` if ``packing`` is a feasible packing of ``inst``,
    otherwise a description of the first violation found."""
    if packing.capacity != inst.capacity:
        return f"capacity mismatch: packing {packing.capacity} != instance {inst.capacity}"
    seen = [False] * inst.n
    for b, items in enumerate(packing.bins):
        if not items:
            return f"bin {b} is empty"
        load = 0
        for i in items:
            if not (0 <= i < inst.n):
                return f"item {i} in bin {b} is out of range"
            if seen[i]:
                return f"item {i} appears twice"
            seen[i] = True
            load += inst.weights[i]
        if load > inst.capacity:
            return f"bin {b} overflows: {load} > {inst.capacity}"
    for i, packed in enumerate(seen):
        if not packed:
            return f"item {i} is not packed"
    return None


def lower_bound(inst: ProblemInstance) -> LowerBoundReport:
    total = sum(inst.weights)
    return LowerBoundReport(l1=-(-total // inst.capacity), trivial_max=inst.n)


def counting_sort_desc(weights: Iterable[int], max_weight: int) -> list:
    """Sort positive integers into non-increasing order in O(n + max_weight)."""
    counts = [0] * (max_weight + 1)
    for w in weights:
        if w > max_weight:
            raise ValueError(f"weight {w} exceeds max_weight {max_weight}")
        if w < 0:
            raise ValueError(f"negative weight {w}")
        counts[w] += 1
    out = []
    for w in range(max_weight, -1, -1):
        if counts[w]:
            out.extend([w] * counts[w])
    return out


def counting_order_desc(weights: Sequence[int], max_weight: int) -> list:
    """Item indices ordered by non-increasing weight, ties by ascending index."""
    buckets = [[] for _ in range(max_weight + 1)]
    for i, w in enumerate(weights):
        if w > max_weight:
            raise ValueError(f"weight {w} exceeds max_weight {max_weight}")
        buckets[w].append(i)
    order = []
    for w in range(max_weight, -1, -1):
        order.extend(buckets[w])
    return order


def format_packing(packing: Packing) -> str:
    """One line per bin, space-separated 0-based item indices."""
    return "".join(" ".join(map(str, b)) + "\n" for b in packing.bins)


def parse_packing(text: Union[str, bytes], capacity: int) -> Packing:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    bins = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            bins.append(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise InstanceFormatError(f"malformed item index in {line!r}", lineno) from None
    return Packing(capacity, tuple(bins))
