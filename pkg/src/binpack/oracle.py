"""Exact optimum for small instances and checks of the classical worst-case
bounds for Next-Fit, First-Fit and First-Fit-Decreasing."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence

from .core import ProblemInstance, lower_bound
from .bench import generate_nf_adversarial
from .heuristics import HeuristicId, first_fit_decreasing, next_fit, solve

DEFAULT_ITEM_LIMIT = 18


class InstanceTooLarge(ValueError):
    """The instance has more items than the exact solver is allowed to take."""


def exact_opt(inst: ProblemInstance, item_limit: int = DEFAULT_ITEM_LIMIT) -> int:
    """Minimum number of bins, by depth-first branch and bound.

    Items are placed in decreasing weight order. A new bin is only ever the
    next unused one, and two open bins with the same load are interchangeable,
    so only the first of them is tried. FFD provides the first incumbent.
    """
    n = inst.n
    if n > item_limit:
        raise InstanceTooLarge(f"{n} items exceeds the exact solver limit of {item_limit}")
    if n == 0:
        return 0

    cap = inst.capacity
    items = sorted(inst.weights, reverse=True)
    l1 = lower_bound(inst).l1
    best = first_fit_decreasing(inst, "naive", "counting").num_bins
    if best == l1:
        return best

    # suffix[k] = total weight of items[k:]
    suffix = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        suffix[k] = suffix[k + 1] + items[k]

    loads: List[int] = []

    def search(k: int) -> bool:
        """Returns True once a packing matching the lower bound is found."""
        nonlocal best
        if k == n:
            best = len(loads)
            return best == l1
        free = len(loads) * cap - sum(loads)
        overflow = suffix[k] - free
        bound = len(loads) + (-(-overflow // cap) if overflow > 0 else 0)
        if bound >= best:
            return False
        w = items[k]
        tried = set()
        for b in range(len(loads)):
            load = loads[b]
            if load + w > cap or load in tried:
                continue
            tried.add(load)
            loads[b] = load + w
            done = search(k + 1)
            loads[b] = load
            if done:
                return True
        if len(loads) + 1 < best:
            loads.append(w)
            done = search(k + 1)
            loads.pop()
            if done:
                return True
        return False

    search(0)
    return best


@dataclass(frozen=True)
class BoundClaim:
    """``bins(heuristic) (<|<=) multiplier * OPT + additive``."""

    heuristic: HeuristicId
    multiplier: Fraction
    additive: int
    strict: bool

    def rhs(self, opt_bins: int) -> Fraction:
        return self.multiplier * opt_bins + self.additive

    def __str__(self):
        rel = "<" if self.strict else "<="
        extra = f" + {self.additive}" if self.additive else ""
        return f"{self.heuristic.value} {rel} {self.multiplier}*OPT{extra}"


FF_CLAIM = BoundClaim(HeuristicId.FF, Fraction(17, 10), 2, True)
FFD_CLAIM = BoundClaim(HeuristicId.FFD, Fraction(11, 9), 4, True)
NF_CLAIM = BoundClaim(HeuristicId.NF, Fraction(2), 0, False)
CLAIMS = (FF_CLAIM, FFD_CLAIM, NF_CLAIM)


@dataclass(frozen=True)
class BoundVerdict:
    holds: bool
    # heuristic_bins - rhs; negative means slack, positive means excess
    margin: Fraction
    rhs: Fraction


def check_bound(claim: BoundClaim, heuristic_bins: int, opt_bins: int) -> BoundVerdict:
    rhs = claim.rhs(opt_bins)
    holds = heuristic_bins < rhs if claim.strict else heuristic_bins <= rhs
    return BoundVerdict(holds, heuristic_bins - rhs, rhs)


def nf_adversarial_opt(n: int) -> int:
    # Big items pair up; the unit items (total n) fill the leftover half bin
    # when n is odd, otherwise they need one bin of their own.
    return n // 2 + 1


@dataclass(frozen=True)
class NfRatioPoint:
    n: int
    nf_bins: int
    opt_bins: int
    ratio: Fraction


def nf_ratio_curve(n_values: Iterable[int]) -> List[NfRatioPoint]:
    points = []
    for n in n_values:
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")
        nf_bins = next_fit(generate_nf_adversarial(n)).num_bins
        opt = nf_adversarial_opt(n)
        points.append(NfRatioPoint(n, nf_bins, opt, Fraction(nf_bins, opt)))
    return points


def check_claims(inst: ProblemInstance, opt_bins: int, claims: Sequence[BoundClaim] = CLAIMS):
    """Evaluate each claim on ``inst``; yields ``(claim, bins, verdict)``."""
    for claim in claims:
        bins = solve(inst, claim.heuristic).num_bins
        yield claim, bins, check_bound(claim, bins, opt_bins)
