from fractions import Fraction

import pytest
from hypothesis import given, settings

from binpack.bench import generate_nf_adversarial, random_instances
from binpack.core import lower_bound
from binpack.heuristics import HeuristicId, solve
from binpack.oracle import (CLAIMS, FF_CLAIM, FFD_CLAIM, NF_CLAIM,
                            InstanceTooLarge, check_bound, exact_opt,
                            nf_adversarial_opt, nf_ratio_curve)

from conftest import brute_force_opt, inst, instances


def test_brute_force_oracle_itself():
    assert brute_force_opt(inst(10, [5, 6, 4, 5])) == 2
    assert brute_force_opt(inst(7, [7, 7, 7])) == 3


def test_exact_opt_examples(example):
    assert exact_opt(example) == 2
    assert exact_opt(inst(7, [7, 7, 7])) == 3
    assert exact_opt(inst(10, [])) == 0


def test_exact_opt_item_limit():
    big = inst(10, [1] * 19)
    with pytest.raises(InstanceTooLarge):
        exact_opt(big)
    assert exact_opt(big, item_limit=19) == 2


@settings(max_examples=150, deadline=None)
@given(instances(max_n=8, max_capacity=30))
def test_exact_opt_matches_enumeration(instance):
    assert exact_opt(instance) == brute_force_opt(instance)


def test_exact_opt_brackets_heuristics():
    for instance in random_instances(150, 21, (1, 12), (5, 60)):
        opt = exact_opt(instance)
        assert opt >= lower_bound(instance).l1
        for h in HeuristicId:
            assert opt <= solve(instance, h).num_bins


def test_exact_opt_hard_case():
    # l1 = 2 but three 6s cannot share two bins of 10
    assert exact_opt(inst(10, [6, 6, 6, 1, 1])) == 3


def test_claims():
    assert [(c.heuristic, c.multiplier, c.additive, c.strict) for c in CLAIMS] == [
        (HeuristicId.FF, Fraction(17, 10), 2, True),
        (HeuristicId.FFD, Fraction(11, 9), 4, True),
        (HeuristicId.NF, Fraction(2), 0, False),
    ]


def test_check_bound():
    v = check_bound(NF_CLAIM, 10, 5)
    assert v.holds and v.margin == 0
    v = check_bound(NF_CLAIM, 11, 5)
    assert not v.holds and v.margin == 1
    v = check_bound(FF_CLAIM, 3, 2)
    assert v.holds and v.rhs == Fraction(27, 5)


def test_strict_bound_rejects_equality():
    # 17/10 * 10 + 2 = 19 exactly
    assert not check_bound(FF_CLAIM, 19, 10).holds
    assert check_bound(FF_CLAIM, 18, 10).holds
    # 11/9 * 9 + 4 = 15
    assert not check_bound(FFD_CLAIM, 15, 9).holds


def test_nf_ratio_curve_values():
    points = {p.n: p for p in nf_ratio_curve([2, 10, 100])}
    assert (points[2].nf_bins, points[2].opt_bins, points[2].ratio) == (2, 2, 1)
    assert (points[10].nf_bins, points[10].opt_bins, points[10].ratio) == (10, 6, Fraction(5, 3))
    assert points[100].ratio == Fraction(100, 51)
    assert Fraction(19, 10) < points[100].ratio <= 2


@pytest.mark.parametrize("n", range(2, 9))
def test_nf_adversarial_opt_formula(n):
    instance = generate_nf_adversarial(n)
    assert exact_opt(instance) == nf_adversarial_opt(n)


def test_nf_ratio_monotone_for_even_n():
    ratios = [p.ratio for p in nf_ratio_curve(range(2, 202, 2))]
    assert ratios == sorted(ratios)
    assert all(r <= 2 for r in ratios)
