import random

import pytest

from jplus.arrangement import build_arrangement
from jplus.curves import CurveSystem
from jplus.generators import (ConstructionError, PairTarget, connected_sum, construct_pair,
                              construct_start_pair, curve_with_j_plus, verify_pair, family, family_j_plus,
                              std_k, std_l, std_p)
from jplus.invariants import analyze, j2_plus, j_plus


@pytest.mark.parametrize("i", range(0, 9))
def test_k_family(i):
    assert j_plus(std_k(i)) == (0 if i < 2 else 2 - 2 * i) == family_j_plus("k", i)


@pytest.mark.parametrize("k", range(1, 6))
def test_p_family(k):
    assert j_plus(std_p(k)) == 2 * k


def test_p1_shape():
    rep = analyze(CurveSystem(std_p(1)))
    assert rep.n == 4 and rep.indices == (1, 1, 1, 1)
    assert len(rep.windings) == 6


@pytest.mark.parametrize("i", range(0, 6))
def test_l_family(i):
    rep = analyze(CurveSystem(std_l(i)))
    assert rep.j_plus == -i * (1 + i)
    assert sorted(rep.windings.system) == list(range(i + 2))
    assert sorted(rep.indices) == list(range(1, i + 1))


def test_family_parameters_are_checked():
    for name, bad in (("k", -1), ("p", 0), ("l", -1)):
        with pytest.raises(ValueError):
            family(name, bad)
    with pytest.raises(ValueError):
        family("q", 1)


@pytest.mark.parametrize("a, b, want", [
    (std_k(1), std_k(1), 0),
    (std_p(1), std_p(1), 4),
    (std_p(3), std_l(3), -6),
])
def test_connected_sum_examples(a, b, want):
    assert j_plus(connected_sum(a, b)) == want


def test_connected_sum_is_additive_on_random_pairs():
    rng = random.Random(7)
    pool = [std_k(i) for i in range(5)] + [std_p(k) for k in (1, 2)] + \
           [std_l(i) for i in range(4)]
    for _ in range(20):
        a, b = rng.choice(pool), rng.choice(pool)
        if rng.random() < 0.5:
            b = b.reversed()
        s = connected_sum(a, b)
        assert not build_arrangement(CurveSystem(s)).n < 0
        assert j_plus(s) == j_plus(a) + j_plus(b)


@pytest.mark.parametrize("n", range(-12, 14, 2))
def test_every_even_value_is_realised(n):
    assert j_plus(curve_with_j_plus(n)) == n


def test_odd_value_rejected():
    with pytest.raises(ValueError):
        curve_with_j_plus(3)
    with pytest.raises(ValueError):
        PairTarget(1, 0, 0)


@pytest.mark.parametrize("target", [(0, 0, 0), (0, 0, 4), (2, 2, 8), (-6, -4, -16),
                                    (0, 2, -4), (4, -2, -2)])
def test_construct_examples(target):
    system = construct_pair(target)
    x, y, z = target
    assert j_plus(CurveSystem(system[0])) == x
    assert j_plus(CurveSystem(system[1])) == y
    assert j2_plus(system) == z


def test_zero_target_is_two_disjoint_circles():
    system = construct_pair((0, 0, 0))
    rep = analyze(system)
    assert rep.n == 0 and rep.u == 0 and rep.j2_plus == 0


def test_worked_construction_passes_through_minus_ten():
    target = PairTarget(-6, -4, -16)
    assert j2_plus(construct_start_pair(target)) == -10
    assert j2_plus(construct_pair(target)) == -16


def test_verification_is_loud():
    system = construct_pair((2, 2, 8))
    with pytest.raises(ConstructionError):
        verify_pair(system, PairTarget(2, 2, 6))
