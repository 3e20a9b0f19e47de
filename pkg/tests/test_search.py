import pytest

from conftest import random_bound_pair
from skewbounds import (
    BoundInputPair,
    SearchStrategy,
    SpaceTooLargeError,
    best_ik,
    best_k,
    best_over_family,
    best_spq,
    bound_ik,
    bound_k_prefix,
    bound_spq,
)


def small_pair():
    return BoundInputPair.from_vectors([1.0, 2.0], [3.0, 1.0])


def test_strategy_validation():
    with pytest.raises(ValueError):
        SearchStrategy(kind="annealing")
    with pytest.raises(ValueError):
        SearchStrategy(sample_count=0)


def test_best_ik_exhaustive_oracle():
    out = best_ik(small_pair(), 2, SearchStrategy(kind="exhaustive"))
    assert out.best.value == 49.0
    assert out.certified_exact
    assert out.evaluations == 4  # 2! x 2! orderings
    # ties resolve to the first candidate in enumeration order
    assert out.best.params["sigma"] == (0, 1)
    assert out.best.params["tau"] == (1, 0)


def test_best_ik_k1_trivial():
    pair = small_pair()
    out = best_ik(pair, 1, SearchStrategy(kind="exhaustive"))
    assert out.best.value == pair.product
    assert out.certified_exact


def test_best_spq_beats_identity():
    for seed in (0, 1, 2):
        pair = random_bound_pair(seed, 2)
        out = best_spq(pair, 3, 1, SearchStrategy(kind="hybrid", seed=seed))
        assert out.best.value >= bound_spq(pair, 3, 1).value - 1e-12


def test_best_ik_identity_always_seeded():
    # sampling with a tiny budget still starts from the identity ordering
    for seed in (5, 6):
        pair = random_bound_pair(seed, 3)
        strat = SearchStrategy(kind="random_sample", seed=seed, sample_count=3)
        out = best_ik(pair, 4, strat)
        assert out.best.value >= bound_ik(pair, 4).value - 1e-12


def test_exhaustive_guard_trips():
    pair = random_bound_pair(9, 3)  # n = 9, P(9,4)^2 is over the enumeration guard
    with pytest.raises(SpaceTooLargeError):
        best_ik(pair, 4, SearchStrategy(kind="exhaustive"))


def test_random_sample_enumerates_small_spaces():
    pair = small_pair()
    out = best_ik(pair, 2, SearchStrategy(kind="random_sample", seed=0, sample_count=2000))
    assert out.certified_exact
    assert out.best.value == 49.0


def test_greedy_swap_deterministic():
    pair = random_bound_pair(31, 3)
    strat = SearchStrategy(kind="greedy_swap", seed=4, sample_count=50, swap_rounds=20)
    a = best_ik(pair, 3, strat)
    b = best_ik(pair, 3, strat)
    assert a.best.value == b.best.value
    assert a.best.params == b.best.params
    assert a.best.value >= bound_ik(pair, 3).value - 1e-12


def test_best_k_exact_oracle():
    pair = small_pair()
    out = best_k(pair, 1)
    assert out.best.value == 25.0
    assert out.certified_exact
    assert out.best.params["subset"] == (1,)


def test_best_k_complement_sizes_agree_bitwise():
    for seed in (2, 3):
        for dim in (2, 3):
            pair = random_bound_pair(seed, dim)
            for k in range(pair.n + 1):
                a = best_k(pair, k).best.value
                b = best_k(pair, pair.n - k).best.value
                assert a == b


def test_best_k_dominates_prefix():
    for seed in (7, 8):
        pair = random_bound_pair(seed, 2)
        for k in range(pair.n + 1):
            assert best_k(pair, k).best.value >= bound_k_prefix(pair, k).value - 1e-12


def test_best_over_family():
    pair = small_pair()
    strat = SearchStrategy(kind="exhaustive")
    out_i = best_over_family(pair, "I", strat)
    assert out_i.best.value >= 49.0
    out_k = best_over_family(pair, "K", strat)
    assert out_k.certified_exact
    assert out_k.best.value >= best_k(pair, 1).best.value
    with pytest.raises(ValueError):
        best_over_family(pair, "Z", strat)
