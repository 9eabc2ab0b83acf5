import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from congestion_adversary import (
    AWAY_FROM_ZERO,
    EmptyGame,
    EmptyResources,
    INFINITY,
    NegativeCoefficient,
    NonPositiveBudget,
    NonPositivePlayers,
    SameResource,
    TOWARD_ZERO,
    UnoccupiedResource,
    attack,
    binding_deviation,
    compute_K,
    deviation_cost,
    is_alpha_pne,
    k_upper_bound,
    needed_alpha,
    resource_cost,
    scale_instance,
    validate_instance,
)

rationals = st.fractions(min_value=0, max_value=20, max_denominator=8)
positive_rationals = st.fractions(min_value=Fraction(1, 8), max_value=20, max_denominator=8)


def instances(min_m=1, max_m=6, max_n=12):
    return st.builds(
        lambda coeffs, n, budget: validate_instance(coeffs, n, budget),
        st.lists(rationals, min_size=min_m, max_size=max_m),
        st.integers(min_value=1, max_value=max_n),
        positive_rationals,
    )


def random_profile(inst, rng):
    loads = [0] * inst.m
    for _ in range(inst.n):
        loads[rng.randrange(inst.m)] += 1
    return tuple(loads)


class TestValidation:
    def test_sorts_coefficients(self):
        inst = validate_instance([5, 0, 2], 5, 6)
        assert inst.coefficients == (Fraction(0), Fraction(2), Fraction(5))
        assert inst.m == 3

    def test_rejects_empty_resources(self):
        with pytest.raises(EmptyResources):
            validate_instance([], 3, 1)

    def test_rejects_non_positive_players(self):
        with pytest.raises(NonPositivePlayers):
            validate_instance([1], 0, 1)

    def test_rejects_non_positive_budget(self):
        with pytest.raises(NonPositiveBudget):
            validate_instance([1], 2, 0)

    def test_rejects_negative_coefficient(self):
        with pytest.raises(NegativeCoefficient):
            validate_instance([1, -1], 2, 1)


class TestAttack:
    def test_even_split_over_max_load(self):
        assert attack((2, 2, 1), 6) == (Fraction(3), Fraction(3), Fraction(0))
        assert attack((3, 1, 0), 5) == (Fraction(5), Fraction(0), Fraction(0))

    def test_empty_profile_rejected(self):
        with pytest.raises(EmptyGame):
            attack((0, 0), 1)

    @given(
        st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=6).filter(
            lambda ls: sum(ls) > 0
        ),
        positive_rationals,
    )
    def test_spends_budget_on_max_load_only(self, loads, budget):
        kappa = attack(loads, budget)
        assert sum(kappa) == budget
        peak = max(loads)
        assert all((k > 0) == (x == peak) for k, x in zip(kappa, loads))
        assert len(set(k for k in kappa if k > 0)) == 1

    @given(
        st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=5).filter(
            lambda ls: sum(ls) > 0
        ),
        positive_rationals,
        st.randoms(use_true_random=False),
    )
    @settings(deadline=None)
    def test_maximizes_total_inflicted_cost(self, loads, budget, rng):
        """The even max-load split attains the optimal total extra cost B * max(loads).

        Compared against random feasible budget splits as an independent check.
        """
        kappa = attack(loads, budget)
        best = sum(k * x for k, x in zip(kappa, loads))
        assert best == budget * max(loads)
        for _ in range(50):
            weights = [Fraction(rng.randint(0, 10)) for _ in loads]
            total = sum(weights)
            if total == 0:
                continue
            split = [w * budget / total for w in weights]
            assert sum(k * x for k, x in zip(split, loads)) <= best


class TestCosts:
    def test_resource_cost_decomposition(self, example1):
        loads = (2, 2, 1)
        kappa = attack(loads, example1.budget)
        for r in range(3):
            assert (
                resource_cost(example1, loads, r)
                == example1.coefficients[r] * loads[r] + kappa[r]
            )

    def test_resource_cost_requires_occupancy(self, example1):
        with pytest.raises(UnoccupiedResource):
            resource_cost(example1, (5, 0, 0), 1)

    def test_deviation_rejects_same_resource(self, example1):
        with pytest.raises(SameResource):
            deviation_cost(example1, (2, 2, 1), 1, 1)

    @given(instances(min_m=2), st.randoms(use_true_random=False))
    @settings(deadline=None)
    def test_deviation_cost_matches_post_move_profile(self, inst, rng):
        loads = random_profile(inst, rng)
        occupied = [r for r in range(inst.m) if loads[r] > 0]
        source = rng.choice(occupied)
        target = rng.choice([r for r in range(inst.m) if r != source])
        after = list(loads)
        after[source] -= 1
        after[target] += 1
        assert deviation_cost(inst, loads, source, target) == resource_cost(
            inst, after, target
        )

    @given(instances(), st.randoms(use_true_random=False))
    @settings(deadline=None)
    def test_entering_player_cost_matches_post_entry_profile(self, inst, rng):
        loads = [0] * inst.m
        for _ in range(inst.n - 1):
            loads[rng.randrange(inst.m)] += 1
        target = rng.randrange(inst.m)
        after = list(loads)
        after[target] += 1
        assert deviation_cost(inst, loads, None, target) == resource_cost(
            inst, after, target
        )


class TestNeededAlpha:
    def test_single_resource_is_exact(self):
        inst = validate_instance([3], 4, 2)
        assert needed_alpha(inst, (4,)) == 1
        assert binding_deviation(inst, (4,)) is None
        assert is_alpha_pne(inst, (4,), 1)

    def test_zero_cost_escape_is_infinite(self):
        inst = validate_instance([0, 0, 1], 3, 1)
        assert needed_alpha(inst, (2, 0, 1)) == INFINITY
        assert not is_alpha_pne(inst, (2, 0, 1), 10**9)

    def test_example_values(self, example1):
        assert needed_alpha(example1, (2, 2, 1)) == Fraction(7, 6)
        assert needed_alpha(example1, (4, 1, 0)) == Fraction(3, 2)
        assert needed_alpha(example1, (3, 2, 0)) == Fraction(6, 5)
        assert needed_alpha(example1, (3, 1, 1)) == Fraction(5, 4)
        assert needed_alpha(example1, (5, 0, 0)) == Fraction(3)

    def test_binding_deviation_realizes_needed_alpha(self, example1):
        ratio, source, target, cost, dev = binding_deviation(example1, (2, 2, 1))
        assert (source, target) == (1, 0)
        assert (cost, dev) == (Fraction(7), Fraction(6))
        assert ratio == needed_alpha(example1, (2, 2, 1)) == cost / dev

    def test_empty_profile_rejected(self, example1):
        with pytest.raises(EmptyGame):
            needed_alpha(example1, (0, 0, 0))

    @given(instances(), st.randoms(use_true_random=False))
    @settings(deadline=None)
    def test_monotone_in_alpha(self, inst, rng):
        loads = random_profile(inst, rng)
        value = needed_alpha(inst, loads)
        if value == INFINITY:
            assert not is_alpha_pne(inst, loads, 10**6)
            return
        assert is_alpha_pne(inst, loads, max(value, Fraction(1)))
        if value > 1:
            assert not is_alpha_pne(
                inst, loads, value - Fraction(1, 10**9)
            )

    @given(
        instances(),
        st.fractions(
            min_value=Fraction(1, 16), max_value=100, max_denominator=16
        ),
        st.randoms(use_true_random=False),
    )
    @settings(deadline=None)
    def test_invariant_under_scaling(self, inst, factor, rng):
        loads = random_profile(inst, rng)
        scaled = scale_instance(inst, factor)
        assert needed_alpha(scaled, loads) == needed_alpha(inst, loads)


class TestThresholdConstant:
    def test_brackets_the_root(self):
        for precision in (3, 6, 9, 12):
            lo = compute_K(precision, TOWARD_ZERO).value
            hi = compute_K(precision, AWAY_FROM_ZERO).value
            assert lo**3 - lo**2 / 2 - 1 <= 0 <= hi**3 - hi**2 / 2 - 1
            assert 0 < hi - lo <= Fraction(1, 10**precision)

    def test_approximate_value(self):
        assert abs(float(k_upper_bound(12)) - 1.1974293) < 1e-6

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            compute_K(0)
        with pytest.raises(ValueError):
            compute_K(5, "nearest")

    def test_tightens_with_precision(self):
        coarse = compute_K(4, AWAY_FROM_ZERO).value
        fine = compute_K(12, AWAY_FROM_ZERO).value
        assert fine <= coarse
