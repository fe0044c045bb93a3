import random
from fractions import Fraction

import pytest

from socineff.axioms import make_chat, random_context, random_lottery
from socineff.context import Lottery, make_context, point, to_float, utility_profile
from socineff.errors import GuardrailExceeded
from socineff.frontier import (
    brute_force_is_efficient,
    dominating_efficient_lottery,
    frontier_summary,
    ideal_point_profile,
    is_efficient,
    minimal_expectations_profile,
)


class TestArrow:
    def test_summary(self, arrow):
        s = frontier_summary(arrow)
        assert s.efficient_pure == {0, 1}
        assert s.u_min == (Fraction(9, 10), Fraction(9, 10), Fraction(1, 2))
        assert s.u_max == (1, 1, 1)
        assert s.frontier_dimension == 3

    def test_mixtures_on_the_edge_are_efficient(self, arrow):
        x = Lottery((Fraction(1, 2), Fraction(1, 2), 0))
        assert is_efficient(arrow, x)
        assert not is_efficient(arrow, Lottery((Fraction(1, 2), 0, Fraction(1, 2))))


def test_single_alternative():
    c = make_context(["only"], [[3], [-1]])
    s = frontier_summary(c)
    assert s.efficient_pure == {0}
    assert s.frontier_indifferent == (True, True)
    assert s.frontier_dimension == 0


def test_mixture_can_dominate_a_pure_alternative():
    # c is not beaten by a or b alone but the half-half mix gives (1/2, 1/2) > (2/5, 2/5)
    c = make_context(["a", "b", "c"], [[1, 0, "2/5"], [0, 1, "2/5"]])
    assert frontier_summary(c).efficient_pure == {0, 1}
    assert not brute_force_is_efficient(c, point(c, 2))


@pytest.mark.parametrize(
    "group, efficient",
    [([1, 2], {1, 2}), ([1, 2, 3], {1, 2, 3}), ([], {0})],
)
def test_indicator_fixture(group, efficient):
    c = make_chat(3, group)
    s = frontier_summary(c)
    assert {int(c.names[a]) for a in s.efficient_pure} == {int(c.names[a]) for a in efficient}
    assert s.frontier_dimension == len(group)


def test_dominating_lottery_is_efficient_and_dominates():
    rng = random.Random(5)
    for seed in range(30):
        c = random_context(2 + seed % 2, 4, seed)
        x = random_lottery(c.m, rng)
        w = dominating_efficient_lottery(c, x)
        assert is_efficient(c, w)
        assert all(a >= b for a, b in zip(utility_profile(c, w), utility_profile(c, x)))


def test_reference_points(arrow):
    assert ideal_point_profile(arrow) == (1, 1, 1)
    assert minimal_expectations_profile(arrow) == (Fraction(9, 10), Fraction(9, 10), Fraction(1, 2))


def test_float_mode_agrees_with_exact():
    for seed in range(20):
        c = random_context(3, 4, seed)
        exact, approx = frontier_summary(c), frontier_summary(to_float(c))
        assert exact.efficient_pure == approx.efficient_pure
        assert all(abs(float(a) - b) < 1e-9 for a, b in zip(exact.u_min, approx.u_min))


def test_oracle_guardrail():
    c = random_context(2, 9, 0)
    with pytest.raises(GuardrailExceeded):
        brute_force_is_efficient(c, point(c, 0))


def test_oracle_agreement_sample():
    rng = random.Random(11)
    for seed in range(40):
        c = random_context(1 + seed % 3, 2 + seed % 4, 1000 + seed, max_denominator=4)
        for x in [point(c, a) for a in range(c.m)] + [random_lottery(c.m, rng) for _ in range(5)]:
            assert is_efficient(c, x) == brute_force_is_efficient(c, x)
