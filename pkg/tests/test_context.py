from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socineff.context import (
    Context,
    Lottery,
    compose,
    diagonal_lottery,
    embed_lottery,
    expected_utility,
    lottery_from_names,
    make_context,
    permute_individuals,
    point,
    product_lottery,
    rename_alternatives,
    restrict,
    self_compose,
    to_float,
    utility_profile,
)
from socineff.errors import (
    DuplicateName,
    EmptyAlternatives,
    FactorMismatch,
    InvalidLottery,
    MissingName,
    NotAPermutation,
    NotInjective,
    RaggedMatrix,
    SizeLimitExceeded,
    UnknownAlternative,
)


def small():
    return make_context(["p", "q"], [[1, 0], ["1/2", 1]])


class TestConstruction:
    def test_basic(self):
        c = small()
        assert (c.n, c.m) == (2, 2)
        assert c.utilities[1][0] == Fraction(1, 2)
        assert c.index("q") == 1

    def test_errors(self):
        with pytest.raises(DuplicateName):
            make_context(["a", "a"], [[0, 1]])
        with pytest.raises(EmptyAlternatives):
            make_context([], [[]])
        with pytest.raises(RaggedMatrix):
            make_context(["a", "b"], [[0, 1], [1]])
        with pytest.raises(UnknownAlternative):
            small().index("r")

    def test_contexts_hash_by_value(self):
        assert small() == small()
        assert hash(small()) == hash(small())


class TestLottery:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(InvalidLottery):
            Lottery((Fraction(1, 2), Fraction(1, 3)))
        with pytest.raises(InvalidLottery):
            Lottery((Fraction(3, 2), Fraction(-1, 2)))
        Lottery((0.1, 0.2, 0.7), "float")

    def test_expected_utility(self):
        c = small()
        x = lottery_from_names(c, {"p": "1/4", "q": "3/4"})
        assert expected_utility(c, 0, x) == Fraction(1, 4)
        assert utility_profile(c, x) == (Fraction(1, 4), Fraction(7, 8))

    def test_mix(self):
        c = small()
        x = point(c, "p").mix(Fraction(1, 3), point(c, "q"))
        assert x.weights == (Fraction(1, 3), Fraction(2, 3))


class TestComposition:
    def test_layout(self):
        c = compose(small(), small())
        assert c.m == 4 and c.n == 4
        assert c.names[1] == "p⊗q"
        # first factor's individuals only see the first coordinate
        assert c.column(1) == (1, Fraction(1, 2), 0, 1)

    def test_cap(self):
        with pytest.raises(SizeLimitExceeded):
            self_compose(small(), 13)

    def test_product_lottery_marginals(self):
        c = small()
        x = Lottery((Fraction(1, 3), Fraction(2, 3)))
        y = Lottery((Fraction(1, 2), Fraction(1, 2)))
        big = compose(c, c)
        prof = utility_profile(big, product_lottery([x, y], big))
        assert prof == utility_profile(c, x) + utility_profile(c, y)
        with pytest.raises(FactorMismatch):
            product_lottery([x], big)

    def test_correlated_diagonal_has_same_marginals(self):
        c = small()
        x = Lottery((Fraction(1, 5), Fraction(4, 5)))
        big = self_compose(c, 3)
        a = utility_profile(big, diagonal_lottery(x, 3))
        b = utility_profile(big, diagonal_lottery(x, 3, correlated=True))
        assert a == b == utility_profile(c, x) * 3


class TestTransformations:
    def test_permute(self):
        c = permute_individuals(small(), [1, 0])
        assert c.utilities[0] == small().utilities[1]
        with pytest.raises(NotAPermutation):
            permute_individuals(small(), [0, 0])

    def test_restrict_and_embed(self):
        c = make_context(["a", "b", "c"], [[1, 2, 3]])
        sub = restrict(c, ["c", "a"])
        assert sub.names == ("a", "c")
        x = embed_lottery(c, sub, Lottery((Fraction(1, 2), Fraction(1, 2))))
        assert x.weights == (Fraction(1, 2), 0, Fraction(1, 2))

    def test_rename(self):
        c = rename_alternatives(small(), {"p": "x", "q": "y"})
        assert c.names == ("x", "y")
        with pytest.raises(MissingName):
            rename_alternatives(small(), {"p": "x"})
        with pytest.raises(NotInjective):
            rename_alternatives(small(), {"p": "x", "q": "x"})

    def test_to_float(self):
        c = to_float(small())
        assert c.mode == "float" and c.utilities[1][0] == 0.5


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=2, max_size=4), st.lists(st.integers(1, 9), min_size=2, max_size=3))
def test_product_marginals_property(wx, wy):
    cx = make_context([f"a{k}" for k in range(len(wx))], [list(range(len(wx)))])
    cy = make_context([f"b{k}" for k in range(len(wy))], [[k * k for k in range(len(wy))]])
    x = Lottery(tuple(Fraction(w, sum(wx)) for w in wx))
    y = Lottery(tuple(Fraction(w, sum(wy)) for w in wy))
    big = compose(cx, cy)
    assert utility_profile(big, product_lottery([x, y], big)) == utility_profile(cx, x) + utility_profile(cy, y)
