import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socineff.errors import DimensionMismatch
from socineff.lp import EQ, GE, LE, Constraint, LinearProgram, Status, is_feasible_point, max_residual, solve_lp


def lp(obj, cons, free=()):
    return LinearProgram(tuple(Fraction(v) for v in obj), tuple(Constraint(tuple(map(Fraction, a)), r, Fraction(b)) for a, r, b in cons), frozenset(free))


class TestBasics:
    def test_optimal(self):
        out = solve_lp(lp([1], [([1], LE, 1)]))
        assert out.status is Status.OPTIMAL and out.value == 1

    def test_infeasible(self):
        assert solve_lp(lp([1], [([1], LE, -1)])).status is Status.INFEASIBLE

    def test_unbounded(self):
        assert solve_lp(lp([1], [])).status is Status.UNBOUNDED

    def test_equality_and_ge(self):
        # max x + y s.t. x + 2y == 4, x >= 1, y >= 1/2
        out = solve_lp(lp([1, 1], [([1, 2], EQ, 4), ([1, 0], GE, 1), ([0, 1], GE, "1/2")]))
        assert out.value == Fraction(7, 2) and out.solution == (3, Fraction(1, 2))

    def test_free_variable(self):
        # max -x with x free and x >= -5
        out = solve_lp(lp([-1], [([1], GE, -5)], free=[0]))
        assert out.value == 5 and out.solution == (-5,)

    def test_degenerate_cycling_example(self):
        # Beale's example cycles under the textbook rule; Bland's rule terminates
        obj = ["3/4", -150, "1/50", -6]
        cons = [
            (["1/4", -60, "-1/25", 9], LE, 0),
            (["1/2", -90, "-1/50", 3], LE, 0),
            ([0, 0, 1, 0], LE, 1),
        ]
        out = solve_lp(lp(obj, cons))
        assert out.status is Status.OPTIMAL and out.value == Fraction(1, 20)

    def test_dimension_checked(self):
        with pytest.raises(DimensionMismatch):
            solve_lp(lp([1, 1], [([1], LE, 1)]))

    def test_float_mode_agrees(self):
        prog = lp([2, 3], [([1, 1], LE, 4), ([1, 3], LE, 6)])
        exact, approx = solve_lp(prog), solve_lp(prog, "float")
        assert exact.value == 9
        assert abs(approx.value - 9) < 1e-9
        assert max_residual(prog, exact.solution) == 0


def vertex_oracle(obj, cons):
    """Max over vertices of a 2-d polytope {x >= 0, A x <= b}, by enumeration."""
    rows = [(list(a), b) for a, _, b in cons] + [([-1, 0], 0), ([0, -1], 0)]
    best = None
    for (a1, b1), (a2, b2) in itertools.combinations(rows, 2):
        det = a1[0] * a2[1] - a1[1] * a2[0]
        if det == 0:
            continue
        x = (Fraction(b1 * a2[1] - b2 * a1[1], det), Fraction(a1[0] * b2 - a2[0] * b1, det))
        if all(a[0] * x[0] + a[1] * x[1] <= b for a, b in rows):
            val = obj[0] * x[0] + obj[1] * x[1]
            best = val if best is None else max(best, val)
    return best


small_int = st.integers(-4, 6)


@settings(max_examples=150, deadline=None)
@given(
    st.tuples(small_int, small_int),
    st.lists(st.tuples(st.tuples(st.integers(0, 5), st.integers(0, 5)), st.integers(0, 8)), min_size=2, max_size=4),
)
def test_matches_vertex_enumeration_on_bounded_polytopes(obj, raw):
    # keep the polytope bounded by adding a box
    cons = [(a, LE, b) for a, b in raw] + [((1, 0), LE, 7), ((0, 1), LE, 7)]
    out = solve_lp(lp(obj, cons))
    assert out.status is Status.OPTIMAL
    assert out.value == vertex_oracle(obj, cons)
    assert is_feasible_point(lp(obj, cons), out.solution)
