"""Social inefficiency of lotteries over alternatives, and its application to RSD."""

from .context import (
    Context,
    Lottery,
    compose,
    diagonal_lottery,
    expected_utility,
    lottery_from_names,
    make_context,
    permute_individuals,
    point,
    product_lottery,
    restrict,
    self_compose,
    utility_profile,
)
from .errors import GuardError, InputError, SocineffError
from .frontier import FrontierSummary, brute_force_is_efficient, dominating_efficient_lottery, frontier_summary, is_efficient
from .inefficiency import InefficiencyResult, ihat, social_value
from .lp import Constraint, LinearProgram, LpOutcome, Status, solve_lp
from .scalar import EXACT, FLOAT, INF

__version__ = "0.1.0"
