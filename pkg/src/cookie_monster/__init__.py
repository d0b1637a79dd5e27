"""Exact and heuristic solvers for the Cookie Monster jar-emptying problem."""

from .core import (
    Certificate,
    JarSet,
    Move,
    MovePlan,
    apply_move,
    cm_two_powerful,
    is_superincreasing,
    is_two_powerful,
    lower_bound,
    make_jarset,
    scale,
    upper_bound_binary,
    upper_bound_diameter,
    upper_bound_trivial,
    verify_plan,
)
from .errors import DomainError, InvalidMoveError, ResourceError
from .exact import ExactResult, cm_bfs, cm_exact, plan_from_certificate, representable
from .heuristics import HeuristicRun, ba_step, emja_step, run_heuristic, tca_step
from .sequences import (
    RatioTrajectory,
    build_ratio_sequence,
    check_nacci_inequalities,
    closed_form_cm,
    construct_set_with_cm,
    is_super_nacci,
    nacci_set,
    super_nacci_lower_bound,
)

__version__ = "0.1.0"
