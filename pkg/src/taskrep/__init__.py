"""Task-replication policies for jobs with discrete execution-time distributions."""

from .bimodal import BimodalParams, classify_optimal, closed_form_2m, suboptimality_checks, thresholds
from .corners import corner_points, lattice_set
from .errors import BudgetExceeded, TaskRepError, ValidationError
from .evaluate import CostWeights, PolicyEvaluation, cost, eval_single, eval_trace
from .multitask import eval_replicated, heuristic_multi, separation_demo
from .pmf import DiscretePMF, bimodal, load_pmf, new_pmf
from .policy import StartVector, canonicalize, prune
from .search import Frontier, exhaustive_search, frontier, heuristic_k
from .simulate import SimEstimate, simulate_dynamic, simulate_static

__version__ = "0.1.0"
