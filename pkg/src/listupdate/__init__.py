"""List update laboratory for the partial cost model."""
from .algorithms import (CriticalRequestAlgorithm, CriticalRequestFunction, DeterministicAlgorithm,
                         FunctionAlgorithm, RandomizedAlgorithm, critical_request_state, expected_cost,
                         make_bit, make_bit_distribution, make_comb, make_crf, make_frequency_count,
                         make_lmtf, make_mtf, make_transpose, make_ts)
from .core import (Alphabet, BudgetError, ListUpdateError, UnaryProjection, access_cost,
                   kendall_distance, parse_state, project_sequence, project_state, serve, serve_cost)
from .offline import opt_exact, opt_pairwise_lower, opt_two_items

__version__ = "0.1.0"
