"""Pattern-count analytics for uniformly random graphs with fixed degrees.

Asymptotic expectations of spanning copies, induced copies, spanning
trees, regular factors and cliques; the exponential-moment machinery
certifying them; exact moment identities for permutation statistics;
and exact enumeration / counting / Monte Carlo oracles to validate
everything at small scale.
"""

from ._backend import backend_name
from .asymptotic import (ExponentReport, binomial_baseline,
                         concentration_threshold, expected_clique_count,
                         expected_induced_count, expected_induced_simplified,
                         expected_regular_factor, expected_spanning_trees,
                         expected_subgraph_count,
                         expected_subgraph_count_simplified,
                         expected_total_regular_factors, induced_probability,
                         subgraph_probability, tree_probability)
from .graphs import (AssumptionReport, DegreeSequence, DegreeStats,
                     ParseError, PatternGraph, check_assumptions,
                     compute_stats, is_graphical, read_degree_file,
                     read_graph_file)
from .martingale import (AlphaDeltaSummary, BoundCertificate,
                         PermutationFunction, discrete_expectation_bound,
                         hypergeometric_distribution, lemma_perm_check,
                         multinomial_distribution, perm_alpha_delta,
                         perm_expectation_bound, subset_alpha_delta,
                         subset_distribution, telescope_check,
                         vector_alpha_delta)
from .moments import (WeightPair, brute_force_moments, ejk_cov_bounds,
                      ejk_mean, ejk_psi_cov, induced_exponent_moments,
                      make_induced_exponent, make_subgraph_exponent,
                      psi_cov, psi_mean_var, subgraph_exponent_moments)
from .oracle import (BudgetExceededError, MCEstimate, OracleResult,
                     count_graphs_avoiding, count_graphs_with_degrees,
                     count_copies, count_realizations, enumerate_realizations,
                     exact_expected_copies, exact_expected_spanning_trees,
                     exact_pattern_probability, expected_copies_exact,
                     expected_spanning_trees_exact, mc_expected_copies,
                     switch_chain_sample)
from .patterns import (automorphism_count, complete_pattern, cycle_pattern,
                       empty_pattern, induced_moments, mixed_moments,
                       pad_isolated, path_pattern, pattern_moments,
                       perfect_matching, star_pattern)
from .trees import (count_trees_with_degrees, enumerate_trees, phi_weights,
                    spanning_tree_count, tree_degree_moments,
                    tree_edge_average, tree_exp_average_bound)

__version__ = "0.1.0"
