"""Closed-form expectation reports: term values, identities, oracle checks."""

import math
import random
from fractions import Fraction

import pytest

from degcount import asymptotic as asy
from degcount import oracle
from degcount.graphs import PatternGraph, compute_stats
from degcount.patterns import (complete_pattern, cycle_pattern, empty_pattern,
                               pad_isolated, path_pattern, perfect_matching)


D6 = (3,) * 6
LAM6 = 0.6


def test_report_consistency():
    rep = asy.expected_subgraph_count(D6, perfect_matching(6))
    assert rep.log_value == pytest.approx(
        rep.log_prefactor + sum(rep.terms.values()), rel=1e-12)
    d = rep.to_dict()
    assert set(d) == {"kind", "log_prefactor", "terms", "log_value", "value",
                      "diagnostics"}


def test_subgraph_empty_pattern_unit():
    rep = asy.expected_subgraph_count(D6, empty_pattern(6))
    assert all(t == 0.0 for t in rep.terms.values())
    assert rep.log_value == pytest.approx(0.0, abs=1e-9)
    assert rep.value == pytest.approx(1.0)


def test_subgraph_regular_matching_terms():
    """Regular sequence: the matching formula reduces to three summands."""
    n = 6
    rep = asy.expected_subgraph_count(D6, perfect_matching(n))
    lam = LAM6
    assert rep.terms["base_quadratic"] == pytest.approx((1 - lam) / (4 * lam))
    assert rep.terms["spread"] == 0.0
    assert rep.terms["third_moment"] == pytest.approx(
        -(1 - lam ** 2) / (6 * lam ** 2 * n))
    assert rep.terms["edge_product"] == pytest.approx(-(1 - lam) / (2 * lam * n))
    assert rep.diagnostics["cube_deviation_ratio"] == 0.0


def test_subgraph_vs_oracle_matching():
    rep = asy.expected_subgraph_count(D6, perfect_matching(6))
    exact = oracle.exact_expected_copies(D6, perfect_matching(6)).expectation
    assert exact == Fraction(30, 7)
    assert abs(rep.log_value - math.log(float(exact))) < 0.35


def test_subgraph_requires_spanning_and_open_density():
    with pytest.raises(ValueError):
        asy.expected_subgraph_count(D6, perfect_matching(4))
    with pytest.raises(ValueError):
        asy.expected_subgraph_count((5,) * 6, perfect_matching(6))  # density 1
    with pytest.raises(ValueError):
        asy.expected_subgraph_count((0,) * 4, empty_pattern(4))  # density 0


def test_simplified_difference_is_dropped_terms():
    d = (2, 2, 3, 3, 4, 4)
    h = path_pattern(6)
    full = asy.expected_subgraph_count(d, h)
    simp = asy.expected_subgraph_count_simplified(d, h)
    assert simp.log_prefactor == full.log_prefactor
    dropped = full.terms["third_moment"] + full.terms["edge_product"]
    assert full.log_value - simp.log_value == pytest.approx(dropped, rel=1e-12)
    assert "applicability_ratio" in simp.diagnostics


def test_simplified_regular_matching_single_term():
    rep = asy.expected_subgraph_count_simplified(D6, perfect_matching(6))
    assert rep.exponent == pytest.approx((1 - LAM6) / (4 * LAM6))


def test_sparse_pattern_matches_binomial_baseline():
    # one edge plus isolated vertices: tiny moments, near-binomial count
    n = 40
    d = [n // 2] * n
    h = pad_isolated(complete_pattern(2), n)
    rep = asy.expected_subgraph_count(d, h)
    base = asy.binomial_baseline(n, compute_stats(d).density, h)
    assert abs(rep.log_value - base.log_value) < 0.05


def test_regular_factor_examples():
    # 2-regular pattern on a regular sequence: pure prefactor
    rep = asy.expected_regular_factor(D6, cycle_pattern(6), 2)
    assert rep.exponent == pytest.approx(0.0)
    assert rep.value == pytest.approx(
        math.factorial(6) / 12 * LAM6 ** 6, rel=1e-9)
    # 1-regular: +(1-lam)/(4 lam), agreeing with the matching formula
    repm = asy.expected_regular_factor(D6, perfect_matching(6), 1)
    assert repm.terms["regular_quadratic"] == pytest.approx(
        (1 - LAM6) / (4 * LAM6))
    simp = asy.expected_subgraph_count_simplified(D6, perfect_matching(6))
    assert repm.log_value == pytest.approx(simp.log_value, rel=1e-12)


def test_regular_factor_vs_oracle_c6():
    rep = asy.expected_regular_factor(D6, cycle_pattern(6), 2)
    exact = oracle.exact_expected_copies(D6, cycle_pattern(6)).expectation
    assert exact == Fraction(24, 7)
    assert abs(rep.log_value - math.log(float(exact))) < 0.25


def test_regular_factor_validates():
    with pytest.raises(ValueError):
        asy.expected_regular_factor(D6, path_pattern(6), 2)


def test_total_regular_factors():
    # pairing correction vanishes at h = 1
    rep1 = asy.expected_total_regular_factors((4,) * 8, 1)
    assert rep1.terms["pairing_correction"] == 0.0
    # h = 1: one isomorphism class, so total matches the fixed-pattern count
    for n in (100, 500):
        d = [n // 2] * n
        total = asy.expected_total_regular_factors(d, 1)
        aut = 2 ** (n // 2) * math.factorial(n // 2)
        fixed = asy.expected_regular_factor(d, perfect_matching(n), 1,
                                            aut_count=aut)
        assert abs(total.log_value - fixed.log_value) < 0.1 / n
    # h = 2 at n = 6: oracle sums the two 2-factor isomorphism classes
    two_tri = PatternGraph.from_edges(6, [(0, 1), (1, 2), (0, 2),
                                          (3, 4), (4, 5), (3, 5)])
    exact = (oracle.exact_expected_copies(D6, cycle_pattern(6)).expectation
             + oracle.exact_expected_copies(D6, two_tri).expectation)
    assert exact == Fraction(30, 7)
    rep2 = asy.expected_total_regular_factors(D6, 2)
    assert abs(rep2.log_value - math.log(float(exact))) < 0.4
    with pytest.raises(ValueError):
        asy.expected_total_regular_factors((3,) * 5, 1)  # odd n*h


def test_spanning_trees_terms_and_example():
    rep = asy.expected_spanning_trees((2, 2, 2, 2))
    lam = 2 / 3
    assert rep.terms["tree_const"] == pytest.approx(-(1 - lam) / (2 * lam))
    assert rep.terms["R_term"] == 0.0
    assert rep.value == pytest.approx(3.692, abs=2e-3)
    exact = oracle.exact_expected_spanning_trees((2, 2, 2, 2)).expectation
    assert exact == 4
    assert abs(rep.log_value - math.log(4)) < 0.1


def test_spanning_trees_cayley_limit():
    for n in range(3, 13):
        rep = asy.expected_spanning_trees((n - 1,) * n)
        assert abs(rep.log_value - (n - 2) * math.log(n)) < 1e-10
        assert oracle.count_graphs_with_degrees((n - 1,) * n) == 1


def test_induced_single_vertex():
    d = (2, 2, 3, 3, 4, 4)
    rep = asy.expected_induced_count(d, empty_pattern(1))
    s = compute_stats(d)
    assert rep.log_prefactor == pytest.approx(math.log(6))
    nonzero = {k: v for k, v in rep.terms.items() if v != 0.0}
    assert set(nonzero) == {"order_squared", "order_spread"}
    assert nonzero["order_squared"] == pytest.approx(1 / 12)
    assert nonzero["order_spread"] == pytest.approx(
        -s.spread / (2 * s.density * (1 - s.density) * 36))
    # the exact count of single vertices is n; the report stays close
    assert abs(rep.log_value - math.log(6)) < 0.1


def test_induced_k2_prefactor_is_edge_count():
    for d in ((3,) * 6, (2, 2, 3, 3, 4, 4), (1, 2, 2, 3)):
        rep = asy.expected_induced_count(d, complete_pattern(2))
        edge_count = sum(d) / 2
        assert math.exp(rep.log_prefactor) == pytest.approx(edge_count, rel=1e-12)


def test_induced_regular_third_tier_vanishes():
    rep = asy.expected_induced_count(D6, complete_pattern(3))
    for t in asy.INDUCED_THIRD_ORDER_TERMS:
        assert rep.terms[t] == 0.0
    assert rep.terms["spread_quadratic"] == 0.0


def test_induced_simplified_difference():
    d = (2, 2, 3, 3, 4, 4)
    hr = path_pattern(3)
    full = asy.expected_induced_count(d, hr)
    simp = asy.expected_induced_simplified(d, hr)
    dropped = (full.diagnostics["second_order_sum"]
               + full.diagnostics["third_order_sum"])
    assert full.log_value - simp.log_value == pytest.approx(dropped, rel=1e-12)
    assert "applicability_ratio" in simp.diagnostics


def test_induced_vs_oracle_triangle():
    rep = asy.expected_induced_count(D6, complete_pattern(3))
    exact = oracle.exact_expected_copies(D6, complete_pattern(3),
                                         induced=True).expectation
    assert exact == Fraction(12, 7)
    assert abs(rep.log_value - math.log(float(exact))) < 0.4


def test_clique_small_orders():
    n = 20
    d = [10] * n
    rep1 = asy.expected_clique_count(d, 1)
    assert abs(rep1.log_value - math.log(n)) < 0.05
    rep2 = asy.expected_clique_count(d, 2)
    assert math.exp(rep2.log_prefactor) == pytest.approx(sum(d) / 2, rel=1e-12)


def test_clique_independent_swap_exact():
    d = (2, 2, 3, 3, 4, 4)
    comp = tuple(5 - x for x in d)
    for r in (2, 3):
        a = asy.expected_clique_count(d, r, independent=True)
        b = asy.expected_clique_count(comp, r, independent=False)
        assert a.log_prefactor == pytest.approx(b.log_prefactor, rel=1e-12)
        for k in a.terms:
            assert a.terms[k] == pytest.approx(b.terms[k], rel=1e-12, abs=1e-15)


def test_clique_triple_route_sanity():
    n, r = 50, 3
    d = [25] * n
    clique = asy.expected_clique_count(d, r)
    induced = asy.expected_induced_count(d, complete_pattern(r))
    spanning = asy.expected_subgraph_count(d, pad_isolated(complete_pattern(r), n))
    assert abs(clique.log_value - induced.log_value) < 0.2
    assert abs(clique.log_value - spanning.log_value) < 0.2


def test_concentration_threshold():
    import math as m
    n = 64
    d = [32] * n
    lam = 32 / 63
    lam_min = min(lam, 1 - lam)
    got = asy.concentration_threshold(d, eps=0.5)
    assert got == pytest.approx(1.5 * m.log(n) / m.log(1 / lam_min))
    assert asy.concentration_threshold(d, eps=1.99) == pytest.approx(
        0.01 * m.log(n) / m.log(1 / lam_min))
    with pytest.raises(ValueError):
        asy.concentration_threshold(d, eps=2.0)
    lopsided = [57] * 64   # density 57/63 -> threshold driven by 1-density
    thr = asy.concentration_threshold(lopsided, eps=0.5)
    assert thr == pytest.approx(1.5 * m.log(64) / m.log(1 / (1 - 57 / 63)))


# ---------------------------------------------------------------------------
# Presence probabilities
# ---------------------------------------------------------------------------

def test_subgraph_probability_empty():
    rep = asy.subgraph_probability(D6, empty_pattern(6))
    assert rep.log_value == pytest.approx(0.0, abs=1e-12)


def test_subgraph_probability_regular_dev_terms_vanish():
    e = PatternGraph.from_edges(6, [(0, 1)])
    rep = asy.subgraph_probability(D6, e)
    assert rep.terms["dev_linear"] == 0.0
    assert rep.terms["dev_square_degree"] == 0.0
    assert rep.terms["dev_quad_degree"] == 0.0
    # g reduces to the pure pattern part: -(1-lam)^2 h_j h_k / (lam(1-lam) n^2)
    lam = LAM6
    expected_g = -(1 - lam) / (lam * 36)
    assert rep.terms["edge_correlation"] == pytest.approx(expected_g)


def test_subgraph_probability_one_edge_near_density():
    e = PatternGraph.from_edges(6, [(0, 1)])
    rep = asy.subgraph_probability(D6, e)
    exact = oracle.exact_pattern_probability(D6, e).expectation
    assert exact == Fraction(3, 5)
    assert abs(rep.log_value - math.log(0.6)) < 0.05


def test_tree_probability_specialization_identity():
    """The bounded-degree form differs from the general one by the two
    dropped f-terms and the expanded part of the edge correlation."""
    d = (2, 2, 3, 3, 4, 4)
    t_edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]
    tree = PatternGraph.from_edges(6, t_edges)
    sub = asy.subgraph_probability(d, tree)
    with pytest.warns(RuntimeWarning):
        spec = asy.tree_probability(d, tree, trunc_exponent=0.15)
    reconstructed = (sub.log_value - sub.terms["third_moment"]
                     - sub.terms["dev_square_degree"]
                     - sub.terms["edge_correlation"]
                     + spec.terms["edge_correlation"])
    assert spec.log_value == pytest.approx(reconstructed, rel=1e-9)


def test_tree_probability_regular_terms():
    tree = PatternGraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    rep = asy.tree_probability(D6, tree, trunc_exponent=1.0)
    assert rep.terms["edge_correlation"] == 0.0
    assert rep.terms["dev_linear"] == 0.0
    lam = LAM6
    m = 5
    s_h2 = sum(x * x for x in tree.degree_sequence)
    assert rep.terms["edge_mass"] == pytest.approx(
        (1 - lam) * m * (6 + m) / (lam * 36))
    assert rep.terms["degree_square"] == pytest.approx(
        -(1 - lam) / (2 * lam * 6) * s_h2)


def test_tree_probability_vs_oracle_path():
    tree = PatternGraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    rep = asy.tree_probability(D6, tree, trunc_exponent=1.0)
    exact = oracle.exact_pattern_probability(D6, tree).expectation
    assert abs(rep.log_value - math.log(float(exact))) < 0.35


def test_induced_probability_regular_reduction():
    rep = asy.induced_probability(D6, complete_pattern(2))
    lam = LAM6
    n, r = 6, 2
    w1 = 2 * (1 - lam)
    w2 = 2 * (1 - lam) ** 2
    w3 = 2 * (1 - lam) ** 3
    ll = lam * (1 - lam)
    assert rep.terms["cross_quadratic"] == pytest.approx(-w2 / (2 * ll * n))
    assert rep.terms["order_squared"] == pytest.approx(r * r / (2 * n))
    assert rep.terms["skew_linear"] == pytest.approx(
        (1 - 2 * lam) * w1 / (2 * ll * n))
    assert rep.terms["linear_cross"] == pytest.approx(-w1 ** 2 / (4 * ll * n ** 2))
    assert rep.terms["order_cross"] == pytest.approx(-r * w2 / (2 * ll * n ** 2))
    assert rep.terms["skew_cubic"] == pytest.approx(
        -(1 - 2 * lam) * w3 / (6 * ll ** 2 * n ** 2))


def test_induced_probability_k2_vs_exact():
    exact = oracle.exact_pattern_probability(D6, complete_pattern(2),
                                             induced=True).expectation
    assert exact == Fraction(3, 5)
    rep = asy.induced_probability(D6, complete_pattern(2))
    gap6 = abs(rep.log_value - math.log(0.6))
    assert gap6 < 0.15
    rep20 = asy.induced_probability([10] * 20, complete_pattern(2))
    gap20 = abs(rep20.log_value - math.log(10 / 19))
    assert gap20 < gap6


def test_induced_probability_single_vertex():
    rep = asy.induced_probability(D6, empty_pattern(1))
    assert rep.log_prefactor == 0.0
    assert abs(rep.log_value) < 0.15  # exact probability is 1


def test_binomial_baseline():
    n = 7
    rep = asy.binomial_baseline(n, 0.3, complete_pattern(2), induced=True)
    assert rep.value == pytest.approx(math.comb(n, 2) * 0.3, rel=1e-12)
    rep = asy.binomial_baseline(n, 0.3, empty_pattern(n))
    assert rep.value == pytest.approx(1.0)


def test_binomial_baseline_matches_sampling():
    n, lam = 5, 0.5
    rep = asy.binomial_baseline(n, lam, complete_pattern(3), induced=True)
    assert rep.value == pytest.approx(1.25)
    rng = random.Random(17)
    samples = 20000
    total = 0
    for _ in range(samples):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < lam]
        total += oracle.count_copies(edges, n, complete_pattern(3), induced=True)
    mean = total / samples
    assert mean == pytest.approx(1.25, abs=0.05)
