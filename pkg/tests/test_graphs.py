"""Degree statistics, graphicality, validity checks, file formats."""

import math

import numpy as np
import pytest

from degcount.graphs import (DegreeSequence, ParseError, PatternGraph,
                             check_assumptions, compute_stats, is_graphical,
                             parse_degree_text, parse_graph_text)
from degcount.patterns import complete_pattern, pad_isolated


def test_stats_regular():
    s = compute_stats([2, 2, 2, 2])
    assert s.n == 4
    assert s.mean_degree == 2.0
    assert s.density == pytest.approx(2 / 3)
    assert s.spread == 0.0
    assert s.max_dev == 0.0
    assert s.is_regular


def test_stats_hand_evaluated():
    # mean 1.5, density 0.5, spread 5/4, max deviation 3/2
    s = compute_stats([0, 1, 2, 3])
    assert s.mean_degree == pytest.approx(1.5)
    assert s.density == pytest.approx(0.5)
    assert s.spread == pytest.approx(1.25)
    assert s.max_dev == pytest.approx(1.5)
    # mean 2, density 0.5, spread 2, max deviation 2
    s = compute_stats([0, 1, 2, 3, 4])
    assert s.mean_degree == pytest.approx(2.0)
    assert s.density == pytest.approx(0.5)
    assert s.spread == pytest.approx(2.0)
    assert s.max_dev == pytest.approx(2.0)


def test_stats_complete_sequence():
    s = compute_stats([5] * 6)
    assert s.density == pytest.approx(1.0)
    assert s.spread == 0.0
    assert s.max_dev == 0.0


def test_stats_sum_reconstruction():
    degs = [3, 1, 4, 1, 5, 2, 6, 5, 3, 5]
    s = compute_stats(degs)
    assert s.n * s.mean_degree == pytest.approx(sum(degs), rel=1e-15)


def test_degree_sequence_validation():
    with pytest.raises(ValueError):
        DegreeSequence(())
    with pytest.raises(ValueError):
        DegreeSequence((4, 0, 0, 0))  # degree above n-1
    with pytest.raises(ValueError):
        compute_stats([0])  # n < 2


def test_spread_bounded_by_square_deviation(rng):
    for _ in range(50):
        n = rng.randint(2, 12)
        degs = [rng.randint(0, n - 1) for _ in range(n)]
        s = compute_stats(degs)
        assert s.spread <= s.max_dev ** 2 + 1e-12
        assert (s.max_dev == 0) == (s.spread == 0)


def test_graphical_examples():
    assert is_graphical([3, 3, 3, 3])
    assert is_graphical([3, 1, 1, 1])
    assert not is_graphical([3, 3, 1, 1])
    assert not is_graphical([1, 1, 1])  # odd sum
    assert is_graphical([0, 0, 0])


def _realizable_multisets(n):
    """All degree multisets realized by some graph on n vertices (bit brute force)."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    m = len(pairs)
    codes = np.arange(1 << m, dtype=np.uint32)
    degs = np.zeros((1 << m, n), dtype=np.int8)
    for b, (u, v) in enumerate(pairs):
        bit = (codes >> b) & 1
        degs[:, u] += bit.astype(np.int8)
        degs[:, v] += bit.astype(np.int8)
    degs.sort(axis=1)
    return {tuple(row) for row in np.unique(degs, axis=0)}


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_graphical_matches_exhaustive_search(n):
    import itertools
    realizable = _realizable_multisets(n)
    for seq in itertools.combinations_with_replacement(range(n), n):
        assert is_graphical(seq) == (tuple(sorted(seq)) in realizable), seq


def test_graphical_does_not_mutate():
    seq = [1, 3, 2, 2]
    is_graphical(seq)
    assert seq == [1, 3, 2, 2]


def test_check_assumptions_regular():
    rep = check_assumptions([3] * 6, a=0.25, eps=0.1)
    assert rep.deviation_ratio == 0.0
    assert rep.deviation_ok


def test_check_assumptions_sparse_degree_condition_fails():
    rep = check_assumptions([1, 1], a=0.25, eps=0.1)
    assert rep.degree_ratio < 1.0
    assert not rep.degree_ok


def test_check_assumptions_regular_pattern_ratio_zero():
    h = pad_isolated(complete_pattern(3), 6)
    rep = check_assumptions([3] * 6, pattern=h, induced_pattern=complete_pattern(3))
    assert rep.subgraph_ratio == 0.0
    assert rep.induced_ratio == 0.0


def test_check_assumptions_validates_a():
    with pytest.raises(ValueError):
        check_assumptions([2, 2, 2], a=0.7)
    with pytest.raises(ValueError):
        check_assumptions([2, 2, 2], a=0.25, eps=-1.0)


def test_degree_file_parsing(tmp_path):
    text = "# comment\n3 3 3  # trailing comment\n3\n"
    d = parse_degree_text(text)
    assert tuple(d) == (3, 3, 3, 3)
    with pytest.raises(ParseError):
        parse_degree_text("# only comments\n")
    with pytest.raises(ParseError):
        parse_degree_text("1 2 x")


def test_graph_file_parsing():
    g = parse_graph_text("n 4\n1 2\n3 4\n")
    assert g.vertex_count == 4
    assert g.edges == frozenset({(0, 1), (2, 3)})
    with pytest.raises(ParseError):
        parse_graph_text("4\n1 2\n")
    with pytest.raises(ParseError):
        parse_graph_text("n 4\n1 5\n")
    with pytest.raises(ParseError):
        parse_graph_text("n 4\n2 2\n")


def test_pattern_graph_invariants():
    g = PatternGraph.from_edges(4, [(1, 0), (2, 3)])
    assert g.edges == frozenset({(0, 1), (2, 3)})
    assert g.degree_sequence == (1, 1, 1, 1)
    assert g.edge_count == 2
    assert sum(g.degree_sequence) == 2 * g.edge_count
    with pytest.raises(ValueError):
        PatternGraph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        PatternGraph.from_edges(3, [(0, 5)])
