"""Shared test helpers: independent oracles kept separate from the library."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from degcount.graphs import PatternGraph


def naive_automorphism_count(g: PatternGraph) -> int:
    """Count automorphisms by iterating over all n! vertex bijections."""
    n = g.vertex_count
    edges = set(g.edges)
    count = 0
    for perm in itertools.permutations(range(n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in edges
               for u, v in edges):
            count += 1
    return count


def fraction_determinant(mat):
    """Exact determinant by Gaussian elimination over rationals."""
    size = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for k in range(size):
        pivot = next((i for i in range(k, size) if m[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, size):
            factor = m[i][k] * inv
            if factor:
                for j in range(k, size):
                    m[i][j] -= factor * m[k][j]
    return det


def multigraph_tree_count(n, edge_multiset):
    """Matrix-tree count for a multigraph given as (u, v, multiplicity)."""
    lap = [[Fraction(0)] * n for _ in range(n)]
    for u, v, mult in edge_multiset:
        lap[u][u] += mult
        lap[v][v] += mult
        lap[u][v] -= mult
        lap[v][u] -= mult
    minor = [row[1:] for row in lap[1:]]
    det = fraction_determinant(minor)
    assert det.denominator == 1
    return int(det)


def petersen_graph() -> PatternGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return PatternGraph.from_edges(10, outer + spokes + inner)


def random_graphical_sequence(rng: random.Random, n: int, max_deg=None):
    """A uniformly-generated graphical sequence via a random graph."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.5:
                edges.append((u, v))
    degs = [0] * n
    for u, v in edges:
        degs[u] += 1
        degs[v] += 1
    if max_deg is not None and max(degs, default=0) > max_deg:
        return random_graphical_sequence(rng, n, max_deg)
    return tuple(degs)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
