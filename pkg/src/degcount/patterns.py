"""Statistics of pattern graphs: degree power sums and automorphisms.

For a spanning pattern H on n vertices with degree sequence h the power
sums mu_t = (1/n) sum h_j**t and the edge product sum(h_j*h_k) over the
edges drive the spanning-copy formulas.  For a small pattern on r
vertices embedded by vertex subset, the centred sums

    omega_t = sum_j (h_j - density*(r-1))**t

and their mixed generalization with degree deviations appear instead.

Automorphism counts are exact big integers: isolated vertices contribute
a factorial factor analytically (they can be permuted freely and never
mix with non-isolated vertices), and the backtracking search runs only
on the non-isolated core, after a colour refinement of the vertices.
For spanning patterns this means |Aut| includes the (n-r)! factor for
the isolated part, matching the n!/|Aut(H)| labelled-copy convention
over the full vertex set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import DegreeLike, PatternGraph, as_degrees, compute_stats


# ---------------------------------------------------------------------------
# Constructors for common patterns
# ---------------------------------------------------------------------------

def empty_pattern(n: int) -> PatternGraph:
    return PatternGraph.from_edges(n, [])


def perfect_matching(n: int) -> PatternGraph:
    if n % 2:
        raise ValueError("a perfect matching needs an even vertex count")
    return PatternGraph.from_edges(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def cycle_pattern(n: int) -> PatternGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return PatternGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_pattern(n: int) -> PatternGraph:
    return PatternGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_pattern(r: int) -> PatternGraph:
    return PatternGraph.from_edges(r, [(i, j) for i in range(r) for j in range(i + 1, r)])


def star_pattern(n: int) -> PatternGraph:
    return PatternGraph.from_edges(n, [(0, i) for i in range(1, n)])


def pad_isolated(g: PatternGraph, n: int) -> PatternGraph:
    """Extend a pattern with isolated vertices up to n vertices total."""
    if n < g.vertex_count:
        raise ValueError("cannot shrink a pattern")
    return PatternGraph.from_edges(n, g.edges)


def regular_pattern_union(component: PatternGraph, copies: int) -> PatternGraph:
    """Disjoint union of `copies` copies of a component."""
    r = component.vertex_count
    edges = []
    for c in range(copies):
        off = c * r
        edges.extend((u + off, v + off) for u, v in component.edges)
    return PatternGraph.from_edges(r * copies, edges)


# ---------------------------------------------------------------------------
# Moments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PatternMoments:
    """Edge count, degree power sums mu_1..mu_3, and the edge product sum."""

    n: int
    m: int
    mu: dict
    edge_prod_sum: float


@dataclass(frozen=True)
class InducedMoments:
    """Centred degree power sums omega_1..omega_3 at a given density."""

    r: int
    m: int
    lambda_used: float
    omega: dict


@dataclass(frozen=True)
class MixedMoments:
    """omega_{s,t} = sum_j (d_{sigma_j} - mean)^s (h_j - density*(r-1))^t."""

    r: int
    n: int
    omega_st: dict


def pattern_moments(h_graph: PatternGraph) -> PatternMoments:
    n = h_graph.vertex_count
    degs = h_graph.degree_sequence
    mu = {t: math.fsum(h ** t for h in degs) / n for t in (1, 2, 3)}
    eps_ = math.fsum(degs[u] * degs[v] for u, v in h_graph.edges)
    return PatternMoments(n=n, m=h_graph.edge_count, mu=mu, edge_prod_sum=eps_)


def induced_moments(hr: PatternGraph, density: float) -> InducedMoments:
    if not 0 < density < 1:
        raise ValueError("density must lie strictly between 0 and 1")
    r = hr.vertex_count
    centre = density * (r - 1)
    degs = hr.degree_sequence
    omega = {t: math.fsum((h - centre) ** t for h in degs) for t in (1, 2, 3)}
    return InducedMoments(r=r, m=hr.edge_count, lambda_used=density, omega=omega)


def mixed_moments(hr: PatternGraph, d: DegreeLike, sigma: Sequence[int],
                  max_order: int = 3) -> MixedMoments:
    """Mixed centred sums for a pattern placed at sigma[0..r-1].

    `sigma` is a permutation of 0..n-1; entry j gives the degree index
    assigned to pattern vertex j.
    """
    d = as_degrees(d)
    n = d.n
    r = hr.vertex_count
    if r > n:
        raise ValueError("pattern larger than the degree sequence")
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma must be a permutation of 0..n-1")
    stats = compute_stats(d)
    lam = stats.density
    if not 0 < lam < 1:
        raise ValueError("density must lie strictly between 0 and 1")
    centre = lam * (r - 1)
    degs = hr.degree_sequence
    dev = [d[sigma[j]] - stats.mean_degree for j in range(r)]
    cen = [degs[j] - centre for j in range(r)]
    omega_st = {}
    for s in range(max_order + 1):
        for t in range(max_order + 1):
            omega_st[(s, t)] = math.fsum(dev[j] ** s * cen[j] ** t for j in range(r))
    return MixedMoments(r=r, n=n, omega_st=omega_st)


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------

def _refine_colors(adj: list, n: int) -> list:
    """Colour refinement: split vertex classes by neighbour colour profile."""
    colors = [len(adj[v]) for v in range(n)]
    while True:
        profiles = {}
        new = [0] * n
        for v in range(n):
            key = (colors[v], tuple(sorted(colors[u] for u in adj[v])))
            new[v] = profiles.setdefault(key, len(profiles))
        if new == colors:
            return colors
        colors = new


def _count_core_automorphisms(g: PatternGraph) -> int:
    """Backtracking count of automorphisms of a graph without isolated vertices."""
    n = g.vertex_count
    if n == 0:
        return 1
    adj = g.adjacency()
    colors = _refine_colors(adj, n)

    # Map most-constrained vertices first: rare colours, then high degree.
    color_size = {}
    for c in colors:
        color_size[c] = color_size.get(c, 0) + 1
    order = sorted(range(n), key=lambda v: (color_size[colors[v]], -len(adj[v]), v))

    adj_bits = [0] * n
    for v in range(n):
        for u in adj[v]:
            adj_bits[v] |= 1 << u

    image = [-1] * n
    used = [False] * n
    count = 0

    def extend(pos: int):
        nonlocal count
        if pos == n:
            count += 1
            return
        v = order[pos]
        mapped_nbrs = [image[u] for u in adj[v] if image[u] >= 0]
        mapped_non = [order[i] for i in range(pos) if order[i] not in adj[v]]
        for w in range(n):
            if used[w] or colors[w] != colors[v]:
                continue
            wbits = adj_bits[w]
            if any(not (wbits >> x) & 1 for x in mapped_nbrs):
                continue
            if any((wbits >> image[u]) & 1 for u in mapped_non):
                continue
            image[v] = w
            used[w] = True
            extend(pos + 1)
            image[v] = -1
            used[w] = False

    extend(0)
    return count


def automorphism_count(g: PatternGraph, limit: int = 12) -> int:
    """Exact automorphism group order of a pattern graph.

    Isolated vertices contribute a factor k! analytically (automorphisms
    preserve degree, so isolated vertices only permute among themselves);
    the exact backtracking runs on the non-isolated core, whose size must
    not exceed `limit`.  Dense cores are counted on the complement, which
    has the same automorphism group.
    """
    core_vertices = g.nonisolated_vertices()
    k = g.vertex_count - len(core_vertices)
    relabel = {v: i for i, v in enumerate(core_vertices)}
    core = PatternGraph.from_edges(
        len(core_vertices), ((relabel[u], relabel[v]) for u, v in g.edges))

    r = core.vertex_count
    if r > limit:
        raise ValueError(
            f"non-isolated core has {r} vertices, above the exact limit {limit}")
    if r > 1 and core.edge_count > r * (r - 1) // 4:
        comp = core.complement()
        iso = comp.vertex_count - len(comp.nonisolated_vertices())
        if iso:
            # complement may itself have isolated vertices (core was complete-ish)
            back = automorphism_count(comp, limit=limit)
        else:
            back = _count_core_automorphisms(comp)
        return math.factorial(k) * back
    return math.factorial(k) * _count_core_automorphisms(core)


def log_copies_prefactor(g: PatternGraph) -> float:
    """log(n! / |Aut|): the number of distinct labelled placements, logged."""
    n = g.vertex_count
    return math.lgamma(n + 1) - math.log(automorphism_count(g))


def labelled_copies(g: PatternGraph) -> int:
    """n!/|Aut|: exact number of distinct labelled copies of the pattern."""
    return math.factorial(g.vertex_count) // automorphism_count(g)


def exact_edge_count_expectation(d: DegreeLike) -> Fraction:
    """The deterministic edge count of any realization: n * mean / 2."""
    d = as_degrees(d)
    return Fraction(d.total, 2)
