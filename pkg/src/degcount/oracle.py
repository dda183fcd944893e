"""Ground-truth engines for fixed-degree random graphs.

Three independent exact routes back every asymptotic formula:

* full enumeration of all realizations of a degree sequence by
  lexicographic backtracking with graphicality pruning of the residual
  degrees, plus per-graph statistics (copy counts, spanning trees);

* exact big-integer counting of realizations with or without a set of
  forbidden pairs, via a symmetric degree-multiset recursion combined
  with inclusion-exclusion over the forbidden edges -- this reaches
  sizes far beyond enumeration and yields exact presence probabilities
  and (for exchangeable-degree sequences) exact expected copy counts;

* a two-edge switch Markov chain for Monte Carlo estimates at sizes
  where neither exact route is feasible.

All exact expectations are big rationals end to end and rendered to
float only at the reporting boundary.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import _backend
from .graphs import DegreeLike, PatternGraph, as_degrees, is_graphical
from .patterns import automorphism_count
from .trees import spanning_tree_count

MAX_ENUMERATION_VERTICES = 10
MAX_PATTERN_CORE = 8
MAX_FORBIDDEN_EDGES = 16


class BudgetExceededError(RuntimeError):
    """An enumeration or count outgrew the configured budget."""


def default_budget() -> int:
    try:
        return int(os.environ.get("DEGCOUNT_BUDGET", "10000000"))
    except ValueError:
        return 10_000_000


@dataclass(frozen=True)
class OracleResult:
    """Exact expectation over the realization set of a degree sequence."""

    realization_count: int
    expectation: Fraction
    extra: dict = field(default_factory=dict)

    @property
    def value(self) -> float:
        return float(self.expectation)


def enumerate_realizations(d: DegreeLike, budget: int | None = None,
                           forbidden: Iterable = ()) -> Iterator[tuple]:
    """Every simple labelled graph with the given degrees, once each.

    Yields sorted edge tuples.  Raises BudgetExceededError past the
    budget (default from DEGCOUNT_BUDGET, 10**7).  A non-graphical
    sequence yields nothing.
    """
    d = as_degrees(d)
    if d.n > MAX_ENUMERATION_VERTICES:
        raise ValueError(
            f"enumeration capped at {MAX_ENUMERATION_VERTICES} vertices")
    limit = default_budget() if budget is None else budget
    produced = 0
    for edges in _backend.enumerate_realizations(tuple(d), tuple(forbidden)):
        produced += 1
        if produced > limit:
            raise BudgetExceededError(
                f"more than {limit} realizations; raise the budget")
        yield edges


def count_realizations(d: DegreeLike, forbidden: Iterable = (),
                       budget: int | None = None) -> int:
    """Exact number of realizations avoiding the forbidden pairs."""
    d = as_degrees(d)
    limit = default_budget() if budget is None else budget
    count = _backend.count_realizations(tuple(d), tuple(forbidden), limit)
    if count < 0:
        raise BudgetExceededError(
            f"more than {limit} realizations; raise the budget")
    return count


# ---------------------------------------------------------------------------
# Copy counting inside a fixed graph
# ---------------------------------------------------------------------------

def _embedding_order(pattern: PatternGraph) -> list:
    padj = pattern.adjacency()
    r = pattern.vertex_count
    order: list = []
    chosen: set = set()
    while len(order) < r:
        best = max(
            (v for v in range(r) if v not in chosen),
            key=lambda v: (len(padj[v] & chosen), len(padj[v]), -v))
        order.append(best)
        chosen.add(best)
    return order


def count_embeddings(adj: Sequence[set], pattern: PatternGraph,
                     induced: bool = False) -> int:
    """Number of injective adjacency-preserving maps of the pattern into G.

    `induced` additionally forbids images of pattern non-edges from
    being adjacent.  G is given by adjacency sets.
    """
    r = pattern.vertex_count
    if r == 0:
        return 1
    ng = len(adj)
    if r > ng:
        return 0
    padj = pattern.adjacency()
    pdeg = pattern.degree_sequence
    order = _embedding_order(pattern)
    gdeg = [len(adj[w]) for w in range(ng)]
    image = [-1] * r
    used = [False] * ng
    total = 0

    def extend(pos: int):
        nonlocal total
        if pos == r:
            total += 1
            return
        v = order[pos]
        mapped_nbrs = [image[u] for u in padj[v] if image[u] >= 0]
        if induced:
            mapped_non = [image[u] for u in order[:pos] if u not in padj[v]]
        else:
            mapped_non = []
        if mapped_nbrs:
            cands = set(adj[mapped_nbrs[0]])
            for w in mapped_nbrs[1:]:
                cands &= adj[w]
        else:
            cands = set(range(ng))
        for w in cands:
            if used[w] or gdeg[w] < pdeg[v]:
                continue
            if induced and any(w in adj[x] for x in mapped_non):
                continue
            image[v] = w
            used[w] = True
            extend(pos + 1)
            used[w] = False
            image[v] = -1

    extend(0)
    return total


def _adjacency_from_edges(edges: Iterable, n: int) -> list:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _pattern_core(pattern: PatternGraph) -> PatternGraph:
    verts = pattern.nonisolated_vertices()
    relabel = {v: i for i, v in enumerate(verts)}
    return PatternGraph.from_edges(
        len(verts), ((relabel[u], relabel[v]) for u, v in pattern.edges))


def count_copies(edges: Iterable, n: int, pattern: PatternGraph,
                 induced: bool = False) -> int:
    """Copies of a pattern inside the graph given by `edges` on n vertices.

    Spanning copies: subgraphs of G isomorphic to the pattern, counted
    through its non-isolated core (isolated pattern vertices pin no
    edges).  Induced copies: vertex subsets of G inducing the pattern.
    """
    adj = _adjacency_from_edges(edges, n)
    if induced:
        if pattern.vertex_count > MAX_PATTERN_CORE:
            raise ValueError("induced pattern too large for exact counting")
        emb = count_embeddings(adj, pattern, induced=True)
        aut = automorphism_count(pattern)
        # isolated pattern vertices still occupy subset slots, so the
        # full pattern (not its core) drives induced counting
        assert emb % aut == 0
        return emb // aut
    core = _pattern_core(pattern)
    if core.vertex_count > MAX_PATTERN_CORE:
        raise ValueError("pattern core too large for exact counting")
    emb = count_embeddings(adj, core, induced=False)
    aut = automorphism_count(core)
    assert emb % aut == 0
    return emb // aut


# ---------------------------------------------------------------------------
# Exact expectations by enumeration
# ---------------------------------------------------------------------------

def _require_graphical(d) -> None:
    if not is_graphical(d):
        raise ValueError("degree sequence is not graphical")


def exact_expected_copies(d: DegreeLike, pattern: PatternGraph,
                          induced: bool = False,
                          budget: int | None = None) -> OracleResult:
    """Exact expected number of (induced) copies, averaged by enumeration."""
    d = as_degrees(d)
    _require_graphical(d)
    if not induced and pattern.vertex_count != d.n:
        raise ValueError("a spanning pattern must cover all vertices")
    if induced and pattern.vertex_count > d.n:
        raise ValueError("pattern larger than the degree sequence")
    total = 0
    count = 0
    for edges in enumerate_realizations(d, budget=budget):
        total += count_copies(edges, d.n, pattern, induced=induced)
        count += 1
    return OracleResult(realization_count=count,
                        expectation=Fraction(total, count))


def exact_expected_spanning_trees(d: DegreeLike,
                                  budget: int | None = None) -> OracleResult:
    """Exact expected spanning-tree count, averaged by enumeration."""
    d = as_degrees(d)
    _require_graphical(d)
    total = 0
    count = 0
    for edges in enumerate_realizations(d, budget=budget):
        total += spanning_tree_count(PatternGraph.from_edges(d.n, edges))
        count += 1
    return OracleResult(realization_count=count,
                        expectation=Fraction(total, count))


def exact_pattern_probability(d: DegreeLike, pattern: PatternGraph,
                              induced: bool = False,
                              method: str = "enumerate",
                              budget: int | None = None) -> OracleResult:
    """Probability that a fixed placement of the pattern is present.

    Subgraph mode: all pattern edges present.  Induced mode: the first r
    vertices induce exactly the pattern.  `method` selects enumeration
    or the exact counting recursion ("dp"); both are exact.
    """
    d = as_degrees(d)
    _require_graphical(d)
    n = d.n
    if pattern.vertex_count > n:
        raise ValueError("pattern larger than the degree sequence")
    fixed_edges = set(pattern.edges)
    if method == "dp":
        ntotal = count_graphs_with_degrees(tuple(d))
        if induced:
            r = pattern.vertex_count
            forb = [(i, j) for i in range(r) for j in range(i + 1, r)]
        else:
            forb = sorted(fixed_edges)
        q = list(d)
        for u, v in fixed_edges:
            q[u] -= 1
            q[v] -= 1
        hit = count_graphs_avoiding(tuple(q), forb)
        return OracleResult(realization_count=ntotal,
                            expectation=Fraction(hit, ntotal))
    if method != "enumerate":
        raise ValueError("method must be 'enumerate' or 'dp'")
    r = pattern.vertex_count
    hits = 0
    count = 0
    for edges in enumerate_realizations(d, budget=budget):
        count += 1
        eset = set(edges)
        if induced:
            inside = {e for e in eset if e[0] < r and e[1] < r}
            if inside == fixed_edges:
                hits += 1
        else:
            if fixed_edges <= eset:
                hits += 1
    return OracleResult(realization_count=count,
                        expectation=Fraction(hits, count))


# ---------------------------------------------------------------------------
# Exact counting without enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _count_sorted(q: tuple) -> int:
    """Graphs on labelled vertices with degree multiset q (sorted desc)."""
    if not q or q[0] == 0:
        return 1
    need = q[0]
    rest = q[1:]
    if need > len(rest):
        return 0
    groups = sorted(Counter(rest).items(), reverse=True)
    eligible = [(val, cnt) for val, cnt in groups if val >= 1]
    zeros = sum(cnt for val, cnt in groups if val == 0)

    total = 0

    def assign(idx: int, left: int, ways: int, parts: list):
        nonlocal total
        if left == 0:
            new_vals = [0] * zeros
            for (val, cnt), take in zip(eligible, parts + [0] * (len(eligible) - len(parts))):
                new_vals.extend([val] * (cnt - take))
                new_vals.extend([val - 1] * take)
            total += ways * _count_sorted(tuple(sorted(new_vals, reverse=True)))
            return
        if idx == len(eligible):
            return
        val, cnt = eligible[idx]
        remaining_capacity = sum(c for _, c in eligible[idx:])
        if left > remaining_capacity:
            return
        for take in range(min(cnt, left) + 1):
            parts.append(take)
            assign(idx + 1, left - take, ways * math.comb(cnt, take), parts)
            parts.pop()

    assign(0, need, 1, [])
    return total


def count_graphs_with_degrees(degrees: Sequence[int]) -> int:
    """Exact number of simple labelled graphs with the given degrees."""
    q = tuple(int(x) for x in degrees)
    if any(x < 0 for x in q):
        return 0
    if sum(q) % 2:
        return 0
    if q and max(q) > len(q) - 1:
        return 0
    return _count_sorted(tuple(sorted(q, reverse=True)))


def _normalize_forbidden(forbidden: Iterable) -> tuple:
    return tuple(sorted((min(u, v), max(u, v)) for u, v in forbidden))


def count_graphs_avoiding(degrees: Sequence[int], forbidden: Iterable) -> int:
    """Exact number of graphs with the given degrees avoiding given pairs.

    Inclusion-exclusion over the forbidden pairs reduces to unrestricted
    counts of reduced degree sequences; exponential in the number of
    forbidden pairs, so capped at MAX_FORBIDDEN_EDGES of them.
    """
    q = tuple(int(x) for x in degrees)
    forb = _normalize_forbidden(forbidden)
    if len(forb) > MAX_FORBIDDEN_EDGES:
        raise ValueError(
            f"at most {MAX_FORBIDDEN_EDGES} forbidden pairs supported")
    for u, v in forb:
        if not (0 <= u < len(q) and 0 <= v < len(q)):
            raise ValueError("forbidden pair outside the vertex range")
    memo: dict = {}
    return _count_avoiding(q, forb, memo)


def _avoid_key(q: tuple, forb: tuple) -> tuple:
    support = sorted({v for e in forb for v in e})
    inside = tuple(q[v] for v in support)
    outside = tuple(sorted((q[v] for v in range(len(q))
                            if v not in set(support)), reverse=True))
    return (forb, inside, outside)


def _count_avoiding(q: tuple, forb: tuple, memo: dict) -> int:
    if any(x < 0 for x in q):
        return 0
    if not forb:
        return count_graphs_with_degrees(q)
    if sum(q) == 0:
        return 1
    key = _avoid_key(q, forb)
    if key in memo:
        return memo[key]
    total = 0
    edges = list(forb)
    for size in range(len(edges) + 1):
        for subset in itertools.combinations(edges, size):
            if size == 0:
                total += count_graphs_with_degrees(q)
                continue
            q2 = list(q)
            ok = True
            for u, v in subset:
                q2[u] -= 1
                q2[v] -= 1
                if q2[u] < 0 or q2[v] < 0:
                    ok = False
            if not ok:
                continue
            sign = -1 if size % 2 else 1
            total += sign * _count_avoiding(tuple(q2), tuple(subset), memo)
    memo[key] = total
    return total


def _require_exchangeable(d) -> None:
    if len(set(d)) != 1:
        raise ValueError(
            "placement symmetry requires a regular degree sequence")


def expected_copies_exact(d: DegreeLike, pattern: PatternGraph,
                          induced: bool = False) -> OracleResult:
    """Exact expected copy count for a regular sequence, via counting.

    For regular degrees every placement of the pattern is equally
    likely, so the expectation is (#placements) * P(fixed placement),
    with the probability computed by exact counting; no enumeration.
    """
    d = as_degrees(d)
    _require_exchangeable(d)
    _require_graphical(d)
    n = d.n
    ntotal = count_graphs_with_degrees(tuple(d))
    if induced:
        r = pattern.vertex_count
        aut = automorphism_count(pattern)
        placements = (math.factorial(n) // math.factorial(n - r)) // aut
        q = list(d)
        for u, v in pattern.edges:
            q[u] -= 1
            q[v] -= 1
        forb = [(i, j) for i in range(r) for j in range(i + 1, r)]
        hits = count_graphs_avoiding(tuple(q), forb)
    else:
        if pattern.vertex_count != n:
            raise ValueError("a spanning pattern must cover all vertices")
        aut = automorphism_count(pattern)
        placements = math.factorial(n) // aut
        q = list(d)
        for u, v in pattern.edges:
            q[u] -= 1
            q[v] -= 1
        hits = count_graphs_avoiding(tuple(q), sorted(pattern.edges))
    return OracleResult(realization_count=ntotal,
                        expectation=Fraction(placements * hits, ntotal))


def expected_spanning_trees_exact(d: DegreeLike) -> OracleResult:
    """Exact expected spanning trees for a regular sequence, via counting.

    Sums placement count times presence probability over one
    representative of every isomorphism class of trees on n vertices.
    """
    import networkx as nx

    d = as_degrees(d)
    _require_exchangeable(d)
    _require_graphical(d)
    n = d.n
    ntotal = count_graphs_with_degrees(tuple(d))
    total = Fraction(0)
    for tree in nx.nonisomorphic_trees(n):
        mapping = {node: i for i, node in enumerate(tree.nodes())}
        edges = [(mapping[u], mapping[v]) for u, v in tree.edges()]
        pat = PatternGraph.from_edges(n, edges)
        aut = automorphism_count(pat)
        placements = math.factorial(n) // aut
        q = list(d)
        for u, v in edges:
            q[u] -= 1
            q[v] -= 1
        hits = count_graphs_avoiding(tuple(q), edges)
        total += Fraction(placements * hits, ntotal)
    return OracleResult(realization_count=ntotal, expectation=total)


# ---------------------------------------------------------------------------
# Switch-chain Monte Carlo
# ---------------------------------------------------------------------------

def havel_hakimi_graph(d: DegreeLike) -> list:
    """A deterministic realization of a graphical sequence (greedy)."""
    d = as_degrees(d)
    _require_graphical(d)
    residual = [(deg, i) for i, deg in enumerate(d)]
    edges = []
    for _ in range(d.n):
        residual.sort(key=lambda t: (-t[0], t[1]))
        deg, u = residual[0]
        if deg == 0:
            break
        if deg > len(residual) - 1:
            raise ValueError("degree sequence is not graphical")
        residual[0] = (0, u)
        for k in range(1, deg + 1):
            dv, v = residual[k]
            if dv == 0:
                raise ValueError("degree sequence is not graphical")
            residual[k] = (dv - 1, v)
            edges.append((min(u, v), max(u, v)))
    return edges


def switch_chain_sample(d: DegreeLike, steps: int, seed: int = 0) -> PatternGraph:
    """One switch-chain state after `steps` proposals from a greedy start.

    The chain applies uniformly proposed two-edge switches with
    rejection; its stationary law is uniform over realizations, so long
    runs approximate a uniform sample.  Same seed, same trajectory, on
    either backend.
    """
    if steps < 1:
        raise ValueError("need at least one step")
    d = as_degrees(d)
    edges = havel_hakimi_graph(d)
    final = _backend.switch_chain_run(edges, d.n, steps, seed)
    return PatternGraph.from_edges(d.n, final)


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    stderr: float
    samples: int
    seed: int
    values: tuple = ()


def mc_expected_copies(d: DegreeLike, pattern: PatternGraph,
                       induced: bool = False, samples: int = 100,
                       steps: int = 20000, seed: int = 0) -> MCEstimate:
    """Monte Carlo estimate of the expected copy count via switch chains.

    Runs `samples` independent chains (seeds seed, seed+1, ...) and
    returns the sample mean and its standard error.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    d = as_degrees(d)
    counts = []
    for i in range(samples):
        g = switch_chain_sample(d, steps=steps, seed=seed + i)
        counts.append(count_copies(g.sorted_edges(), d.n, pattern, induced=induced))
    mean = math.fsum(counts) / samples
    var = math.fsum((c - mean) ** 2 for c in counts) / (samples - 1)
    stderr = math.sqrt(var / samples)
    return MCEstimate(estimate=mean, stderr=stderr, samples=samples, seed=seed,
                      values=tuple(counts))
