"""Labelled trees: counts by degree sequence, enumeration, edge averages.

The number of labelled trees on n vertices with degree sequence x
(each x_j >= 1, sum = 2n-2) is the multinomial (n-2)! / prod (x_j - 1)!,
and summing it over all valid x recovers the n**(n-2) total.  Sequence
decoding gives the enumeration: every (n-2)-tuple over the vertex set
decodes to a unique labelled tree, so the decoder is the single source
of tree streams here and bijectivity makes the enumeration exact.

For weights phi the average over trees with degree sequence x of the
edge sum sum_{jk in T} phi_j phi_k has the exact closed form

    ((sum phi) * (sum (x_j-1) phi_j) - sum (x_j-1) phi_j^2) / (n-2),

and the average of exp(-edge sum) equals exp(-average + K) with
|K| <= n/8 * (max|phi| - min|phi|)**4.

Spanning trees of an arbitrary graph are counted exactly via a
determinant of the reduced Laplacian, computed fraction-free over big
integers.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .graphs import DegreeLike, PatternGraph, as_degrees, compute_stats

MAX_ENUMERATION_N = 9


def validate_tree_degrees(x: Sequence[int]) -> tuple:
    x = tuple(int(v) for v in x)
    n = len(x)
    if n < 2:
        raise ValueError("a tree degree sequence needs at least two vertices")
    if any(not 1 <= v <= n - 1 for v in x):
        raise ValueError("tree degrees must lie in 1..n-1")
    if sum(x) != 2 * n - 2:
        raise ValueError(f"tree degrees must sum to {2 * n - 2}, got {sum(x)}")
    return x


def count_trees_with_degrees(x: Sequence[int]) -> int:
    """Exact number of labelled trees with the given degree sequence."""
    x = validate_tree_degrees(x)
    n = len(x)
    count = math.factorial(n - 2)
    for v in x:
        count //= math.factorial(v - 1)
    return count


def decode_tree(seq: Sequence[int], n: int) -> tuple:
    """Edges of the labelled tree encoded by an (n-2)-tuple over 0..n-1."""
    if n == 1:
        return ()
    if n == 2:
        return ((0, 1),)
    if len(seq) != n - 2:
        raise ValueError("code length must be n - 2")
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return tuple(edges)


def enumerate_trees(n: int) -> Iterator[tuple]:
    """All labelled trees on n vertices, each exactly once, as edge tuples."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if n > MAX_ENUMERATION_N:
        raise ValueError(f"tree enumeration capped at n = {MAX_ENUMERATION_N}")
    if n == 1:
        yield ()
        return
    if n == 2:
        yield ((0, 1),)
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield decode_tree(seq, n)


def tree_degrees(edges: Iterable, n: int) -> tuple:
    degs = [0] * n
    for u, v in edges:
        degs[u] += 1
        degs[v] += 1
    return tuple(degs)


def tree_edge_average(x: Sequence[int], phi: Sequence):
    """Exact average of sum_{jk in T} phi_j phi_k over trees with degrees x."""
    x = validate_tree_degrees(x)
    n = len(x)
    if n < 3:
        raise ValueError("the closed form needs n >= 3")
    if len(phi) != n:
        raise ValueError("phi must have one weight per vertex")
    exact = all(isinstance(p, (int, Fraction)) for p in phi)
    conv = Fraction if exact else float
    ph = [conv(p) for p in phi]
    total = sum(ph)
    s1 = sum((x[j] - 1) * ph[j] for j in range(n))
    s2 = sum((x[j] - 1) * ph[j] * ph[j] for j in range(n))
    if exact:
        return (total * s1 - s2) / Fraction(n - 2)
    return (total * s1 - s2) / (n - 2)


def tree_exp_average_bound(x: Sequence[int], phi: Sequence):
    """Certified estimate of the average of exp(-edge sum) over trees.

    Returns (center, k_bound): the true average lies in
    [center * exp(-k_bound), center * exp(k_bound)] with
    k_bound = n/8 * (max|phi| - min|phi|)**4.
    """
    x = validate_tree_degrees(x)
    n = len(x)
    avg = tree_edge_average(x, phi)
    centre = math.exp(-float(avg))
    mags = [abs(float(p)) for p in phi]
    k_bound = n / 8.0 * (max(mags) - min(mags)) ** 4
    return centre, k_bound


# ---------------------------------------------------------------------------
# Degree-sequence distribution of a uniform random tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeDegreeMoments:
    """Exact truncated-degree moments of a uniformly random labelled tree.

    One vertex's degree X satisfies X - 1 ~ Binomial(n-2, 1/n); entries
    above the truncation value are replaced by it.  The limiting
    constants are mean 2, mean square 5, variance 1, variance of the
    square 27, and vanishing cross-covariances.
    """

    n: int
    truncation: int
    mean: Fraction
    mean_square: Fraction
    variance: Fraction
    variance_square: Fraction
    cov: dict          # (s, t) -> Cov(Z_1^s, Z_2^t) for s, t in {1, 2}
    mean_raw: Fraction  # untruncated E X = 2 - 2/n

    LIMITS = {"mean": 2, "mean_square": 5, "variance": 1, "variance_square": 27}

    def deviations(self) -> dict:
        return {
            "mean": float(self.mean - 2),
            "mean_square": float(self.mean_square - 5),
            "variance": float(self.variance - 1),
            "variance_square": float(self.variance_square - 27),
        }


def _binomial_pmf(m: int, num: int, den: int) -> list:
    """P(B = y) for B ~ Binomial(m, num/den), exact."""
    p = Fraction(num, den)
    q = 1 - p
    return [math.comb(m, y) * p ** y * q ** (m - y) for y in range(m + 1)]


def tree_degree_moments(n: int, trunc_exponent: float = 1.0) -> TreeDegreeMoments:
    """Exact moments of the truncated degree of a uniform random tree.

    The truncation value is floor(n**trunc_exponent); the default keeps
    every degree (the cap n-1 is below n).  Exact for every n: the
    marginal and pairwise joint distributions of the degree sequence are
    binomial/trinomial, so no tree enumeration is needed.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    tau = math.floor(n ** trunc_exponent)
    tau = max(tau, 1)
    m = n - 2

    pmf = _binomial_pmf(m, 1, n)
    z_vals = [min(1 + y, tau) for y in range(m + 1)]
    mean = sum(p * z for p, z in zip(pmf, z_vals))
    mean_sq = sum(p * z * z for p, z in zip(pmf, z_vals))
    mean_4 = sum(p * z ** 4 for p, z in zip(pmf, z_vals))
    variance = mean_sq - mean ** 2
    variance_sq = mean_4 - mean_sq ** 2
    mean_raw = sum(p * (1 + y) for p, y in zip(pmf, range(m + 1)))

    # pairwise joint: (X_1 - 1, X_2 - 1) is trinomial over n-2 trials
    cov = {(s, t): Fraction(0) for s in (1, 2) for t in (1, 2)}
    base = Fraction(1, n)
    rest = Fraction(n - 2, n)
    moments_one = {1: mean, 2: mean_sq}
    for y1 in range(m + 1):
        for y2 in range(m - y1 + 1):
            w = (Fraction(math.factorial(m),
                          math.factorial(y1) * math.factorial(y2)
                          * math.factorial(m - y1 - y2))
                 * base ** (y1 + y2) * rest ** (m - y1 - y2))
            z1 = min(1 + y1, tau)
            z2 = min(1 + y2, tau)
            for s in (1, 2):
                for t in (1, 2):
                    cov[(s, t)] += w * z1 ** s * z2 ** t
    for s in (1, 2):
        for t in (1, 2):
            cov[(s, t)] -= moments_one[s] * moments_one[t]

    return TreeDegreeMoments(n=n, truncation=tau, mean=mean, mean_square=mean_sq,
                             variance=variance, variance_square=variance_sq,
                             cov=cov, mean_raw=mean_raw)


# ---------------------------------------------------------------------------
# Matrix-Tree counting
# ---------------------------------------------------------------------------

def _bareiss_determinant(mat: list) -> int:
    """Exact determinant of an integer matrix, fraction-free elimination."""
    size = len(mat)
    if size == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, size) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[size - 1][size - 1]


def spanning_tree_count(g: PatternGraph) -> int:
    """Exact number of spanning trees via a reduced-Laplacian determinant."""
    n = g.vertex_count
    if n == 0:
        raise ValueError("empty vertex set")
    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    minor = [row[1:] for row in lap[1:]]
    det = _bareiss_determinant(minor)
    return max(det, 0)


def phi_weights(d: DegreeLike) -> tuple:
    """Normalized degree-deviation weights (d_j - mean)/(n sqrt(lam(1-lam)))."""
    d = as_degrees(d)
    stats = compute_stats(d)
    lam = stats.density
    if not 0 < lam < 1:
        raise ValueError("density must lie strictly between 0 and 1")
    scale = stats.n * math.sqrt(lam * (1 - lam))
    return tuple((x - stats.mean_degree) / scale for x in d)
