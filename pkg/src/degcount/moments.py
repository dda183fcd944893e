"""Moments of weighted sums over uniformly random permutations.

For weight vectors u, v the linear statistic Psi(sigma) = sum_j u_j *
v_{sigma_j} has exact closed-form mean, variance and covariances, and
the product statistic E_jk(sigma) = (u_j + v_{sigma_j})(u_k + v_{sigma_k})
has an exact mean.  These identities let the asymptotic formulas replace
permutation averages of exponent functions by a handful of degree
statistics.  A full-enumeration oracle over S_n (n <= 8) backs every
closed form, using exact rational arithmetic whenever the inputs are
rational.

The module also builds the permuted exponent functions whose averages
produce the spanning-copy and induced-copy formulas, together with the
leading expressions for their means and variances (and the exactly known
dropped remainder terms, so tests can reconcile to machine precision).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .graphs import DegreeLike, PatternGraph, as_degrees, compute_stats
from .patterns import induced_moments, pattern_moments

MAX_BRUTE_N = 8


def _exact(seq) -> Optional[list]:
    """Fractions for rational input, None if any entry is inexact."""
    out = []
    for x in seq:
        if isinstance(x, (int, Fraction)):
            out.append(Fraction(x))
        else:
            return None
    return out


@dataclass(frozen=True)
class WeightPair:
    """A pair of weight vectors u, v of equal length."""

    u: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        if len(self.u) != len(self.v):
            raise ValueError("u and v must have equal length")
        if not self.u:
            raise ValueError("weights must be nonempty")

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def alpha(self) -> float:
        """(max u - min u) * (max v - min v): the swap-move scale."""
        return float((max(self.u) - min(self.u)) * (max(self.v) - min(self.v)))

    def psi(self) -> Callable:
        u, v = self.u, self.v
        return lambda sigma: sum(u[j] * v[sigma[j]] for j in range(len(u)))

    def ejk(self, j: int, k: int) -> Callable:
        if j == k:
            raise ValueError("indices must be distinct")
        u, v = self.u, self.v
        return lambda sigma: (u[j] + v[sigma[j]]) * (u[k] + v[sigma[k]])


def _mean(values):
    if all(isinstance(x, (int, Fraction)) for x in values):
        return Fraction(sum(values), len(values))
    return math.fsum(values) / len(values)


def psi_mean_var(w: WeightPair):
    """Exact mean and variance of the linear permutation statistic.

    mean = n * ubar * vbar,
    var  = (1/(n-1)) * sum (u_j-ubar)^2 * sum (v_k-vbar)^2.
    """
    n = w.n
    if n < 2:
        raise ValueError("need n >= 2")
    eu, ev = _exact(w.u), _exact(w.v)
    if eu is not None and ev is not None:
        ubar = Fraction(sum(eu), n)
        vbar = Fraction(sum(ev), n)
        mean = n * ubar * vbar
        var = Fraction(sum((x - ubar) ** 2 for x in eu)
                       * sum((y - vbar) ** 2 for y in ev), n - 1)
        return mean, var
    ubar = math.fsum(w.u) / n
    vbar = math.fsum(w.v) / n
    mean = n * ubar * vbar
    var = (math.fsum((x - ubar) ** 2 for x in w.u)
           * math.fsum((y - vbar) ** 2 for y in w.v)) / (n - 1)
    return mean, var


def psi_cov(w: WeightPair, w2: WeightPair):
    """Exact covariance of two linear permutation statistics."""
    if w.n != w2.n:
        raise ValueError("length mismatch")
    n = w.n
    if n < 2:
        raise ValueError("need n >= 2")
    exact = all(_exact(s) is not None for s in (w.u, w.v, w2.u, w2.v))
    if exact:
        ubar = Fraction(sum(map(Fraction, w.u)), n)
        ubar2 = Fraction(sum(map(Fraction, w2.u)), n)
        vbar = Fraction(sum(map(Fraction, w.v)), n)
        vbar2 = Fraction(sum(map(Fraction, w2.v)), n)
        su = sum((Fraction(a) - ubar) * (Fraction(b) - ubar2)
                 for a, b in zip(w.u, w2.u))
        sv = sum((Fraction(a) - vbar) * (Fraction(b) - vbar2)
                 for a, b in zip(w.v, w2.v))
        return Fraction(su * sv, n - 1)
    ubar = math.fsum(w.u) / n
    ubar2 = math.fsum(w2.u) / n
    vbar = math.fsum(w.v) / n
    vbar2 = math.fsum(w2.v) / n
    su = math.fsum((a - ubar) * (b - ubar2) for a, b in zip(w.u, w2.u))
    sv = math.fsum((a - vbar) * (b - vbar2) for a, b in zip(w.v, w2.v))
    return su * sv / (n - 1)


def ejk_mean(w: WeightPair, j: int, k: int):
    """Exact mean of (u_j + v_{sigma_j})(u_k + v_{sigma_k}), j != k (0-based)."""
    n = w.n
    if j == k:
        raise ValueError("indices must be distinct")
    if not (0 <= j < n and 0 <= k < n):
        raise ValueError("index out of range")
    eu, ev = _exact(w.u), _exact(w.v)
    if eu is not None and ev is not None:
        vbar = Fraction(sum(ev), n)
        corr = Fraction(sum((y - vbar) ** 2 for y in ev), n * (n - 1))
        return (eu[j] + vbar) * (eu[k] + vbar) - corr
    vbar = math.fsum(w.v) / n
    corr = math.fsum((y - vbar) ** 2 for y in w.v) / (n * (n - 1))
    return (w.u[j] + vbar) * (w.u[k] + vbar) - corr


def ejk_cov_bounds(w: WeightPair, j: int, k: int, l: int, m2: int,
                   samples: int = 20000, seed: int = 0):
    """Covariance of two product statistics plus its scaling class.

    Exact over S_n for n <= MAX_BRUTE_N, otherwise a seeded sample
    estimate.  The class is "disjoint" when the index pairs do not meet
    (covariance decays like 1/n) and "overlapping" otherwise.
    """
    for idx in (j, k, l, m2):
        if not 0 <= idx < w.n:
            raise ValueError("index out of range")
    if j == k or l == m2:
        raise ValueError("each pair must have distinct indices")
    f = w.ejk(j, k)
    g = w.ejk(l, m2)
    if w.n <= MAX_BRUTE_N:
        res = brute_force_moments(f, w.n, g=g)
        cov = res.cov
    else:
        rng = random.Random(seed)
        base = list(range(w.n))
        fs, gs = [], []
        for _ in range(samples):
            rng.shuffle(base)
            sig = tuple(base)
            fs.append(float(f(sig)))
            gs.append(float(g(sig)))
        mf = math.fsum(fs) / samples
        mg = math.fsum(gs) / samples
        cov = math.fsum((a - mf) * (b - mg) for a, b in zip(fs, gs)) / (samples - 1)
    klass = "disjoint" if not ({j, k} & {l, m2}) else "overlapping"
    return cov, klass


def ejk_psi_cov(w: WeightPair, j: int, k: int, w2: WeightPair):
    """Leading term of Cov(E_jk, Psi') for the second pair's statistic.

    (1/n) * ((u2_j - u2bar)(u_k + vbar) + (u2_k - u2bar)(u_j + vbar))
          * sum_a (v_a - vbar)(v2_a - v2bar).
    The remainder is O(scale/n); tests check that by brute force.
    """
    if j == k:
        raise ValueError("indices must be distinct")
    if w.n != w2.n:
        raise ValueError("length mismatch")
    n = w.n
    exact = all(_exact(s) is not None for s in (w.u, w.v, w2.u, w2.v))
    conv = Fraction if exact else float
    u = [conv(x) for x in w.u]
    v = [conv(x) for x in w.v]
    u2 = [conv(x) for x in w2.u]
    v2 = [conv(x) for x in w2.v]
    vbar = sum(v) / conv(n)
    u2bar = sum(u2) / conv(n)
    v2bar = sum(v2) / conv(n)
    vv = sum((v[a] - vbar) * (v2[a] - v2bar) for a in range(n))
    lead = ((u2[j] - u2bar) * (u[k] + vbar) + (u2[k] - u2bar) * (u[j] + vbar)) * vv
    return lead / conv(n)


@dataclass(frozen=True)
class BruteForceMoments:
    """Exact full-enumeration moments of one or two permutation statistics."""

    n: int
    mean: object            # Fraction / float / complex
    variance: object        # E|f - Ef|^2
    pseudovariance: object  # E (f - Ef)^2, differs from variance only off the real line
    var_im: object          # variance of the imaginary part
    exp_mean: object        # E e^f
    cov: object = None      # Cov(f, g) when a second statistic is supplied


def brute_force_moments(f: Callable, n: int, g: Callable | None = None) -> BruteForceMoments:
    """Exact moments by summation over all n! permutations (n <= 8).

    Rational-valued statistics are accumulated with big rationals; float
    or complex values fall back to compensated / complex summation.
    """
    if n > MAX_BRUTE_N:
        raise ValueError(f"full enumeration capped at n = {MAX_BRUTE_N}")
    perms = list(itertools.permutations(range(n)))
    vals = [f(p) for p in perms]
    gvals = [g(p) for p in perms] if g is not None else None
    total = len(perms)

    exact = all(isinstance(x, (int, Fraction)) for x in vals)
    complex_mode = any(isinstance(x, complex) for x in vals)

    if exact and (gvals is None or all(isinstance(x, (int, Fraction)) for x in gvals)):
        mean = Fraction(sum(vals), total)
        var = sum((x - mean) ** 2 for x in vals) / total
        cov = None
        if gvals is not None:
            gmean = Fraction(sum(gvals), total)
            cov = sum((x - mean) * (y - gmean) for x, y in zip(vals, gvals)) / total
        exp_mean = math.fsum(math.exp(float(x)) for x in vals) / total
        return BruteForceMoments(n=n, mean=mean, variance=var, pseudovariance=var,
                                 var_im=Fraction(0), exp_mean=exp_mean, cov=cov)

    if complex_mode:
        import cmath
        vals = [complex(x) for x in vals]
        mean = sum(vals) / total
        variance = math.fsum(abs(x - mean) ** 2 for x in vals) / total
        pseudo = sum((x - mean) ** 2 for x in vals) / total
        im_mean = math.fsum(x.imag for x in vals) / total
        var_im = math.fsum((x.imag - im_mean) ** 2 for x in vals) / total
        exp_mean = sum(cmath.exp(x) for x in vals) / total
        cov = None
        if gvals is not None:
            gvals = [complex(x) for x in gvals]
            gmean = sum(gvals) / total
            cov = sum((x - mean) * (y - gmean) for x, y in zip(vals, gvals)) / total
        return BruteForceMoments(n=n, mean=mean, variance=variance,
                                 pseudovariance=pseudo, var_im=var_im,
                                 exp_mean=exp_mean, cov=cov)

    vals = [float(x) for x in vals]
    mean = math.fsum(vals) / total
    var = math.fsum((x - mean) ** 2 for x in vals) / total
    cov = None
    if gvals is not None:
        gvals = [float(x) for x in gvals]
        gmean = math.fsum(gvals) / total
        cov = math.fsum((x - mean) * (y - gmean) for x, y in zip(vals, gvals)) / total
    exp_mean = math.fsum(math.exp(x) for x in vals) / total
    return BruteForceMoments(n=n, mean=mean, variance=var, pseudovariance=var,
                             var_im=0.0, exp_mean=exp_mean, cov=cov)


# ---------------------------------------------------------------------------
# Permuted exponent functions behind the asymptotic formulas
# ---------------------------------------------------------------------------

def make_subgraph_exponent(d: DegreeLike, h_graph: PatternGraph):
    """Exponent functions (f, g) of the spanning-copy probability, permuted.

    sigma assigns degree indices to pattern positions; f(sigma) collects
    the degree-deviation sums against the pattern degrees, g(sigma) the
    edge-correlation sum.  Averaging exp(f+g) over sigma recovers the
    expected-copy formula.
    """
    d = as_degrees(d)
    hseq = h_graph.degree_sequence
    n = d.n
    if h_graph.vertex_count != n:
        raise ValueError("pattern must span the same vertex count")
    stats = compute_stats(d)
    lam = stats.density
    if not 0 < lam < 1:
        raise ValueError("density must lie strictly between 0 and 1")
    pm = pattern_moments(h_graph)
    mu1, mu2, mu3 = pm.mu[1], pm.mu[2], pm.mu[3]
    const = ((1 - lam) / (4 * lam) * (mu1 ** 2 + 2 * mu1 - 2 * mu2)
             - (1 - lam ** 2) / (6 * lam ** 2 * n) * mu3)
    dev = [x - stats.mean_degree for x in d]
    edges = h_graph.sorted_edges()
    c1 = 1.0 / (lam * n)
    c2 = 1.0 / (2 * lam ** 2 * n ** 2)
    cg = 1.0 / (lam * (1 - lam) * n ** 2)
    one_minus = 1 - lam

    def f(sigma):
        s1 = math.fsum(dev[sigma[j]] * hseq[j] for j in range(n) if hseq[j])
        s2 = math.fsum(dev[sigma[j]] * hseq[j] ** 2 for j in range(n) if hseq[j])
        s3 = math.fsum(dev[sigma[j]] ** 2 * hseq[j] for j in range(n) if hseq[j])
        return const + c1 * s1 + c2 * s2 - c2 * s3

    def g(sigma):
        s = math.fsum(
            (dev[sigma[u]] - one_minus * hseq[u]) * (dev[sigma[v]] - one_minus * hseq[v])
            for u, v in edges)
        return -cg * s

    return f, g


@dataclass(frozen=True)
class SubgraphExponentMoments:
    """Leading moment expressions for the spanning-copy exponent.

    mean_g_dropped is the exactly-known remainder of the mean of g
    (m * spread / (density*(1-density)*n^2*(n-1))), so
    mean_g_leading + mean_g_dropped equals the brute-force mean exactly.
    var_kept_exact keeps the (n-1) denominator that var_leading rounds
    to n.
    """

    mean_f: float
    mean_g_leading: float
    mean_g_dropped: float
    var_leading: float
    var_kept_exact: float


def subgraph_exponent_moments(d: DegreeLike, h_graph: PatternGraph) -> SubgraphExponentMoments:
    d = as_degrees(d)
    n = d.n
    if h_graph.vertex_count != n:
        raise ValueError("pattern must span the same vertex count")
    stats = compute_stats(d)
    lam, big_r = stats.density, stats.spread
    pm = pattern_moments(h_graph)
    mu1, mu2, mu3 = pm.mu[1], pm.mu[2], pm.mu[3]
    mean_f = ((1 - lam) / (4 * lam) * (mu1 ** 2 + 2 * mu1 - 2 * mu2)
              - (1 - lam ** 2) / (6 * lam ** 2 * n) * mu3
              - big_r * mu1 / (2 * lam ** 2 * n))
    mean_g_leading = -(1 - lam) / (lam * n ** 2) * pm.edge_prod_sum
    mean_g_dropped = pm.m * big_r / (lam * (1 - lam) * n ** 2 * (n - 1))
    var_leading = big_r * (mu2 - mu1 ** 2) / (lam ** 2 * n)
    var_kept_exact = big_r * (mu2 - mu1 ** 2) / (lam ** 2 * (n - 1))
    return SubgraphExponentMoments(mean_f=mean_f, mean_g_leading=mean_g_leading,
                                   mean_g_dropped=mean_g_dropped,
                                   var_leading=var_leading,
                                   var_kept_exact=var_kept_exact)


def make_induced_exponent(d: DegreeLike, hr: PatternGraph):
    """Exponent function of the induced-copy probability, permuted.

    sigma assigns degree indices to the r pattern positions (entries
    beyond r are ignored).  Averaging exp(f_ind) over sigma recovers the
    induced expected-copy formula.
    """
    d = as_degrees(d)
    n = d.n
    r = hr.vertex_count
    if r > n:
        raise ValueError("pattern larger than the degree sequence")
    stats = compute_stats(d)
    lam = stats.density
    if not 0 < lam < 1:
        raise ValueError("density must lie strictly between 0 and 1")
    im = induced_moments(hr, lam)
    w1, w2, w3 = im.omega[1], im.omega[2], im.omega[3]
    centre = lam * (r - 1)
    cen = [h - centre for h in hr.degree_sequence]
    dev = [x - stats.mean_degree for x in d]
    ll = lam * (1 - lam)

    def f(sigma):
        om10 = math.fsum(dev[sigma[j]] for j in range(r))
        om11 = math.fsum(dev[sigma[j]] * cen[j] for j in range(r))
        om20 = math.fsum(dev[sigma[j]] ** 2 for j in range(r))
        om21 = math.fsum(dev[sigma[j]] ** 2 * cen[j] for j in range(r))
        om12 = math.fsum(dev[sigma[j]] * cen[j] ** 2 for j in range(r))
        return ((2 * om11 - w2) / (2 * ll * n)
                + r ** 2 / (2 * n)
                + (1 - 2 * lam) * w1 / (2 * ll * n)
                + (4 * om10 * w1 - w1 ** 2 - 2 * om10 ** 2) / (4 * ll * n ** 2)
                + r * (2 * om11 - om20 - w2) / (2 * ll * n ** 2)
                - (1 - 2 * lam) * (w3 + 3 * om21 - 3 * om12) / (6 * ll ** 2 * n ** 2))

    return f


@dataclass(frozen=True)
class InducedExponentMoments:
    """Leading moment expressions for the induced-copy exponent.

    mean_dropped is the exactly-known remainder of the mean (the
    variance of the plain deviation sum entering through its square), so
    mean_leading + mean_dropped equals the brute-force mean exactly.
    """

    mean_leading: float
    mean_dropped: float
    var_leading: float


def induced_exponent_moments(d: DegreeLike, hr: PatternGraph) -> InducedExponentMoments:
    d = as_degrees(d)
    n = d.n
    r = hr.vertex_count
    if r > n:
        raise ValueError("pattern larger than the degree sequence")
    stats = compute_stats(d)
    lam, big_r = stats.density, stats.spread
    ll = lam * (1 - lam)
    im = induced_moments(hr, lam)
    w1, w2, w3 = im.omega[1], im.omega[2], im.omega[3]
    dev3 = math.fsum((x - stats.mean_degree) ** 3 for x in d)
    mean_leading = (-w2 / (2 * ll * n)
                    + r ** 2 / (2 * n)
                    + (1 - 2 * lam) * w1 / (2 * ll * n)
                    - w1 ** 2 / (4 * ll * n ** 2)
                    - r ** 2 * big_r / (2 * ll * n ** 2)
                    - r * w2 / (2 * ll * n ** 2)
                    - (1 - 2 * lam) * w3 / (6 * ll ** 2 * n ** 2)
                    - (1 - 2 * lam) * big_r * w1 / (2 * ll ** 2 * n ** 2))
    mean_dropped = -r * (n - r) * big_r / (2 * (n - 1) * ll * n ** 2)
    var_leading = (big_r * w2 / (ll ** 2 * n ** 2)
                   - r * w1 * dev3 / (ll ** 2 * n ** 4))
    return InducedExponentMoments(mean_leading=mean_leading,
                                  mean_dropped=mean_dropped,
                                  var_leading=var_leading)
