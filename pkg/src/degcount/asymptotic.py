"""Asymptotic expectations of pattern counts in fixed-degree random graphs.

Every formula is returned as an ExponentReport: the natural log of the
combinatorial prefactor plus an ordered mapping of named exponent terms,
one per displayed summand, so each contribution can be tested on its
own.  All prefactors are evaluated in log space through lgamma; nothing
here overflows for n in the hundreds of thousands.

The relative error of each formula is a multiplicative exp(O(n**-b))
with a non-constructive constant; reports carry n**-b for a caller
chosen b as a diagnostic magnitude, never folded into the point value.

Density conventions: the formulas need 0 < density < 1 except for the
spanning-tree count, where density == 1 is the complete graph and the
formula degenerates to the exact n**(n-2) tree count.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping

from .graphs import DegreeLike, PatternGraph, as_degrees, compute_stats
from .patterns import (automorphism_count, induced_moments, mixed_moments,
                       pattern_moments)

DEFAULT_ERROR_EXPONENT = 0.25


@dataclass(frozen=True)
class ExponentReport:
    """log prefactor + named exponent terms; value = exp(log_value)."""

    kind: str
    log_prefactor: float
    terms: Mapping
    diagnostics: Mapping = field(default_factory=dict)

    @property
    def exponent(self) -> float:
        return math.fsum(self.terms.values())

    @property
    def log_value(self) -> float:
        return self.log_prefactor + self.exponent

    @property
    def value(self) -> float:
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "log_prefactor": self.log_prefactor,
            "terms": dict(self.terms),
            "log_value": self.log_value,
            "value": self.value,
            "diagnostics": dict(self.diagnostics),
        }


def _density_open_interval(lam: float, op: str) -> None:
    if not 0.0 < lam < 1.0:
        raise ValueError(f"{op} requires density strictly inside (0, 1); got {lam}")


def _log_aut(h_graph: PatternGraph, aut_count=None) -> float:
    if aut_count is None:
        aut_count = automorphism_count(h_graph)
    return math.log(aut_count)


def error_envelope(n: int, b: float = DEFAULT_ERROR_EXPONENT) -> float:
    """Diagnostic magnitude n**-b of the unquantified relative error."""
    return float(n) ** (-b)


# ---------------------------------------------------------------------------
# Spanning subgraph counts
# ---------------------------------------------------------------------------

def expected_subgraph_count(d: DegreeLike, h_graph: PatternGraph,
                            aut_count=None,
                            b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Expected number of spanning copies of a pattern.

    Prefactor n!/|Aut| * density**m; exponent terms:
      base_quadratic: (1-lam)/(4 lam) * (mu1^2 + 2 mu1 - 2 mu2)
      spread:        -spread/(2 lam^2 n) * (mu1^2 + mu1 - mu2)
      third_moment:  -(1-lam^2)/(6 lam^2 n) * mu3
      edge_product:  -(1-lam)/(lam n^2) * sum over edges of h_j h_k
    """
    d = as_degrees(d)
    n = d.n
    if h_graph.vertex_count != n:
        raise ValueError("pattern must span the same vertex set as the degrees")
    stats = compute_stats(d)
    lam, big_r = stats.density, stats.spread
    _density_open_interval(lam, "expected_subgraph_count")
    pm = pattern_moments(h_graph)
    mu1, mu2, mu3 = pm.mu[1], pm.mu[2], pm.mu[3]
    log_pref = (math.lgamma(n + 1) - _log_aut(h_graph, aut_count)
                + pm.m * math.log(lam))
    terms = {
        "base_quadratic": (1 - lam) / (4 * lam) * (mu1 ** 2 + 2 * mu1 - 2 * mu2),
        "spread": -big_r / (2 * lam ** 2 * n) * (mu1 ** 2 + mu1 - mu2),
        "third_moment": -(1 - lam ** 2) / (6 * lam ** 2 * n) * mu3,
        "edge_product": -(1 - lam) / (lam * n ** 2) * pm.edge_prod_sum,
    }
    diag = {
        "cube_deviation_ratio": stats.max_dev ** 3 * mu3 / (lam ** 3 * n ** 2),
        "error_envelope": error_envelope(n, b),
    }
    return ExponentReport(kind="subgraph_count", log_prefactor=log_pref,
                          terms=terms, diagnostics=diag)


def expected_subgraph_count_simplified(d: DegreeLike, h_graph: PatternGraph,
                                       aut_count=None,
                                       b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Moderate-degree simplification: drops the third-moment and edge terms."""
    full = expected_subgraph_count(d, h_graph, aut_count=aut_count, b=b)
    stats = compute_stats(as_degrees(d))
    n, lam = stats.n, stats.density
    mu3 = pattern_moments(h_graph).mu[3]
    terms = {
        "base_quadratic": full.terms["base_quadratic"],
        "spread": full.terms["spread"],
    }
    diag = dict(full.diagnostics)
    diag["applicability_ratio"] = mu3 / (lam ** 2 * n)
    return ExponentReport(kind="subgraph_count_simplified",
                          log_prefactor=full.log_prefactor, terms=terms,
                          diagnostics=diag)


def expected_regular_factor(d: DegreeLike, h_graph: PatternGraph, h: int,
                            aut_count=None,
                            b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Expected copies of a fixed h-regular spanning pattern."""
    d = as_degrees(d)
    n = d.n
    if h_graph.vertex_count != n:
        raise ValueError("pattern must span the same vertex set as the degrees")
    if not h_graph.is_regular(h):
        raise ValueError(f"pattern is not {h}-regular")
    stats = compute_stats(d)
    lam, big_r = stats.density, stats.spread
    _density_open_interval(lam, "expected_regular_factor")
    m = n * h // 2
    log_pref = (math.lgamma(n + 1) - _log_aut(h_graph, aut_count)
                + m * math.log(lam))
    terms = {
        "regular_quadratic": -(1 - lam) / (4 * lam) * h * (h - 2),
        "spread": -big_r * h / (2 * lam ** 2 * n),
    }
    diag = {"error_envelope": error_envelope(n, b)}
    return ExponentReport(kind="regular_factor", log_prefactor=log_pref,
                          terms=terms, diagnostics=diag)


def expected_total_regular_factors(d: DegreeLike, h: int,
                                   b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Expected total number of h-regular spanning subgraphs.

    Prefactor sqrt(2)/(h!)^n * (2 lam m / e)^m with m = n h / 2, via
    lgamma; exponent adds the regular-graph pairing correction
    -(h^2-1)/4 to the terms of the fixed-pattern formula.
    """
    d = as_degrees(d)
    n = d.n
    if h < 1:
        raise ValueError("factor degree must be at least 1")
    if (n * h) % 2:
        raise ValueError("n * h must be even")
    stats = compute_stats(d)
    lam, big_r = stats.density, stats.spread
    _density_open_interval(lam, "expected_total_regular_factors")
    m = n * h // 2
    log_pref = (0.5 * math.log(2.0) - n * math.lgamma(h + 1)
                + m * (math.log(2 * lam * m) - 1.0))
    terms = {
        "pairing_correction": -(h ** 2 - 1) / 4.0,
        "regular_quadratic": -(1 - lam) / (4 * lam) * h * (h - 2),
        "spread": -big_r * h / (2 * lam ** 2 * n),
    }
    diag = {"error_envelope": error_envelope(n, b)}
    return ExponentReport(kind="total_regular_factors", log_prefactor=log_pref,
                          terms=terms, diagnostics=diag)


def expected_spanning_trees(d: DegreeLike,
                            b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Expected number of spanning trees: n**(n-2) lam**(n-1) e^(terms).

    Terms: tree_const = -(1-lam)/(2 lam), R_term = -spread/(2 lam^2 n).
    At density 1 both terms vanish and the value is exactly the
    complete-graph tree count n**(n-2).
    """
    d = as_degrees(d)
    n = d.n
    if n < 2:
        raise ValueError("need at least two vertices")
    stats = compute_stats(d)
    lam, big_r = stats.density, stats.spread
    if not 0.0 < lam <= 1.0:
        raise ValueError("spanning-tree formula needs density in (0, 1]")
    log_pref = (n - 2) * math.log(n) + (n - 1) * math.log(lam)
    terms = {
        "tree_const": -(1 - lam) / (2 * lam),
        "R_term": -big_r / (2 * lam ** 2 * n),
    }
    diag = {"error_envelope": error_envelope(n, b)}
    return ExponentReport(kind="spanning_trees", log_prefactor=log_pref,
                          terms=terms, diagnostics=diag)


# ---------------------------------------------------------------------------
# Induced subgraph counts
# ---------------------------------------------------------------------------

INDUCED_FIRST_ORDER_TERMS = ("centered_quadratic", "spread_quadratic")
INDUCED_SECOND_ORDER_TERMS = ("order_squared", "skew_linear", "linear_squared",
                              "order_spread", "order_quadratic", "skew_cubic")
INDUCED_THIRD_ORDER_TERMS = ("spread_skew_linear", "degree_cube_linear")


def _induced_prefactor(n: int, hr: PatternGraph, lam: float, aut_count=None) -> float:
    r = hr.vertex_count
    m = hr.edge_count
    return (math.lgamma(r + 1) - _log_aut(hr, aut_count)
            + math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)
            + m * math.log(lam)
            + (r * (r - 1) // 2 - m) * math.log(1 - lam))


def expected_induced_count(d: DegreeLike, hr: PatternGraph, aut_count=None,
                           b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Expected number of induced copies of a pattern on r <= n vertices.

    Prefactor r!/|Aut| * C(n,r) * lam^m * (1-lam)^(C(r,2)-m).  The
    exponent terms are grouped in three tiers (first/second/third order,
    see the *_TERMS tuples); the simplified formula keeps only the first
    tier.
    """
    d = as_degrees(d)
    n = d.n
    r = hr.vertex_count
    if r > n:
        raise ValueError("pattern larger than the degree sequence")
    stats = compute_stats(d)
    lam, big_r = stats.density, stats.spread
    _density_open_interval(lam, "expected_induced_count")
    im = induced_moments(hr, lam)
    w1, w2, w3 = im.omega[1], im.omega[2], im.omega[3]
    ll = lam * (1 - lam)
    dev3 = math.fsum((x - stats.mean_degree) ** 3 for x in d)
    log_pref = _induced_prefactor(n, hr, lam, aut_count)
    terms = {
        "centered_quadratic": -w2 / (2 * ll * n),
        "spread_quadratic": big_r * w2 / (2 * ll ** 2 * n ** 2),
        "order_squared": r ** 2 / (2 * n),
        "skew_linear": (1 - 2 * lam) * w1 / (2 * ll * n),
        "linear_squared": -w1 ** 2 / (4 * ll * n ** 2),
        "order_spread": -r ** 2 * big_r / (2 * ll * n ** 2),
        "order_quadratic": -r * w2 / (2 * ll * n ** 2),
        "skew_cubic": -(1 - 2 * lam) * w3 / (6 * ll ** 2 * n ** 2),
        "spread_skew_linear": -(1 - 2 * lam) * big_r * w1 / (2 * ll ** 2 * n ** 2),
        "degree_cube_linear": -r * w1 * dev3 / (2 * ll ** 2 * n ** 4),
    }
    s3 = math.fsum(abs(h - lam * (r - 1)) ** 3 for h in hr.degree_sequence)
    diag = {
        "cube_deviation_ratio": stats.max_dev ** 3 * s3 / (lam ** 3 * (1 - lam) ** 3 * n ** 3),
        "error_envelope": error_envelope(n, b),
        "second_order_sum": math.fsum(terms[t] for t in INDUCED_SECOND_ORDER_TERMS),
        "third_order_sum": math.fsum(terms[t] for t in INDUCED_THIRD_ORDER_TERMS),
    }
    return ExponentReport(kind="induced_count", log_prefactor=log_pref,
                          terms=terms, diagnostics=diag)


def expected_induced_simplified(d: DegreeLike, hr: PatternGraph, aut_count=None,
                                b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Moderate-order simplification keeping only the first-tier terms."""
    full = expected_induced_count(d, hr, aut_count=aut_count, b=b)
    stats = compute_stats(as_degrees(d))
    n, lam, delta = stats.n, stats.density, stats.max_dev
    r = hr.vertex_count
    terms = {t: full.terms[t] for t in INDUCED_FIRST_ORDER_TERMS}
    diag = dict(full.diagnostics)
    diag["applicability_ratio"] = (
        r ** 2 * (1 + delta ** 2 / n) / (lam ** 2 * (1 - lam) ** 2 * n))
    return ExponentReport(kind="induced_count_simplified",
                          log_prefactor=full.log_prefactor, terms=terms,
                          diagnostics=diag)


def expected_clique_count(d: DegreeLike, r: int, independent: bool = False,
                          b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Expected number of r-cliques (or independent r-sets).

    Prefactor C(n,r) lam^C(r,2); the independent-set count swaps the
    roles of lam and 1-lam throughout.
    """
    d = as_degrees(d)
    n = d.n
    if not 1 <= r <= n:
        raise ValueError("clique order must lie in 1..n")
    stats = compute_stats(d)
    lam, big_r = stats.density, stats.spread
    _density_open_interval(lam, "expected_clique_count")
    if independent:
        lam = 1.0 - lam
    log_pref = (math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)
                + (r * (r - 1) // 2) * math.log(lam))
    terms = {
        "cubic_order": -(1 - lam) * r ** 2 * (r - 3) / (2 * lam * n),
        "spread": big_r * r ** 3 / (2 * lam ** 2 * n ** 2),
        "quartic_order": -(1 - lam) * (2 + 5 * lam) * r ** 4 / (12 * lam ** 2 * n ** 2),
    }
    diag = {
        "cube_deviation_ratio": stats.max_dev ** 3 * r ** 4 / (lam ** 3 * n ** 3),
        "error_envelope": error_envelope(n, b),
    }
    return ExponentReport(kind="clique_count", log_prefactor=log_pref,
                          terms=terms, diagnostics=diag)


def concentration_threshold(d: DegreeLike, eps: float) -> float:
    """Largest pattern order with guaranteed relative concentration.

    Returns (2 - eps) * log n / log(1/min(lam, 1-lam)); infinite when
    the minimum is 1 (degenerate) and 0 when the density is degenerate
    at 0 or 1.
    """
    if not 0 < eps < 2:
        raise ValueError("eps must lie in (0, 2)")
    stats = compute_stats(as_degrees(d))
    lam = stats.density
    lam_min = min(lam, 1.0 - lam)
    if lam_min >= 1.0:
        return math.inf
    if lam_min <= 0.0:
        return 0.0
    return (2.0 - eps) * math.log(stats.n) / math.log(1.0 / lam_min)


# ---------------------------------------------------------------------------
# Presence probabilities for fixed placements
# ---------------------------------------------------------------------------

def subgraph_probability(d: DegreeLike, h_graph: PatternGraph,
                         b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Probability that a fixed spanning pattern occurs as a subgraph.

    Prefactor lam^m; exponent = f-part (five named summands over the
    degree deviations) plus the edge-correlation g-part.
    """
    d = as_degrees(d)
    n = d.n
    if h_graph.vertex_count != n:
        raise ValueError("pattern must span the same vertex set as the degrees")
    stats = compute_stats(d)
    lam = stats.density
    _density_open_interval(lam, "subgraph_probability")
    pm = pattern_moments(h_graph)
    mu1, mu2, mu3 = pm.mu[1], pm.mu[2], pm.mu[3]
    hseq = h_graph.degree_sequence
    dev = [x - stats.mean_degree for x in d]
    s_dh = math.fsum(dev[j] * hseq[j] for j in range(n))
    s_dh2 = math.fsum(dev[j] * hseq[j] ** 2 for j in range(n))
    s_d2h = math.fsum(dev[j] ** 2 * hseq[j] for j in range(n))
    g_sum = math.fsum(
        (dev[u] - (1 - lam) * hseq[u]) * (dev[v] - (1 - lam) * hseq[v])
        for u, v in h_graph.edges)
    log_pref = pm.m * math.log(lam)
    terms = {
        "base_quadratic": (1 - lam) / (4 * lam) * (mu1 ** 2 + 2 * mu1 - 2 * mu2),
        "third_moment": -(1 - lam ** 2) / (6 * lam ** 2 * n) * mu3,
        "dev_linear": s_dh / (lam * n),
        "dev_square_degree": s_dh2 / (2 * lam ** 2 * n ** 2),
        "dev_quad_degree": -s_d2h / (2 * lam ** 2 * n ** 2),
        "edge_correlation": -g_sum / (lam * (1 - lam) * n ** 2),
    }
    diag = {
        "cube_deviation_ratio": stats.max_dev ** 3 * mu3 / (lam ** 3 * n ** 2),
        "error_envelope": error_envelope(n, b),
    }
    return ExponentReport(kind="subgraph_probability", log_prefactor=log_pref,
                          terms=terms, diagnostics=diag)


def tree_probability(d: DegreeLike, tree: PatternGraph,
                     trunc_exponent: float = 0.15,
                     b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Presence probability specialized to bounded-degree spanning forests.

    Valid when the pattern's maximum degree stays below n**trunc_exponent;
    a violation only warns, since the formula still evaluates.
    """
    d = as_degrees(d)
    n = d.n
    if tree.vertex_count != n:
        raise ValueError("pattern must span the same vertex set as the degrees")
    stats = compute_stats(d)
    lam = stats.density
    _density_open_interval(lam, "tree_probability")
    hseq = tree.degree_sequence
    max_deg = max(hseq) if hseq else 0
    if max_deg > n ** trunc_exponent:
        warnings.warn(
            f"pattern max degree {max_deg} exceeds n**{trunc_exponent} = "
            f"{n ** trunc_exponent:.3g}; the specialized formula degrades",
            RuntimeWarning, stacklevel=2)
    m = tree.edge_count
    dev = [x - stats.mean_degree for x in d]
    s_dh = math.fsum(dev[j] * hseq[j] for j in range(n))
    s_d2h = math.fsum(dev[j] ** 2 * hseq[j] for j in range(n))
    s_h2 = math.fsum(h * h for h in hseq)
    g_sum = math.fsum(dev[u] * dev[v] for u, v in tree.edges)
    log_pref = m * math.log(lam)
    terms = {
        "edge_mass": (1 - lam) * m * (n + m) / (lam * n ** 2),
        "dev_quad_degree": -s_d2h / (2 * lam ** 2 * n ** 2),
        "dev_linear": s_dh / (lam * n),
        "degree_square": -(1 - lam) / (2 * lam * n) * s_h2,
        "edge_correlation": -g_sum / (lam * (1 - lam) * n ** 2),
    }
    diag = {"error_envelope": error_envelope(n, b),
            "max_degree_ratio": max_deg / n ** trunc_exponent}
    return ExponentReport(kind="tree_probability", log_prefactor=log_pref,
                          terms=terms, diagnostics=diag)


def induced_probability(d: DegreeLike, hr: PatternGraph,
                        b: float = DEFAULT_ERROR_EXPONENT) -> ExponentReport:
    """Probability that vertices 0..r-1 induce exactly the given pattern.

    Uses the mixed centred sums at the identity placement; prefactor
    lam^m (1-lam)^(C(r,2)-m).
    """
    d = as_degrees(d)
    n = d.n
    r = hr.vertex_count
    if r > n:
        raise ValueError("pattern larger than the degree sequence")
    stats = compute_stats(d)
    lam = stats.density
    _density_open_interval(lam, "induced_probability")
    mm = mixed_moments(hr, d, tuple(range(n)))
    w = mm.omega_st
    ll = lam * (1 - lam)
    m = hr.edge_count
    log_pref = m * math.log(lam) + (r * (r - 1) // 2 - m) * math.log(1 - lam)
    terms = {
        "cross_quadratic": (2 * w[(1, 1)] - w[(0, 2)]) / (2 * ll * n),
        "order_squared": r ** 2 / (2 * n),
        "skew_linear": (1 - 2 * lam) * w[(0, 1)] / (2 * ll * n),
        "linear_cross": (4 * w[(1, 0)] * w[(0, 1)] - w[(0, 1)] ** 2
                         - 2 * w[(1, 0)] ** 2) / (4 * ll * n ** 2),
        "order_cross": r * (2 * w[(1, 1)] - w[(2, 0)] - w[(0, 2)]) / (2 * ll * n ** 2),
        "skew_cubic": -(1 - 2 * lam) * (w[(0, 3)] + 3 * w[(2, 1)] - 3 * w[(1, 2)])
                      / (6 * ll ** 2 * n ** 2),
    }
    diag = {"error_envelope": error_envelope(n, b)}
    return ExponentReport(kind="induced_probability", log_prefactor=log_pref,
                          terms=terms, diagnostics=diag)


def binomial_baseline(n: int, density: float, pattern: PatternGraph,
                      induced: bool = False, aut_count=None) -> ExponentReport:
    """Exact expectation in the matched independent-edge model.

    Spanning copies: n!/|Aut| * density^m.  Induced copies:
    r!/|Aut| * C(n,r) * density^m * (1-density)^(C(r,2)-m).
    """
    if not 0 < density < 1:
        raise ValueError("density must lie strictly between 0 and 1")
    if induced:
        log_pref = _induced_prefactor(n, pattern, density, aut_count)
        kind = "binomial_induced"
    else:
        if pattern.vertex_count != n:
            raise ValueError("a spanning baseline needs an n-vertex pattern")
        log_pref = (math.lgamma(n + 1) - _log_aut(pattern, aut_count)
                    + pattern.edge_count * math.log(density))
        kind = "binomial_spanning"
    return ExponentReport(kind=kind, log_prefactor=log_pref, terms={},
                          diagnostics={})
