"""Randomized verification suites and formula-vs-oracle comparisons.

Three soundness suites back the library's guarantees:

* certificate soundness: for seeded random real functions on
  permutations, subsets, hypergeometric and multinomial supports, the
  brute-force E e^f must lie inside every certified interval (both
  orders).  These are theorems; the suites tolerate zero violations.

* exact moment identities: the closed-form permutation moments equal
  full enumeration exactly for rational weights, and the second-order
  remainder of log E e^Psi obeys its quartic bound.

* increment inequalities: exact conditional diameters of the
  coordinate-exposure martingale respect their difference-statistic
  bounds.

The comparison helpers evaluate an asymptotic formula and an exact (or
Monte Carlo) oracle on the same instance and report the log ratio.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import asymptotic, martingale, moments, oracle, patterns, trees
from .graphs import DegreeLike, PatternGraph, as_degrees, compute_stats
from .martingale import (DiscreteDistribution, PermutationFunction,
                         discrete_expectation_bound, distribution_exp_mean,
                         distribution_moments, hypergeometric_distribution,
                         lemma_perm_check, multinomial_distribution,
                         perm_alpha_delta, perm_expectation_bound,
                         subset_distribution)
from .moments import WeightPair, brute_force_moments


@dataclass
class SuiteReport:
    """Outcome of a randomized verification suite."""

    name: str
    trials: int = 0
    checks: int = 0
    seed: int = 0
    violations: list = field(default_factory=list)
    records: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "checks": self.checks,
            "seed": self.seed,
            "ok": self.ok,
            "violations": [str(v) for v in self.violations],
            "records": {k: v for k, v in self.records.items()},
        }


# ---------------------------------------------------------------------------
# Certificate soundness
# ---------------------------------------------------------------------------

def _random_perm_function(rng: random.Random, n: int) -> PermutationFunction:
    style = rng.choice(("table", "linear", "mixed"))
    scale = rng.choice((0.05, 0.15, 0.4))
    if style == "table":
        import itertools
        table = {p: rng.uniform(-scale, scale)
                 for p in itertools.permutations(range(n))}
        return PermutationFunction(n=n, evaluate=lambda p: table[tuple(p)])
    u = [rng.uniform(-scale, scale) for _ in range(n)]
    v = [rng.uniform(-1.0, 1.0) for _ in range(n)]
    if style == "linear":
        return PermutationFunction(
            n=n, evaluate=lambda p: sum(u[j] * v[p[j]] for j in range(n)))
    w = [rng.uniform(-scale, scale) for _ in range(n)]
    j0, k0 = rng.sample(range(n), 2)

    def f(p):
        lin = sum(u[j] * v[p[j]] for j in range(n))
        quad = (w[p[j0]] + u[j0]) * (w[p[k0]] + u[k0])
        return lin + quad

    return PermutationFunction(n=n, evaluate=f)


def _check_perm_certificates(pf: PermutationFunction, violations: list,
                             label: str) -> dict:
    bf = brute_force_moments(pf.evaluate, pf.n)
    summary = perm_alpha_delta(pf)
    exp_mean = float(bf.exp_mean)
    widths = {}
    for order in (1, 2):
        cert = perm_expectation_bound(summary, bf, order=order)
        lo, hi = cert.interval()
        widths[order] = hi - lo
        if not cert.contains(exp_mean):
            violations.append(
                f"{label}: order-{order} interval [{lo}, {hi}] misses {exp_mean}")
    return widths


def _check_discrete_certificates(dist: DiscreteDistribution, f: Callable,
                                 violations: list, label: str) -> None:
    exp_mean = float(distribution_exp_mean(dist, f))
    mom = distribution_moments(dist, f)
    for order in (1, 2):
        cert = discrete_expectation_bound(dist, f, order=order, moments=mom)
        lo, hi = cert.interval()
        if not cert.contains(exp_mean):
            violations.append(
                f"{label}: order-{order} interval [{lo}, {hi}] misses {exp_mean}")


def martingale_soundness_suite(trials: int = 200, seed: int = 0) -> SuiteReport:
    """Certificate soundness across all supported domains, zero tolerance.

    Also tallies how often the order-2 interval is strictly narrower
    than order-1 on small linear permutation statistics (recorded as
    `sharper_fraction`).
    """
    rng = random.Random(seed)
    report = SuiteReport(name="certificate_soundness", seed=seed)
    violations = report.violations

    n_perm = max(1, (trials * 3) // 5)
    n_subset = max(1, trials // 5)
    n_vector = trials - n_perm - n_subset

    for t in range(n_perm):
        n = rng.choice((4, 5, 6))
        pf = _random_perm_function(rng, n)
        _check_perm_certificates(pf, violations, f"perm[{t}] n={n}")
        report.trials += 1
        report.checks += 2

    for t in range(n_subset):
        n, m = rng.choice(((4, 2), (6, 3), (7, 3), (8, 4)))
        scale = rng.choice((0.05, 0.2, 0.5))
        w = [rng.uniform(-scale, scale) for _ in range(n)]
        style = rng.choice(("additive", "pair", "table"))
        if style == "additive":
            f = lambda s, w=w: sum(w[x] for x in s)
        elif style == "pair":
            special = frozenset(rng.sample(range(n), 2))
            f = (lambda s, w=w, sp=special:
                 sum(w[x] for x in s) + scale * len(s & sp) ** 2)
        else:
            import itertools
            table = {frozenset(c): rng.uniform(-scale, scale)
                     for c in itertools.combinations(range(n), m)}
            f = lambda s, tbl=table: tbl[frozenset(s)]
        dist = subset_distribution(n, m)
        _check_discrete_certificates(dist, f, violations, f"subset[{t}] n={n} m={m}")
        report.trials += 1
        report.checks += 2

    for t in range(n_vector):
        kind = rng.choice(("hypergeometric", "multinomial"))
        ell = rng.choice((4, 5))
        m = rng.choice((2, 3, 4))
        scale = rng.choice((0.05, 0.2, 0.5))
        coef = [rng.uniform(-scale, scale) for _ in range(ell)]
        quad = rng.uniform(-scale, scale)

        def f(x, c=coef, q=quad):
            return sum(ci * xi for ci, xi in zip(c, x)) + q * x[0] * x[-1]

        if kind == "hypergeometric":
            sizes = [rng.randint(1, 3) for _ in range(ell)]
            while sum(sizes) < 2 * m:
                sizes[rng.randrange(ell)] += 1
            dist = hypergeometric_distribution(sizes, m)
        else:
            raw = [rng.randint(1, 4) for _ in range(ell)]
            tot = sum(raw)
            dist = multinomial_distribution([Fraction(x, tot) for x in raw], m)
        _check_discrete_certificates(dist, f, violations,
                                     f"{kind}[{t}] ell={ell} m={m}")
        report.trials += 1
        report.checks += 2

    # order-2 vs order-1 sharpness on small linear statistics
    sharper = 0
    sharp_trials = 50
    for t in range(sharp_trials):
        n = rng.choice((4, 5))
        tt = rng.uniform(0.01, 0.1)
        u = [rng.uniform(-1, 1) for _ in range(n)]
        v = [rng.uniform(-1, 1) for _ in range(n)]
        pf = PermutationFunction(
            n=n, evaluate=lambda p: tt * sum(u[j] * v[p[j]] for j in range(n)))
        widths = _check_perm_certificates(pf, violations, f"sharp[{t}]")
        report.trials += 1
        report.checks += 2
        if widths[2] < widths[1]:
            sharper += 1
    report.records["sharper_fraction"] = sharper / sharp_trials
    return report


def psi_remainder_suite(trials: int = 60, seed: int = 1) -> SuiteReport:
    """Second-order remainder bound for linear permutation statistics.

    |log E e^Psi - mean - var/2| <= 1.5 n alpha^3 + 11 n alpha^4 where
    alpha is the u-range times the v-range.  Zero tolerance.
    """
    rng = random.Random(seed)
    report = SuiteReport(name="psi_remainder", seed=seed)
    for t in range(trials):
        n = rng.choice((3, 4, 5, 6, 7))
        den = rng.choice((4, 8, 16))
        span = rng.choice((1, 2, 4))
        u = [Fraction(rng.randint(-span, span), den) for _ in range(n)]
        v = [Fraction(rng.randint(-span, span), den) for _ in range(n)]
        w = WeightPair(u, v)
        bf = brute_force_moments(w.psi(), n)
        mean, var = moments.psi_mean_var(w)
        remainder = math.log(float(bf.exp_mean)) - float(mean) - float(var) / 2.0
        alpha = w.alpha
        bound = 1.5 * n * alpha ** 3 + 11.0 * n * alpha ** 4
        report.trials += 1
        report.checks += 1
        report.records.setdefault("max_ratio", 0.0)
        if bound > 0:
            report.records["max_ratio"] = max(report.records["max_ratio"],
                                              abs(remainder) / bound)
        if abs(remainder) > bound + 1e-12:
            report.violations.append(
                f"psi[{t}] n={n}: |remainder| {abs(remainder)} > bound {bound}")
    return report


def moment_identity_suite(trials: int = 100, seed: int = 2) -> SuiteReport:
    """Closed-form permutation moments vs full enumeration, exact.

    Rational weights make every comparison an equality of big rationals
    (mean, variance, covariance, product-statistic mean).
    """
    rng = random.Random(seed)
    report = SuiteReport(name="moment_identities", seed=seed)
    for t in range(trials):
        n = rng.choice((2, 3, 4, 5, 6, 7))
        den = rng.choice((2, 3, 5))
        u = [Fraction(rng.randint(-4, 4), den) for _ in range(n)]
        v = [Fraction(rng.randint(-4, 4), den) for _ in range(n)]
        u2 = [Fraction(rng.randint(-4, 4), den) for _ in range(n)]
        v2 = [Fraction(rng.randint(-4, 4), den) for _ in range(n)]
        w = WeightPair(u, v)
        w2 = WeightPair(u2, v2)
        bf = brute_force_moments(w.psi(), n, g=w2.psi())
        mean, var = moments.psi_mean_var(w)
        cov = moments.psi_cov(w, w2)
        checks = [
            ("mean", mean, bf.mean),
            ("variance", var, bf.variance),
            ("covariance", cov, bf.cov),
        ]
        if n >= 2:
            j, k = rng.sample(range(n), 2)
            bfe = brute_force_moments(w.ejk(j, k), n)
            checks.append((f"ejk({j},{k})", moments.ejk_mean(w, j, k), bfe.mean))
        for label, closed, brute in checks:
            report.checks += 1
            if Fraction(closed) != Fraction(brute):
                report.violations.append(
                    f"identity[{t}] n={n} {label}: closed {closed} != brute {brute}")
        report.trials += 1
    return report


def increment_inequality_suite(trials: int = 50, seed: int = 3,
                               sizes: Sequence[int] = (3, 4, 5)) -> SuiteReport:
    """Exact conditional-diameter inequalities for random functions."""
    rng = random.Random(seed)
    report = SuiteReport(name="increment_inequalities", seed=seed)
    min_slack = math.inf
    for t in range(trials):
        n = rng.choice(tuple(sizes))
        pf = _random_perm_function(rng, n)
        res = lemma_perm_check(pf)
        report.trials += 1
        report.checks += len(res.records)
        for rec in res.records:
            min_slack = min(min_slack, rec.slack)
        for rec in res.violations:
            report.violations.append(
                f"increments[{t}] n={n} {rec.kind} j={rec.j} k={rec.k}: "
                f"diam {rec.diameter} > bound {rec.bound}")
    report.records["min_slack"] = min_slack
    return report


# ---------------------------------------------------------------------------
# Formula vs oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonRow:
    """One formula-vs-ground-truth comparison."""

    kind: str
    n: int
    method: str
    log_formula: float
    exact_value: float
    log_ratio: float
    formula_report: asymptotic.ExponentReport
    exact_rational: Fraction | None = None
    stderr: float | None = None

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "n": self.n,
            "method": self.method,
            "log_formula": self.log_formula,
            "formula_value": self.formula_report.value,
            "exact_value": self.exact_value,
            "log_ratio": self.log_ratio,
        }
        if self.exact_rational is not None:
            out["exact_rational"] = (f"{self.exact_rational.numerator}"
                                     f"/{self.exact_rational.denominator}")
        if self.stderr is not None:
            out["stderr"] = self.stderr
        out["diagnostics"] = dict(self.formula_report.diagnostics)
        return out


def _is_regular(d) -> bool:
    return len(set(as_degrees(d))) == 1


def _exact_copies(d, pattern: PatternGraph, induced: bool, method: str,
                  budget=None):
    if method == "dp":
        return oracle.expected_copies_exact(d, pattern, induced=induced)
    return oracle.exact_expected_copies(d, pattern, induced=induced,
                                        budget=budget)


def compare_subgraph(d: DegreeLike, pattern: PatternGraph,
                     method: str = "auto", budget=None,
                     formula: str = "general",
                     factor_degree: int | None = None) -> ComparisonRow:
    """Spanning-copy formula vs exact expectation.

    formula="general" uses the full spanning-copy exponent;
    formula="factor" uses the h-regular specialization (the natural
    route for regular patterns such as matchings and Hamilton cycles).
    """
    d = as_degrees(d)
    if formula == "factor":
        if factor_degree is None:
            factor_degree = pattern.degree_sequence[0]
        rep = asymptotic.expected_regular_factor(d, pattern, factor_degree)
    else:
        rep = asymptotic.expected_subgraph_count(d, pattern)
    if method == "auto":
        method = "dp" if _is_regular(d) else "enumerate"
    res = _exact_copies(d, pattern, False, method, budget)
    exact = res.expectation
    return ComparisonRow(kind=f"subgraph/{formula}", n=d.n, method=method,
                         log_formula=rep.log_value, exact_value=float(exact),
                         log_ratio=rep.log_value - math.log(float(exact)),
                         formula_report=rep, exact_rational=exact)


def compare_induced(d: DegreeLike, pattern: PatternGraph,
                    method: str = "auto", budget=None) -> ComparisonRow:
    d = as_degrees(d)
    rep = asymptotic.expected_induced_count(d, pattern)
    if method == "auto":
        method = "dp" if (_is_regular(d) and pattern.vertex_count <= 5) \
            else "enumerate"
    res = _exact_copies(d, pattern, True, method, budget)
    exact = res.expectation
    return ComparisonRow(kind="induced", n=d.n, method=method,
                         log_formula=rep.log_value, exact_value=float(exact),
                         log_ratio=rep.log_value - math.log(float(exact)),
                         formula_report=rep, exact_rational=exact)


def compare_spanning_trees(d: DegreeLike, method: str = "auto",
                           budget=None) -> ComparisonRow:
    d = as_degrees(d)
    rep = asymptotic.expected_spanning_trees(d)
    if method == "auto":
        method = "dp" if (_is_regular(d) and d.n >= 9) else "enumerate"
    if method == "dp":
        res = oracle.expected_spanning_trees_exact(d)
    else:
        res = oracle.exact_expected_spanning_trees(d, budget=budget)
    exact = res.expectation
    return ComparisonRow(kind="spanning_trees", n=d.n, method=method,
                         log_formula=rep.log_value, exact_value=float(exact),
                         log_ratio=rep.log_value - math.log(float(exact)),
                         formula_report=rep, exact_rational=exact)


def compare_mcmc(d: DegreeLike, pattern: PatternGraph, induced: bool = False,
                 samples: int = 100, steps: int = 20000,
                 seed: int = 0) -> ComparisonRow:
    """Induced/spanning copy formula vs a switch-chain Monte Carlo mean."""
    d = as_degrees(d)
    if induced:
        rep = asymptotic.expected_induced_count(d, pattern)
        kind = "induced/mcmc"
    else:
        rep = asymptotic.expected_subgraph_count(d, pattern)
        kind = "subgraph/mcmc"
    est = oracle.mc_expected_copies(d, pattern, induced=induced,
                                    samples=samples, steps=steps, seed=seed)
    return ComparisonRow(kind=kind, n=d.n, method="mcmc",
                         log_formula=rep.log_value, exact_value=est.estimate,
                         log_ratio=rep.log_value - math.log(est.estimate),
                         formula_report=rep, stderr=est.stderr)


@dataclass(frozen=True)
class GridCell:
    """One grid point of the convergence suite."""

    family: str
    n: int
    degree: int
    method: str
    exact: Fraction
    log_ratio: float            # primary formula route for this family
    log_ratio_general: float | None = None

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "n": self.n,
            "degree": self.degree,
            "method": self.method,
            "exact_value": float(self.exact),
            "log_ratio": self.log_ratio,
        }
        if self.log_ratio_general is not None:
            out["log_ratio_general"] = self.log_ratio_general
        return out


def convergence_suite(grid: Sequence[tuple] = ((6, 3), (8, 4), (10, 5)),
                      budget=None) -> dict:
    """Formula-vs-exact log ratios along a regular-degree grid.

    Families: perfect matching and Hamilton cycle through the h-regular
    factor formula (their natural route; the general-formula ratio is
    recorded alongside), triangle plus isolated vertices through the
    general formula, and spanning trees.  Exact side: full enumeration
    while the realization set is small, exact counting beyond.
    """
    rows: dict = {"matching": [], "hamcycle": [], "triangle": [],
                  "spanning_trees": []}
    for n, deg in grid:
        d = as_degrees([deg] * n)
        enumerable = oracle.count_graphs_with_degrees(tuple(d)) <= 100_000
        families = {
            "matching": (patterns.perfect_matching(n), 1),
            "hamcycle": (patterns.cycle_pattern(n), 2),
            "triangle": (patterns.pad_isolated(patterns.complete_pattern(3), n),
                         None),
        }
        for family, (pattern, hdeg) in families.items():
            heavy = family == "hamcycle" and n >= 8
            method = "enumerate" if (enumerable and not heavy) else "dp"
            exact = _exact_copies(d, pattern, False, method, budget).expectation
            log_exact = math.log(float(exact))
            general = asymptotic.expected_subgraph_count(d, pattern)
            ratio_general = general.log_value - log_exact
            if hdeg is not None:
                factor = asymptotic.expected_regular_factor(d, pattern, hdeg)
                primary = factor.log_value - log_exact
            else:
                primary = ratio_general
            rows[family].append(GridCell(
                family=family, n=n, degree=deg, method=method, exact=exact,
                log_ratio=primary, log_ratio_general=ratio_general))
        method = "enumerate" if enumerable else "dp"
        if method == "enumerate":
            tres = oracle.exact_expected_spanning_trees(d, budget=budget)
        else:
            tres = oracle.expected_spanning_trees_exact(d)
        rep = asymptotic.expected_spanning_trees(d)
        rows["spanning_trees"].append(GridCell(
            family="spanning_trees", n=n, degree=deg, method=method,
            exact=tres.expectation,
            log_ratio=rep.log_value - math.log(float(tres.expectation))))
    return rows
