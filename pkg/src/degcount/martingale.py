"""Certified estimates of E exp(f) for functions of discrete randomness.

For f on uniformly random permutations, the averaged swap-difference
norms

    alpha_j = (1/(n-j)) * sum_{a>j} max_w |f(w) - f(w.swap(j,a))|
    Delta_jk = (1/((n-j)(n-k))) * sum_{a>j, b>k} max_w |DD f(w)|

control the increments of the coordinate-exposure martingale of f, and
yield two computable envelopes:

    first order:   E e^f = e^{Ef} (1 + K),
                   |K| <= exp((1/8) sum alpha_j^2) - 1
    second order:  E e^f = e^{Ef + (1/2) pseudovar f} (1 + L e^{var_im/2}),
                   |L| <= exp(sum (alpha_j^3/6 + alpha_j beta_j/3
                                   + 5 alpha_j^4/8 + 5 beta_j^2/8)) - 1,
                   beta_j = sum_{k>j} alpha_k Delta_jk.

Analogous envelopes hold for functions of a uniform m-subset (m <= n/2),
of hypergeometric vectors (total >= 2m) and of multinomial vectors,
driven by single worst-case move norms alpha_max / Delta_max:

    |K| <= exp(m alpha^2 / 8) - 1
    |L| <= exp(m alpha^3/2 + m^2 alpha^2 Delta/6
               + 2 m alpha^4 + 5 m^3 alpha^2 Delta^2 / 8) - 1.

When the difference statistics are computed exhaustively these envelopes
are certified: the true E e^f of a real f provably lies in the interval.
Sampled statistics are lower bounds and the certificates they produce
are flagged non-certified.

The module also checks, by exhaustive conditional expectation at small
n, the two increment inequalities behind the permutation bounds
(conditional diameter of the next martingale value <= alpha_j, and of
the conditional squared increment <= 2 alpha_k Delta_jk), plus the
orthogonality identity that telescopes squared increments.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

_REAL_TOL = 1e-12


@dataclass(frozen=True)
class PermutationFunction:
    """A total bounded function on permutations of {0, ..., n-1}."""

    n: int
    evaluate: Callable

    def __call__(self, perm):
        return self.evaluate(perm)


def table_function(n: int, table: dict) -> PermutationFunction:
    """Wrap a dict permutation -> value as a PermutationFunction."""
    return PermutationFunction(n=n, evaluate=lambda p: table[tuple(p)])


def _swap(perm: tuple, p: int, q: int) -> tuple:
    lst = list(perm)
    lst[p], lst[q] = lst[q], lst[p]
    return tuple(lst)


@dataclass(frozen=True)
class AlphaDeltaSummary:
    """Averaged first/second difference norms of a permutation function.

    alpha[j-1] holds alpha_j for j = 1..n-1; delta maps (j, k) with
    1 <= j < k <= n-1.  exact is False for sampled (lower-bound) maxima.
    """

    n: int
    alpha: tuple
    delta: dict
    exact: bool

    def alpha_at(self, j: int) -> float:
        return self.alpha[j - 1]

    def delta_at(self, j: int, k: int) -> float:
        return self.delta[(j, k)]

    def beta(self, j: int) -> float:
        return math.fsum(self.alpha[k - 1] * self.delta[(j, k)]
                         for k in range(j + 1, self.n))

    def first_order_exponent(self) -> float:
        return math.fsum(a * a for a in self.alpha) / 8.0

    def second_order_exponent(self) -> float:
        return math.fsum(
            self.alpha[j - 1] ** 3 / 6.0
            + self.alpha[j - 1] * self.beta(j) / 3.0
            + 5.0 * self.alpha[j - 1] ** 4 / 8.0
            + 5.0 * self.beta(j) ** 2 / 8.0
            for j in range(1, self.n))


def perm_alpha_delta(f: PermutationFunction, mode: str = "exhaustive",
                     samples: int = 20000, seed: int = 0) -> AlphaDeltaSummary:
    """Difference statistics of a permutation function.

    Exhaustive mode evaluates f on all n! permutations (n <= 8) and
    returns exact maxima; sampled mode probes random permutations and
    swap pairs, returning lower bounds flagged exact=False.
    """
    n = f.n
    if mode == "exhaustive":
        if n > 8:
            raise ValueError("exhaustive mode capped at n = 8")
        return _perm_alpha_delta_exact(f)
    if mode == "sampled":
        return _perm_alpha_delta_sampled(f, samples=samples, seed=seed)
    raise ValueError(f"unknown mode {mode!r}")


def _perm_alpha_delta_exact(f: PermutationFunction) -> AlphaDeltaSummary:
    n = f.n
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    raw = [f(p) for p in perms]
    is_complex = any(isinstance(v, complex) for v in raw)
    vals = np.asarray(raw, dtype=np.complex128 if is_complex else np.float64)

    # swap_map[(p, q)][i] = index of perms[i] with positions p, q swapped
    swap_map = {}
    for p in range(n):
        for q in range(p + 1, n):
            swap_map[(p, q)] = np.fromiter(
                (index[_swap(perm, p, q)] for perm in perms),
                dtype=np.int64, count=len(perms))

    # first differences: positions are 1-based j < a in the formulas
    norm1 = {}
    for j in range(1, n):
        for a in range(j + 1, n + 1):
            diff = vals - vals[swap_map[(j - 1, a - 1)]]
            norm1[(j, a)] = float(np.max(np.abs(diff)))

    alpha = tuple(
        math.fsum(norm1[(j, a)] for a in range(j + 1, n + 1)) / (n - j)
        for j in range(1, n))

    delta = {}
    for j in range(1, n):
        d1_cache = {
            a: vals - vals[swap_map[(j - 1, a - 1)]]
            for a in range(j + 1, n + 1)
        }
        for k in range(j + 1, n):
            total = 0.0
            for a in range(j + 1, n + 1):
                d1 = d1_cache[a]
                for b in range(k + 1, n + 1):
                    dd = d1 - d1[swap_map[(k - 1, b - 1)]]
                    total += float(np.max(np.abs(dd)))
            delta[(j, k)] = total / ((n - j) * (n - k))
    return AlphaDeltaSummary(n=n, alpha=alpha, delta=delta, exact=True)


def _perm_alpha_delta_sampled(f: PermutationFunction, samples: int,
                              seed: int) -> AlphaDeltaSummary:
    n = f.n
    rng = random.Random(seed)
    norm1 = {}
    norm2 = {}
    base = list(range(n))
    for _ in range(samples):
        rng.shuffle(base)
        perm = tuple(base)
        j = rng.randrange(1, n)
        a = rng.randrange(j + 1, n + 1)
        pj = f(perm)
        pa = f(_swap(perm, j - 1, a - 1))
        norm1[(j, a)] = max(norm1.get((j, a), 0.0), abs(pj - pa))
        if n >= 3:
            k = rng.randrange(1, n)
            if k == j:
                continue
            b = rng.randrange(k + 1, n + 1)
            jj, kk = min(j, k), max(j, k)
            wa = _swap(perm, j - 1, a - 1)
            wb = _swap(perm, k - 1, b - 1)
            wab = _swap(wb, j - 1, a - 1)
            dd = abs(pj - pa - f(wb) + f(wab))
            key = (jj, kk)
            norm2[key] = max(norm2.get(key, 0.0), dd)
    alpha = tuple(
        math.fsum(norm1.get((j, a), 0.0) for a in range(j + 1, n + 1)) / (n - j)
        for j in range(1, n))
    delta = {(j, k): norm2.get((j, k), 0.0)
             for j in range(1, n) for k in range(j + 1, n)}
    return AlphaDeltaSummary(n=n, alpha=alpha, delta=delta, exact=False)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpMoments:
    """Inputs for a certificate: mean, pseudovariance, Var of the imag part."""

    mean: complex
    pseudovariance: complex = 0.0
    var_im: float = 0.0


def _as_moments(m) -> ExpMoments:
    if isinstance(m, ExpMoments):
        return m
    if hasattr(m, "mean") and hasattr(m, "pseudovariance"):
        return ExpMoments(mean=m.mean, pseudovariance=m.pseudovariance,
                          var_im=float(m.var_im))
    mean, pseudo, var_im = m
    return ExpMoments(mean=mean, pseudovariance=pseudo, var_im=float(var_im))


@dataclass(frozen=True)
class BoundCertificate:
    """A certified enclosure  E e^f = exp(center_log) * (1 + err),  |err| <= envelope.

    For real f and an exhaustively computed summary the enclosure is a
    theorem; `certified` is False when the summary was sampled.
    """

    order: int
    center_log: complex
    envelope: float
    certified: bool

    @property
    def center(self) -> complex:
        return cmath.exp(self.center_log)

    def is_real(self) -> bool:
        return abs(complex(self.center_log).imag) <= _REAL_TOL

    def interval(self) -> tuple:
        """Certified interval for E e^f; real f and exact summary only."""
        if not self.certified:
            raise ValueError("summary was sampled; no certified interval")
        if not self.is_real():
            raise ValueError("interval defined only for real-valued f")
        c = complex(self.center).real
        return (c * (1.0 - self.envelope), c * (1.0 + self.envelope))

    def contains(self, value: float, rel_tol: float = 1e-9) -> bool:
        lo, hi = self.interval()
        slack = rel_tol * max(1.0, abs(lo), abs(hi))
        return lo - slack <= value <= hi + slack


def perm_expectation_bound(summary: AlphaDeltaSummary, moments,
                           order: int = 2) -> BoundCertificate:
    """Certificate for E e^f from permutation difference statistics."""
    mom = _as_moments(moments)
    if order == 1:
        env = math.expm1(summary.first_order_exponent())
        return BoundCertificate(order=1, center_log=mom.mean, envelope=env,
                                certified=summary.exact)
    if order == 2:
        base = math.expm1(summary.second_order_exponent())
        env = base * math.exp(0.5 * mom.var_im)
        centre = mom.mean + 0.5 * mom.pseudovariance
        return BoundCertificate(order=2, center_log=centre, envelope=env,
                                certified=summary.exact)
    raise ValueError("order must be 1 or 2")


# ---------------------------------------------------------------------------
# Subsets and nonnegative integer vectors with fixed sum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MoveSummary:
    """Worst-case single-move and double-move difference norms."""

    alpha_max: float
    delta_max: float
    exact: bool


def subset_alpha_delta(f: Callable, n: int, m: int, mode: str = "exhaustive",
                       samples: int = 20000, seed: int = 0) -> MoveSummary:
    """Move norms for f on m-subsets of {0, ..., n-1}.

    Moves exchange one member j of the subset with one non-member a;
    double moves use distinct j, k inside and distinct a, b outside.
    """
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    if mode == "exhaustive":
        cache = {}

        def fv(s):
            if s not in cache:
                cache[s] = f(s)
            return cache[s]

        amax = 0.0
        dmax = 0.0
        for comb in itertools.combinations(range(n), m):
            a_set = frozenset(comb)
            out = [x for x in range(n) if x not in a_set]
            base = fv(a_set)
            for j in comb:
                for a in out:
                    one = fv(a_set ^ {j, a})
                    amax = max(amax, abs(base - one))
            for j, k in itertools.combinations(comb, 2):
                for a, b in itertools.permutations(out, 2):
                    dd = (base - fv(a_set ^ {j, a}) - fv(a_set ^ {k, b})
                          + fv(a_set ^ {j, a} ^ {k, b}))
                    dmax = max(dmax, abs(dd))
        return MoveSummary(alpha_max=amax, delta_max=dmax, exact=True)
    if mode == "sampled":
        rng = random.Random(seed)
        amax = 0.0
        dmax = 0.0
        pool = list(range(n))
        for _ in range(samples):
            comb = rng.sample(pool, m)
            a_set = frozenset(comb)
            out = [x for x in pool if x not in a_set]
            if not out or not comb:
                break
            j = rng.choice(comb)
            a = rng.choice(out)
            base = f(a_set)
            amax = max(amax, abs(base - f(a_set ^ {j, a})))
            if len(comb) >= 2 and len(out) >= 2:
                k = rng.choice([x for x in comb if x != j])
                b = rng.choice([x for x in out if x != a])
                dd = (base - f(a_set ^ {j, a}) - f(a_set ^ {k, b})
                      + f(a_set ^ {j, a} ^ {k, b}))
                dmax = max(dmax, abs(dd))
        return MoveSummary(alpha_max=amax, delta_max=dmax, exact=False)
    raise ValueError(f"unknown mode {mode!r}")


def compositions(total: int, parts: int) -> Iterable[tuple]:
    """All nonnegative integer vectors of given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def vector_alpha_delta(f: Callable, ell: int, m: int,
                       mode: str = "exhaustive") -> MoveSummary:
    """Move norms for f on nonnegative integer vectors with fixed sum m.

    A move shifts one unit from coordinate a to coordinate j (x_a > 0);
    double moves use four distinct coordinates.  With fewer than four
    coordinates no admissible double move exists and delta_max is 0.
    """
    if mode != "exhaustive":
        raise ValueError("vector move norms are computed exhaustively")
    amax = 0.0
    dmax = 0.0

    def moved(x, j, a):
        lst = list(x)
        lst[j] += 1
        lst[a] -= 1
        return tuple(lst)

    for x in compositions(m, ell):
        base = f(x)
        for a in range(ell):
            if x[a] == 0:
                continue
            for j in range(ell):
                if j == a:
                    continue
                amax = max(amax, abs(base - f(moved(x, j, a))))
        for j, k, a, b in itertools.permutations(range(ell), 4):
            if x[a] == 0 or x[b] == 0:
                continue
            xa = moved(x, j, a)
            xb = moved(x, k, b)
            xab = moved(xa, k, b)
            dd = abs(base - f(xa) - f(xb) + f(xab))
            dmax = max(dmax, dd)
    return MoveSummary(alpha_max=amax, delta_max=dmax, exact=True)


@dataclass(frozen=True)
class DiscreteDistribution:
    """A supported distribution over subsets or fixed-sum integer vectors."""

    kind: str          # "subset" | "hypergeometric" | "multinomial"
    m: int
    n: int = 0                      # subset ground-set size
    sizes: tuple = ()               # hypergeometric class sizes
    probs: tuple = ()               # multinomial cell probabilities

    def __post_init__(self):
        if self.kind == "subset":
            if self.m * 2 > self.n:
                raise ValueError("subset bound needs m <= n/2")
        elif self.kind == "hypergeometric":
            if sum(self.sizes) < 2 * self.m:
                raise ValueError("hypergeometric bound needs total >= 2m")
            if any(s < 0 for s in self.sizes):
                raise ValueError("class sizes must be nonnegative")
        elif self.kind == "multinomial":
            if any(p <= 0 for p in self.probs):
                raise ValueError("cell probabilities must be positive")
        else:
            raise ValueError(f"unknown distribution kind {self.kind!r}")

    @property
    def ell(self) -> int:
        if self.kind == "hypergeometric":
            return len(self.sizes)
        if self.kind == "multinomial":
            return len(self.probs)
        raise ValueError("vector length undefined for subsets")

    def support(self):
        """Pairs (point, weight); weights are exact where possible."""
        if self.kind == "subset":
            total = math.comb(self.n, self.m)
            w = Fraction(1, total)
            for comb in itertools.combinations(range(self.n), self.m):
                yield frozenset(comb), w
        elif self.kind == "hypergeometric":
            total = math.comb(sum(self.sizes), self.m)
            for x in compositions(self.m, self.ell):
                num = 1
                ok = True
                for s, xi in zip(self.sizes, x):
                    if xi > s:
                        ok = False
                        break
                    num *= math.comb(s, xi)
                if ok and num:
                    yield x, Fraction(num, total)
        else:
            exact = all(isinstance(p, (int, Fraction)) for p in self.probs)
            fact_m = math.factorial(self.m)
            for x in compositions(self.m, self.ell):
                coef = fact_m
                for xi in x:
                    coef //= math.factorial(xi)
                if exact:
                    w = Fraction(coef)
                    for p, xi in zip(self.probs, x):
                        w *= Fraction(p) ** xi
                else:
                    w = float(coef)
                    for p, xi in zip(self.probs, x):
                        w *= float(p) ** xi
                yield x, w


def subset_distribution(n: int, m: int) -> DiscreteDistribution:
    return DiscreteDistribution(kind="subset", m=m, n=n)


def hypergeometric_distribution(sizes: Sequence[int], m: int) -> DiscreteDistribution:
    return DiscreteDistribution(kind="hypergeometric", m=m, sizes=tuple(sizes))


def multinomial_distribution(probs: Sequence, m: int) -> DiscreteDistribution:
    return DiscreteDistribution(kind="multinomial", m=m, probs=tuple(probs))


def distribution_moments(dist: DiscreteDistribution, f: Callable) -> ExpMoments:
    """Exact (or compensated-float) moments of f under the distribution."""
    pts = list(dist.support())
    vals = [complex(f(x)) for x, _ in pts]
    ws = [float(w) for _, w in pts]
    mean_re = math.fsum(w * v.real for w, v in zip(ws, vals))
    mean_im = math.fsum(w * v.imag for w, v in zip(ws, vals))
    mean = complex(mean_re, mean_im)
    pseudo = sum(w * (v - mean) ** 2 for w, v in zip(ws, vals))
    var_im = math.fsum(w * (v.imag - mean_im) ** 2 for w, v in zip(ws, vals))
    if abs(mean.imag) <= _REAL_TOL and abs(pseudo.imag) <= _REAL_TOL:
        return ExpMoments(mean=mean.real, pseudovariance=pseudo.real, var_im=var_im)
    return ExpMoments(mean=mean, pseudovariance=pseudo, var_im=var_im)


def distribution_exp_mean(dist: DiscreteDistribution, f: Callable):
    """Brute-force E e^f over the support."""
    pts = list(dist.support())
    vals = [f(x) for x, _ in pts]
    if any(isinstance(v, complex) for v in vals):
        return sum(float(w) * cmath.exp(complex(v)) for (_, w), v in zip(pts, vals))
    return math.fsum(float(w) * math.exp(float(v)) for (_, w), v in zip(pts, vals))


def discrete_expectation_bound(dist: DiscreteDistribution, f: Callable,
                               order: int = 2, moments=None,
                               summary: MoveSummary | None = None) -> BoundCertificate:
    """Certificate for E e^f on a subset / hypergeometric / multinomial domain."""
    if summary is None:
        if dist.kind == "subset":
            summary = subset_alpha_delta(f, dist.n, dist.m)
        else:
            summary = vector_alpha_delta(f, dist.ell, dist.m)
    mom = _as_moments(moments) if moments is not None else distribution_moments(dist, f)
    m = dist.m
    a, dd = summary.alpha_max, summary.delta_max
    if order == 1:
        env = math.expm1(m * a * a / 8.0)
        return BoundCertificate(order=1, center_log=mom.mean, envelope=env,
                                certified=summary.exact)
    if order == 2:
        ex = (0.5 * m * a ** 3 + m ** 2 * a ** 2 * dd / 6.0
              + 2.0 * m * a ** 4 + 5.0 * m ** 3 * a ** 2 * dd ** 2 / 8.0)
        env = math.expm1(ex) * math.exp(0.5 * mom.var_im)
        centre = mom.mean + 0.5 * mom.pseudovariance
        return BoundCertificate(order=2, center_log=centre, envelope=env,
                                certified=summary.exact)
    raise ValueError("order must be 1 or 2")


# ---------------------------------------------------------------------------
# Exact Doob martingale diagnostics (small n)
# ---------------------------------------------------------------------------

class DoobTable:
    """Conditional means of f on S_n given the first j coordinates (n <= 7)."""

    def __init__(self, f: PermutationFunction):
        n = f.n
        if n > 7:
            raise ValueError("exhaustive Doob tables capped at n = 7")
        self.n = n
        self.perms = list(itertools.permutations(range(n)))
        raw = [f(p) for p in self.perms]
        self.is_complex = any(isinstance(v, complex) for v in raw)
        self.vals = [complex(v) if self.is_complex else float(v) for v in raw]
        self.val_by_perm = dict(zip(self.perms, self.vals))
        self.levels = []
        for k in range(n + 1):
            sums: dict = {}
            counts: dict = {}
            for p, v in zip(self.perms, self.vals):
                key = p[:k]
                sums[key] = sums.get(key, 0) + v
                counts[key] = counts.get(key, 0) + 1
            self.levels.append({key: sums[key] / counts[key] for key in sums})

    def z(self, prefix: tuple):
        return self.levels[len(prefix)][tuple(prefix)]

    def extensions(self, prefix: tuple):
        k = len(prefix)
        pre = tuple(prefix)
        return [p for p in self.perms if p[:k] == pre]

    def increment(self, perm: tuple, k: int):
        """Z_k - Z_{k-1} along a sample path."""
        return self.z(perm[:k]) - self.z(perm[:k - 1])


def _diam(values, angles: int = 360) -> float:
    """Diameter of a finite set of reals or complex numbers.

    Real values: max - min.  Complex values: supremum over rotation
    angles of the range of the rotated real part, discretized over
    `angles` directions (a lower bound on the true diameter).
    """
    vals = [complex(v) for v in values]
    if all(abs(v.imag) <= _REAL_TOL for v in vals):
        reals = [v.real for v in vals]
        return max(reals) - min(reals)
    best = 0.0
    for t in range(angles):
        theta = math.pi * t / angles
        proj = [(v * cmath.exp(complex(0.0, -theta))).real for v in vals]
        best = max(best, max(proj) - min(proj))
    return best


def telescope_check(f: PermutationFunction, j: int, prefix: tuple | None = None,
                    seed: int = 0):
    """Both sides of the squared-increment telescoping identity at level j.

    Returns (lhs, rhs) with lhs = E_j (Z_n - Z_j)^2 and
    rhs = sum_{k>j} E_j (Z_k - Z_{k-1})^2, conditioned on a prefix of
    length j (sampled with `seed` when not supplied).
    """
    n = f.n
    if not 0 <= j <= n:
        raise ValueError("level j must lie in 0..n")
    table = DoobTable(f)
    if prefix is None:
        rng = random.Random(seed)
        prefix = tuple(rng.sample(range(n), j))
    prefix = tuple(prefix)
    if len(prefix) != j or len(set(prefix)) != j:
        raise ValueError("prefix must have j distinct entries")
    exts = table.extensions(prefix)
    zj = table.z(prefix)
    lhs = sum((table.val_by_perm[p] - zj) ** 2 for p in exts) / len(exts)
    rhs = 0.0
    for k in range(j + 1, n + 1):
        rhs += sum(table.increment(p, k) ** 2 for p in exts) / len(exts)
    return lhs, rhs


@dataclass(frozen=True)
class IncrementCheckRecord:
    kind: str      # "alpha" | "delta"
    j: int
    k: int | None
    diameter: float
    bound: float

    @property
    def slack(self) -> float:
        return self.bound - self.diameter


@dataclass(frozen=True)
class IncrementCheckReport:
    n: int
    records: list
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma_perm_check(f: PermutationFunction, tol: float = 1e-9) -> IncrementCheckReport:
    """Exhaustively verify the martingale increment inequalities for f.

    For every 1 <= j <= n-1 the conditional diameter of Z_j given the
    first j-1 coordinates must be at most alpha_j, and for j < k <= n-1
    the conditional diameter of E_j (Z_k - Z_{k-1})^2 must be at most
    2 alpha_k Delta_jk.  Exact enumeration; small n only.
    """
    n = f.n
    if n > 6:
        raise ValueError("exhaustive increment checks capped at n = 6")
    table = DoobTable(f)
    summary = _perm_alpha_delta_exact(f)
    records = []
    violations = []

    prefixes_by_level = [sorted({p[:k] for p in table.perms}) for k in range(n + 1)]

    for j in range(1, n):
        worst = 0.0
        for pre in prefixes_by_level[j - 1]:
            nxt = [table.z(pre + (x,)) for x in range(n) if x not in pre]
            worst = max(worst, _diam(nxt))
        rec = IncrementCheckRecord(kind="alpha", j=j, k=None, diameter=worst,
                                   bound=summary.alpha_at(j))
        records.append(rec)
        if rec.diameter > rec.bound + tol * max(1.0, rec.bound):
            violations.append(rec)

    # conditional mean of (Z_k - Z_{k-1})^2 given the first j coordinates
    for k in range(2, n):
        sq = {}
        cnt = {}
        for p in table.perms:
            inc = table.increment(p, k) ** 2
            for j in range(1, k):
                key = p[:j]
                sq[key] = sq.get(key, 0) + inc
                cnt[key] = cnt.get(key, 0) + 1
        cond = {key: sq[key] / cnt[key] for key in sq}
        for j in range(1, k):
            worst = 0.0
            for pre in prefixes_by_level[j - 1]:
                nxt = [cond[pre + (x,)] for x in range(n) if x not in pre]
                worst = max(worst, _diam(nxt))
            bound = 2.0 * summary.alpha_at(k) * summary.delta_at(j, k)
            rec = IncrementCheckRecord(kind="delta", j=j, k=k, diameter=worst,
                                       bound=bound)
            records.append(rec)
            if rec.diameter > rec.bound + tol * max(1.0, rec.bound):
                violations.append(rec)

    return IncrementCheckReport(n=n, records=records, violations=violations)
