"""Exact permutation-moment identities against full enumeration."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from degcount.graphs import PatternGraph
from degcount.moments import (WeightPair, brute_force_moments, ejk_cov_bounds,
                              ejk_mean, ejk_psi_cov, induced_exponent_moments,
                              make_induced_exponent, make_subgraph_exponent,
                              psi_cov, psi_mean_var, subgraph_exponent_moments)
from degcount.patterns import (complete_pattern, cycle_pattern, empty_pattern,
                               pad_isolated, path_pattern, perfect_matching)


def test_psi_mean_var_example():
    w = WeightPair((1, 2, 3), (1, 2, 3))
    mean, var = psi_mean_var(w)
    assert mean == 12
    assert var == 2
    vals = sorted(w.psi()(p) for p in itertools.permutations(range(3)))
    assert vals == [10, 11, 11, 13, 13, 14]


def test_psi_constant_u_zero_variance():
    w = WeightPair((5, 5, 5, 5), (1, 7, 2, 4))
    _, var = psi_mean_var(w)
    assert var == 0


def test_psi_swap_symmetry():
    w = WeightPair((1, 4, 2), (0, 3, 5))
    ws = WeightPair((0, 3, 5), (1, 4, 2))
    assert psi_mean_var(w) == psi_mean_var(ws)


def test_psi_cov_self_is_variance():
    w = WeightPair((1, 3, 0, 2), (2, 2, 5, 1))
    _, var = psi_mean_var(w)
    assert psi_cov(w, w) == var


def test_psi_cov_orthogonal_zero():
    w = WeightPair((1, -1, 0), (3, 1, 2))
    w2 = WeightPair((1, 1, -2), (3, 1, 2))  # centred u's orthogonal
    assert psi_cov(w, w2) == 0


def test_psi_cov_matches_brute(rng):
    for _ in range(10):
        n = 5
        w = WeightPair(tuple(Fraction(rng.randint(-3, 3), 2) for _ in range(n)),
                       tuple(Fraction(rng.randint(-3, 3), 2) for _ in range(n)))
        w2 = WeightPair(tuple(Fraction(rng.randint(-3, 3), 2) for _ in range(n)),
                        tuple(Fraction(rng.randint(-3, 3), 2) for _ in range(n)))
        bf = brute_force_moments(w.psi(), n, g=w2.psi())
        assert psi_cov(w, w2) == bf.cov


def test_ejk_mean_example():
    w = WeightPair((0, 0, 0), (1, 2, 3))
    val = ejk_mean(w, 0, 1)
    assert val == Fraction(11, 3)
    bf = brute_force_moments(w.ejk(0, 1), 3)
    assert bf.mean == Fraction(11, 3)


def test_ejk_mean_constant_v():
    w = WeightPair((2, 1, 5, 0), (3, 3, 3, 3))
    assert ejk_mean(w, 0, 2) == (2 + 3) * (5 + 3)


def test_ejk_mean_symmetric():
    w = WeightPair((2, 1, 5, 0), (1, 0, 2, 2))
    assert ejk_mean(w, 1, 3) == ejk_mean(w, 3, 1)
    with pytest.raises(ValueError):
        ejk_mean(w, 2, 2)


def test_ejk_cov_identical_pairs_is_variance():
    w = WeightPair((1, 0, 2, 1, 0), (0, 1, 3, 1, 2))
    cov, klass = ejk_cov_bounds(w, 0, 1, 0, 1)
    assert klass == "overlapping"
    bf = brute_force_moments(w.ejk(0, 1), 5)
    assert cov == bf.variance


def test_ejk_cov_constant_v_zero():
    w = WeightPair((1, 0, 2, 1, 3), (2, 2, 2, 2, 2))
    cov, klass = ejk_cov_bounds(w, 0, 1, 2, 3)
    assert klass == "disjoint"
    assert cov == 0


def test_ejk_psi_cov_constant_second_v_zero():
    w = WeightPair((1, 0, 2, 1), (0, 1, 3, 1))
    w2 = WeightPair((1, 2, 0, 1), (4, 4, 4, 4))
    assert ejk_psi_cov(w, 0, 1, w2) == 0
    bf = brute_force_moments(w.ejk(0, 1), 4, g=w2.psi())
    assert bf.cov == 0


def test_brute_force_constant():
    bf = brute_force_moments(lambda p: Fraction(3, 2), 4)
    assert bf.mean == Fraction(3, 2)
    assert bf.variance == 0
    assert bf.exp_mean == pytest.approx(math.exp(1.5))


def test_brute_force_cov_self_is_variance():
    w = WeightPair((1, 2, 0, 3), (2, 0, 1, 1))
    bf = brute_force_moments(w.psi(), 4, g=w.psi())
    assert bf.cov == bf.variance


def test_brute_force_caps_n():
    with pytest.raises(ValueError):
        brute_force_moments(lambda p: 0, 9)


# ---------------------------------------------------------------------------
# Exact low-order marginal oracle for the covariance scaling claims
# ---------------------------------------------------------------------------

def _e_product(u, v, indices):
    """E prod_i (u_i + v_{X_i}) over distinct indices, by marginal enumeration."""
    n = len(u)
    tot = 0.0
    cnt = 0
    for assign in itertools.permutations(range(n), len(indices)):
        term = 1.0
        for pos, i in enumerate(indices):
            term *= u[i] + v[assign[pos]]
        tot += term
        cnt += 1
    return tot / cnt


def _cov_ejk_elm(u, v, j, k, l, m):
    return (_e_product(u, v, (j, k, l, m))
            - _e_product(u, v, (j, k)) * _e_product(u, v, (l, m)))


def _cov_ejk_psi(u, v, u2, v2, j, k):
    """Exact Cov(E_jk, Psi') by three-coordinate marginals."""
    n = len(u)
    e_jk = _e_product(u, v, (j, k))
    total = 0.0
    for i in range(n):
        if i in (j, k):
            idxs = (j, k)
            pos_i = idxs.index(i)
            acc = 0.0
            cnt = 0
            for assign in itertools.permutations(range(n), 2):
                acc += ((u[j] + v[assign[0]]) * (u[k] + v[assign[1]])
                        * u2[i] * v2[assign[pos_i]])
                cnt += 1
            e_joint = acc / cnt
        else:
            acc = 0.0
            cnt = 0
            for assign in itertools.permutations(range(n), 3):
                acc += ((u[j] + v[assign[0]]) * (u[k] + v[assign[1]])
                        * u2[i] * v2[assign[2]])
                cnt += 1
            e_joint = acc / cnt
        e_single = u2[i] * (sum(v2) / n)
        total += e_joint - e_jk * e_single
    return total


def _fit_slope(xs, ys):
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    return (n * sxy - sx * sy) / (n * sxx - sx * sx)


def test_marginal_oracle_matches_brute_force():
    rng = random.Random(5)
    n = 5
    u = [rng.uniform(-1, 1) for _ in range(n)]
    v = [rng.uniform(-1, 1) for _ in range(n)]
    u2 = [rng.uniform(-1, 1) for _ in range(n)]
    v2 = [rng.uniform(-1, 1) for _ in range(n)]
    w = WeightPair(tuple(u), tuple(v))
    w2 = WeightPair(tuple(u2), tuple(v2))
    bf = brute_force_moments(w.ejk(0, 1), n, g=w.ejk(2, 3))
    assert _cov_ejk_elm(u, v, 0, 1, 2, 3) == pytest.approx(float(bf.cov), abs=1e-10)
    bf2 = brute_force_moments(w.ejk(0, 1), n, g=w2.psi())
    assert _cov_ejk_psi(u, v, u2, v2, 0, 1) == pytest.approx(float(bf2.cov), abs=1e-10)


def test_disjoint_covariance_scaling():
    """Averaged |Cov(E_jk, E_lm)| for disjoint pairs decays at least like 1/sqrt(n)."""
    rng = random.Random(7)
    ns = (5, 6, 7, 8)
    trials = 40
    draws = [([rng.uniform(-1, 1) for _ in range(max(ns))],
              [rng.uniform(-1, 1) for _ in range(max(ns))])
             for _ in range(trials)]
    xs, ys = [], []
    for n in ns:
        avg = sum(abs(_cov_ejk_elm(u[:n], v[:n], 0, 1, 2, 3))
                  for u, v in draws) / trials
        xs.append(math.log(n))
        ys.append(math.log(avg))
    assert _fit_slope(xs, ys) <= -0.5


def test_ejk_psi_residual_scaling():
    """The remainder after the leading covariance term decays like 1/n."""
    rng = random.Random(11)
    ns = (5, 6, 7, 8)
    trials = 30
    nmax = max(ns)
    draws = [tuple([rng.uniform(-1, 1) for _ in range(nmax)] for _ in range(4))
             for _ in range(trials)]
    xs, ys = [], []
    for n in ns:
        acc = 0.0
        for u, v, u2, v2 in draws:
            exact = _cov_ejk_psi(u[:n], v[:n], u2[:n], v2[:n], 0, 1)
            lead = float(ejk_psi_cov(WeightPair(tuple(u[:n]), tuple(v[:n])),
                                     0, 1,
                                     WeightPair(tuple(u2[:n]), tuple(v2[:n]))))
            acc += abs(exact - lead)
        xs.append(math.log(n))
        ys.append(math.log(acc / trials))
    assert _fit_slope(xs, ys) <= -0.5


# ---------------------------------------------------------------------------
# Permuted exponent functions
# ---------------------------------------------------------------------------

IRREGULAR_D6 = (2, 2, 3, 3, 4, 4)   # graphical, mean 3
IRREGULAR_D7 = (2, 2, 2, 3, 3, 4, 4)


def test_subgraph_exponent_mean_reconciliation():
    d = IRREGULAR_D6
    h = perfect_matching(6)
    f, g = make_subgraph_exponent(d, h)
    lead = subgraph_exponent_moments(d, h)
    bf_f = brute_force_moments(f, 6)
    bf_g = brute_force_moments(g, 6)
    assert bf_f.mean == pytest.approx(lead.mean_f, rel=1e-12, abs=1e-12)
    assert bf_g.mean == pytest.approx(lead.mean_g_leading + lead.mean_g_dropped,
                                      rel=1e-12, abs=1e-12)


def test_subgraph_exponent_kept_term_variance_exact():
    """The variance formula is exactly the kept linear term's variance."""
    from degcount.graphs import compute_stats
    d = IRREGULAR_D6
    h = path_pattern(6)
    stats = compute_stats(d)
    lam = stats.density
    hseq = h.degree_sequence
    dev = [x - stats.mean_degree for x in d]

    def kept(p):
        return sum(dev[p[j]] * hseq[j] for j in range(6)) / (lam * 6)

    lead = subgraph_exponent_moments(d, h)
    bf = brute_force_moments(kept, 6)
    assert float(bf.variance) == pytest.approx(lead.var_kept_exact, rel=1e-10)
    # rounding (n-1) -> n in the denominator is the only difference
    assert lead.var_leading == pytest.approx(lead.var_kept_exact * 5 / 6, rel=1e-12)


def test_subgraph_exponent_regular_variance_zero():
    d = (3,) * 6
    h = cycle_pattern(6)
    lead = subgraph_exponent_moments(d, h)
    assert lead.var_leading == 0.0
    f, g = make_subgraph_exponent(d, h)
    total = brute_force_moments(lambda p: f(p) + g(p), 6)
    assert float(total.variance) == pytest.approx(0.0, abs=1e-6)


def test_subgraph_exponent_empty_pattern():
    d = IRREGULAR_D6
    h = empty_pattern(6)
    lead = subgraph_exponent_moments(d, h)
    assert lead.mean_f == 0.0
    assert lead.mean_g_leading == 0.0
    assert lead.var_leading == 0.0


def test_induced_exponent_mean_reconciliation():
    for d, hr in ((IRREGULAR_D6, path_pattern(3)),
                  (IRREGULAR_D7, path_pattern(3)),
                  (IRREGULAR_D7, complete_pattern(3))):
        f = make_induced_exponent(d, hr)
        lead = induced_exponent_moments(d, hr)
        bf = brute_force_moments(f, len(d))
        assert float(bf.mean) == pytest.approx(
            lead.mean_leading + lead.mean_dropped, rel=1e-10, abs=1e-12)


def test_induced_exponent_regular_variance_zero():
    lead = induced_exponent_moments((3,) * 6, complete_pattern(3))
    assert lead.var_leading == 0.0


def test_induced_exponent_single_vertex():
    d = IRREGULAR_D6
    lead = induced_exponent_moments(d, empty_pattern(1))
    from degcount.graphs import compute_stats
    s = compute_stats(d)
    expected = (1 / (2 * s.n)
                - s.spread / (2 * s.density * (1 - s.density) * s.n ** 2))
    assert lead.mean_leading == pytest.approx(expected, rel=1e-12)


def test_induced_exponent_kept_term_variance_dominates():
    """The cross-linear term carries the stated leading variance exactly."""
    from degcount.graphs import compute_stats
    d = IRREGULAR_D7
    hr = path_pattern(3)
    stats = compute_stats(d)
    lam = stats.density
    centre = lam * (hr.vertex_count - 1)
    cen = [h - centre for h in hr.degree_sequence]
    dev = [x - stats.mean_degree for x in d]
    scale = lam * (1 - lam) * 7

    def kept(p):
        return sum(dev[p[j]] * cen[j] for j in range(3)) / scale

    lead = induced_exponent_moments(d, hr)
    bf = brute_force_moments(kept, 7)
    # exact variance of the kept term, versus its n->n-1 rounded leading form
    from degcount.moments import WeightPair, psi_cov
    w = WeightPair(tuple(cen) + (0.0,) * 4, tuple(dev))
    exact_kept = psi_cov(w, w) / scale ** 2
    assert float(bf.variance) == pytest.approx(float(exact_kept), rel=1e-10)
    resid = abs(float(bf.variance) - lead.var_leading)
    assert resid <= 0.35 * abs(lead.var_leading)
