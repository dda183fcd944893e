"""Pure-Python twins of the compiled kernels.

Selected automatically when the compiled extension is unavailable (or
when DEGCOUNT_PURE is set).  Semantics match the extension exactly:
identical switch-chain trajectories per seed and identical realization
counts; only speed differs.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from ._rng import SplitMix64

BACKEND_NAME = "pure"


def switch_chain_run(edges: list, n: int, steps: int, seed: int) -> list:
    """Run the two-edge switch chain from the given edge list.

    Each step draws two edge slots, an orientation bit, and applies the
    re-pairing {a,b},{c,d} -> {a,c},{b,d} when it keeps the graph simple;
    otherwise the step is a rejection and the state is unchanged.
    Returns the final edge list (normalized pairs, original slot order).
    """
    m = len(edges)
    if m < 2:
        return list(edges)
    rng = SplitMix64(seed)
    cur = [(min(u, v), max(u, v)) for u, v in edges]
    present = set(cur)
    if len(present) != m:
        raise ValueError("duplicate edges in the initial graph")
    for _ in range(steps):
        i = rng.below(m)
        j = rng.below(m)
        if i == j:
            continue
        a, b = cur[i]
        c, d = cur[j]
        if rng.next_u64() & 1:
            c, d = d, c
        if a == c or a == d or b == c or b == d:
            continue
        e1 = (min(a, c), max(a, c))
        e2 = (min(b, d), max(b, d))
        if e1 in present or e2 in present:
            continue
        present.discard(cur[i])
        present.discard(cur[j])
        present.add(e1)
        present.add(e2)
        cur[i] = e1
        cur[j] = e2
    return cur


def _erdos_gallai_ok(residual: Sequence[int]) -> bool:
    degs = sorted((x for x in residual if x > 0), reverse=True)
    total = 0
    for x in degs:
        total += x
    if total % 2:
        return False
    k_len = len(degs)
    prefix = 0
    for k in range(1, k_len + 1):
        prefix += degs[k - 1]
        tail = 0
        for x in degs[k:]:
            tail += x if x < k else k
        if prefix > k * (k - 1) + tail:
            return False
    return True


def count_realizations(degrees: Sequence[int], forbidden: Iterable = (),
                       budget: int | None = None) -> int:
    """Count simple graphs realizing `degrees` that avoid `forbidden` pairs.

    Returns -1 if the count exceeds `budget`.  Counting is exact: the
    lowest-index vertex with positive residual degree picks its
    higher-index neighbours, with graphicality pruning of the residual.
    """
    n = len(degrees)
    residual = list(degrees)
    if sum(residual) % 2 or any(x < 0 or x > n - 1 for x in residual):
        return 0
    blocked = [[False] * n for _ in range(n)]
    for u, v in forbidden:
        blocked[u][v] = True
        blocked[v][u] = True
    limit = budget if budget is not None else -1
    count = 0

    def rec(u: int) -> bool:
        nonlocal count
        while u < n and residual[u] == 0:
            u += 1
        if u == n:
            count += 1
            return limit < 0 or count <= limit
        cands = [v for v in range(u + 1, n) if residual[v] > 0 and not blocked[u][v]]
        need = residual[u]
        if need > len(cands):
            return True

        chosen: list = []

        def choose(idx: int, left: int) -> bool:
            if left == 0:
                residual[u] = 0
                ok = True
                if _erdos_gallai_ok(residual[u + 1:]):
                    ok = rec(u + 1)
                residual[u] = need
                return ok
            if len(cands) - idx < left:
                return True
            for pos in range(idx, len(cands) - left + 1):
                v = cands[pos]
                residual[v] -= 1
                chosen.append(v)
                ok = choose(pos + 1, left - 1)
                chosen.pop()
                residual[v] += 1
                if not ok:
                    return False
            return True

        return choose(0, need)

    completed = rec(0)
    if not completed:
        return -1
    return count


def enumerate_realizations(degrees: Sequence[int], forbidden: Iterable = (),
                           budget: int | None = None) -> Iterator[tuple]:
    """Yield every simple graph realizing `degrees`, as sorted edge tuples.

    Same search as count_realizations; yields instead of counting.
    Raises StopIteration naturally; the caller enforces budgets by
    counting yields.
    """
    n = len(degrees)
    residual = list(degrees)
    if sum(residual) % 2 or any(x < 0 or x > n - 1 for x in residual):
        return
    blocked = [[False] * n for _ in range(n)]
    for u, v in forbidden:
        blocked[u][v] = True
        blocked[v][u] = True
    edges: list = []

    def rec(u: int):
        while u < n and residual[u] == 0:
            u += 1
        if u == n:
            yield tuple(sorted(edges))
            return
        cands = [v for v in range(u + 1, n) if residual[v] > 0 and not blocked[u][v]]
        need = residual[u]
        if need > len(cands):
            return

        def choose(idx: int, left: int):
            if left == 0:
                residual[u] = 0
                if _erdos_gallai_ok(residual[u + 1:]):
                    yield from rec(u + 1)
                residual[u] = need
                return
            if len(cands) - idx < left:
                return
            for pos in range(idx, len(cands) - left + 1):
                v = cands[pos]
                residual[v] -= 1
                edges.append((u, v))
                yield from choose(pos + 1, left - 1)
                edges.pop()
                residual[v] += 1

        yield from choose(0, need)

    yield from rec(0)
