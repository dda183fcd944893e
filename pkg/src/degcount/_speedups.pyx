# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: switch-chain steps and realization counting.

Must stay semantically identical to degcount._pure: same splitmix64
stream, same proposal/rejection order, same search tree.  The parity
tests compare both backends directly.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    static inline unsigned long long degcount_mulhi64(unsigned long long a,
                                                      unsigned long long b) {
        return (unsigned long long)(((__uint128_t)a * (__uint128_t)b) >> 64);
    }
    """
    unsigned long long degcount_mulhi64(unsigned long long a,
                                        unsigned long long b) nogil

ctypedef unsigned long long u64

cdef u64 GAMMA = 0x9E3779B97F4A7C15ULL
cdef u64 MUL1 = 0xBF58476D1CE4E5B9ULL
cdef u64 MUL2 = 0x94D049BB133111EBULL


cdef inline u64 _next_u64(u64 *state) nogil:
    state[0] = state[0] + GAMMA
    cdef u64 z = state[0]
    z = (z ^ (z >> 30)) * MUL1
    z = (z ^ (z >> 27)) * MUL2
    return z ^ (z >> 31)


cdef inline u64 _below(u64 *state, u64 k) nogil:
    # multiply-shift: high 64 bits of a 128-bit product
    return degcount_mulhi64(_next_u64(state), k)


def switch_chain_run(edges, int n, long long steps, unsigned long long seed):
    """Run the two-edge switch chain; mirrors the pure implementation."""
    cdef int m = len(edges)
    if m < 2:
        return list(edges)
    cdef u64 state = seed
    cdef int *eu = <int *> malloc(m * sizeof(int))
    cdef int *ev = <int *> malloc(m * sizeof(int))
    cdef unsigned char *adj = <unsigned char *> malloc(n * n * sizeof(unsigned char))
    if eu == NULL or ev == NULL or adj == NULL:
        free(eu); free(ev); free(adj)
        raise MemoryError()
    cdef int i, u, v
    for i in range(n * n):
        adj[i] = 0
    for i, (u, v) in enumerate(edges):
        if u > v:
            u, v = v, u
        eu[i] = u
        ev[i] = v
        if adj[u * n + v]:
            free(eu); free(ev); free(adj)
            raise ValueError("duplicate edges in the initial graph")
        adj[u * n + v] = 1
        adj[v * n + u] = 1

    cdef long long step
    cdef int si, sj, a, b, c, d, t
    with nogil:
        for step in range(steps):
            si = <int> _below(&state, <u64> m)
            sj = <int> _below(&state, <u64> m)
            if si == sj:
                continue
            a = eu[si]; b = ev[si]
            c = eu[sj]; d = ev[sj]
            if _next_u64(&state) & 1ULL:
                t = c; c = d; d = t
            if a == c or a == d or b == c or b == d:
                continue
            if adj[a * n + c] or adj[b * n + d]:
                continue
            adj[eu[si] * n + ev[si]] = 0
            adj[ev[si] * n + eu[si]] = 0
            adj[eu[sj] * n + ev[sj]] = 0
            adj[ev[sj] * n + eu[sj]] = 0
            if a < c:
                eu[si] = a; ev[si] = c
            else:
                eu[si] = c; ev[si] = a
            if b < d:
                eu[sj] = b; ev[sj] = d
            else:
                eu[sj] = d; ev[sj] = b
            adj[eu[si] * n + ev[si]] = 1
            adj[ev[si] * n + eu[si]] = 1
            adj[eu[sj] * n + ev[sj]] = 1
            adj[ev[sj] * n + eu[sj]] = 1

    out = [(eu[i], ev[i]) for i in range(m)]
    free(eu); free(ev); free(adj)
    return out


cdef struct SearchState:
    int n
    long long count
    long long limit        # -1: unlimited
    int *residual
    unsigned char *blocked
    int *cands
    int *scratch


cdef bint _eg_ok(SearchState *st, int lo) nogil:
    """Erdos-Gallai feasibility of residual degrees of vertices >= lo."""
    cdef int n = st.n
    cdef int cnt = 0
    cdef int i, j, key, total
    for i in range(lo, n):
        if st.residual[i] > 0:
            st.scratch[cnt] = st.residual[i]
            cnt += 1
    total = 0
    for i in range(cnt):
        total += st.scratch[i]
    if total & 1:
        return False
    # insertion sort descending
    for i in range(1, cnt):
        key = st.scratch[i]
        j = i - 1
        while j >= 0 and st.scratch[j] < key:
            st.scratch[j + 1] = st.scratch[j]
            j -= 1
        st.scratch[j + 1] = key
    cdef int prefix = 0, tail, k, x
    for k in range(1, cnt + 1):
        prefix += st.scratch[k - 1]
        tail = 0
        for i in range(k, cnt):
            x = st.scratch[i]
            tail += x if x < k else k
        if prefix > k * (k - 1) + tail:
            return False
    return True


cdef bint _choose(SearchState *st, int u, int need, int base, int ncands,
                  int idx, int left) nogil:
    cdef int pos, v
    cdef bint ok
    if left == 0:
        st.residual[u] = 0
        ok = True
        if _eg_ok(st, u + 1):
            ok = _rec(st, u + 1)
        st.residual[u] = need
        return ok
    if ncands - idx < left:
        return True
    for pos in range(idx, ncands - left + 1):
        v = st.cands[base + pos]
        st.residual[v] -= 1
        ok = _choose(st, u, need, base, ncands, pos + 1, left - 1)
        st.residual[v] += 1
        if not ok:
            return False
    return True


cdef bint _rec(SearchState *st, int u) nogil:
    cdef int n = st.n
    while u < n and st.residual[u] == 0:
        u += 1
    if u == n:
        st.count += 1
        return st.limit < 0 or st.count <= st.limit
    cdef int need = st.residual[u]
    cdef int base = u * n
    cdef int ncands = 0
    cdef int v
    for v in range(u + 1, n):
        if st.residual[v] > 0 and not st.blocked[u * n + v]:
            st.cands[base + ncands] = v
            ncands += 1
    if need > ncands:
        return True
    return _choose(st, u, need, base, ncands, 0, need)


def count_realizations(degrees, forbidden=(), budget=None):
    """Count simple graphs with the given degrees avoiding forbidden pairs.

    Returns -1 when the count exceeds `budget` (None: unlimited).
    """
    cdef int n = len(degrees)
    cdef int i, u, v
    total = sum(degrees)
    if total % 2 or any(x < 0 or x > n - 1 for x in degrees):
        return 0
    cdef SearchState st
    st.n = n
    st.count = 0
    st.limit = -1 if budget is None else <long long> budget
    st.residual = <int *> malloc(n * sizeof(int))
    st.blocked = <unsigned char *> malloc(n * n * sizeof(unsigned char))
    st.cands = <int *> malloc(n * n * sizeof(int))
    st.scratch = <int *> malloc(n * sizeof(int))
    if (st.residual == NULL or st.blocked == NULL or st.cands == NULL
            or st.scratch == NULL):
        free(st.residual); free(st.blocked); free(st.cands); free(st.scratch)
        raise MemoryError()
    for i in range(n):
        st.residual[i] = degrees[i]
    for i in range(n * n):
        st.blocked[i] = 0
    for u, v in forbidden:
        st.blocked[u * n + v] = 1
        st.blocked[v * n + u] = 1
    cdef bint completed
    with nogil:
        completed = _rec(&st, 0)
    count = st.count
    free(st.residual); free(st.blocked); free(st.cands); free(st.scratch)
    if not completed:
        return -1
    return count
