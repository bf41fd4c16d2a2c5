# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: rainbow scan, brute-force canonical form, exact DFS.

Same signatures and results as ``rainbowtri._pycore``.
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy, memset
from libc.stdint cimport int64_t, uint8_t

from rainbowtri._pycore import RAINBOW_TABLE as _PY_TABLE, MASK_PERMS as _PY_PERMS

cdef enum:
    MAX_N = 16
    MAX_PAIRS = 120

cdef uint8_t TABLE[512]
cdef uint8_t PERMS[6][8]
cdef int _i, _k
for _i in range(512):
    TABLE[_i] = _PY_TABLE[_i]
for _k in range(6):
    for _i in range(8):
        PERMS[_k][_i] = _PY_PERMS[_k][_i]

cdef uint8_t[8] ORDER_ALL = [7, 3, 5, 6, 1, 2, 4, 0]


cdef inline int pidx(int n, int u, int v) noexcept nogil:
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


cdef int scan_rainbow(int n, const uint8_t[:] masks, int *out) noexcept nogil:
    cdef int u, v, w, bu, bv
    cdef uint8_t muv, muw
    for u in range(n):
        bu = u * (2 * n - u - 1) // 2 - u - 1
        for v in range(u + 1, n):
            muv = masks[bu + v]
            if muv == 0:
                continue
            bv = v * (2 * n - v - 1) // 2 - v - 1
            for w in range(v + 1, n):
                muw = masks[bu + w]
                if muw != 0 and TABLE[(muv << 6) | (muw << 3) | masks[bv + w]]:
                    out[0] = u
                    out[1] = v
                    out[2] = w
                    return 1
    return 0


def find_rainbow(int n, const uint8_t[:] masks):
    cdef int out[3]
    cdef int found
    with nogil:
        found = scan_rainbow(n, masks, out)
    if found:
        return (out[0], out[1], out[2])
    return None


def canonical_masks(int n, const uint8_t[:] masks):
    if n > 12:
        raise ValueError("n too large for brute-force canonical form")
    cdef int npairs = n * (n - 1) // 2
    cdef int idx[MAX_N][MAX_N]
    cdef int perm[MAX_N]
    cdef int c[MAX_N]
    cdef uint8_t seq[MAX_PAIRS]
    cdef uint8_t best[MAX_PAIRS]
    cdef int u, v, i, j, p, t, k, tmp, have = 0, state
    for u in range(n):
        perm[u] = u
        c[u] = 0
        for v in range(u + 1, n):
            idx[u][v] = pidx(n, u, v)
            idx[v][u] = idx[u][v]
    with nogil:
        # Heap's algorithm over vertex permutations
        i = 1
        while True:
            p = 0
            for u in range(n):
                for v in range(u + 1, n):
                    seq[p] = masks[idx[perm[u]][perm[v]]]
                    p += 1
            for k in range(6):
                # compare on the fly against current best, abort on first larger
                state = 0 if have else -1
                if state == 0:
                    for t in range(npairs):
                        tmp = PERMS[k][seq[t]]
                        if tmp < best[t]:
                            state = -1
                            break
                        if tmp > best[t]:
                            state = 1
                            break
                if state == -1:
                    for t in range(npairs):
                        best[t] = PERMS[k][seq[t]]
                    have = 1
            # advance
            while i < n and c[i] >= i:
                c[i] = 0
                i += 1
            if i >= n:
                break
            if i % 2 == 0:
                tmp = perm[0]; perm[0] = perm[i]; perm[i] = tmp
            else:
                tmp = perm[c[i]]; perm[c[i]] = perm[i]; perm[i] = tmp
            c[i] += 1
            i = 1
    return bytes([best[t] for t in range(npairs)])


cdef struct Ctx:
    int n
    int npairs
    int nchoice[MAX_PAIRS]
    uint8_t choice[MAX_PAIRS][8]
    int nclose[MAX_PAIRS]
    int close_a[MAX_PAIRS][MAX_N]
    int close_b[MAX_PAIRS][MAX_N]
    uint8_t masks[MAX_PAIRS]
    int64_t counts[3]
    int64_t best
    int64_t *shared
    int64_t nodes
    int64_t pruned_bound
    int64_t pruned_rainbow
    int64_t node_limit
    int use_bound
    int aborted
    uint8_t *wit
    int64_t nwit
    int64_t capwit
    int oom


cdef void push_witness(Ctx *ctx) noexcept nogil:
    cdef uint8_t *grown
    if ctx.nwit == ctx.capwit:
        grown = <uint8_t *> realloc(ctx.wit, (2 * ctx.capwit + 16) * ctx.npairs + 1)
        if grown == NULL:
            ctx.oom = 1
            ctx.aborted = 1
            return
        ctx.wit = grown
        ctx.capwit = 2 * ctx.capwit + 16
    memcpy(ctx.wit + ctx.nwit * ctx.npairs, ctx.masks, ctx.npairs)
    ctx.nwit += 1


cdef void rec(Ctx *ctx, int p) noexcept nogil:
    cdef int64_t prod, c0, c1, c2, inc, rem
    cdef int q, t, bad
    cdef uint8_t m, ma, mb
    if p == ctx.npairs:
        prod = ctx.counts[0] * ctx.counts[1] * ctx.counts[2]
        if prod > ctx.best:
            ctx.best = prod
            ctx.nwit = 0
            push_witness(ctx)
            if prod > ctx.shared[0]:
                ctx.shared[0] = prod
        elif prod == ctx.best:
            push_witness(ctx)
        return
    rem = ctx.npairs - p - 1
    for q in range(ctx.nchoice[p]):
        m = ctx.choice[p][q]
        ctx.nodes += 1
        ctx.shared[1] += 1
        if ctx.node_limit > 0 and ctx.shared[1] > ctx.node_limit:
            ctx.aborted = 1
            return
        bad = 0
        if m != 0:
            for t in range(ctx.nclose[p]):
                ma = ctx.masks[ctx.close_a[p][t]]
                mb = ctx.masks[ctx.close_b[p][t]]
                if ma != 0 and mb != 0 and TABLE[(ma << 6) | (mb << 3) | m]:
                    bad = 1
                    break
        if bad:
            ctx.pruned_rainbow += 1
            continue
        c0 = ctx.counts[0] + (m & 1)
        c1 = ctx.counts[1] + ((m >> 1) & 1)
        c2 = ctx.counts[2] + ((m >> 2) & 1)
        if ctx.use_bound:
            inc = ctx.best
            if ctx.shared[0] > inc:
                inc = ctx.shared[0]
            if (c0 + rem) * (c1 + rem) * (c2 + rem) < inc:
                ctx.pruned_bound += 1
                continue
        ctx.counts[0] += m & 1
        ctx.counts[1] += (m >> 1) & 1
        ctx.counts[2] += (m >> 2) & 1
        ctx.masks[p] = m
        rec(ctx, p + 1)
        ctx.masks[p] = 0
        ctx.counts[0] -= m & 1
        ctx.counts[1] -= (m >> 1) & 1
        ctx.counts[2] -= (m >> 2) & 1
        if ctx.aborted:
            return


def dfs_search(int n, bint fully_colored, const uint8_t[:] prefix, seed,
               int64_t[:] shared, bint use_bound, node_limit, int max_pop=3):
    if n > MAX_N:
        raise ValueError("n too large for compiled search")
    cdef Ctx *ctx = <Ctx *> malloc(sizeof(Ctx))
    if ctx == NULL:
        raise MemoryError()
    cdef int u, v, i, p, q, nord
    cdef uint8_t order[8]
    cdef uint8_t m
    memset(ctx, 0, sizeof(Ctx))
    ctx.n = n
    ctx.npairs = n * (n - 1) // 2
    ctx.best = seed
    ctx.shared = &shared[0]
    ctx.use_bound = use_bound
    ctx.node_limit = node_limit if node_limit else 0
    nord = 0
    for q in range(8):
        m = ORDER_ALL[q]
        if (m != 0 or not fully_colored) and (m & 1) + ((m >> 1) & 1) + (m >> 2) <= max_pop:
            order[nord] = ORDER_ALL[q]
            nord += 1
    p = 0
    for u in range(n):
        for v in range(u + 1, n):
            ctx.nclose[p] = u
            for i in range(u):
                ctx.close_a[p][i] = pidx(n, i, u)
                ctx.close_b[p][i] = pidx(n, i, v)
            if p < prefix.shape[0]:
                ctx.nchoice[p] = 1
                ctx.choice[p][0] = prefix[p]
            else:
                ctx.nchoice[p] = nord
                for q in range(nord):
                    ctx.choice[p][q] = order[q]
            p += 1
    with nogil:
        rec(ctx, 0)
    try:
        if ctx.oom:
            raise MemoryError("witness buffer exhausted")
        witnesses = [
            (ctx.wit + i * ctx.npairs)[:ctx.npairs] for i in range(ctx.nwit)
        ]
        return (ctx.best, witnesses, ctx.nodes, ctx.pruned_bound,
                ctx.pruned_rainbow, bool(ctx.aborted))
    finally:
        free(ctx.wit)
        free(ctx)
