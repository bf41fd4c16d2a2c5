"""Pure-Python kernels.

Reference implementations of the hot loops; ``rainbowtri._core`` (Cython)
provides the same functions with the same signatures.  Masks are passed as
any object supporting ``len`` and integer indexing (``bytes``, ``bytearray``).
"""

from itertools import permutations

# masks tried per pair, strongest first
MASK_ORDER = (7, 3, 5, 6, 1, 2, 4, 0)

COLOR_PERMUTATIONS = tuple(permutations((0, 1, 2)))


def _has_sdr(m1, m2, m3):
    # Hall's condition for three subsets of {1,2,3}
    if not (m1 and m2 and m3):
        return False
    if bin(m1 | m2).count("1") < 2:
        return False
    if bin(m1 | m3).count("1") < 2:
        return False
    if bin(m2 | m3).count("1") < 2:
        return False
    return (m1 | m2 | m3) == 7


RAINBOW_TABLE = bytes(
    _has_sdr(i >> 6, (i >> 3) & 7, i & 7) for i in range(512)
)


def _mask_perm_tables():
    tables = []
    for perm in COLOR_PERMUTATIONS:
        t = bytearray(8)
        for m in range(8):
            out = 0
            for bit in range(3):
                if m >> bit & 1:
                    out |= 1 << perm[bit]
            t[m] = out
        tables.append(bytes(t))
    return tuple(tables)


MASK_PERMS = _mask_perm_tables()


def pair_index(n, u, v):
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def find_rainbow(n, masks):
    """Lexicographically least rainbow triangle ``(u, v, w)`` or ``None``."""
    table = RAINBOW_TABLE
    for u in range(n):
        base_u = u * (2 * n - u - 1) // 2 - u - 1
        for v in range(u + 1, n):
            muv = masks[base_u + v]
            if not muv:
                continue
            base_v = v * (2 * n - v - 1) // 2 - v - 1
            for w in range(v + 1, n):
                muw = masks[base_u + w]
                if muw and table[(muv << 6) | (muw << 3) | masks[base_v + w]]:
                    return (u, v, w)
    return None


def canonical_masks(n, masks):
    """Least mask sequence over all vertex relabelings and color renamings."""
    npairs = n * (n - 1) // 2
    idx = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            idx[u][v] = idx[v][u] = pair_index(n, u, v)
    best = None
    for perm in permutations(range(n)):
        rows = [idx[p] for p in perm]
        seq = []
        for i in range(n):
            row = rows[i]
            for j in range(i + 1, n):
                seq.append(masks[row[perm[j]]])
        for table in MASK_PERMS:
            cand = bytes(table[m] for m in seq)
            if best is None or cand < best:
                best = cand
    if best is None:
        best = bytes(npairs)
    return best


def dfs_search(n, fully_colored, prefix, seed, shared, use_bound, node_limit, max_pop=3):
    """Exhaustive DFS over pair masks in lexicographic pair order.

    Pairs ``0 .. len(prefix)-1`` are forced to ``prefix``; the remaining
    pairs range over masks with at most ``max_pop`` colors.  ``shared`` is a
    mutable two-slot sequence ``[incumbent, nodes]`` visible to sibling
    subtasks.  Returns ``(best, witnesses, nodes, pruned_bound,
    pruned_rainbow, aborted)`` where ``witnesses`` holds every leaf mask
    sequence reaching ``best`` (with ``best >= seed``).
    """
    npairs = n * (n - 1) // 2
    pu = []
    pv = []
    for u in range(n):
        for v in range(u + 1, n):
            pu.append(u)
            pv.append(v)
    # triangles completed when pair (j, k) is assigned: pairs (i, j), (i, k)
    closers = []
    for p in range(npairs):
        j, k = pu[p], pv[p]
        closers.append(
            [(pair_index(n, i, j), pair_index(n, i, k)) for i in range(j)]
        )
    order = tuple(
        m
        for m in MASK_ORDER
        if (m or not fully_colored) and bin(m).count("1") <= max_pop
    )
    choices = [order] * npairs
    for p, m in enumerate(prefix):
        choices[p] = (m,)

    masks = bytearray(npairs)
    counts = [0, 0, 0]
    table = RAINBOW_TABLE
    state = {"best": seed, "nodes": 0, "pb": 0, "pr": 0, "aborted": False}
    witnesses = []

    def rec(p):
        if p == npairs:
            prod = counts[0] * counts[1] * counts[2]
            if prod > state["best"]:
                state["best"] = prod
                witnesses.clear()
                witnesses.append(bytes(masks))
                if prod > shared[0]:
                    shared[0] = prod
            elif prod == state["best"]:
                witnesses.append(bytes(masks))
            return
        remaining = npairs - p - 1
        for m in choices[p]:
            state["nodes"] += 1
            shared[1] += 1
            if node_limit and shared[1] > node_limit:
                state["aborted"] = True
                return
            bad = False
            if m:
                for a, b in closers[p]:
                    ma = masks[a]
                    if ma and masks[b] and table[(ma << 6) | (masks[b] << 3) | m]:
                        bad = True
                        break
            if bad:
                state["pr"] += 1
                continue
            c0 = counts[0] + (m & 1)
            c1 = counts[1] + (m >> 1 & 1)
            c2 = counts[2] + (m >> 2 & 1)
            if use_bound:
                inc = state["best"] if state["best"] > shared[0] else shared[0]
                if (c0 + remaining) * (c1 + remaining) * (c2 + remaining) < inc:
                    state["pb"] += 1
                    continue
            saved = counts[:]
            counts[0], counts[1], counts[2] = c0, c1, c2
            masks[p] = m
            rec(p + 1)
            masks[p] = 0
            counts[:] = saved
            if state["aborted"]:
                return

    rec(0)
    return (
        state["best"],
        witnesses,
        state["nodes"],
        state["pb"],
        state["pr"],
        state["aborted"],
    )
