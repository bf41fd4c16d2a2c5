"""Exact maximization of e(G1) e(G2) e(G3) over rainbow-free colorings.

Pairs receive masks in lexicographic pair order.  A branch dies when the
pair just assigned closes a rainbow triangle, or when the optimistic bound
``prod(e_i + remaining pairs)`` falls strictly below the incumbent.  Ties
are kept so that every optimal coloring in the symmetry-reduced space is
reached, which makes the witness set independent of scheduling.

The tree is cut at a fixed depth into independent subtasks that share a
monotone incumbent; results are merged by a pure max.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product as cartesian

import numpy as np

from rainbowtri import kernels
from rainbowtri.coloring import (
    COLORS,
    Coloring,
    ColoringError,
    canonical_form,
    edge_counts,
    is_rainbow_free,
    num_pairs,
    pair_index,
    parse,
    popcount,
    product,
)
from rainbowtri.constructions import (
    best_family_params,
    frankl_bipartite,
    theorem1_construction,
    two_clique_family,
)
from rainbowtri.objective import discrete_best

HARD_LIMIT = 7
EXTENDED_LIMIT = 8
SPLIT_DEPTH = 3

# one mask per orbit of the color-permutation group, by popcount
ORBIT_REPS = (7, 3, 1, 0)
MASK_ORDER = (7, 3, 5, 6, 1, 2, 4, 0)


class SearchError(RuntimeError):
    pass


class Symmetry(str, enum.Enum):
    NONE = "none"
    COLOR_ONLY = "color_only"
    COLOR_AND_VERTEX = "color_and_vertex"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    fully_colored: bool = False
    symmetry_level: Symmetry = Symmetry.COLOR_AND_VERTEX
    initial_lower_bound: int | None = None
    thread_hint: int = 1
    use_bound: bool = True
    node_limit: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "symmetry_level", Symmetry(self.symmetry_level))
        if self.n < 1:
            raise ColoringError(f"n must be >= 1, got {self.n}")
        if self.thread_hint < 1:
            raise ValueError("thread_hint must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    n: int
    best_product: int
    witnesses: tuple[str, ...]
    nodes_expanded: int
    pruned_by_bound: int
    pruned_by_rainbow: int
    complete: bool
    raw_optima: int = 0
    backend: str = field(default=kernels.BACKEND)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "best_product": self.best_product,
            "witnesses": list(self.witnesses),
            "nodes_expanded": self.nodes_expanded,
            "pruned_by_bound": self.pruned_by_bound,
            "pruned_by_rainbow": self.pruned_by_rainbow,
            "complete": self.complete,
            "raw_optima": self.raw_optima,
        }


def check_limits(cfg: SearchConfig) -> None:
    if cfg.n <= HARD_LIMIT:
        return
    if (
        cfg.n <= EXTENDED_LIMIT
        and cfg.fully_colored
        and cfg.symmetry_level is Symmetry.COLOR_AND_VERTEX
    ):
        return
    raise SearchError(
        f"n={cfg.n} exceeds the search limit ({HARD_LIMIT}; {EXTENDED_LIMIT} only with "
        "fully_colored and color_and_vertex symmetry)"
    )


def construction_seed(n: int, fully_colored: bool) -> tuple[int, Coloring]:
    """Best known product among the explicit constructions allowed by the config."""
    if n >= 2:
        row = discrete_best(n)
        best = (row.product, theorem1_construction(n, row.best_a))
    else:
        best = (0, theorem1_construction(n, 0))
    fam_prod, params = best_family_params(n)
    if fam_prod > best[0]:
        best = (fam_prod, two_clique_family(params))
    if not fully_colored:
        fb = frankl_bipartite(n)
        p = product(edge_counts(fb))
        if p > best[0]:
            best = (p, fb)
    return best


def _subtasks(cfg: SearchConfig) -> list[tuple[bytes, int]]:
    """Forced prefixes for the first pairs, with the popcount cap per subtask."""
    npairs = num_pairs(cfg.n)
    depth = min(SPLIT_DEPTH, npairs)
    order = [m for m in MASK_ORDER if m or not cfg.fully_colored]
    if depth == 0:
        return [(b"", 3)]
    if cfg.symmetry_level is Symmetry.NONE:
        first = order
    else:
        first = [m for m in ORBIT_REPS if m or not cfg.fully_colored]
    tasks = []
    for m0 in first:
        cap = popcount(m0) if cfg.symmetry_level is Symmetry.COLOR_AND_VERTEX else 3
        rest = [m for m in order if popcount(m) <= cap]
        for tail in cartesian(rest, repeat=depth - 1):
            tasks.append((bytes((m0, *tail)), cap))
    return tasks


def search_exact(cfg: SearchConfig) -> SearchResult:
    """Certified maximum product over rainbow-free colorings on ``cfg.n`` vertices."""
    check_limits(cfg)
    seed = cfg.initial_lower_bound or 0
    tasks = _subtasks(cfg)
    if kernels.BACKEND == "cython":
        shared = np.zeros(2, dtype=np.int64)
    else:
        shared = [0, 0]
    shared[0] = seed

    def run(task):
        prefix, cap = task
        if cfg.node_limit and shared[1] >= cfg.node_limit:
            return (seed, [], 0, 0, 0, True)
        return kernels.dfs_search(
            cfg.n, cfg.fully_colored, prefix, seed, shared, cfg.use_bound,
            cfg.node_limit or 0, cap,
        )

    if cfg.thread_hint > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=cfg.thread_hint) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]

    best = max(r[0] for r in results)
    raw = {w for r in results if r[0] == best for w in r[1]}
    complete = not any(r[5] for r in results)
    if complete and not raw:
        raise SearchError(f"no coloring reaches the initial lower bound {seed}")
    witnesses = sorted(
        {canonical_form(Coloring(cfg.n, w)).decode("ascii") for w in raw}
    )
    return SearchResult(
        n=cfg.n,
        best_product=best if raw else 0,
        witnesses=tuple(witnesses),
        nodes_expanded=sum(r[2] for r in results),
        pruned_by_bound=sum(r[3] for r in results),
        pruned_by_rainbow=sum(r[4] for r in results),
        complete=complete,
        raw_optima=len(raw),
    )


def verify_witness(encoding: str, expected_product: int) -> bool:
    """True iff the encoded coloring is rainbow-free with the given product."""
    c = parse(encoding)
    return is_rainbow_free(c) and product(edge_counts(c)) == expected_product


def _closes_rainbow(c_masks: bytearray, n: int, u: int, v: int) -> bool:
    table = kernels.RAINBOW_TABLE
    m = c_masks[pair_index(n, u, v)]
    for w in range(n):
        if w == u or w == v:
            continue
        a = c_masks[pair_index(n, u, w)]
        b = c_masks[pair_index(n, v, w)]
        if a and b and table[(m << 6) | (a << 3) | b]:
            return True
    return False


def addable_colors(c: Coloring) -> list[tuple[int, int, int]]:
    """Every ``(u, v, color)`` that could be added without a rainbow triangle."""
    n = c.n
    buf = bytearray(c.masks)
    out = []
    for u in range(n):
        for v in range(u + 1, n):
            k = pair_index(n, u, v)
            old = buf[k]
            for col in COLORS:
                bit = 1 << (col - 1)
                if old & bit:
                    continue
                buf[k] = old | bit
                if not _closes_rainbow(buf, n, u, v):
                    out.append((u, v, col))
                buf[k] = old
    return out


def is_maximal(c: Coloring) -> bool:
    return not addable_colors(c)


def maximality_closure(c: Coloring) -> Coloring:
    """Greedily add colors (pair order, then color 1, 2, 3) until none fits."""
    if not is_rainbow_free(c):
        raise ColoringError("maximality_closure needs a rainbow-free coloring")
    n = c.n
    buf = bytearray(c.masks)
    changed = True
    while changed:
        changed = False
        for u in range(n):
            for v in range(u + 1, n):
                k = pair_index(n, u, v)
                for col in COLORS:
                    bit = 1 << (col - 1)
                    if buf[k] & bit:
                        continue
                    buf[k] |= bit
                    if _closes_rainbow(buf, n, u, v):
                        buf[k] &= ~bit
                    else:
                        changed = True
    return Coloring(n, bytes(buf))


def default_threads(requested: int | None = None) -> int:
    env = os.environ.get("RAINBOW_THREADS")
    if env:
        return max(1, int(env))
    return requested or 1
