"""Explicit rainbow-triangle-free triples.

Vertices are laid out in consecutive blocks: clique A first, then B, C,
the matching pairs, and finally any leftover vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from rainbowtri.coloring import Coloring, ColoringError, EdgeCounts, num_pairs, pair_index

MASK_12 = 0b011
MASK_13 = 0b101
MASK_23 = 0b110
MASK_3 = 0b100
MASK_ALL = 0b111


def binom2(x: int) -> int:
    """``C(x, 2)``, zero for ``x`` in {0, 1}."""
    return x * (x - 1) // 2


@dataclass(frozen=True)
class TwoCliqueParams:
    """Block sizes for the clique-plus-matching family.

    ``a``: clique colored {1,2}; ``b``: clique colored {1,3};
    ``c``: clique colored {2,3}; ``d``: disjoint pairs colored {1,2,3}.
    Everything else is colored {3}.
    """

    n: int
    a: int
    b: int = 0
    c: int = 0
    d: int = 0

    def __post_init__(self):
        if min(self.n, self.a, self.b, self.c, self.d) < 0:
            raise ColoringError("block sizes must be non-negative")
        if self.n < 1:
            raise ColoringError("n must be >= 1")
        if self.a + self.b + self.c + 2 * self.d > self.n:
            raise ColoringError(
                f"blocks need a+b+c+2d = {self.a + self.b + self.c + 2 * self.d} "
                f"vertices but n = {self.n}"
            )


def frankl_bipartite(n: int) -> Coloring:
    """Three copies of the balanced complete bipartite graph.

    The first ``n // 2`` vertices form one part.
    """
    if n < 1:
        raise ColoringError(f"n must be >= 1, got {n}")
    half = n // 2
    buf = bytearray(num_pairs(n))
    for u in range(half):
        for v in range(half, n):
            buf[pair_index(n, u, v)] = MASK_ALL
    return Coloring(n, bytes(buf))


def default_clique_size(n: int, x0: float | None = None) -> int:
    """``round(x0 * n)`` with exact halves rounded down."""
    if x0 is None:
        from rainbowtri.objective import maximize_objective

        x0 = maximize_objective().x0
    t = x0 * n
    return min(n, max(0, math.ceil(t - 0.5)))


def theorem1_construction(n: int, a: int | None = None) -> Coloring:
    """X = vertices ``0..a-1`` colored {1,2} inside, Y colored {2,3} inside,
    X-Y pairs colored {3}.

    Gives G1 = K_X, G2 = K_X + K_Y, G3 = K_Y plus all X-Y edges.
    """
    if n < 1:
        raise ColoringError(f"n must be >= 1, got {n}")
    if a is None:
        a = default_clique_size(n)
    if not 0 <= a <= n:
        raise ColoringError(f"clique size a={a} must lie in 0..{n}")
    buf = bytearray(num_pairs(n))
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if v < a:
                buf[k] = MASK_12
            elif u >= a:
                buf[k] = MASK_23
            else:
                buf[k] = MASK_3
            k += 1
    return Coloring(n, bytes(buf))


def theorem1_counts(n: int, a: int) -> EdgeCounts:
    """Closed-form ``(C(a,2), C(a,2)+C(n-a,2), C(n-a,2)+a(n-a))``."""
    if not 0 <= a <= n:
        raise ColoringError(f"clique size a={a} must lie in 0..{n}")
    ka, kb = binom2(a), binom2(n - a)
    return EdgeCounts(ka, ka + kb, kb + a * (n - a))


def _blocks(p: TwoCliqueParams) -> list[tuple[range, int]]:
    start = 0
    out = []
    for size, mask in ((p.a, MASK_12), (p.b, MASK_13), (p.c, MASK_23)):
        out.append((range(start, start + size), mask))
        start += size
    for _ in range(p.d):
        out.append((range(start, start + 2), MASK_ALL))
        start += 2
    return out


def two_clique_family(p: TwoCliqueParams) -> Coloring:
    """Cliques A {1,2}, B {1,3}, C {2,3}, ``d`` isolated {1,2,3} pairs, rest {3}."""
    n = p.n
    buf = bytearray([MASK_3]) * num_pairs(n)
    for block, mask in _blocks(p):
        for u in block:
            for v in range(u + 1, block.stop):
                buf[pair_index(n, u, v)] = mask
    return Coloring(n, bytes(buf))


def family_counts(p: TwoCliqueParams) -> EdgeCounts:
    ka, kb, kc = binom2(p.a), binom2(p.b), binom2(p.c)
    e1 = ka + kb + p.d
    e2 = ka + kc + p.d
    # G3 is every pair outside A
    e3 = num_pairs(p.n) - ka
    return EdgeCounts(e1, e2, e3)


def best_family_params(n: int) -> tuple[int, TwoCliqueParams]:
    """Exhaustive sweep of the family; ties go to the lexicographically least ``(a, b, c, d)``."""
    best = (-1, None)
    for a in range(n + 1):
        for d in range((n - a) // 2 + 1):
            for b in range(n - a - 2 * d + 1):
                for c in range(b, n - a - 2 * d - b + 1):
                    p = TwoCliqueParams(n, a, b, c, d)
                    e1, e2, e3 = family_counts(p)
                    prod = e1 * e2 * e3
                    if prod > best[0]:
                        best = (prod, p)
    return best
