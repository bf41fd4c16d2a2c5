"""Structure checkers and counting diagnostics for fully colored triples.

Everything here is a pure predicate or report on a single coloring, plus
exhaustive sweeps of the two binomial inequalities that rule out
3-colored matchings (``d``) and a second {1,3}-clique (``b``) in a
product-maximal configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import networkx as nx

from rainbowtri.coloring import (
    Coloring,
    colors_of,
    edge_counts,
    is_fully_colored,
    is_rainbow_free,
    popcount,
    product,
    t_colored_counts,
)
from rainbowtri.constructions import binom2

MAX_CLIQUE_SEARCH_N = 64
INEQUALITY_N_MAX = 500
# clique-size floors used by the two inequalities
D_CLIQUE_FLOOR = Fraction(723, 1000)
B_CLIQUE_FLOOR = Fraction(72, 100)


def multi_color_subgraph(c: Coloring) -> nx.Graph:
    """Simple graph on ``range(n)`` of the pairs carrying at least two colors."""
    g = nx.Graph()
    g.add_nodes_from(range(c.n))
    g.add_edges_from((u, v) for u, v, m in c.items() if popcount(m) >= 2)
    return g


@dataclass
class Claim1Report:
    holds: bool
    components: list[tuple[tuple[int, ...], tuple[int, ...] | None]]
    violations: list[tuple] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "components": [
                {"vertices": list(vs), "colors": None if m is None else list(m)}
                for vs, m in self.components
            ],
            "violations": [list(map(_jsonable, v)) for v in self.violations],
        }


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def check_claim1(c: Coloring) -> Claim1Report:
    """Is the >=2-colored graph a disjoint union of cliques with uniform masks?

    Components are the non-trivial connected components (at least one
    edge).  Violations are ``("non_clique", vertices, missing_pair)`` and
    ``("mixed_mask", pair, pair)``.
    """
    g = multi_color_subgraph(c)
    components = []
    violations = []
    for comp in sorted((sorted(cc) for cc in nx.connected_components(g)), key=lambda s: s[0]):
        if len(comp) < 2:
            continue
        verts = tuple(comp)
        masks = {}
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                if g.has_edge(u, v):
                    masks[(u, v)] = c.mask(u, v)
                else:
                    violations.append(("non_clique", verts, (u, v)))
        first_pair, first_mask = next(iter(masks.items()))
        uniform = True
        for pair, m in masks.items():
            if m != first_mask:
                violations.append(("mixed_mask", first_pair, pair))
                uniform = False
        components.append((verts, colors_of(first_mask) if uniform else None))
    return Claim1Report(not violations, components, violations)


def three_color_isolation(c: Coloring) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs ``(p, q)``: p is 3-colored, q is >=2-colored, and they share a vertex."""
    n = c.n
    multi = [[] for _ in range(n)]
    triples = []
    for u, v, m in c.items():
        if popcount(m) >= 2:
            multi[u].append((u, v))
            multi[v].append((u, v))
        if m == 7:
            triples.append((u, v))
    out = []
    for p in triples:
        seen = set()
        for x in p:
            for q in multi[x]:
                if q != p and q not in seen:
                    seen.add(q)
                    out.append((p, q))
    return out


def neighborhoods(c: Coloring, v: int) -> dict[int, set[int]]:
    """Map mask -> vertices ``w`` with ``mask(v, w)`` equal to it."""
    out: dict[int, set[int]] = {m: set() for m in range(8)}
    for w in range(c.n):
        if w != v:
            out[c.mask(v, w)].add(w)
    return out


def neighborhood_equation_violations(c: Coloring) -> list[tuple[int, int, str]]:
    """Check the neighborhood identities forced by a 2-colored pair.

    For every pair ``uv`` colored exactly ``{i, j}`` with ``l`` the third
    color: ``u`` has no neighbors colored exactly ``{i, l}`` or ``{j, l}``,
    ``u`` and ``v`` have the same neighbors colored exactly ``{l}``, and the
    same neighbors colored exactly ``{i, j}`` apart from each other.  The
    same holds with ``u`` and ``v`` swapped.
    """
    nbrs = [neighborhoods(c, v) for v in range(c.n)]
    out = []
    for u, v, m in c.items():
        if popcount(m) != 2:
            continue
        lbit = 7 & ~m
        i_bit, j_bit = [b for b in (1, 2, 4) if m & b]
        for x in (u, v):
            if nbrs[x][i_bit | lbit]:
                out.append((u, v, f"N_{_name(i_bit | lbit)}({x}) nonempty"))
            if nbrs[x][j_bit | lbit]:
                out.append((u, v, f"N_{_name(j_bit | lbit)}({x}) nonempty"))
        if nbrs[u][lbit] != nbrs[v][lbit]:
            out.append((u, v, f"N_{_name(lbit)}({u}) != N_{_name(lbit)}({v})"))
        if nbrs[u][m] - {v} != nbrs[v][m] - {u}:
            out.append((u, v, f"N_{_name(m)}({u}) != N_{_name(m)}({v})"))
    return out


def _name(mask: int) -> str:
    return ",".join(map(str, colors_of(mask)))


def max_multiclique(c: Coloring, report: Claim1Report | None = None) -> tuple[int, tuple[int, ...]]:
    """Size and vertices of a largest clique in the >=2-colored graph."""
    report = report or check_claim1(c)
    if report.holds:
        if not report.components:
            return 1, (0,)
        verts = max((vs for vs, _ in report.components), key=len)
        return len(verts), verts
    if c.n > MAX_CLIQUE_SEARCH_N:
        raise ValueError(f"exact clique search limited to n <= {MAX_CLIQUE_SEARCH_N}")
    clique, size = nx.max_weight_clique(multi_color_subgraph(c), weight=None)
    return size, tuple(sorted(clique))


class ThresholdCheck(NamedTuple):
    name: str
    value: float
    threshold: float
    passed: bool | None


@dataclass
class DiagnosticsReport:
    n: int
    applicable: bool
    premise_holds: bool
    epsilon: float
    counts: tuple[int, int, int]
    product: int
    sum_edges: int
    amgm_lower: float
    c2: int
    c3: int
    max_multiclique_a: int
    clique_colors: tuple[int, ...]
    clique_edges: int
    third_color_edges: int | None
    threshold_checks: list[ThresholdCheck]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "applicable": self.applicable,
            "premise_holds": self.premise_holds,
            "epsilon": self.epsilon,
            "counts": list(self.counts),
            "product": self.product,
            "sum_edges": self.sum_edges,
            "amgm_lower": self.amgm_lower,
            "c2": self.c2,
            "c3": self.c3,
            "max_multiclique_a": self.max_multiclique_a,
            "clique_colors": list(self.clique_colors),
            "clique_edges": self.clique_edges,
            "third_color_edges": self.third_color_edges,
            "threshold_checks": [
                {"name": t.name, "value": t.value, "threshold": t.threshold, "pass": t.passed}
                for t in self.threshold_checks
            ],
        }


def proof_diagnostics(c: Coloring, epsilon: float = 0.01, gamma: float | None = None) -> DiagnosticsReport:
    """Evaluate the counting thresholds of the fully-colored argument.

    Pass/fail is reported only when the coloring is fully colored,
    rainbow-free and its product is at least ``gamma n^6 (1 - epsilon)``;
    otherwise every check carries ``passed=None``.
    """
    if gamma is None:
        from rainbowtri.objective import maximize_objective

        gamma = maximize_objective().gamma
    n = c.n
    counts = edge_counts(c)
    prod = product(counts)
    applicable = is_fully_colored(c) and is_rainbow_free(c)
    premise = applicable and prod > 0 and Fraction(prod) >= Fraction(gamma) * n**6 * (1 - Fraction(epsilon))
    _, _, c2, c3 = t_colored_counts(c)
    report = check_claim1(c)
    a, clique = max_multiclique(c, report) if n <= MAX_CLIQUE_SEARCH_N or report.holds else (0, ())
    clique_mask = 0
    if len(clique) >= 2:
        clique_mask = c.mask(clique[0], clique[1])
    clique_colors = colors_of(clique_mask)
    third = None
    if popcount(clique_mask) == 2:
        third = counts[(7 & ~clique_mask).bit_length() - 1]
    sum_edges = counts.total
    amgm = 3 * prod ** (1 / 3)
    n2 = n * n
    sum_floor = Fraction(4, 5) * n2 + Fraction(n, 2)

    def check(name, value, threshold, ok):
        return ThresholdCheck(name, float(value), float(threshold), bool(ok) if premise else None)

    checks = [
        check("sum_edges > 0.8n^2 + n/2", sum_edges, sum_floor, sum_edges > sum_floor),
        check("3*cbrt(product) > 0.8n^2 + n/2", amgm, sum_floor, amgm > sum_floor),
        check("three_colored <= n/2", c3, Fraction(n, 2), c3 <= Fraction(n, 2)),
        check("two_colored >= 0.3n^2", c2, Fraction(3, 10) * n2, c2 >= Fraction(3, 10) * n2),
        check("a >= 0.6n", a, Fraction(3, 5) * n, a >= Fraction(3, 5) * n),
        check("a >= 0.723n", a, D_CLIQUE_FLOOR * n, a >= D_CLIQUE_FLOOR * n),
        check("e(A) >= 0.26n^2", binom2(a), Fraction(26, 100) * n2, binom2(a) >= Fraction(26, 100) * n2),
        check(
            "e(third color) <= 0.24n^2",
            -1 if third is None else third,
            Fraction(24, 100) * n2,
            third is not None and third <= Fraction(24, 100) * n2,
        ),
    ]
    return DiagnosticsReport(
        n=n,
        applicable=applicable,
        premise_holds=bool(premise),
        epsilon=epsilon,
        counts=tuple(counts),
        product=prod,
        sum_edges=sum_edges,
        amgm_lower=amgm,
        c2=c2,
        c3=c3,
        max_multiclique_a=a,
        clique_colors=clique_colors,
        clique_edges=binom2(a),
        third_color_edges=third,
        threshold_checks=checks,
    )


# -- the two displayed inequalities ------------------------------------------


def _check_naturals(*xs: int) -> None:
    for x in xs:
        if x < 0:
            raise ValueError(f"expected non-negative integers, got {xs}")


def d_inequality_sides(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    _check_naturals(a, b, c, d)
    ka = binom2(a)
    lhs = (ka + binom2(b) + d) * (ka + binom2(c) + d)
    rhs = (ka + binom2(b)) * (ka + binom2(c + 2 * d))
    return lhs, rhs


def check_d_inequality(a: int, b: int, c: int, d: int) -> bool:
    """Moving the matching into clique C does not lower the first two factors."""
    lhs, rhs = d_inequality_sides(a, b, c, d)
    return lhs <= rhs


def b_inequality_sides(a: int, b: int, c: int) -> tuple[int, int]:
    _check_naturals(a, b, c)
    ka = binom2(a)
    lhs = (ka + binom2(b)) * (ka + binom2(c))
    rhs = (ka + binom2(b + c)) * ka
    return lhs, rhs


def check_b_inequality(a: int, b: int, c: int) -> bool:
    """Merging clique B into clique C does not lower the first two factors."""
    lhs, rhs = b_inequality_sides(a, b, c)
    return lhs <= rhs


class InequalityViolation(NamedTuple):
    kind: str  # "d" or "b"
    n: int
    a: int
    b: int
    c: int
    d: int
    lhs: int
    rhs: int


def _d_domain(n: int, wide: bool):
    for a in range(n + 1):
        if not wide and a < D_CLIQUE_FLOOR * n:
            continue
        for d in range((n - a) // 2 + 1):
            for b in range(n - a - 2 * d + 1):
                if wide:
                    cs = range(b, n - a - 2 * d - b + 1)
                else:
                    cs = [n - a - 2 * d - b]
                for c in cs:
                    if c < b:
                        continue
                    if not wide and b == c == 0:
                        continue
                    yield a, b, c, d


def _b_domain(n: int, wide: bool):
    for a in range(n + 1):
        if not wide and a < B_CLIQUE_FLOOR * n:
            continue
        for b in range(1, n - a + 1):
            c = n - a - b
            if c >= b:
                yield a, b, c


def sweep_inequalities(n_max: int, domain: str = "proof") -> list[InequalityViolation]:
    """Every tuple with ``n <= n_max`` where either inequality fails.

    ``domain="proof"``: block sizes sum to ``n``, ``c >= b``,
    ``a >= 0.723n`` and not ``b = c = 0`` for the matching inequality;
    ``c >= b >= 1`` and ``a >= 0.72n`` for the clique inequality.
    ``domain="wide"`` drops the clique-size floor, allows ``b = c = 0`` and,
    for the matching inequality, leftover vertices.
    """
    if n_max > INEQUALITY_N_MAX:
        raise ValueError(f"n_max must be <= {INEQUALITY_N_MAX}")
    if domain not in ("proof", "wide"):
        raise ValueError(f"unknown domain {domain!r}")
    wide = domain == "wide"
    out = []
    for n in range(0, n_max + 1):
        for a, b, c, d in _d_domain(n, wide):
            lhs, rhs = d_inequality_sides(a, b, c, d)
            if lhs > rhs:
                out.append(InequalityViolation("d", n, a, b, c, d, lhs, rhs))
        for a, b, c in _b_domain(n, wide):
            lhs, rhs = b_inequality_sides(a, b, c)
            if lhs > rhs:
                out.append(InequalityViolation("b", n, a, b, c, 0, lhs, rhs))
    return sorted(out)
