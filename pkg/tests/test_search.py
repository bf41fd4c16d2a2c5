import json
import os
import subprocess
import sys

import numpy as np
import pytest

from oracles import brute_force_best, naive_has_rainbow
from rainbowtri import _pycore, kernels
from rainbowtri.coloring import (
    ColoringError,
    coloring_from_pairs,
    edge_counts,
    has_rainbow_triangle,
    is_fully_colored,
    parse,
    product,
    to_compact,
)
from rainbowtri.constructions import (
    TwoCliqueParams,
    frankl_bipartite,
    theorem1_construction,
    two_clique_family,
)
from rainbowtri.objective import discrete_best
from rainbowtri.search import (
    SearchConfig,
    SearchError,
    addable_colors,
    construction_seed,
    is_maximal,
    maximality_closure,
    search_exact,
    verify_witness,
)

# frozen from tests/oracles.py brute_force_best (unpruned enumeration)
ORACLE = {
    (3, False): 8,
    (3, True): 3,
    (4, False): 64,
    (4, True): 27,
    (5, True): 144,
}


@pytest.mark.parametrize("key", sorted(ORACLE))
def test_oracle_values_reproduce(key):
    if key == (5, True):
        pytest.skip("recomputed in test_acceptance")
    assert brute_force_best(*key) == ORACLE[key]


@pytest.mark.parametrize("n,fully", sorted(ORACLE))
@pytest.mark.parametrize("sym", ["none", "color_only", "color_and_vertex"])
def test_matches_oracle(n, fully, sym):
    r = search_exact(SearchConfig(n, fully, sym))
    assert r.complete
    assert r.best_product == ORACLE[(n, fully)]
    assert all(verify_witness(w, r.best_product) for w in r.witnesses)


@pytest.mark.parametrize("n,fully", [(3, False), (4, False), (4, True), (5, True)])
def test_pruned_and_unpruned_agree(n, fully):
    a = search_exact(SearchConfig(n, fully, use_bound=True))
    b = search_exact(SearchConfig(n, fully, use_bound=False))
    assert a.best_product == b.best_product
    assert a.witnesses == b.witnesses
    assert b.pruned_by_bound == 0
    assert a.nodes_expanded < b.nodes_expanded


@pytest.mark.parametrize("n,fully", [(4, False), (5, False), (5, True), (6, True)])
def test_symmetry_levels_agree(n, fully):
    results = [search_exact(SearchConfig(n, fully, s)) for s in ("none", "color_only", "color_and_vertex")]
    assert len({r.best_product for r in results}) == 1
    assert len({r.witnesses for r in results}) == 1


@pytest.mark.parametrize("threads", [1, 2, 8])
def test_thread_determinism(threads):
    base = search_exact(SearchConfig(5, False, thread_hint=1))
    r = search_exact(SearchConfig(5, False, thread_hint=threads))
    assert (r.best_product, r.witnesses) == (base.best_product, base.witnesses)


def test_seeding_is_sound():
    for n in range(2, 7):
        for fully in (False, True):
            seed, col = construction_seed(n, fully)
            assert product(edge_counts(col)) == seed
            assert has_rainbow_triangle(col) is None
            if fully:
                assert is_fully_colored(col)
            seeded = search_exact(SearchConfig(n, fully, initial_lower_bound=seed))
            plain = search_exact(SearchConfig(n, fully))
            assert seeded.best_product == plain.best_product >= seed
            assert seeded.witnesses == plain.witnesses
            if not fully:
                assert seeded.best_product >= product(edge_counts(frankl_bipartite(n)))
            assert seeded.best_product >= discrete_best(n).product


def test_unreachable_seed_is_an_error():
    with pytest.raises(SearchError):
        search_exact(SearchConfig(4, initial_lower_bound=65))


def test_limits():
    with pytest.raises(SearchError):
        search_exact(SearchConfig(8))
    with pytest.raises(SearchError):
        search_exact(SearchConfig(8, fully_colored=True, symmetry_level="color_only"))
    with pytest.raises(SearchError):
        search_exact(SearchConfig(9, fully_colored=True))


def test_node_limit_aborts():
    r = search_exact(SearchConfig(6, False, node_limit=1000))
    assert not r.complete
    assert r.nodes_expanded <= 1000 + 8


def test_tiny_n():
    r1 = search_exact(SearchConfig(1))
    assert r1.best_product == 0 and r1.witnesses == ("1:",)
    r2 = search_exact(SearchConfig(2))
    assert r2.best_product == 1 and r2.witnesses == ("2:7",)


def test_n3_witness_is_two_full_pairs():
    # one pair left uncolored, so no triangle can be rainbow
    r = search_exact(SearchConfig(3))
    assert r.witnesses == ("3:077",)
    assert edge_counts(parse(r.witnesses[0])) == (2, 2, 2)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_witnesses_rainbow_free_naively(n):
    r = search_exact(SearchConfig(n, True))
    for w in r.witnesses:
        c = parse(w)
        assert not naive_has_rainbow(c.n, c.masks)
        assert product(edge_counts(c)) == r.best_product


class TestVerifyWitness:
    def test_theorem1(self):
        enc = to_compact(theorem1_construction(10, 8))
        assert verify_witness(enc, 13804)
        assert not verify_witness(enc, 13805)

    def test_rainbow_rejected(self):
        assert not verify_witness("3:124", 1)


class TestClosure:
    def test_frankl(self):
        c = maximality_closure(frankl_bipartite(4))
        assert has_rainbow_triangle(c) is None
        assert is_maximal(c)

    def test_single_pair(self):
        c = maximality_closure(coloring_from_pairs(2, {(0, 1): [1]}))
        assert c.colors(0, 1) == {1, 2, 3}

    @pytest.mark.parametrize("n,a", [(10, 8), (12, 9), (6, 4), (9, 9)])
    def test_theorem1_unchanged_iff_maximal(self, n, a):
        c = theorem1_construction(n, a)
        closed = maximality_closure(c)
        assert is_maximal(closed)
        assert (closed == c) == is_maximal(c)

    def test_theorem1_small_y_gains_a_color(self):
        # |Y| = 2: the lone Y pair can take color 1 without closing a rainbow triangle
        c = theorem1_construction(10, 8)
        assert addable_colors(c) == [(8, 9, 1)]

    def test_theorem1_large_y_is_maximal(self):
        assert is_maximal(theorem1_construction(12, 9))

    def test_rejects_rainbow(self):
        with pytest.raises(ColoringError):
            maximality_closure(coloring_from_pairs(3, {(0, 1): [1], (0, 2): [2], (1, 2): [3]}))

    def test_random_outputs_are_maximal(self, rng):
        from conftest import random_coloring

        done = 0
        while done < 30:
            c = random_coloring(rng, rng.randint(2, 7), density=0.3)
            if has_rainbow_triangle(c) is not None:
                continue
            closed = maximality_closure(c)
            assert has_rainbow_triangle(closed) is None
            assert addable_colors(closed) == []
            assert all(closed.masks[k] & m == m for k, m in enumerate(c.masks))
            done += 1


class TestBackends:
    def test_dfs_parity(self):
        if kernels.BACKEND != "cython":
            pytest.skip("compiled core not built")
        from rainbowtri import _core

        for n, fully in [(3, False), (4, False), (4, True), (5, True)]:
            for prefix in (b"", b"\x07", b"\x03\x06"):
                for cap in (1, 2, 3):
                    a = _core.dfs_search(n, fully, prefix, 0, np.zeros(2, np.int64), True, 0, cap)
                    b = _pycore.dfs_search(n, fully, prefix, 0, [0, 0], True, 0, cap)
                    assert a[0] == b[0] and sorted(a[1]) == sorted(b[1]) and a[2:] == b[2:]

    def test_pure_python_search_subprocess(self):
        code = (
            "import json; from rainbowtri import kernels; from rainbowtri.search import *;"
            "r = search_exact(SearchConfig(4, False));"
            "print(json.dumps([kernels.BACKEND, r.best_product, list(r.witnesses)]))"
        )
        env = dict(os.environ, RAINBOWTRI_PURE="1")
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, best, wit = json.loads(out.stdout)
        assert backend == "python"
        ref = search_exact(SearchConfig(4, False))
        assert best == ref.best_product and tuple(wit) == ref.witnesses


def test_n8_fully_colored_optimum_is_matching_variant():
    """Report-mode check of the family sweep, which the exact search confirmed offline."""
    c = two_clique_family(TwoCliqueParams(8, 6, 0, 0, 1))
    assert product(edge_counts(c)) == 3328 > discrete_best(8).product == 3120
    assert has_rainbow_triangle(c) is None and is_fully_colored(c)
