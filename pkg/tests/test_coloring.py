import json
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import colorings, random_coloring
from oracles import naive_counts, naive_has_rainbow
from rainbowtri.coloring import (
    Coloring,
    ColoringError,
    EdgeCounts,
    ParseError,
    canonical_form,
    coloring_from_pairs,
    edge_counts,
    from_compact,
    has_rainbow_triangle,
    is_fully_colored,
    mask_of,
    new_coloring,
    num_pairs,
    pair_index,
    parse,
    product,
    serialize,
    set_colors,
    t_colored_counts,
    to_compact,
)
from rainbowtri.constructions import frankl_bipartite, theorem1_construction


class TestNewColoring:
    @pytest.mark.parametrize("n,pairs", [(1, 0), (3, 3), (5, 10)])
    def test_pair_slots(self, n, pairs):
        c = new_coloring(n)
        assert len(c.masks) == pairs
        assert set(c.masks) <= {0}
        assert edge_counts(c) == (0, 0, 0)

    def test_zero_rejected(self):
        with pytest.raises(ColoringError):
            new_coloring(0)


class TestSetColors:
    def test_round_trip(self):
        c = set_colors(new_coloring(4), 0, 1, {1, 2})
        assert c.colors(0, 1) == {1, 2}

    def test_reversed_pair_normalized(self):
        c = set_colors(new_coloring(4), 1, 0, [3])
        assert c.masks[0] == 0b100
        assert c.colors(0, 1) == {3}

    def test_clear(self):
        c = set_colors(new_coloring(3), 0, 1, {1, 2})
        c = set_colors(c, 0, 1, set())
        assert c.masks == bytes(3)

    def test_other_pairs_untouched_and_original_kept(self):
        base = new_coloring(4).set_colors(2, 3, {1})
        c = base.set_colors(0, 2, {2, 3})
        assert base.mask(0, 2) == 0
        assert c.mask(2, 3) == 1 and c.mask(0, 2) == 6

    @pytest.mark.parametrize("u,v", [(1, 1), (0, 4), (-1, 2)])
    def test_bad_indices(self, u, v):
        with pytest.raises(ColoringError):
            set_colors(new_coloring(4), u, v, {1})

    def test_bad_color(self):
        with pytest.raises(ColoringError):
            set_colors(new_coloring(3), 0, 1, {4})


def test_pair_index_is_lexicographic_rank():
    n = 7
    ranks = [pair_index(n, u, v) for u in range(n) for v in range(u + 1, n)]
    assert ranks == list(range(num_pairs(n)))


class TestCounts:
    def test_frankl_5(self):
        assert edge_counts(frankl_bipartite(5)) == (6, 6, 6)

    def test_theorem1_10_8(self):
        c = theorem1_construction(10, 8)
        assert edge_counts(c) == (28, 29, 17)
        assert t_colored_counts(c) == (0, 16, 29, 0)

    def test_t_colored_trivial(self):
        assert t_colored_counts(new_coloring(4)) == (6, 0, 0, 0)
        assert t_colored_counts(set_colors(new_coloring(2), 0, 1, {1, 2, 3})) == (0, 0, 0, 1)

    @given(colorings())
    def test_counting_identity(self, c):
        c0, c1, c2, c3 = t_colored_counts(c)
        assert c0 + c1 + c2 + c3 == num_pairs(c.n)
        assert c1 + 2 * c2 + 3 * c3 == edge_counts(c).total

    @given(colorings())
    def test_matches_naive(self, c):
        assert edge_counts(c) == naive_counts(c.n, c.masks)


class TestProduct:
    def test_values(self):
        assert product(EdgeCounts(6, 6, 6)) == 216
        assert product(EdgeCounts(28, 29, 17)) == 13804
        assert product(EdgeCounts(0, 5, 9)) == 0

    def test_wide_values_are_exact(self):
        big = num_pairs(5000)
        assert product((big, big, big)) == big**3
        assert big**3 > 2**63

    def test_fixed_width_overflow_is_loud(self):
        big = num_pairs(5000)
        with pytest.raises(OverflowError):
            product((big, big, big), max_bits=64)
        small = num_pairs(2048)
        assert product((small,) * 3, max_bits=64) == small**3

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            product((1, -1, 1))


class TestRainbow:
    def test_forced_triangle(self):
        c = coloring_from_pairs(3, {(0, 1): [1], (0, 2): [2], (1, 2): [3]})
        w = has_rainbow_triangle(c)
        assert w is not None
        assert w.vertices == (0, 1, 2)
        assert w.assignment == (1, 2, 3)

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_missing_color(self, n):
        c = Coloring(n, bytes([0b011]) * num_pairs(n))
        assert has_rainbow_triangle(c) is None

    def test_theorem1_rainbow_free(self):
        assert has_rainbow_triangle(theorem1_construction(10, 8)) is None

    def test_witness_is_least(self):
        # triangles (0,1,2) not rainbow, (0,1,3) rainbow, (1,2,3) rainbow
        c = coloring_from_pairs(
            4, {(0, 1): [1, 2], (0, 3): [1, 2, 3], (1, 3): [3], (1, 2): [2], (2, 3): [1]}
        )
        w = has_rainbow_triangle(c)
        assert w.vertices == (0, 1, 3)
        assert w.assignment == (1, 2, 3)
        ms = (c.mask(0, 1), c.mask(0, 3), c.mask(1, 3))
        assert all(ms[k] >> (w.assignment[k] - 1) & 1 for k in range(3))

    def test_oracle_equivalence_1000_random(self, rng):
        for _ in range(1000):
            c = random_coloring(rng, rng.randint(1, 5), density=rng.random())
            assert (has_rainbow_triangle(c) is not None) == naive_has_rainbow(c.n, c.masks)

    @given(colorings(max_n=6), st.permutations((1, 2, 3)))
    def test_color_permutation_equivariance(self, c, perm):
        d = c.permute_colors(perm)
        e = edge_counts(c)
        moved = [0, 0, 0]
        for i in range(3):
            moved[perm[i] - 1] = e[i]
        assert tuple(edge_counts(d)) == tuple(moved)
        assert (has_rainbow_triangle(c) is None) == (has_rainbow_triangle(d) is None)

    @given(colorings(max_n=6), st.randoms(use_true_random=False))
    def test_vertex_relabel_invariance(self, c, r):
        perm = list(range(c.n))
        r.shuffle(perm)
        d = c.relabel(perm)
        assert edge_counts(d) == edge_counts(c)
        assert t_colored_counts(d) == t_colored_counts(c)
        assert (has_rainbow_triangle(c) is None) == (has_rainbow_triangle(d) is None)

    @given(colorings(max_n=6), st.data())
    def test_removing_colors_never_creates_rainbow(self, c, data):
        if has_rainbow_triangle(c) is not None or not any(c.masks):
            return
        k = data.draw(st.sampled_from([i for i, m in enumerate(c.masks) if m]))
        bit = data.draw(st.sampled_from([b for b in (1, 2, 4) if c.masks[k] & b]))
        buf = bytearray(c.masks)
        buf[k] &= ~bit
        assert has_rainbow_triangle(Coloring(c.n, bytes(buf))) is None


class TestFullyColored:
    def test_cases(self):
        assert is_fully_colored(theorem1_construction(9, 6))
        assert not is_fully_colored(frankl_bipartite(5))
        assert is_fully_colored(new_coloring(1))


class TestCanonical:
    def test_invariant_under_relabel_and_colors(self, rng):
        for _ in range(20):
            c = random_coloring(rng, rng.randint(2, 6))
            perm = list(range(c.n))
            rng.shuffle(perm)
            assert canonical_form(c) == canonical_form(c.relabel(perm))
            assert canonical_form(c) == canonical_form(c.permute_colors((3, 2, 1)))

    def test_distinguishes_mask_multisets(self):
        one = coloring_from_pairs(3, {(0, 1): [1]})
        two = coloring_from_pairs(3, {(0, 1): [1, 2]})
        assert canonical_form(one) != canonical_form(two)

    def test_equal_iff_isomorphic_n4(self, rng):
        # brute-force isomorphism test as the reference
        def iso(a, b):
            for vp in permutations(range(a.n)):
                r = a.relabel(vp)
                for cp in permutations((1, 2, 3)):
                    if r.permute_colors(cp) == b:
                        return True
            return False

        cs = [random_coloring(rng, 4, density=0.5) for _ in range(40)]
        for a in cs[:20]:
            for b in cs[20:]:
                assert (canonical_form(a) == canonical_form(b)) == iso(a, b)

    def test_limit(self):
        with pytest.raises(ColoringError):
            canonical_form(new_coloring(10))

    def test_format(self):
        assert canonical_form(new_coloring(3)) == b"3:000"
        assert canonical_form(coloring_from_pairs(3, {(1, 2): [3]})) == b"3:001"


class TestSerialization:
    def test_compact_example(self):
        c = from_compact("334", n=3)
        assert c.colors(0, 1) == {1, 2}
        assert c.colors(0, 2) == {1, 2}
        assert c.colors(1, 2) == {3}
        assert parse("3:334") == c

    @pytest.mark.parametrize("fmt", ["json", "compact"])
    def test_round_trip_theorem1(self, fmt):
        c = theorem1_construction(10, 8)
        assert parse(serialize(c, fmt)) == c

    @given(colorings(max_n=12))
    @settings(max_examples=200)
    def test_round_trip_random(self, c):
        assert parse(serialize(c, "json")) == c
        assert parse(serialize(c, "compact")) == c
        assert from_compact(to_compact(c, with_n=False), n=c.n) == c

    def test_json_shape(self):
        obj = json.loads(serialize(coloring_from_pairs(3, {(0, 2): [3, 1]}), "json"))
        assert obj == {"n": 3, "pairs": [{"u": 0, "v": 2, "colors": [1, 3]}]}

    @pytest.mark.parametrize(
        "text",
        [
            "3:33",
            "3:3345",
            "3:338",
            "3:3a4",
            "x:334",
            "334",
            '{"n": 3, "pairs": [{"u": 0, "v": 3, "colors": [1]}]}',
            '{"n": 3, "pairs": [{"u": 0, "v": 1, "colors": [1]}, {"u": 1, "v": 0, "colors": [2]}]}',
            '{"n": 3, "pairs": [{"u": 1, "v": 1, "colors": [1]}]}',
            '{"n": 3, "pairs": [{"u": 0, "v": 1, "colors": [4]}]}',
            '{"n": 3, "pairs": [{"u": 0, "v": 1}]}',
            '{"n": 0, "pairs": []}',
            '{"n": 3, "pairs": [',
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse(text)

    def test_mask_of(self):
        assert mask_of([1, 3]) == 5
        assert mask_of([]) == 0
