"""Triples of graphs on a common vertex set, stored as pair colorings.

A pair ``{u, v}`` carries a 3-bit mask: bit ``i-1`` is set iff the pair is
an edge of ``G_i``.  Pairs live in a flat array indexed by the
lexicographic rank of ``(u, v)``, ``u < v``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, NamedTuple

from rainbowtri import kernels

COLORS = (1, 2, 3)
FULL_MASK = 7
CANONICAL_LIMIT = 9


class ColoringError(ValueError):
    """Invalid coloring data or arguments."""


class ParseError(ColoringError):
    """Malformed serialized coloring."""


def mask_of(colors: Iterable[int]) -> int:
    """Mask for a collection of colors drawn from {1, 2, 3}."""
    m = 0
    for col in colors:
        if col not in COLORS:
            raise ColoringError(f"color {col!r} not in {{1, 2, 3}}")
        m |= 1 << (col - 1)
    return m


def colors_of(mask: int) -> tuple[int, ...]:
    return tuple(col for col in COLORS if mask >> (col - 1) & 1)


def popcount(mask: int) -> int:
    return (mask & 1) + (mask >> 1 & 1) + (mask >> 2 & 1)


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(n: int, u: int, v: int) -> int:
    """Lexicographic rank of the pair ``{u, v}`` among all pairs of ``range(n)``."""
    if u == v:
        raise ColoringError(f"pair needs distinct vertices, got {u} twice")
    if u > v:
        u, v = v, u
    if u < 0 or v >= n:
        raise ColoringError(f"pair ({u}, {v}) out of range for n={n}")
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    for u in range(n):
        for v in range(u + 1, n):
            yield u, v


class EdgeCounts(NamedTuple):
    e1: int
    e2: int
    e3: int

    @property
    def total(self) -> int:
        return self.e1 + self.e2 + self.e3


class RainbowWitness(NamedTuple):
    vertices: tuple[int, int, int]
    # color given to each of the pairs (u,v), (u,w), (v,w)
    assignment: tuple[int, int, int]


def product(counts: Iterable[int], max_bits: int | None = None) -> int:
    """Exact product ``e1 * e2 * e3``.

    Python integers never wrap; ``max_bits`` emulates a fixed signed width
    and raises ``OverflowError`` if the product does not fit.
    """
    result = 1
    for e in counts:
        if e < 0:
            raise ValueError(f"edge count must be non-negative, got {e}")
        result *= e
    if max_bits is not None and result >= 1 << (max_bits - 1):
        raise OverflowError(f"product {result} exceeds {max_bits}-bit signed range")
    return result


@dataclass(frozen=True, eq=False)
class Coloring:
    """``n`` vertices and one mask per unordered pair.

    Treat instances as immutable: ``set_colors`` returns a new coloring.
    """

    n: int
    masks: bytes

    def __post_init__(self):
        if self.n < 1:
            raise ColoringError(f"n must be >= 1, got {self.n}")
        masks = bytes(self.masks)
        if len(masks) != num_pairs(self.n):
            raise ColoringError(
                f"expected {num_pairs(self.n)} pair masks for n={self.n}, got {len(masks)}"
            )
        if any(m > FULL_MASK for m in masks):
            raise ColoringError("pair masks must lie in 0..7")
        object.__setattr__(self, "masks", masks)

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self):
        return hash((self.n, self.masks))

    def __repr__(self):
        return f"Coloring({to_compact(self)!r})"

    def mask(self, u: int, v: int) -> int:
        return self.masks[pair_index(self.n, u, v)]

    def colors(self, u: int, v: int) -> frozenset[int]:
        return frozenset(colors_of(self.mask(u, v)))

    def items(self) -> Iterator[tuple[int, int, int]]:
        """``(u, v, mask)`` for every pair in lexicographic order."""
        it = iter(self.masks)
        for u, v in iter_pairs(self.n):
            yield u, v, next(it)

    def set_colors(self, u: int, v: int, colors: Iterable[int] | int) -> Coloring:
        m = colors if isinstance(colors, int) else mask_of(colors)
        if not 0 <= m <= FULL_MASK:
            raise ColoringError(f"mask {m} outside 0..7")
        buf = bytearray(self.masks)
        buf[pair_index(self.n, u, v)] = m
        return Coloring(self.n, bytes(buf))

    def relabel(self, perm: Iterable[int]) -> Coloring:
        """Move vertex ``x`` to ``perm[x]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ColoringError("relabel needs a permutation of range(n)")
        buf = bytearray(num_pairs(self.n))
        for u, v, m in self.items():
            buf[pair_index(self.n, perm[u], perm[v])] = m
        return Coloring(self.n, bytes(buf))

    def permute_colors(self, perm: Iterable[int]) -> Coloring:
        """Rename color ``i`` to ``perm[i-1]``."""
        perm = tuple(perm)
        if sorted(perm) != [1, 2, 3]:
            raise ColoringError("color permutation must rearrange (1, 2, 3)")
        table = [mask_of(perm[c - 1] for c in colors_of(m)) for m in range(8)]
        return Coloring(self.n, bytes(table[m] for m in self.masks))


def new_coloring(n: int) -> Coloring:
    if n < 1:
        raise ColoringError(f"n must be >= 1, got {n}")
    return Coloring(n, bytes(num_pairs(n)))


def set_colors(c: Coloring, u: int, v: int, colors: Iterable[int] | int) -> Coloring:
    return c.set_colors(u, v, colors)


def coloring_from_pairs(n: int, pairs: dict[tuple[int, int], Iterable[int] | int]) -> Coloring:
    buf = bytearray(num_pairs(n))
    for (u, v), cols in pairs.items():
        buf[pair_index(n, u, v)] = cols if isinstance(cols, int) else mask_of(cols)
    return Coloring(n, bytes(buf))


def edge_counts(c: Coloring) -> EdgeCounts:
    hist = [0] * 8
    for m in c.masks:
        hist[m] += 1
    e = [sum(hist[m] for m in range(8) if m >> bit & 1) for bit in range(3)]
    return EdgeCounts(*e)


def t_colored_counts(c: Coloring) -> tuple[int, int, int, int]:
    """Number of pairs that are 0-, 1-, 2- and 3-colored."""
    out = [0, 0, 0, 0]
    for m in c.masks:
        out[popcount(m)] += 1
    return tuple(out)


def is_fully_colored(c: Coloring) -> bool:
    return 0 not in c.masks


def has_rainbow_triangle(c: Coloring) -> RainbowWitness | None:
    """Least rainbow triangle, or ``None`` if the coloring is rainbow-free.

    Triangles are scanned in lexicographic ``(u, v, w)`` order; the
    assignment is the lexicographically least valid color triple for the
    pairs ``(u,v), (u,w), (v,w)``.
    """
    tri = kernels.find_rainbow(c.n, c.masks)
    if tri is None:
        return None
    u, v, w = tri
    ms = (c.mask(u, v), c.mask(u, w), c.mask(v, w))
    for assignment in permutations(COLORS):
        if all(ms[k] >> (assignment[k] - 1) & 1 for k in range(3)):
            return RainbowWitness(tri, assignment)
    raise AssertionError("kernel reported a triangle without a rainbow assignment")


def is_rainbow_free(c: Coloring) -> bool:
    return kernels.find_rainbow(c.n, c.masks) is None


def canonical_form(c: Coloring, limit: int = CANONICAL_LIMIT) -> bytes:
    """Least compact encoding over all vertex relabelings and color renamings.

    Two colorings get the same canonical form iff one maps to the other
    under some vertex permutation plus color permutation.  Cost is
    ``n! * 6`` candidate encodings.
    """
    if c.n > limit:
        raise ColoringError(f"canonical_form limited to n <= {limit}, got n={c.n}")
    best = kernels.canonical_masks(c.n, c.masks)
    return f"{c.n}:{_digits(best)}".encode("ascii")


# -- serialization ---------------------------------------------------------


def _digits(masks: bytes) -> str:
    return "".join("01234567"[m] for m in masks)


def to_compact(c: Coloring, with_n: bool = True) -> str:
    """Octal digit per pair in lexicographic order, optionally ``"n:"``-prefixed."""
    digits = _digits(c.masks)
    return f"{c.n}:{digits}" if with_n else digits


def from_compact(text: str, n: int | None = None) -> Coloring:
    text = text.strip()
    if ":" in text:
        head, _, body = text.partition(":")
        try:
            prefix_n = int(head)
        except ValueError:
            raise ParseError(f"bad vertex-count prefix {head!r}") from None
        if n is not None and n != prefix_n:
            raise ParseError(f"prefix says n={prefix_n} but n={n} was supplied")
        n = prefix_n
        text = body
    if n is None:
        raise ParseError("compact format needs n (as an 'n:' prefix or argument)")
    if n < 1:
        raise ParseError(f"n must be >= 1, got {n}")
    if len(text) != num_pairs(n):
        raise ParseError(f"expected {num_pairs(n)} mask digits for n={n}, got {len(text)}")
    bad = [ch for ch in text if ch not in "01234567"]
    if bad:
        raise ParseError(f"mask character {bad[0]!r} is not an octal digit 0-7")
    return Coloring(n, bytes(int(ch) for ch in text))


def to_json_obj(c: Coloring) -> dict:
    return {
        "n": c.n,
        "pairs": [
            {"u": u, "v": v, "colors": list(colors_of(m))}
            for u, v, m in c.items()
            if m
        ],
    }


def to_json(c: Coloring) -> str:
    return json.dumps(to_json_obj(c), separators=(",", ":"))


def from_json_obj(obj) -> Coloring:
    if not isinstance(obj, dict) or "n" not in obj:
        raise ParseError("JSON coloring must be an object with an 'n' field")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"'n' must be a positive integer, got {n!r}")
    pairs = obj.get("pairs", [])
    if not isinstance(pairs, list):
        raise ParseError("'pairs' must be a list")
    buf = bytearray(num_pairs(n))
    seen = set()
    for k, entry in enumerate(pairs):
        try:
            u, v, cols = entry["u"], entry["v"], entry["colors"]
        except (TypeError, KeyError):
            raise ParseError(f"pair entry {k} needs 'u', 'v' and 'colors'") from None
        for x in (u, v):
            if not isinstance(x, int) or isinstance(x, bool):
                raise ParseError(f"pair entry {k}: vertex {x!r} is not an integer")
            if not 0 <= x < n:
                raise ParseError(f"pair entry {k}: vertex {x} out of range for n={n}")
        if u == v:
            raise ParseError(f"pair entry {k}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate pair {key}")
        seen.add(key)
        if not isinstance(cols, list) or any(
            not isinstance(col, int) or isinstance(col, bool) or col not in COLORS
            for col in cols
        ):
            raise ParseError(f"pair entry {k}: colors must be a list drawn from 1..3")
        if len(set(cols)) != len(cols):
            raise ParseError(f"pair entry {k}: repeated color")
        buf[pair_index(n, *key)] = mask_of(cols)
    return Coloring(n, bytes(buf))


def serialize(c: Coloring, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(c)
    if fmt == "compact":
        return to_compact(c)
    raise ValueError(f"unknown format {fmt!r}")


def parse(text: str, n: int | None = None) -> Coloring:
    """Parse either format; JSON is recognized by a leading ``{``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        c = from_json_obj(obj)
        if n is not None and c.n != n:
            raise ParseError(f"file says n={c.n} but n={n} was supplied")
        return c
    return from_compact(stripped, n)
