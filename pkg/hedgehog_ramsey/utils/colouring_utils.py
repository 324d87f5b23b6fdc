from functools import cached_property
from math import comb
from typing import List, Tuple

import torch

from hedgehog_ramsey.utils.hypergraph_utils import (
    Graph2,
    colex_pairs,
    sorted_triple,
    triple_rank,
)
from hedgehog_ramsey.utils.random_utils import bernoulli_stream


"""
Red/blue colourings of the complete 3-graph on [0, N).

Two sources are supported. An ExplicitColouring stores one bit per triple, indexed by colex
rank, red = 1, packed little-endian into bytes (bit r lives in byte r // 8 at position r % 8).
A DerivedColouring is an oracle over a 2-graph gamma: a triple is red iff it contains at
least one gamma edge.

Per-pair colour counts are needed for every pair at once by the embedding code, so both
sources provide red_count_matrix(): an N x N long tensor, computed with neighbourhood
algebra for derived colourings and block-wise over colex ranks for explicit ones.
"""


RED = "red"
BLUE = "blue"
COLOURS = (RED, BLUE)

# 2**27 triples = 16 MiB packed
DEFAULT_MAX_EXPLICIT_TRIPLES = 1 << 27

_BIT_WEIGHTS = torch.tensor([1, 2, 4, 8, 16, 32, 64, 128], dtype=torch.uint8)


def check_colour(colour: str) -> str:
    if colour not in COLOURS:
        raise ValueError(f"colour {colour} not supported ({list(COLOURS)})")
    return colour


def other_colour(colour: str) -> str:
    return BLUE if check_colour(colour) == RED else RED


def pack_bits(bits: torch.Tensor) -> bytes:
    bits = bits.to(torch.uint8).flatten()
    pad = (-bits.numel()) % 8
    if pad:
        bits = torch.cat([bits, torch.zeros(pad, dtype=torch.uint8)])
    packed = (bits.view(-1, 8) * _BIT_WEIGHTS).sum(dim=1, dtype=torch.int64)
    return bytes(packed.tolist())


def unpack_bits(packed: bytes, count: int) -> torch.Tensor:
    if count == 0:
        return torch.zeros(0, dtype=torch.bool)
    raw = torch.tensor(list(packed), dtype=torch.uint8)
    bits = (raw.view(-1, 1) & _BIT_WEIGHTS) != 0
    return bits.flatten()[:count]


class TripleColouring:
    """
    Base class for total red/blue colourings of the triples of [0, n).
    Subclasses implement is_red and red_count_matrix; instances are immutable.
    """

    n: int

    def is_red(self, u: int, v: int, w: int) -> bool:
        raise NotImplementedError

    def red_count_matrix(self) -> torch.Tensor:
        """
        Long tensor C with C[u, v] = number of w (distinct from u, v) with uvw red, zero diagonal.
        """
        raise NotImplementedError

    def colour(self, u: int, v: int, w: int) -> str:
        return RED if self.is_red(u, v, w) else BLUE

    def has_colour(self, u: int, v: int, w: int, colour: str) -> bool:
        return self.is_red(u, v, w) == (colour == RED)

    def _check_triple(self, u: int, v: int, w: int) -> Tuple[int, int, int]:
        i, j, k = sorted_triple(u, v, w)
        if i == j or j == k or i < 0 or k >= self.n:
            raise ValueError(f"({u}, {v}, {w}) is not a triple of [0, {self.n})")
        return i, j, k

    def pair_colour_counts(self, u: int, v: int) -> Tuple[int, int]:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"({u}, {v}) is not a pair of [0, {self.n})")
        red = sum(
            1 for w in range(self.n) if w != u and w != v and self.is_red(u, v, w)
        )
        return red, self.n - 2 - red

    def blue_count_matrix(self) -> torch.Tensor:
        counts = (self.n - 2) - self.red_count_matrix()
        counts.fill_diagonal_(0)
        return counts


class ExplicitColouring(TripleColouring):
    def __init__(self, n: int, packed: bytes):
        if n < 0:
            raise ValueError(f"host size {n} must be non-negative")
        expected = (comb(n, 3) + 7) // 8
        if len(packed) != expected:
            raise ValueError(
                f"explicit colouring on {n} vertices needs {expected} bytes, got {len(packed)}"
            )
        self.n = n
        self.packed = bytes(packed)

    @classmethod
    def from_bits(cls, n: int, bits: torch.Tensor) -> "ExplicitColouring":
        if bits.numel() != comb(n, 3):
            raise ValueError(
                f"explicit colouring on {n} vertices needs {comb(n, 3)} bits, got {bits.numel()}"
            )
        return cls(n, pack_bits(bits))

    @classmethod
    def from_int(cls, n: int, mask: int) -> "ExplicitColouring":
        """Bit r of mask is the colour of the triple of colex rank r."""
        size = comb(n, 3)
        if not 0 <= mask < (1 << size) or (size == 0 and mask):
            raise ValueError(f"mask does not fit the {size} triples of [0, {n})")
        return cls(n, mask.to_bytes((size + 7) // 8, "little"))

    @classmethod
    def constant(cls, n: int, colour: str) -> "ExplicitColouring":
        fill = check_colour(colour) == RED
        return cls.from_bits(n, torch.full((comb(n, 3),), fill, dtype=torch.bool))

    def bits(self) -> torch.Tensor:
        return unpack_bits(self.packed, comb(self.n, 3))

    def is_red(self, u: int, v: int, w: int) -> bool:
        i, j, k = self._check_triple(u, v, w)
        r = triple_rank(i, j, k)
        return bool(self.packed[r >> 3] >> (r & 7) & 1)

    @cached_property
    def _red_counts(self) -> torch.Tensor:
        n = self.n
        counts = torch.zeros(n, n, dtype=torch.int64)
        if n < 3:
            return counts
        bits = self.bits().to(torch.float64)
        small, large = colex_pairs(n)
        for k in range(2, n):
            # triples with largest vertex k are ranks C(k,3) .. C(k,3)+C(k,2)-1, paired with (i, j) in colex order
            start, width = comb(k, 3), comb(k, 2)
            block = bits[start : start + width]
            i, j = small[:width], large[:width]
            counts[i, j] += block.to(torch.int64)
            via_i = torch.bincount(i, weights=block, minlength=k)
            via_j = torch.bincount(j, weights=block, minlength=k)
            counts[:k, k] += (via_i + via_j).round().to(torch.int64)
        return counts + counts.T

    def red_count_matrix(self) -> torch.Tensor:
        return self._red_counts.clone()

    def __eq__(self, other):
        return (
            isinstance(other, ExplicitColouring)
            and self.n == other.n
            and self.packed == other.packed
        )

    def __hash__(self):
        return hash((self.n, self.packed))

    def __repr__(self):
        return f"ExplicitColouring(n={self.n}, red={sum(bin(b).count('1') for b in self.packed)})"


class DerivedColouring(TripleColouring):
    """Triple red iff it contains an edge of gamma."""

    def __init__(self, gamma: Graph2):
        self.gamma = gamma
        self.n = gamma.n

    def is_red(self, u: int, v: int, w: int) -> bool:
        i, j, k = self._check_triple(u, v, w)
        m = self.gamma.masks
        return bool(m[i] >> j & 1 or m[i] >> k & 1 or m[j] >> k & 1)

    def pair_colour_counts(self, u: int, v: int) -> Tuple[int, int]:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"({u}, {v}) is not a pair of [0, {self.n})")
        if self.gamma.has_edge(u, v):
            red = self.n - 2
        else:
            red = len((self.gamma.adjacency[u] | self.gamma.adjacency[v]) - {u, v})
        return red, self.n - 2 - red

    @cached_property
    def _red_counts(self) -> torch.Tensor:
        a = self.gamma.adjacency_matrix().to(torch.float64)
        deg = a.sum(dim=1)
        common = a @ a
        # non-edge uv: |N(u) | N(v)| = d(u) + d(v) - |N(u) & N(v)|; edge uv: every completion is red
        union = deg[:, None] + deg[None, :] - common
        counts = torch.where(a > 0, torch.full_like(union, self.n - 2), union)
        counts = counts.round().to(torch.int64)
        counts.fill_diagonal_(0)
        return counts

    def red_count_matrix(self) -> torch.Tensor:
        return self._red_counts.clone()

    def __eq__(self, other):
        return isinstance(other, DerivedColouring) and self.gamma == other.gamma

    def __hash__(self):
        return hash(self.gamma)

    def __repr__(self):
        return f"DerivedColouring(n={self.n}, gamma_edges={self.gamma.num_edges})"


def derive_colouring(gamma: Graph2) -> DerivedColouring:
    return DerivedColouring(gamma)


def pair_colour_counts(c: TripleColouring, u: int, v: int) -> Tuple[int, int]:
    return c.pair_colour_counts(u, v)


def random_colouring(n: int, red_bias: float, seed: int) -> ExplicitColouring:
    """Each triple red independently with probability red_bias, one splitmix64 draw per colex rank."""
    return ExplicitColouring.from_bits(n, bernoulli_stream(seed, comb(n, 3), red_bias))


def materialise(
    c: TripleColouring, max_triples: int = DEFAULT_MAX_EXPLICIT_TRIPLES
) -> ExplicitColouring:
    if isinstance(c, ExplicitColouring):
        return c
    size = comb(c.n, 3)
    if size > max_triples:
        raise ValueError(
            f"materialising {size} triples exceeds the budget of {max_triples}"
        )
    if isinstance(c, DerivedColouring):
        a = c.gamma.adjacency_matrix()
        small, large = colex_pairs(c.n)
        blocks: List[torch.Tensor] = []
        for k in range(2, c.n):
            width = comb(k, 2)
            i, j = small[:width], large[:width]
            blocks.append(a[i, j] | a[i, k] | a[j, k])
        bits = torch.cat(blocks) if blocks else torch.zeros(0, dtype=torch.bool)
        return ExplicitColouring.from_bits(c.n, bits)
    # generic oracle: ask triple by triple in colex order
    bits = torch.tensor(
        [
            c.is_red(i, j, k)
            for k in range(c.n)
            for j in range(k)
            for i in range(j)
        ],
        dtype=torch.bool,
    )
    return ExplicitColouring.from_bits(c.n, bits)
