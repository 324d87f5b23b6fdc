import logging
from collections import Counter
from dataclasses import dataclass
from math import comb, isqrt
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from hedgehog_ramsey.utils.hypergraph_utils import (
    Graph2,
    Hypergraph3,
    Pair,
    Triple,
    degeneracy3,
    sorted_triple,
)
from hedgehog_ramsey.utils.random_utils import SplitMix64


"""
Generalised hedgehogs: a body B and spikes S, each spike in exactly one edge together
with one pair of body vertices. Hedgehogs built here use the canonical labelling
(body 0..b-1, spikes b..b+s-1), but any labelling with ids below n_total is accepted;
ids used by neither the body nor a spike are isolated padding vertices.
"""


@dataclass(frozen=True)
class Spike:
    vertex: int
    pair: Pair


@dataclass(frozen=True)
class Hedgehog:
    body: Tuple[int, ...]
    spikes: Tuple[Spike, ...]
    n_total: int

    def __post_init__(self):
        body_set = set(self.body)
        if len(body_set) != len(self.body):
            raise ValueError(f"body {self.body} repeats a vertex")
        spike_vertices = [s.vertex for s in self.spikes]
        if len(set(spike_vertices)) != len(spike_vertices):
            raise ValueError("a spike vertex appears in more than one spike record")
        if body_set & set(spike_vertices):
            raise ValueError("body and spike vertex sets are not disjoint")
        for s in self.spikes:
            a, b = s.pair
            if not (a < b and a in body_set and b in body_set):
                raise ValueError(
                    f"spike {s.vertex} is bound to {s.pair}, not a sorted pair of body vertices"
                )
        if len(self.body) + len(self.spikes) > self.n_total:
            raise ValueError(
                f"n_total {self.n_total} is smaller than |body| + |spikes| = {len(self.body) + len(self.spikes)}"
            )
        if any(not 0 <= x < self.n_total for x in list(body_set) + spike_vertices):
            raise ValueError(f"vertex ids must lie in [0, {self.n_total})")

    @property
    def num_edges(self) -> int:
        return len(self.spikes)

    def edges(self) -> List[Triple]:
        return [sorted_triple(s.pair[0], s.pair[1], s.vertex) for s in self.spikes]

    def padding(self) -> List[int]:
        used = set(self.body) | {s.vertex for s in self.spikes}
        return [x for x in range(self.n_total) if x not in used]

    def pair_multiplicity(self) -> Counter:
        return Counter(s.pair for s in self.spikes)

    def canonical(self) -> "Hedgehog":
        """Relabel to body 0..b-1 (in body order) and spikes b.. (in spike order)."""
        relabel = {x: i for i, x in enumerate(self.body)}
        b = len(self.body)
        spikes = []
        for idx, s in enumerate(self.spikes):
            u, v = relabel[s.pair[0]], relabel[s.pair[1]]
            spikes.append(Spike(b + idx, (min(u, v), max(u, v))))
        return Hedgehog(tuple(range(b)), tuple(spikes), self.n_total)


def hstar_vertex_count(b: int, k: int, m: int) -> int:
    """Vertices of H*(b, k, m) before padding: body, one spike per pair, m per heavy pair."""
    return b + comb(b, 2) + comb(k, 2) * m


@dataclass(frozen=True)
class HStarParams:
    b: int
    k: int
    m: int
    n_total: int

    def __post_init__(self):
        if self.b < 2:
            raise ValueError(f"body size b={self.b} must be at least 2")
        if not 1 <= self.k <= self.b:
            raise ValueError(f"heavy core k={self.k} must satisfy 1 <= k <= b={self.b}")
        if self.m < 0:
            raise ValueError(f"extra spikes per heavy pair m={self.m} must be non-negative")
        if self.base_vertices > self.n_total:
            raise ValueError(
                f"budget violated: b + C(b,2) + C(k,2)*m = {self.base_vertices} > n_total = {self.n_total}"
            )

    @property
    def base_vertices(self) -> int:
        return hstar_vertex_count(self.b, self.k, self.m)


@dataclass(frozen=True)
class InvalidHedgehog:
    reason: str
    edge: Optional[Triple] = None
    vertex: Optional[int] = None


def colex_body_pairs(b: int) -> List[Pair]:
    return [(i, j) for j in range(b) for i in range(j)]


def standard_hedgehog(b: int) -> Hedgehog:
    if b < 2:
        raise ValueError(f"body size b={b} must be at least 2")
    pairs = colex_body_pairs(b)
    spikes = tuple(Spike(b + idx, p) for idx, p in enumerate(pairs))
    return Hedgehog(tuple(range(b)), spikes, b + len(pairs))


def single_edge_hedgehog() -> Hedgehog:
    return standard_hedgehog(2)


def standard_body_size(n: int) -> int:
    """Largest b >= 2 with b + C(b, 2) <= n, the body of the largest standard hedgehog on n vertices."""
    b = 2
    if b + comb(b, 2) > n:
        raise ValueError(f"no standard hedgehog fits in {n} vertices")
    while (b + 1) + comb(b + 1, 2) <= n:
        b += 1
    return b


def build_hstar(p: HStarParams) -> Hedgehog:
    """
    One spike on every body pair, m more on every pair inside the first k body vertices,
    then padding spikes round-robin over all body pairs in colex order up to n_total vertices.
    """
    pairs = colex_body_pairs(p.b)
    bound: List[Pair] = list(pairs)
    for pair in colex_body_pairs(p.k):
        bound.extend([pair] * p.m)
    padding = p.n_total - p.b - len(bound)
    bound.extend(pairs[i % len(pairs)] for i in range(padding))
    spikes = tuple(Spike(p.b + idx, pair) for idx, pair in enumerate(bound))
    return Hedgehog(tuple(range(p.b)), spikes, p.n_total)


def heavy_core_hedgehog(p: HStarParams) -> Hedgehog:
    """The first k body vertices of H* with their spikes, m + 1 on every pair."""
    return build_hstar(
        HStarParams(b=p.k, k=p.k, m=p.m, n_total=hstar_vertex_count(p.k, p.k, p.m))
    )


def paper_hstar_params(n: int) -> HStarParams:
    """
    Large-n constants of the lower-bound hedgehog: body floor(sqrt(n)/50), a heavy core of
    10 body vertices carrying floor(n/100) extra spikes per pair, n vertices in total.
    """
    b = isqrt(n) // 50 if n >= 0 else 0
    if b < 10:
        raise ValueError(f"n={n} gives body size {b}, smaller than the heavy core k=10")
    return HStarParams(b=b, k=10, m=n // 100, n_total=n)


def to_hypergraph(h: Hedgehog) -> Hypergraph3:
    return Hypergraph3.from_edges(h.n_total, h.edges())


def validate_hedgehog(
    h: Hypergraph3, body: Iterable[int]
) -> Union[Hedgehog, InvalidHedgehog]:
    body_set = set(body)
    for x in body_set:
        if not 0 <= x < h.n:
            raise ValueError(f"body vertex {x} is outside [0, {h.n})")
    spikes = []
    for e in h.edges:
        inside = [x for x in e if x in body_set]
        if len(inside) != 2:
            return InvalidHedgehog(f"edge has {len(inside)} body vertices", edge=e)
        (s,) = [x for x in e if x not in body_set]
        if len(h.incidence[s]) > 1:
            return InvalidHedgehog(
                f"spike has degree {len(h.incidence[s])}", edge=e, vertex=s
            )
        spikes.append(Spike(s, (inside[0], inside[1])))
    spikes.sort(key=lambda s: s.vertex)
    return Hedgehog(tuple(sorted(body_set)), tuple(spikes), h.n)


def spike_pair_graph(h: Hedgehog) -> Graph2:
    """Graph F on the body (F-vertex i is h.body[i]) with an edge per pair carrying a spike."""
    index = {x: i for i, x in enumerate(h.body)}
    return Graph2.from_edges(
        len(h.body), {(index[s.pair[0]], index[s.pair[1]]) for s in h.spikes}
    )


def decompose_hedgehogs(h: Hypergraph3) -> List[Hedgehog]:
    """
    Split a 1-degenerate 3-graph without isolated vertices into edge-disjoint hedgehogs.

    Each round takes the vertices of degree one in the remaining edge set; every remaining
    edge through one of them becomes a hedgehog edge with its smallest such vertex as the
    spike and the other two vertices in the body. Those edges are removed and the process
    repeats until no edges are left.
    """
    isolated = h.isolated_vertices()
    if isolated:
        raise ValueError(
            f"hypergraph has {len(isolated)} isolated vertices (first: {isolated[0]}), strip them first"
        )
    degeneracy = degeneracy3(h)
    if degeneracy.value > 1:
        raise ValueError(
            f"hypergraph is {degeneracy.value}-degenerate, decomposition needs degeneracy 1"
        )

    remaining = set(range(len(h.edges)))
    degrees = [len(i) for i in h.incidence]
    parts: List[Hedgehog] = []
    while remaining:
        ones = {v for v in range(h.n) if degrees[v] == 1}
        round_edges = sorted(
            idx for idx in remaining if any(x in ones for x in h.edges[idx])
        )
        assert round_edges, "a 1-degenerate edge set must contain a vertex of degree 1"
        body = set()
        spikes = []
        for idx in round_edges:
            e = h.edges[idx]
            spike = min(x for x in e if x in ones)
            u, v = [x for x in e if x != spike]
            body.update((u, v))
            spikes.append(Spike(spike, (u, v)))
        for idx in round_edges:
            remaining.discard(idx)
            for x in h.edges[idx]:
                degrees[x] -= 1
        spikes.sort(key=lambda s: s.vertex)
        parts.append(Hedgehog(tuple(sorted(body)), tuple(spikes), h.n))
        logging.debug(f"decomposition round {len(parts)}: {len(spikes)} edges")
    return parts


#### -------------------------    GENERATORS    ------------------------- ####


def random_hedgehog(
    b: int, s: int, seed: int, n_total: Optional[int] = None
) -> Hedgehog:
    """Canonical hedgehog with s spikes bound to uniformly random body pairs."""
    if b < 2:
        raise ValueError(f"body size b={b} must be at least 2")
    rng = SplitMix64(seed)
    pairs = colex_body_pairs(b)
    spikes = tuple(Spike(b + idx, rng.choice(pairs)) for idx in range(s))
    return Hedgehog(tuple(range(b)), spikes, b + s if n_total is None else n_total)


def random_hedgehog_on(n: int, seed: int) -> Hedgehog:
    """A random hedgehog on exactly n vertices, body size drawn from [2, n-1]."""
    if n < 3:
        raise ValueError(f"a hedgehog needs at least 3 vertices, got {n}")
    rng = SplitMix64(seed)
    b = 2 + rng.randbelow(n - 2)
    return random_hedgehog(b, n - b, rng.next_u64())


def random_one_degenerate(n_vertices: int, seed: int) -> Hypergraph3:
    """
    A 1-degenerate 3-graph without isolated vertices, grown by gluing: every step adds one
    edge containing one or two new vertices, so each new vertex has degree one when it
    appears. A seeded relabelling hides the construction order.
    """
    if n_vertices < 3:
        raise ValueError(f"need at least 3 vertices, got {n_vertices}")
    rng = SplitMix64(seed)
    edges: List[Tuple[int, int, int]] = [(0, 1, 2)]
    size = 3
    while size < n_vertices:
        fresh = 2 if (n_vertices - size >= 2 and rng.bernoulli(0.3)) else 1
        old = rng.sample(range(size), 3 - fresh)
        new = list(range(size, size + fresh))
        edges.append(sorted_triple(*(old + new)))
        size += fresh
    perm = list(range(n_vertices))
    rng.shuffle(perm)
    return Hypergraph3.from_edges(
        n_vertices, [tuple(perm[x] for x in e) for e in edges]
    )


def hedgehog_summary(h: Hedgehog) -> Dict[str, int]:
    mult = h.pair_multiplicity()
    return {
        "body": len(h.body),
        "spikes": len(h.spikes),
        "n_total": h.n_total,
        "pairs": len(mult),
        "max_multiplicity": max(mult.values(), default=0),
    }
