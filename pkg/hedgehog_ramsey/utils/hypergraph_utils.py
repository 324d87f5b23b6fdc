import heapq
from dataclasses import dataclass, field
from math import comb
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

import torch


"""
Simple 2-graphs and 3-uniform hypergraphs on integer vertices 0..n-1.

Both types are frozen after construction. Graph2 keeps its adjacency twice: as frozensets
for iteration and as integer bitmasks (bit v of masks[u] is set iff uv is an edge) for the
clique search, which does all of its set algebra with Python ints.

Triples and pairs are indexed in colexicographic order: the rank of i<j<k is
C(i,1) + C(j,2) + C(k,3), and the rank of i<j is i + C(j,2). Colex order has the prefix
property that the triples of [0, k) are exactly ranks 0..C(k,3)-1, which the bit-array
colourings rely on.
"""


Pair = Tuple[int, int]
Triple = Tuple[int, int, int]


#### -------------------------    COLEX RANKING    ------------------------- ####


def triple_rank(i: int, j: int, k: int, n: Optional[int] = None) -> int:
    if not 0 <= i < j < k:
        raise ValueError(f"triple ({i}, {j}, {k}) is not strictly increasing from 0")
    if n is not None and k >= n:
        raise ValueError(f"triple ({i}, {j}, {k}) has a vertex outside [0, {n})")
    return i + comb(j, 2) + comb(k, 3)


def _largest_below(rank: int, r: int, hi: int) -> int:
    # largest x < hi with C(x, r) <= rank
    lo = r - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if comb(mid, r) <= rank:
            lo = mid
        else:
            hi = mid
    return lo


def triple_unrank(rank: int, n: int) -> Triple:
    if not 0 <= rank < comb(n, 3):
        raise ValueError(f"rank {rank} is outside [0, C({n}, 3))")
    k = _largest_below(rank, 3, n)
    rank -= comb(k, 3)
    j = _largest_below(rank, 2, k)
    rank -= comb(j, 2)
    return rank, j, k


def pair_rank(i: int, j: int) -> int:
    if not 0 <= i < j:
        raise ValueError(f"pair ({i}, {j}) is not strictly increasing from 0")
    return i + comb(j, 2)


def pair_unrank(rank: int, n: int) -> Pair:
    if not 0 <= rank < comb(n, 2):
        raise ValueError(f"rank {rank} is outside [0, C({n}, 2))")
    j = _largest_below(rank, 2, n)
    return rank - comb(j, 2), j


def colex_pairs(n: int) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    All pairs i<j of [0, n) in colex order, as two index tensors (small, large).
    The pairs of [0, k) are the first C(k, 2) entries.
    """
    large, small = torch.tril_indices(n, n, offset=-1)
    return small, large


def sorted_triple(u: int, v: int, w: int) -> Triple:
    a, b, c = sorted((u, v, w))
    return a, b, c


#### -------------------------    2-GRAPHS    ------------------------- ####


@dataclass(frozen=True)
class Graph2:
    n: int
    adjacency: Tuple[FrozenSet[int], ...]
    masks: Tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph2":
        if n < 0:
            raise ValueError(f"vertex count {n} must be non-negative")
        adj: List[set] = [set() for _ in range(n)]
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has a vertex outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls._from_sets(n, adj)

    @classmethod
    def from_adjacency_matrix(cls, matrix: torch.Tensor) -> "Graph2":
        n = matrix.shape[0]
        assert matrix.shape == (n, n), f"adjacency matrix must be square, got {tuple(matrix.shape)}"
        m = matrix.to(torch.bool).clone()
        m.fill_diagonal_(False)
        m = m | m.T
        adj: List[set] = [set() for _ in range(n)]
        for u, v in m.nonzero().tolist():
            adj[u].add(v)
        return cls._from_sets(n, adj)

    @classmethod
    def _from_sets(cls, n: int, adj: List[set]) -> "Graph2":
        masks = tuple(sum(1 << v for v in nbrs) for nbrs in adj)
        return cls(n, tuple(frozenset(a) for a in adj), masks)

    @classmethod
    def empty(cls, n: int) -> "Graph2":
        return cls.from_edges(n, [])

    @classmethod
    def complete(cls, n: int) -> "Graph2":
        return cls.from_edges(n, [(i, j) for j in range(n) for i in range(j)])

    @classmethod
    def cycle(cls, n: int) -> "Graph2":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} is outside [0, {self.n})")
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edges(self) -> List[Pair]:
        """Edges (u, v) with u < v, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def complement(self) -> "Graph2":
        everything = set(range(self.n))
        adj = [everything - self.adjacency[u] - {u} for u in range(self.n)]
        return self._from_sets(self.n, adj)

    def adjacency_matrix(self) -> torch.Tensor:
        m = torch.zeros(self.n, self.n, dtype=torch.bool)
        for u, v in self.edges():
            m[u, v] = True
            m[v, u] = True
        return m


#### -------------------------    3-GRAPHS    ------------------------- ####


@dataclass(frozen=True)
class Hypergraph3:
    n: int
    edges: Tuple[Triple, ...]
    incidence: Tuple[Tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Hypergraph3":
        if n < 0:
            raise ValueError(f"vertex count {n} must be non-negative")
        clean = set()
        for e in edges:
            u, v, w = e
            if len({u, v, w}) != 3:
                raise ValueError(f"edge {tuple(e)} does not have 3 distinct vertices")
            if not all(0 <= x < n for x in (u, v, w)):
                raise ValueError(f"edge {tuple(e)} has a vertex outside [0, {n})")
            clean.add(sorted_triple(u, v, w))
        ordered = tuple(sorted(clean))
        incidence: List[List[int]] = [[] for _ in range(n)]
        for idx, e in enumerate(ordered):
            for x in e:
                incidence[x].append(idx)
        return cls(n, ordered, tuple(tuple(i) for i in incidence))

    @classmethod
    def complete(cls, n: int) -> "Hypergraph3":
        return cls.from_edges(
            n, [(i, j, k) for k in range(n) for j in range(k) for i in range(j)]
        )

    def vertices_with_edges(self) -> List[int]:
        return [v for v in range(self.n) if self.incidence[v]]

    def isolated_vertices(self) -> List[int]:
        return [v for v in range(self.n) if not self.incidence[v]]

    def strip_isolated(self) -> Tuple["Hypergraph3", Dict[int, int]]:
        """
        Drop isolated vertices and relabel the rest in increasing order.
        Returns the new hypergraph and the map new id -> old id.
        """
        keep = self.vertices_with_edges()
        relabel = {old: new for new, old in enumerate(keep)}
        stripped = Hypergraph3.from_edges(
            len(keep), [tuple(relabel[x] for x in e) for e in self.edges]
        )
        return stripped, {new: old for old, new in relabel.items()}


def degree3(h: Hypergraph3, v: int) -> int:
    if not 0 <= v < h.n:
        raise ValueError(f"vertex {v} is outside [0, {h.n})")
    return len(h.incidence[v])


#### -------------------------    DEGENERACY    ------------------------- ####


@dataclass(frozen=True)
class DegeneracyResult:
    value: int
    order: Tuple[int, ...]


def _min_degree_removal(
    n: int, degrees: List[int], on_remove: Callable[[int, List[bool]], List[int]]
) -> DegeneracyResult:
    """
    Iterated minimum-degree deletion, ties to the smallest vertex id.
    on_remove(v, alive) returns the vertices whose degree dropped by one per entry.
    """
    alive = [True] * n
    heap = [(d, v) for v, d in enumerate(degrees)]
    heapq.heapify(heap)
    order: List[int] = []
    value = 0
    while heap:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != degrees[v]:
            continue
        alive[v] = False
        order.append(v)
        value = max(value, d)
        for u in on_remove(v, alive):
            degrees[u] -= 1
            heapq.heappush(heap, (degrees[u], u))
    return DegeneracyResult(value, tuple(order))


def degeneracy2(g: Graph2) -> DegeneracyResult:
    degrees = [len(a) for a in g.adjacency]

    def on_remove(v, alive):
        return [u for u in g.adjacency[v] if alive[u]]

    return _min_degree_removal(g.n, degrees, on_remove)


def degeneracy3(h: Hypergraph3) -> DegeneracyResult:
    """
    Degeneracy over vertex-induced subhypergraphs: an edge dies as soon as any of its
    vertices is removed.
    """
    degrees = [len(i) for i in h.incidence]
    edge_alive = [True] * len(h.edges)

    def on_remove(v, alive):
        dropped = []
        for idx in h.incidence[v]:
            if edge_alive[idx]:
                edge_alive[idx] = False
                dropped.extend(x for x in h.edges[idx] if x != v)
        return dropped

    return _min_degree_removal(h.n, degrees, on_remove)


#### -------------------------    CLIQUES    ------------------------- ####


def _colour_bound(masks: Sequence[int], cand: int) -> int:
    # number of colours of a greedy sequential colouring of cand, an upper bound on its clique number
    colours = 0
    uncoloured = cand
    while uncoloured:
        colours += 1
        avail = uncoloured
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            uncoloured &= ~low
            avail &= ~low & ~masks[v]
    return colours


def _extend(masks: Sequence[int], clique: List[int], cand: int, q: int) -> Optional[List[int]]:
    if len(clique) == q:
        return clique
    if len(clique) + cand.bit_count() < q:
        return None
    if len(clique) + _colour_bound(masks, cand) < q:
        return None
    while cand:
        if len(clique) + cand.bit_count() < q:
            return None
        low = cand & -cand
        v = low.bit_length() - 1
        cand &= ~low
        found = _extend(masks, clique + [v], cand & masks[v], q)
        if found is not None:
            return found
    return None


def has_clique(g: Graph2, q: int) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """
    Exact test for a K_q subgraph, branch and bound over bitsets with a greedy colouring bound.
    Returns (found, witness) where witness is the sorted vertex set of a q-clique.
    """
    if q < 1:
        raise ValueError(f"clique size {q} must be at least 1")
    found = _extend(g.masks, [], (1 << g.n) - 1, q)
    if found is None:
        return False, None
    return True, tuple(sorted(found))


def has_independent_set(g: Graph2, s: int) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    if s < 1:
        raise ValueError(f"independent set size {s} must be at least 1")
    return has_clique(g.complement(), s)


def max_clique(g: Graph2) -> Tuple[int, ...]:
    """A maximum clique, found by raising the target size until has_clique fails."""
    best: Tuple[int, ...] = ()
    q = 1
    while q <= g.n:
        found, witness = has_clique(g, q)
        if not found:
            break
        best = witness
        q += 1
    return best


def independence_number(g: Graph2) -> int:
    return len(max_clique(g.complement()))
