import logging
import time
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import torch

from hedgehog_ramsey.utils.colouring_utils import (
    BLUE,
    RED,
    ExplicitColouring,
    TripleColouring,
    check_colour,
)
from hedgehog_ramsey.utils.hedgehog_utils import Hedgehog, spike_pair_graph
from hedgehog_ramsey.utils.hypergraph_utils import Graph2, degeneracy2
from hedgehog_ramsey.utils.random_utils import _shard_partition


"""
Embedding generalised hedgehogs into red/blue coloured complete 3-graphs.

cfr_embed is the constructive greedy algorithm: build the graph of colour-scarce pairs,
mark vertices by how many red-scarce pairs they lie in, take the majority class V1, embed
the body inside V1 along a degeneracy order of the spike-pair graph F while avoiding scarce
pairs on F-edges, then place spikes greedily. find_mono_copy_exact is the exhaustive
oracle used to cross-check it on small hosts, and ramsey_exact runs that oracle over every
colouring of a small host.
"""


@dataclass(frozen=True)
class AuxGraph:
    N: int
    red_pairs: Graph2
    blue_pairs: Graph2
    d_r: int
    d_b: int

    def scarce_pairs(self, colour: str) -> Graph2:
        return self.red_pairs if check_colour(colour) == RED else self.blue_pairs


@dataclass(frozen=True)
class VertexMarking:
    marks: Tuple[str, ...]
    majority_colour: str
    V1: Tuple[int, ...]


@dataclass(frozen=True)
class Embedding:
    map: Dict[int, int]
    colour: str

    def image(self, x: int) -> int:
        return self.map[x]


@dataclass(frozen=True)
class EmbeddingFailure:
    stage: str
    vertex: int
    detail: str


@dataclass(frozen=True)
class Lemma4Report:
    passed: bool
    violations: Tuple[int, ...]
    red_degrees: Tuple[int, ...]
    blue_degrees: Tuple[int, ...]


def build_aux_graph(c: TripleColouring, d_r: int, d_b: int) -> AuxGraph:
    """
    Red pair: fewer than d_r red triples through it. Blue pair: fewer than d_b blue triples.
    A pair may be both (only when N - 2 < d_r + d_b - 1) or neither.
    """
    if d_r < 1 or d_b < 1:
        raise ValueError(f"thresholds d_r={d_r}, d_b={d_b} must be at least 1")
    red = c.red_count_matrix()
    blue = c.blue_count_matrix()
    off_diagonal = ~torch.eye(c.n, dtype=torch.bool)
    return AuxGraph(
        N=c.n,
        red_pairs=Graph2.from_adjacency_matrix((red < d_r) & off_diagonal),
        blue_pairs=Graph2.from_adjacency_matrix((blue < d_b) & off_diagonal),
        d_r=d_r,
        d_b=d_b,
    )


def check_lemma4(c: TripleColouring, d_r: int, d_b: int) -> Lemma4Report:
    """Every vertex lies in at most 2 d_b red pairs or in at most 2 d_r blue pairs."""
    if c.n < d_r + d_b + 1:
        raise ValueError(
            f"host has {c.n} vertices, the dichotomy needs at least d_r + d_b + 1 = {d_r + d_b + 1}"
        )
    aux = build_aux_graph(c, d_r, d_b)
    red_degrees = tuple(len(a) for a in aux.red_pairs.adjacency)
    blue_degrees = tuple(len(a) for a in aux.blue_pairs.adjacency)
    violations = tuple(
        u
        for u in range(c.n)
        if red_degrees[u] > 2 * d_b and blue_degrees[u] > 2 * d_r
    )
    if violations:
        logging.warning(f"dichotomy violated at vertices {violations}")
    return Lemma4Report(not violations, violations, red_degrees, blue_degrees)


def mark_vertices(aux: AuxGraph, threshold: int) -> VertexMarking:
    """Red mark iff the vertex lies in at most threshold red pairs; ties in class size go to red."""
    if threshold < 0:
        raise ValueError(f"marking threshold {threshold} must be non-negative")
    marks = tuple(
        RED if len(aux.red_pairs.adjacency[u]) <= threshold else BLUE
        for u in range(aux.N)
    )
    reds = tuple(u for u, m in enumerate(marks) if m == RED)
    blues = tuple(u for u, m in enumerate(marks) if m == BLUE)
    if len(reds) >= len(blues):
        return VertexMarking(marks, RED, reds)
    return VertexMarking(marks, BLUE, blues)


def verify_embedding(
    c: TripleColouring, h: Hedgehog, colour: str, e: Embedding
) -> bool:
    if colour != e.colour or set(e.map) != set(range(h.n_total)):
        return False
    images = list(e.map.values())
    if len(set(images)) != len(images) or any(not 0 <= u < c.n for u in images):
        return False
    return all(
        c.has_colour(e.map[s.pair[0]], e.map[s.pair[1]], e.map[s.vertex], colour)
        for s in h.spikes
    )


def _embedding_thresholds(N: int, n: int) -> int:
    # below the guaranteed host size a pair lies in at most N - 2 triples
    return max(1, min(n, N - 2))


def cfr_embed(
    c: TripleColouring, h_red: Hedgehog, h_blue: Hedgehog, n: int
) -> Union[Embedding, EmbeddingFailure]:
    """
    Greedy embedding of a red copy of h_red or a blue copy of h_blue.

    The colour is decided by the majority class of the vertex marking: red majority embeds
    h_red in red, blue majority embeds h_blue in blue. Bodies go into V1 so that no spike
    pair lands on a pair that is scarce in the target colour; every non-scarce pair has at
    least n target-coloured completions, enough room for the spikes. Success is guaranteed
    once the host has at least 10 n^{3/2} vertices; below that a failure naming the stage and
    the blocked vertex is returned.
    """
    for name, h in (("h_red", h_red), ("h_blue", h_blue)):
        if h.n_total > n:
            raise ValueError(f"{name} has {h.n_total} vertices, more than n={n}")
    start = time.time()
    d = _embedding_thresholds(c.n, n)
    aux = build_aux_graph(c, d, d)
    marking = mark_vertices(aux, 2 * d)
    colour = marking.majority_colour
    target = h_red if colour == RED else h_blue
    scarce = aux.scarce_pairs(colour).masks
    logging.info(
        f"cfr: host {c.n}, thresholds {d}, |V1| = {len(marking.V1)}, embedding {colour}"
    )

    f = spike_pair_graph(target)
    order = list(reversed(degeneracy2(f).order))
    placed: Dict[int, int] = {}
    used = 0
    for x in order:
        blocked = 0
        for y in f.adjacency[x]:
            if y in placed:
                blocked |= scarce[placed[y]]
        chosen = next(
            (u for u in marking.V1 if not (used >> u & 1) and not (blocked >> u & 1)),
            None,
        )
        if chosen is None:
            return EmbeddingFailure(
                "body",
                target.body[x],
                f"no unused vertex of V1 avoids {colour}-scarce pairs to {bin(blocked).count('1')} blocked hosts",
            )
        placed[x] = chosen
        used |= 1 << chosen

    mapping = {target.body[x]: u for x, u in placed.items()}
    for s in target.spikes:
        a, b = mapping[s.pair[0]], mapping[s.pair[1]]
        chosen = next(
            (
                w
                for w in range(c.n)
                if not (used >> w & 1) and c.has_colour(a, b, w, colour)
            ),
            None,
        )
        if chosen is None:
            return EmbeddingFailure(
                "spike", s.vertex, f"pair ({a}, {b}) has no unused {colour} completion"
            )
        mapping[s.vertex] = chosen
        used |= 1 << chosen

    for x in target.padding():
        chosen = next((w for w in range(c.n) if not (used >> w & 1)), None)
        if chosen is None:
            return EmbeddingFailure("padding", x, "host has no unused vertex left")
        mapping[x] = chosen
        used |= 1 << chosen

    embedding = Embedding(dict(sorted(mapping.items())), colour)
    assert verify_embedding(c, target, colour, embedding), "greedy embedding failed verification"
    logging.info(f"cfr: embedded {target.n_total} vertices in {time.time() - start:.3f}s")
    return embedding


def _match_spikes(
    c: TripleColouring,
    h: Hedgehog,
    colour: str,
    body_map: Dict[int, int],
) -> Optional[Dict[int, int]]:
    # spikes on the same pair are interchangeable, so assign them by bipartite matching
    taken = set(body_map.values())
    free = [w for w in range(c.n) if w not in taken]
    graph = nx.Graph()
    left = [("s", s.vertex) for s in h.spikes]
    graph.add_nodes_from(left, bipartite=0)
    graph.add_nodes_from((("h", w) for w in free), bipartite=1)
    for s in h.spikes:
        a, b = body_map[s.pair[0]], body_map[s.pair[1]]
        graph.add_edges_from(
            (("s", s.vertex), ("h", w))
            for w in free
            if c.has_colour(a, b, w, colour)
        )
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    if any(node not in matching for node in left):
        return None
    return {s.vertex: matching[("s", s.vertex)][1] for s in h.spikes}


def find_mono_copy_exact(
    c: TripleColouring, h: Hedgehog, colour: str
) -> Optional[Embedding]:
    """
    Exhaustive search for a copy of h in the given colour. Body images are chosen by
    backtracking, pruned by requiring every placed spike pair to keep enough
    colour-matching completions outside the body image; spikes are then assigned by
    bipartite matching. Returns None iff no copy exists.
    """
    check_colour(colour)
    if h.n_total > c.n:
        return None
    f = spike_pair_graph(h)
    mult = h.pair_multiplicity()
    index = {x: i for i, x in enumerate(h.body)}
    need = {}
    for (a, b), count in mult.items():
        need[(index[a], index[b])] = count
        need[(index[b], index[a])] = count
    order = list(reversed(degeneracy2(f).order))

    def completions(u: int, v: int, image: Sequence[int]) -> int:
        return sum(
            1
            for w in range(c.n)
            if w != u and w != v and w not in image and c.has_colour(u, v, w, colour)
        )

    placed: Dict[int, int] = {}

    def backtrack(pos: int) -> Optional[Dict[int, int]]:
        if pos == len(order):
            body_map = {h.body[x]: u for x, u in placed.items()}
            spikes = _match_spikes(c, h, colour, body_map)
            if spikes is None:
                return None
            return {**body_map, **spikes}
        x = order[pos]
        image = set(placed.values())
        for u in range(c.n):
            if u in image:
                continue
            ok = True
            for y in f.adjacency[x]:
                if y in placed:
                    v = placed[y]
                    if completions(u, v, image | {u}) < need[(x, y)]:
                        ok = False
                        break
            if not ok:
                continue
            placed[x] = u
            found = backtrack(pos + 1)
            if found is not None:
                return found
            del placed[x]
        return None

    core = backtrack(0)
    if core is None:
        return None
    used = set(core.values())
    spare = iter(w for w in range(c.n) if w not in used)
    for x in h.padding():
        core[x] = next(spare)
    return Embedding(dict(sorted(core.items())), colour)


#### -------------------------    TINY RAMSEY NUMBERS    ------------------------- ####


DEFAULT_MAX_RAMSEY_TRIPLES = 20


def find_ramsey_counterexample(
    h_red: Hedgehog,
    h_blue: Hedgehog,
    N: int,
    rank: int = 0,
    worldsize: int = 1,
    max_triples: int = DEFAULT_MAX_RAMSEY_TRIPLES,
) -> Optional[ExplicitColouring]:
    """
    First colouring of K_N^(3), in increasing order of its colex bit mask, with neither a red
    h_red nor a blue h_blue. Only the masks of shard rank out of worldsize are searched.
    """
    size = comb(N, 3)
    if size > max_triples:
        raise ValueError(
            f"N={N} has {size} triples, exhaustive search is limited to {max_triples}"
        )
    if N < min(h_red.n_total, h_blue.n_total):
        # neither target fits, every colouring avoids both
        masks = _shard_partition(range(1 << size), rank, worldsize)
        return ExplicitColouring.from_int(N, masks[0]) if len(masks) else None
    for mask in _shard_partition(range(1 << size), rank, worldsize):
        c = ExplicitColouring.from_int(N, mask)
        if find_mono_copy_exact(c, h_red, RED) is not None:
            continue
        if find_mono_copy_exact(c, h_blue, BLUE) is not None:
            continue
        return c
    return None


def ramsey_exact(
    h_red: Hedgehog,
    h_blue: Hedgehog,
    N: int,
    max_triples: int = DEFAULT_MAX_RAMSEY_TRIPLES,
) -> bool:
    """True iff every colouring of K_N^(3) has a red h_red or a blue h_blue."""
    return find_ramsey_counterexample(h_red, h_blue, N, max_triples=max_triples) is None


def ramsey_number(
    h_red: Hedgehog,
    h_blue: Hedgehog,
    N_max: int,
    max_triples: int = DEFAULT_MAX_RAMSEY_TRIPLES,
) -> Optional[int]:
    """Least N <= N_max that arrows (h_red, h_blue), or None when it exceeds N_max."""
    for N in range(1, N_max + 1):
        if ramsey_exact(h_red, h_blue, N, max_triples=max_triples):
            return N
    return None
