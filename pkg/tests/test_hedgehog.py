from math import isqrt, sqrt

import pytest

from hedgehog_ramsey.utils.hedgehog_utils import *
from hedgehog_ramsey.utils.hypergraph_utils import Hypergraph3, degeneracy2, degeneracy3
from hedgehog_ramsey.utils.random_utils import SplitMix64


# REPEATED CHECKS


def decomposition_check(h, parts):
    # parts are valid hedgehogs, pairwise edge-disjoint, and cover E(h) exactly
    seen = []
    for i, part in enumerate(parts):
        edges = part.edges()
        checked = validate_hedgehog(Hypergraph3.from_edges(h.n, edges), part.body)
        assert isinstance(checked, Hedgehog), f"part {i} is not a hedgehog: {checked}"
        seen.extend(edges)
    assert len(seen) == len(set(seen)), "decomposition parts share an edge"
    assert set(seen) == set(h.edges), "decomposition does not cover the input edges"


def pair_spikes(h, pair):
    return h.pair_multiplicity()[pair]


# TESTS


def test_standard_hedgehog_examples():
    h2 = standard_hedgehog(2)
    assert (h2.n_total, h2.num_edges) == (3, 1)
    h4 = standard_hedgehog(4)
    assert (h4.n_total, h4.num_edges) == (10, 6)
    h3 = standard_hedgehog(3)
    assert [(s.vertex, s.pair) for s in h3.spikes] == [
        (3, (0, 1)),
        (4, (0, 2)),
        (5, (1, 2)),
    ]
    with pytest.raises(ValueError):
        standard_hedgehog(1)


def test_hedgehog_rejects_malformed_records():
    with pytest.raises(ValueError):
        Hedgehog((0, 1), (Spike(1, (0, 1)),), 3)
    with pytest.raises(ValueError):
        Hedgehog((0, 1), (Spike(2, (0, 1)), Spike(2, (0, 1))), 4)
    with pytest.raises(ValueError):
        Hedgehog((0, 1), (Spike(2, (1, 0)),), 3)
    with pytest.raises(ValueError):
        Hedgehog((0, 1), (Spike(2, (0, 1)),), 2)


def test_build_hstar_small():
    h = build_hstar(HStarParams(b=3, k=2, m=2, n_total=10))
    assert h.n_total == 10
    assert h.num_edges == 7
    # 1 base + 2 heavy spikes on {0,1}, then padding starts again at {0,1}
    assert [s.pair for s in h.spikes[:5]].count((0, 1)) == 3
    assert pair_spikes(h, (0, 1)) == 4
    assert pair_spikes(h, (0, 2)) == 2
    assert pair_spikes(h, (1, 2)) == 1


def test_build_hstar_degenerate_params_is_single_edge():
    assert build_hstar(HStarParams(b=2, k=1, m=0, n_total=3)) == single_edge_hedgehog()


def test_hstar_params_budget():
    p = HStarParams(b=20, k=10, m=10000, n_total=10**6)
    assert p.base_vertices == 450210
    assert p.base_vertices <= p.n_total // 2
    with pytest.raises(ValueError):
        HStarParams(b=3, k=3, m=5, n_total=15)
    with pytest.raises(ValueError):
        HStarParams(b=3, k=4, m=0, n_total=100)
    with pytest.raises(ValueError):
        HStarParams(b=1, k=1, m=0, n_total=100)


def test_paper_hstar_params():
    assert paper_hstar_params(10**6) == HStarParams(20, 10, 10000, 10**6)
    assert paper_hstar_params(250000) == HStarParams(10, 10, 2500, 250000)
    with pytest.raises(ValueError):
        paper_hstar_params(100)


def test_hstar_heavy_pairs_carry_enough_spikes():
    p = HStarParams(b=12, k=5, m=7, n_total=400)
    h = build_hstar(p)
    assert h.n_total == 400
    for j in range(p.b):
        for i in range(j):
            needed = p.m + 1 if j < p.k else 1
            assert (
                pair_spikes(h, (i, j)) >= needed
            ), f"pair ({i}, {j}) carries {pair_spikes(h, (i, j))} spikes, needs {needed}"


def test_validate_hedgehog_examples():
    h = validate_hedgehog(Hypergraph3.from_edges(4, [(0, 1, 2), (0, 1, 3)]), {0, 1})
    assert isinstance(h, Hedgehog)
    assert [s.vertex for s in h.spikes] == [2, 3]

    h = validate_hedgehog(Hypergraph3.from_edges(5, [(0, 1, 2), (2, 3, 4)]), {0, 2, 3})
    assert isinstance(h, Hedgehog)
    assert [(s.vertex, s.pair) for s in h.spikes] == [(1, (0, 2)), (4, (2, 3))]

    bad = validate_hedgehog(Hypergraph3.from_edges(5, [(0, 1, 2), (2, 3, 4)]), {0, 1, 3})
    assert isinstance(bad, InvalidHedgehog)

    one_body = validate_hedgehog(Hypergraph3.from_edges(5, [(2, 3, 4)]), {0, 1, 3})
    assert isinstance(one_body, InvalidHedgehog)
    assert one_body.edge == (2, 3, 4)

    with pytest.raises(ValueError):
        validate_hedgehog(Hypergraph3.from_edges(3, [(0, 1, 2)]), {0, 5})


def test_spike_pair_graph_examples():
    assert spike_pair_graph(standard_hedgehog(4)).num_edges == 6
    f = spike_pair_graph(build_hstar(HStarParams(3, 2, 2, 10)))
    assert f.n == 3 and f.num_edges == 3
    f = spike_pair_graph(single_edge_hedgehog())
    assert f.n == 2 and f.edges() == [(0, 1)]


def test_spike_pair_graph_relabels_body_by_index():
    h = Hedgehog((5, 2, 7), (Spike(0, (5, 7)), Spike(1, (2, 7))), 8)
    f = spike_pair_graph(h)
    assert f.edges() == [(0, 2), (1, 2)]


def test_to_hypergraph_examples():
    assert to_hypergraph(single_edge_hedgehog()).edges == ((0, 1, 2),)
    h = to_hypergraph(standard_hedgehog(3))
    assert (h.n, len(h.edges)) == (6, 3)


@pytest.mark.parametrize("hedgehog_factory", [(3, 4), (5, 12), (8, 40)], indirect=True)
def test_hedgehog_round_trip(hedgehog_factory):
    for seed in range(100):
        h = hedgehog_factory.create(seed)
        assert validate_hedgehog(to_hypergraph(h), h.body) == h
        assert degeneracy3(to_hypergraph(h)).value == 1


def test_padding_vertices():
    h = Hedgehog((0, 1), (Spike(3, (0, 1)),), 5)
    assert h.padding() == [2, 4]
    assert h.canonical() == Hedgehog((0, 1), (Spike(2, (0, 1)),), 5)


def test_standard_body_size():
    assert standard_body_size(3) == 2
    assert standard_body_size(5) == 2
    assert standard_body_size(6) == 3
    assert standard_body_size(10) == 4
    with pytest.raises(ValueError):
        standard_body_size(2)


def test_spike_pair_degeneracy_bound():
    rng = SplitMix64(500)
    for trial in range(500):
        n = 3 + rng.randbelow(498)
        h = random_hedgehog_on(n, rng.next_u64())
        f = spike_pair_graph(h)
        assert f.num_edges <= h.num_edges <= h.n_total
        d = degeneracy2(f).value
        assert d <= 2 * sqrt(h.n_total), f"trial {trial}: D={d} on {h.n_total} vertices"


def test_decompose_examples():
    parts = decompose_hedgehogs(Hypergraph3.from_edges(4, [(0, 1, 2), (0, 1, 3)]))
    assert len(parts) == 1
    assert parts[0].body == (0, 1)
    assert [s.vertex for s in parts[0].spikes] == [2, 3]

    path = Hypergraph3.from_edges(5, [(0, 1, 2), (1, 2, 3), (2, 3, 4)])
    parts = decompose_hedgehogs(path)
    assert len(parts) == 2
    assert [(s.vertex, s.pair) for s in parts[0].spikes] == [(0, (1, 2)), (4, (2, 3))]
    assert [(s.vertex, s.pair) for s in parts[1].spikes] == [(1, (2, 3))]
    decomposition_check(path, parts)

    assert decompose_hedgehogs(Hypergraph3.from_edges(0, [])) == []


def test_decompose_rejects_bad_input():
    with pytest.raises(ValueError, match="degenerate"):
        decompose_hedgehogs(Hypergraph3.complete(4))
    with pytest.raises(ValueError, match="isolated"):
        decompose_hedgehogs(Hypergraph3.from_edges(4, [(0, 1, 2)]))


def test_random_one_degenerate_shape():
    for seed in range(50):
        h = random_one_degenerate(3 + seed % 20, seed)
        assert h.isolated_vertices() == []
        assert degeneracy3(h).value <= 1


def test_decompose_random_one_degenerate():
    rng = SplitMix64(4)
    for trial in range(1000):
        n = 3 + rng.randbelow(38)
        h = random_one_degenerate(n, rng.next_u64())
        decomposition_check(h, decompose_hedgehogs(h))


def test_hedgehog_summary():
    summary = hedgehog_summary(build_hstar(HStarParams(3, 2, 2, 10)))
    assert summary == {
        "body": 3,
        "spikes": 7,
        "n_total": 10,
        "pairs": 3,
        "max_multiplicity": 4,
    }
