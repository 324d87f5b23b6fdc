from itertools import combinations
from math import comb

import pytest
import torch

from hedgehog_ramsey.utils.colouring_utils import *
from hedgehog_ramsey.utils.construction_utils import sample_gnp
from hedgehog_ramsey.utils.hypergraph_utils import Graph2
from hedgehog_ramsey.utils.random_utils import SplitMix64


def all_triples(n):
    return [(i, j, k) for k in range(n) for j in range(k) for i in range(j)]


# REPEATED CHECKS


def count_matrix_check(c):
    # red_count_matrix and pair_colour_counts agree with a direct count over completions
    red = c.red_count_matrix()
    blue = c.blue_count_matrix()
    for u, v in combinations(range(c.n), 2):
        expected = sum(1 for w in range(c.n) if w not in (u, v) and c.is_red(u, v, w))
        assert red[u, v] == red[v, u] == expected, f"red count of ({u}, {v}) is {red[u, v]}, expected {expected}"
        assert blue[u, v] == c.n - 2 - expected
        assert c.pair_colour_counts(u, v) == (expected, c.n - 2 - expected)
    assert torch.all(red.diagonal() == 0) and torch.all(blue.diagonal() == 0)


# TESTS


def test_derive_colouring_single_edge(single_edge_gamma):
    c = derive_colouring(single_edge_gamma)
    assert c.n == 4
    assert [t for t in all_triples(4) if c.is_red(*t)] == [(0, 1, 2), (0, 1, 3)]
    assert [t for t in all_triples(4) if not c.is_red(*t)] == [(0, 2, 3), (1, 2, 3)]
    assert c.colour(2, 1, 0) == RED
    assert c.colour(3, 2, 0) == BLUE


def test_derive_colouring_empty_and_complete():
    empty = derive_colouring(Graph2.empty(6))
    full = derive_colouring(Graph2.complete(6))
    assert not any(empty.is_red(*t) for t in all_triples(6))
    assert all(full.is_red(*t) for t in all_triples(6))


def test_pair_colour_counts_examples(single_edge_gamma, all_red5):
    c = derive_colouring(single_edge_gamma)
    assert pair_colour_counts(c, 0, 1) == (2, 0)
    assert pair_colour_counts(c, 2, 3) == (0, 2)
    assert pair_colour_counts(all_red5, 1, 4) == (3, 0)
    with pytest.raises(ValueError):
        pair_colour_counts(c, 1, 1)
    with pytest.raises(ValueError):
        pair_colour_counts(c, 0, 4)


def test_is_red_rejects_bad_triples(all_red5):
    with pytest.raises(ValueError):
        all_red5.is_red(0, 0, 1)
    with pytest.raises(ValueError):
        all_red5.is_red(0, 1, 5)


def test_random_colouring_extremes_and_determinism():
    assert random_colouring(6, 1.0, 3) == ExplicitColouring.constant(6, RED)
    assert random_colouring(6, 0.0, 3) == ExplicitColouring.constant(6, BLUE)
    assert random_colouring(6, 0.5, 7) == random_colouring(6, 0.5, 7)
    assert random_colouring(6, 0.5, 7).packed == random_colouring(6, 0.5, 7).packed


def test_random_colouring_uses_one_draw_per_rank():
    c = random_colouring(7, 0.4, 19)
    rng = SplitMix64(19)
    expected = [rng.bernoulli(0.4) for _ in range(comb(7, 3))]
    assert c.bits().tolist() == expected


def test_materialise_examples(single_edge_gamma):
    explicit = materialise(derive_colouring(single_edge_gamma))
    assert explicit.bits().tolist() == [True, True, False, False]
    assert explicit.packed == bytes([0b0011])
    assert not materialise(ExplicitColouring.constant(7, BLUE)).bits().any()
    assert materialise(explicit) == explicit


def test_materialise_agrees_with_oracle():
    for seed in range(20):
        gamma = sample_gnp(3 + seed % 10, 0.3, seed)
        c = derive_colouring(gamma)
        explicit = materialise(c)
        for t in all_triples(c.n):
            assert explicit.is_red(*t) == c.is_red(*t), f"seed {seed}: triple {t} disagrees"


def test_materialise_budget():
    with pytest.raises(ValueError):
        materialise(derive_colouring(Graph2.empty(10)), max_triples=100)


def test_explicit_colouring_sizes():
    assert ExplicitColouring.constant(2, RED).packed == b""
    with pytest.raises(ValueError):
        ExplicitColouring(5, bytes(1))
    c = ExplicitColouring.from_int(4, 0b1010)
    assert c.bits().tolist() == [False, True, False, True]
    with pytest.raises(ValueError):
        ExplicitColouring.from_int(4, 1 << 4)


def test_pack_unpack():
    bits = torch.tensor([1, 0, 0, 1, 1, 1, 0, 0, 1, 1], dtype=torch.bool)
    packed = pack_bits(bits)
    assert packed == bytes([0b00111001, 0b11])
    assert unpack_bits(packed, 10).tolist() == bits.tolist()


def test_derived_counts_on_random_gamma():
    rng = SplitMix64(2)
    for trial in range(200):
        n = 3 + rng.randbelow(10)
        gamma = sample_gnp(n, rng.random(), rng.next_u64())
        c = derive_colouring(gamma)
        red = c.red_count_matrix()
        for u, v in combinations(range(n), 2):
            if gamma.has_edge(u, v):
                expected = n - 2
            else:
                expected = len((gamma.adjacency[u] | gamma.adjacency[v]) - {u, v})
                assert expected <= gamma.degree(u) + gamma.degree(v)
            assert red[u, v] == expected, f"trial {trial}: pair ({u}, {v}) has {red[u, v]} red triples, expected {expected}"
            assert sum(c.pair_colour_counts(u, v)) == n - 2


def test_count_matrices_match_direct_counts():
    for seed in range(10):
        count_matrix_check(random_colouring(3 + seed, 0.3 + 0.05 * seed, seed))
        count_matrix_check(derive_colouring(sample_gnp(3 + seed, 0.3, seed)))


def test_other_colour():
    assert other_colour(RED) == BLUE
    assert other_colour(BLUE) == RED
    with pytest.raises(ValueError):
        check_colour("green")
