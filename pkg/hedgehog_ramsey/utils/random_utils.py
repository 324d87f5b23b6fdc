from typing import Any, List, MutableSequence, Sequence, TypeVar

import torch


"""
All randomness in this package is driven by splitmix64, so that every seeded command
reproduces bit-for-bit on any machine.

The i-th output (0-based) of the stream seeded with `seed` is the standard splitmix64
output after i+1 state advances. `SplitMix64` produces it one value at a time for the
generators, `splitmix64_stream` produces a whole block at once with torch int64
arithmetic for the samplers that draw one bit per pair or per triple.
"""


T = TypeVar("T")

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, index: int) -> int:
    """
    Split rule for independent sub-streams: the index-th output of the stream seeded with master.
    Trial t of an experiment runs on derive_seed(master_seed, t).
    """
    assert index >= 0, f"Stream index {index} must be non-negative"
    return _mix((master + (index + 1) * GOLDEN_GAMMA) & MASK64)


def _shard_partition(
    itemlist: Sequence[Any], rank: int, worldsize: int
) -> Sequence[Any]:
    """
    Partition itemlist into worldsize chunks, grab chunk corresponding to rank and return.
    Trial lists and ranges of colouring masks are split the same way.
    """
    assert rank >= 0, f"Rank {rank} must be a positive integer"
    assert worldsize > rank, f"Worldsize {worldsize} must be greater than rank {rank}"
    return itemlist[
        (rank * len(itemlist)) // worldsize : ((rank + 1) * len(itemlist)) // worldsize
    ]


def bernoulli_threshold(prob: float) -> int:
    """
    Map a probability to the unsigned 64-bit threshold t, a draw x succeeds iff x < t.
    prob = 1 returns 2**64, so every draw succeeds.
    """
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"probability {prob} is outside [0, 1]")
    if prob >= 1.0:
        return 1 << 64
    return min(int(prob * (1 << 64)), MASK64)


class SplitMix64:
    """
    Scalar splitmix64 generator. Every draw consumes exactly one 64-bit output.

    Args
    ----
    seed : int
        Any integer; reduced modulo 2**64.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return _mix(self.state)

    def random(self) -> float:
        # 53 high bits, uniform in [0, 1)
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def bernoulli(self, prob: float) -> bool:
        return self.next_u64() < bernoulli_threshold(prob)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection, no modulo bias."""
        if n <= 0:
            raise ValueError(f"randbelow bound {n} must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def choice(self, items: Sequence[T]) -> T:
        return items[self.randbelow(len(items))]

    def shuffle(self, items: MutableSequence) -> None:
        # Fisher-Yates, in place
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, items: Sequence[T], k: int) -> List[T]:
        pool = list(items)
        if not 0 <= k <= len(pool):
            raise ValueError(f"cannot sample {k} items from {len(pool)}")
        for i in range(k):
            j = i + self.randbelow(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def _as_int64(x: int) -> int:
    # reinterpret an unsigned 64-bit constant as two's complement int64
    x &= MASK64
    return x - (1 << 64) if x >= (1 << 63) else x


def _shr(z: torch.Tensor, s: int) -> torch.Tensor:
    # logical right shift on int64 (torch shifts are arithmetic)
    return (z >> s) & ((1 << (64 - s)) - 1)


def splitmix64_stream(seed: int, count: int) -> torch.Tensor:
    """
    Outputs 0..count-1 of the stream seeded with seed, as int64 tensors holding the
    two's complement bit pattern of each unsigned output. Matches SplitMix64 exactly.
    """
    if count <= 0:
        return torch.zeros(0, dtype=torch.int64)
    steps = torch.arange(1, count + 1, dtype=torch.int64)
    z = steps * _as_int64(GOLDEN_GAMMA) + _as_int64(seed)
    z = (z ^ _shr(z, 30)) * _as_int64(_MIX1)
    z = (z ^ _shr(z, 27)) * _as_int64(_MIX2)
    return z ^ _shr(z, 31)


def bernoulli_stream(seed: int, count: int, prob: float) -> torch.Tensor:
    """
    Boolean tensor of count independent draws with success probability prob,
    one splitmix64 output per draw.
    """
    threshold = bernoulli_threshold(prob)
    if threshold == 0:
        return torch.zeros(max(count, 0), dtype=torch.bool)
    if threshold == 1 << 64:
        return torch.ones(max(count, 0), dtype=torch.bool)
    draws = splitmix64_stream(seed, count)
    # unsigned compare by flipping the sign bit on both sides
    flip = -(1 << 63)
    return (draws ^ flip) < _as_int64(threshold ^ (1 << 63))
