import logging
import math
from dataclasses import dataclass
from math import comb, isqrt
from typing import Optional, Tuple

from hedgehog_ramsey.utils.colouring_utils import BLUE, RED, DerivedColouring
from hedgehog_ramsey.utils.embedding_utils import Embedding, find_mono_copy_exact
from hedgehog_ramsey.utils.hedgehog_utils import (
    HStarParams,
    heavy_core_hedgehog,
    standard_hedgehog,
)
from hedgehog_ramsey.utils.hypergraph_utils import (
    Graph2,
    colex_pairs,
    has_clique,
    has_independent_set,
    independence_number,
)
from hedgehog_ramsey.utils.random_utils import bernoulli_stream


@dataclass(frozen=True)
class Lemma3Params:
    N: int
    p: float
    deg_bound: int
    clique_q: int
    indep_s: int

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"edge probability p={self.p} is outside [0, 1]")
        if self.N < 1:
            raise ValueError(f"graph size N={self.N} must be positive")
        for name in ("deg_bound", "clique_q", "indep_s"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name}={getattr(self, name)} must be positive")


@dataclass(frozen=True)
class Lemma3Report:
    deg_ok: bool
    clique_ok: bool
    indep_ok: bool
    max_degree: int
    clique_witness: Optional[Tuple[int, ...]] = None
    indep_witness: Optional[Tuple[int, ...]] = None

    @property
    def passed(self) -> bool:
        return self.deg_ok and self.clique_ok and self.indep_ok


@dataclass(frozen=True)
class WitnessReport:
    alpha_ok: bool
    clique_ok: bool
    multiplicity_ok: bool
    alpha_value: Optional[int]
    max_degree: int
    clique_found: Optional[Tuple[int, ...]] = None
    independent_found: Optional[Tuple[int, ...]] = None

    @property
    def certified(self) -> bool:
        return self.alpha_ok and self.clique_ok and self.multiplicity_ok


def sample_gnp(N: int, p: float, seed: int) -> Graph2:
    """G(N, p): one splitmix64 draw per pair, pairs in colex order."""
    if N < 0:
        raise ValueError(f"graph size N={N} must be non-negative")
    keep = bernoulli_stream(seed, comb(N, 2), p)
    small, large = colex_pairs(N)
    chosen = keep.nonzero().flatten()
    return Graph2.from_edges(
        N, zip(small[chosen].tolist(), large[chosen].tolist())
    )


def paper_lemma3_params(n: int) -> Lemma3Params:
    """
    Large-n constants of the sparse random graph: N = n^{3/2} / (10^6 ln n),
    p = 800 ln n / sqrt(n) capped at 1, degree bound 3n/2000, no K_10, no independent
    set of size sqrt(n)/50. Natural logarithm, floor rounding.
    """
    if n < 3:
        raise ValueError(f"n={n} is too small, need n >= 3 so that ln n > 0")
    log_n = math.log(n)
    N = math.floor(n**1.5 / (1e6 * log_n))
    if N < 2:
        raise ValueError(f"n={n} gives graph size N={N}, need at least 2")
    return Lemma3Params(
        N=N,
        p=min(1.0, 800 * log_n / math.sqrt(n)),
        deg_bound=max(1, (3 * n) // 2000),
        clique_q=10,
        indep_s=max(1, isqrt(n) // 50),
    )


def lower_bound_host_size(n: int, c: float = 1e-3) -> int:
    """Vertex count c^2 n^{3/2} / ln n of the lower-bound host colouring."""
    if n < 3:
        raise ValueError(f"n={n} is too small, need n >= 3 so that ln n > 0")
    return math.floor(c * c * n**1.5 / math.log(n))


def check_lemma3(g: Graph2, params: Lemma3Params) -> Lemma3Report:
    if g.n != params.N:
        raise ValueError(f"graph has {g.n} vertices, parameters expect N={params.N}")
    max_degree = g.max_degree()
    has_k, clique = has_clique(g, params.clique_q)
    has_i, indep = has_independent_set(g, params.indep_s)
    return Lemma3Report(
        deg_ok=max_degree <= params.deg_bound,
        clique_ok=not has_k,
        indep_ok=not has_i,
        max_degree=max_degree,
        clique_witness=clique,
        indep_witness=indep,
    )


def verify_lower_bound_witness(
    gamma: Graph2,
    p: HStarParams,
    blue_body: Optional[int] = None,
    exact_alpha: bool = True,
) -> WitnessReport:
    """
    Certify that the colouring derived from gamma has neither a blue nor a red copy of the
    hedgehog built from p.

    Blue: every body pair of a blue copy lies in a blue triple, so it is a non-edge of gamma
    and the body image is an independent set of size b. No such set blocks a blue copy.
    With blue_body set, the blue target is a hedgehog with that body size and a spike on every
    body pair (a standard hedgehog), and the same argument is run with blue_body.

    Red: a non-edge uv of gamma lies in at most d(u) + d(v) <= 2 max_degree red triples, while
    every pair in the heavy core needs m + 1 red triples. If m + 1 > 2 max_degree, the heavy
    core image is a k-clique of gamma, which gamma does not have.
    """
    if gamma.n < 1:
        raise ValueError("gamma must have at least one vertex")
    body = p.b if blue_body is None else blue_body
    if body < 2:
        raise ValueError(f"blue body size {body} must be at least 2")
    has_i, indep = has_independent_set(gamma, body)
    has_k, clique = has_clique(gamma, p.k)
    max_degree = gamma.max_degree()
    alpha_value = independence_number(gamma) if exact_alpha else None
    report = WitnessReport(
        alpha_ok=not has_i,
        clique_ok=not has_k,
        multiplicity_ok=p.m + 1 > 2 * max_degree,
        alpha_value=alpha_value,
        max_degree=max_degree,
        clique_found=clique,
        independent_found=indep,
    )
    logging.info(
        f"witness on {gamma.n} vertices (b={body}, k={p.k}, m={p.m}): certified={report.certified}"
    )
    return report


@dataclass(frozen=True)
class WitnessCrossCheck:
    blue_checked: bool
    red_checked: bool
    blue_copy: Optional[Embedding] = None
    red_copy: Optional[Embedding] = None

    @property
    def sound(self) -> bool:
        return self.blue_copy is None and self.red_copy is None


def cross_check_witness(
    gamma: Graph2,
    p: HStarParams,
    report: WitnessReport,
    blue_body: Optional[int] = None,
    max_host: int = 24,
) -> WitnessCrossCheck:
    """
    Exhaustive search for the sub-hedgehogs each half of a witness report rules out.

    alpha_ok rules out a blue standard hedgehog on the blue body, clique_ok together with
    multiplicity_ok rules out a red heavy core. A half is only searched when it holds, its
    target fits in gamma and gamma has at most max_host vertices. Any copy found means the
    report is wrong.
    """
    c = DerivedColouring(gamma)
    blue_target = standard_hedgehog(p.b if blue_body is None else blue_body)
    blue_checked = report.alpha_ok and blue_target.n_total <= gamma.n <= max_host
    red_target = heavy_core_hedgehog(p) if p.k >= 2 else None
    red_checked = (
        red_target is not None
        and report.clique_ok
        and report.multiplicity_ok
        and red_target.n_total <= gamma.n <= max_host
    )
    blue_copy = find_mono_copy_exact(c, blue_target, BLUE) if blue_checked else None
    red_copy = None
    if red_checked and red_target is not None:
        red_copy = find_mono_copy_exact(c, red_target, RED)
    if blue_copy is not None or red_copy is not None:
        logging.warning(
            f"witness on {gamma.n} vertices (b={p.b}, k={p.k}, m={p.m}) failed its cross-check"
        )
    return WitnessCrossCheck(blue_checked, red_checked, blue_copy, red_copy)
