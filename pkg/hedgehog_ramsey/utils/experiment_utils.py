import logging
import math
import os
import sys
import time
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import pyarrow as pa
import pyarrow.csv as pa_csv
import torch.multiprocessing as mp

from hedgehog_ramsey.config import experiment_config
from hedgehog_ramsey.utils.colouring_utils import (
    BLUE,
    RED,
    DerivedColouring,
    ExplicitColouring,
    TripleColouring,
    random_colouring,
)
from hedgehog_ramsey.utils.config_utils import parse_float_list, validate_config
from hedgehog_ramsey.utils.construction_utils import (
    Lemma3Params,
    check_lemma3,
    cross_check_witness,
    sample_gnp,
    verify_lower_bound_witness,
)
from hedgehog_ramsey.utils.embedding_utils import EmbeddingFailure, cfr_embed
from hedgehog_ramsey.utils.hedgehog_utils import (
    Hedgehog,
    HStarParams,
    decompose_hedgehogs,
    hstar_vertex_count,
    random_hedgehog_on,
    random_one_degenerate,
    validate_hedgehog,
)
from hedgehog_ramsey.utils.hypergraph_utils import Hypergraph3
from hedgehog_ramsey.utils.random_utils import SplitMix64, _shard_partition, derive_seed


LOG_LEVEL_ENV = "HEDGEHOG_RAMSEY_LOG_LEVEL"


def setup_logging():
    level = os.environ.get(LOG_LEVEL_ENV, "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(message)s",
    )


def guaranteed_host_size(n: int) -> int:
    """Smallest host size 10 n^{3/2} at which the greedy embedding cannot fail."""
    return math.ceil(10 * n**1.5)


@dataclass
class CsvReport:
    columns: List[str]
    rows: List[Dict[str, Any]]
    successes: int
    mean_elapsed_ms: float

    @property
    def success_rate(self) -> float:
        return self.successes / len(self.rows) if self.rows else 0.0


#### -------------------------    TRIALS    ------------------------- ####


# each trial returns (params, outcome, success); params keep their insertion order as CSV columns
TrialResult = Tuple[Dict[str, Any], str, bool]


def _lemma3_trial(cfg: experiment_config, trial: int, seed: int) -> TrialResult:
    p_values = parse_float_list(cfg.p_values)
    p = p_values[trial % len(p_values)]
    params = Lemma3Params(
        N=cfg.graph_n,
        p=p,
        deg_bound=cfg.deg_bound,
        clique_q=cfg.clique_q,
        indep_s=cfg.indep_s,
    )
    report = check_lemma3(sample_gnp(cfg.graph_n, p, seed), params)
    failed = [
        name
        for name, ok in (
            ("deg", report.deg_ok),
            ("clique", report.clique_ok),
            ("indep", report.indep_ok),
        )
        if not ok
    ]
    row = {
        "N": params.N,
        "p": p,
        "deg_bound": params.deg_bound,
        "clique_q": params.clique_q,
        "indep_s": params.indep_s,
        "max_degree": report.max_degree,
    }
    outcome = "pass" if report.passed else "fail:" + "+".join(failed)
    return row, outcome, report.passed


def _cfr_host(
    cfg: experiment_config, trial: int, N: int, seed: int
) -> Tuple[str, TripleColouring]:
    kind = cfg.host_kind
    if kind == "mixed":
        kind = "random" if trial % 2 == 0 else "derived"
    if kind != "derived" and math.comb(N, 3) > cfg.max_explicit_triples:
        raise ValueError(
            f"a {kind} host on N={N} has {math.comb(N, 3)} triples, "
            f"more than max_explicit_triples={cfg.max_explicit_triples}"
        )
    if kind == "random":
        return kind, random_colouring(N, cfg.red_bias, seed)
    if kind == "derived":
        return kind, DerivedColouring(sample_gnp(N, cfg.gamma_p, seed))
    if kind == "all-red":
        return kind, ExplicitColouring.constant(N, RED)
    if kind == "all-blue":
        return kind, ExplicitColouring.constant(N, BLUE)
    raise ValueError(f"host kind {kind} not supported.")


def _cfr_trial(cfg: experiment_config, trial: int, seed: int) -> TrialResult:
    n = cfg.hedgehog_n
    N = cfg.host_n if cfg.host_n is not None else guaranteed_host_size(n)
    rng = SplitMix64(seed)
    h_red = random_hedgehog_on(n, rng.next_u64())
    h_blue = random_hedgehog_on(n, rng.next_u64())
    host, c = _cfr_host(cfg, trial, N, rng.next_u64())
    result = cfr_embed(c, h_red, h_blue, n)
    row = {
        "n": n,
        "N": N,
        "host": host,
        "red_body": len(h_red.body),
        "blue_body": len(h_blue.body),
    }
    if isinstance(result, EmbeddingFailure):
        row["colour"] = "none"
        return row, f"failure:{result.stage}", False
    row["colour"] = result.colour
    return row, "success", True


def _witness_trial(cfg: experiment_config, trial: int, seed: int) -> TrialResult:
    params = HStarParams(
        b=cfg.b, k=cfg.k, m=cfg.m, n_total=hstar_vertex_count(cfg.b, cfg.k, cfg.m)
    )
    gamma = sample_gnp(cfg.witness_n, cfg.gamma_p, seed)
    report = verify_lower_bound_witness(gamma, params)
    row = {
        "N": cfg.witness_n,
        "p": cfg.gamma_p,
        "b": params.b,
        "k": params.k,
        "m": params.m,
        "alpha": report.alpha_value,
        "max_degree": report.max_degree,
    }
    check = cross_check_witness(gamma, params, report, max_host=cfg.max_exact_host)
    row["blue_checked"] = int(check.blue_checked)
    row["red_checked"] = int(check.red_checked)
    if not check.sound:
        logging.warning(f"trial {trial}: witness report contradicted by exhaustive search")
        return row, "unsound", False
    if not report.certified:
        return row, "rejected", False
    return row, "certified", True


def _decomposition_is_valid(h: Hypergraph3, parts: List[Hedgehog]) -> bool:
    seen = []
    for part in parts:
        edges = part.edges()
        if not isinstance(
            validate_hedgehog(Hypergraph3.from_edges(h.n, edges), part.body), Hedgehog
        ):
            return False
        seen.extend(edges)
    return len(seen) == len(set(seen)) and set(seen) == set(h.edges)


def _decompose_trial(cfg: experiment_config, trial: int, seed: int) -> TrialResult:
    rng = SplitMix64(seed)
    n_vertices = 3 + rng.randbelow(cfg.max_vertices - 2)
    h = random_one_degenerate(n_vertices, rng.next_u64())
    parts = decompose_hedgehogs(h)
    ok = _decomposition_is_valid(h, parts)
    row = {"vertices": h.n, "edges": len(h.edges), "parts": len(parts)}
    return row, "valid" if ok else "invalid", ok


def get_trial_fn(kind: str) -> Callable[[experiment_config, int, int], TrialResult]:
    if kind == "lemma3-rate":
        return _lemma3_trial
    elif kind == "cfr-success":
        return _cfr_trial
    elif kind == "witness-sweep":
        return _witness_trial
    elif kind == "decompose-stats":
        return _decompose_trial
    else:
        raise ValueError(f"experiment kind {kind} not supported.")


def run_trial(cfg: experiment_config, trial: int) -> Dict[str, Any]:
    seed = derive_seed(cfg.seed, trial)
    start = time.time()
    params, outcome, success = get_trial_fn(cfg.kind)(cfg, trial, seed)
    elapsed_ms = (time.time() - start) * 1000
    return {
        "trial": trial,
        "seed": seed,
        "params": params,
        "outcome": outcome,
        "success": success,
        "elapsed_ms": elapsed_ms,
    }


def _run_shard(cfg: experiment_config, trials: List[int]) -> List[Dict[str, Any]]:
    setup_logging()
    return [run_trial(cfg, t) for t in trials]


#### -------------------------    REPORTING    ------------------------- ####


def _init_tracker(cfg: experiment_config) -> Optional[Callable]:
    if not cfg.tracker:
        return None
    if cfg.tracker not in ["wandb", "aim"]:
        raise ValueError(f"tracker {cfg.tracker} not supported.")
    tracker_dir = cfg.tracker_dir
    project_name = cfg.tracker_project_name
    run_id = cfg.tracker_run_id

    if cfg.tracker == "wandb":
        try:
            import wandb  # type: ignore
        except ImportError:
            raise ImportError("tracker is set to wandb but wandb is not installed.")
        print(f"--> wandb is enabled!", file=sys.stderr)
        try:
            wandb.init(
                project=project_name,
                dir=tracker_dir,
                resume="allow",
                id=run_id,
            )
        except wandb.errors.UsageError:
            raise ValueError(
                "wandb failed to init, did you pass your wandb api key via WANDB_API_KEY?"
            )
        wandb.config = asdict(cfg)
        return wandb.log

    try:
        from aim import Run  # type: ignore
    except ImportError:
        raise ImportError("tracker is set to aim but aim is not installed.")
    print(f"--> aim is enabled!", file=sys.stderr)
    run = Run(
        experiment=project_name,
        repo=tracker_dir,
        run_hash=run_id,
    )
    run["hparams"] = asdict(cfg)
    return run.track


def _to_table(cfg: experiment_config, results: List[Dict[str, Any]]) -> pa.Table:
    param_names = list(results[0]["params"])
    columns: Dict[str, List[Any]] = {"trial": [], "seed": []}
    columns.update({name: [] for name in param_names})
    columns["outcome"] = []
    columns["elapsed_ms"] = []
    for r in results:
        columns["trial"].append(r["trial"])
        columns["seed"].append(r["seed"])
        for name in param_names:
            columns[name].append(r["params"][name])
        columns["outcome"].append(r["outcome"])
        columns["elapsed_ms"].append(
            int(round(r["elapsed_ms"])) if cfg.record_timings else 0
        )
    arrays = {
        name: pa.array(values, type=pa.uint64()) if name == "seed" else pa.array(values)
        for name, values in columns.items()
    }
    return pa.table(arrays)


def format_csv(table: pa.Table) -> bytes:
    sink = pa.BufferOutputStream()
    pa_csv.write_csv(
        table, sink, write_options=pa_csv.WriteOptions(quoting_style="none", quoting_header="none")
    )
    return sink.getvalue().to_pybytes()


def write_csv(table: pa.Table, output: Optional[str]) -> None:
    data = format_csv(table)
    if output is None or output == "-":
        print(data.decode(), end="")
        return
    directory = os.path.dirname(output)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(output, "wb") as f:
        f.write(data)


# progress and summaries go to stderr, stdout may carry the CSV
def _report_progress(cfg: experiment_config, done: List[Dict[str, Any]], start: float):
    successes = sum(r["success"] for r in done)
    print(
        f"--> {cfg.kind}: {len(done)}/{cfg.trials} trials, "
        f"{successes} successes, {time.time() - start:.1f}s elapsed",
        file=sys.stderr,
    )


#### -------------------------    DRIVER    ------------------------- ####


def run_experiment(cfg: experiment_config) -> CsvReport:
    """
    Run cfg.trials independent trials of cfg.kind and write one CSV row per trial.

    Trial t is seeded with derive_seed(cfg.seed, t). With num_workers > 1 the trial list
    is split into contiguous shards, one per worker process; rows are gathered back in
    trial order, so the CSV does not depend on the number of workers. elapsed_ms is only
    written when cfg.record_timings is set, keeping reruns byte-identical otherwise.
    """
    validate_config(cfg)
    setup_logging()
    track = _init_tracker(cfg)
    trials = list(range(cfg.trials))
    start = time.time()
    results: List[Dict[str, Any]] = []

    if cfg.num_workers == 1:
        for t in trials:
            results.append(run_trial(cfg, t))
            if len(results) % cfg.report_interval == 0:
                _report_progress(cfg, results, start)
    else:
        shards = [
            (cfg, _shard_partition(trials, rank, cfg.num_workers))
            for rank in range(cfg.num_workers)
        ]
        ctx = mp.get_context("spawn")
        with ctx.Pool(cfg.num_workers) as pool:
            for shard_rows in pool.starmap(_run_shard, shards):
                results.extend(shard_rows)
        _report_progress(cfg, results, start)
    assert [r["trial"] for r in results] == trials, "trial rows out of order"

    if track is not None:
        for r in results:
            track(
                {
                    "success": float(r["success"]),
                    "elapsed ms": r["elapsed_ms"],
                    **{
                        k: v
                        for k, v in r["params"].items()
                        if isinstance(v, (int, float))
                    },
                },
                step=r["trial"],
            )

    table = _to_table(cfg, results)
    write_csv(table, cfg.output)
    successes = sum(r["success"] for r in results)
    mean_ms = sum(r["elapsed_ms"] for r in results) / len(results)
    report = CsvReport(
        columns=table.column_names,
        rows=table.to_pylist(),
        successes=successes,
        mean_elapsed_ms=mean_ms,
    )
    print(
        f"--> {cfg.kind} summary: {successes}/{len(results)} successes "
        f"(rate {report.success_rate:.3f}), mean runtime {mean_ms:.1f} ms",
        file=sys.stderr,
    )
    return report
