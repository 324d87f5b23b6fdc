from dataclasses import dataclass
from typing import Optional


@dataclass
class experiment_config:
    # run
    kind: str = "lemma3-rate"  # lemma3-rate, cfr-success, witness-sweep, decompose-stats
    trials: int = 50
    seed: int = 2023
    output: Optional[str] = None  # CSV path, None for stdout
    num_workers: int = 1
    record_timings: bool = False  # write elapsed_ms to the CSV (breaks byte-identical reruns)
    report_interval: int = 10

    # lemma3-rate
    graph_n: int = 60
    p_values: str = "0.3"
    deg_bound: int = 30
    clique_q: int = 10
    indep_s: int = 25

    # cfr-success
    hedgehog_n: int = 12
    host_n: Optional[int] = None  # None for ceil(10 * hedgehog_n ** 1.5)
    host_kind: str = "mixed"  # random, derived, all-red, all-blue, mixed
    red_bias: float = 0.5
    gamma_p: float = 0.1  # also the edge probability of witness-sweep graphs

    # witness-sweep
    witness_n: int = 5
    b: int = 3
    k: int = 3
    m: int = 5

    # decompose-stats
    max_vertices: int = 40

    # limits
    max_explicit_triples: int = 1 << 27  # largest explicit cfr-success host, in triples
    max_exact_host: int = 24  # largest gamma searched by witness-sweep cross-checks

    # tracking
    tracker: Optional[str] = None  # None, "wandb", "aim"
    tracker_dir: str = "./tracker_logs"
    tracker_project_name: str = "hedgehog_ramsey"  # project name for a group of runs
    tracker_run_id: Optional[str] = None  # run id, for resuming a tracked run
