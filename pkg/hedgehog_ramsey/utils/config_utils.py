import logging
from typing import List

from hedgehog_ramsey.config import experiment_config


EXPERIMENT_KINDS = ("lemma3-rate", "cfr-success", "witness-sweep", "decompose-stats")
HOST_KINDS = ("random", "derived", "all-red", "all-blue", "mixed")


def update_config(config, **kwargs):
    if isinstance(config, (tuple, list)):
        for c in config:
            update_config(c, **kwargs)
    else:
        for k, v in kwargs.items():
            k = k.replace("-", "_")
            if hasattr(config, k):
                setattr(config, k, v)
            elif "." in k:
                config_name, param_name = k.split(".", 1)
                if type(config).__name__ == config_name:
                    if hasattr(config, param_name):
                        setattr(config, param_name, v)
                    else:
                        logging.warning(
                            f"{config_name} does not accept parameter: {k}"
                        )
            elif isinstance(config, experiment_config):
                logging.warning(f"unknown parameter {k}")


def parse_float_list(values) -> List[float]:
    # "0.1,0.2" from the command line, or the tuple fire makes of 0.1,0.2
    if isinstance(values, str):
        items = [x.strip() for x in values.split(",") if x.strip()]
    elif isinstance(values, (list, tuple)):
        items = list(values)
    elif isinstance(values, (int, float)):
        items = [values]
    else:
        raise ValueError(f"arg input {values} cannot be parsed.")
    try:
        return [float(x) for x in items]
    except ValueError:
        raise ValueError(f"arg input {values} is not a list of numbers.")


def validate_config(cfg: experiment_config) -> experiment_config:
    if cfg.kind not in EXPERIMENT_KINDS:
        raise ValueError(f"experiment kind {cfg.kind} not supported ({list(EXPERIMENT_KINDS)})")
    if cfg.trials < 1:
        raise ValueError(f"trials={cfg.trials} must be at least 1")
    if cfg.num_workers < 1:
        raise ValueError(f"num_workers={cfg.num_workers} must be at least 1")
    if cfg.report_interval < 1:
        raise ValueError(f"report_interval={cfg.report_interval} must be at least 1")
    if cfg.host_kind not in HOST_KINDS:
        raise ValueError(f"host kind {cfg.host_kind} not supported ({list(HOST_KINDS)})")
    for p in parse_float_list(cfg.p_values):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"edge probability {p} in p_values is outside [0, 1]")
    for name in ("red_bias", "gamma_p"):
        if not 0.0 <= getattr(cfg, name) <= 1.0:
            raise ValueError(f"{name}={getattr(cfg, name)} is outside [0, 1]")
    if cfg.kind == "decompose-stats" and cfg.max_vertices < 3:
        raise ValueError(f"max_vertices={cfg.max_vertices} must be at least 3")
    if cfg.kind == "cfr-success" and cfg.hedgehog_n < 3:
        raise ValueError(f"hedgehog_n={cfg.hedgehog_n} must be at least 3")
    if cfg.max_explicit_triples < 1:
        raise ValueError(
            f"max_explicit_triples={cfg.max_explicit_triples} must be at least 1"
        )
    if cfg.max_exact_host < 0:
        raise ValueError(f"max_exact_host={cfg.max_exact_host} must be non-negative")
    if cfg.tracker is not None and cfg.tracker not in ["wandb", "aim"]:
        raise ValueError(f"tracker {cfg.tracker} not supported.")
    return cfg


def get_experiment_preset(variant: str) -> experiment_config:
    if variant == "lemma3_desk":
        cfg = experiment_config(
            kind="lemma3-rate",
            trials=50,
            graph_n=60,
            p_values="0.3",
            deg_bound=30,
            clique_q=10,
            indep_s=25,
        )
    elif variant == "cfr_guarantee":
        cfg = experiment_config(
            kind="cfr-success",
            trials=25,
            hedgehog_n=12,
            host_n=416,
            host_kind="mixed",
            red_bias=0.5,
            gamma_p=0.1,
        )
    elif variant == "witness_small":
        cfg = experiment_config(
            kind="witness-sweep",
            trials=200,
            witness_n=5,
            gamma_p=0.5,
            b=3,
            k=3,
            m=5,
        )
    elif variant == "witness_core":
        # gamma as large as the heavy core of H*(3,3,4), so the red cross-check runs
        cfg = experiment_config(
            kind="witness-sweep",
            trials=200,
            witness_n=18,
            gamma_p=0.06,
            b=3,
            k=3,
            m=4,
        )
    elif variant == "decompose_small":
        cfg = experiment_config(
            kind="decompose-stats",
            trials=1000,
            max_vertices=40,
        )
    else:
        raise ValueError(f"experiment preset {variant} not supported.")

    return cfg
