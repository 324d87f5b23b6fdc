import logging

import pytest

from hedgehog_ramsey.cli import main
from hedgehog_ramsey.config import experiment_config
from hedgehog_ramsey.utils.config_utils import (
    get_experiment_preset,
    parse_float_list,
    update_config,
    validate_config,
)
from hedgehog_ramsey.utils.experiment_utils import (
    guaranteed_host_size,
    run_experiment,
    run_trial,
)
from hedgehog_ramsey.utils.random_utils import _shard_partition


def small_config(tmp_path, **kwargs):
    cfg = experiment_config(output=str(tmp_path / "out.csv"), report_interval=1000)
    update_config(cfg, **kwargs)
    return cfg


def read_csv_lines(path):
    with open(path) as f:
        return f.read().splitlines()


# TESTS


def test_lemma3_rate_on_empty_graphs(tmp_path):
    cfg = small_config(
        tmp_path, kind="lemma3-rate", trials=1, graph_n=30, p_values="0", indep_s=25
    )
    report = run_experiment(cfg)
    assert report.successes == 0
    assert report.rows[0]["outcome"] == "fail:indep"
    assert report.rows[0]["max_degree"] == 0


def test_lemma3_rate_cycles_through_p_values(tmp_path):
    cfg = small_config(tmp_path, kind="lemma3-rate", trials=4, graph_n=20, p_values="0,1", indep_s=10)
    report = run_experiment(cfg)
    assert [row["p"] for row in report.rows] == [0.0, 1.0, 0.0, 1.0]
    assert all(row["outcome"] == "fail:indep" for row in report.rows[::2])
    assert all(row["outcome"] == "fail:clique" for row in report.rows[1::2])


def test_cfr_success_on_all_red_hosts(tmp_path):
    cfg = small_config(tmp_path, kind="cfr-success", trials=3, hedgehog_n=6, host_kind="all-red")
    report = run_experiment(cfg)
    assert report.success_rate == 1.0
    assert {row["N"] for row in report.rows} == {guaranteed_host_size(6)}
    assert {row["colour"] for row in report.rows} == {"red"}


def test_cfr_success_on_tiny_hosts_reports_failures(tmp_path):
    cfg = small_config(
        tmp_path, kind="cfr-success", trials=2, hedgehog_n=10, host_n=6, host_kind="all-red"
    )
    report = run_experiment(cfg)
    assert report.successes == 0
    assert all(row["outcome"].startswith("failure:") for row in report.rows)
    assert all(row["colour"] == "none" for row in report.rows)


def test_witness_sweep_outcomes(tmp_path):
    cfg = get_experiment_preset("witness_small")
    update_config(cfg, trials=60, output=str(tmp_path / "w.csv"))
    report = run_experiment(cfg)
    assert {row["outcome"] for row in report.rows} <= {"rejected", "certified"}
    assert report.successes == sum(row["outcome"] == "certified" for row in report.rows)


def test_witness_core_runs_the_red_cross_check(tmp_path):
    cfg = get_experiment_preset("witness_core")
    update_config(cfg, trials=100, output=str(tmp_path / "core.csv"))
    report = run_experiment(cfg)
    assert {row["outcome"] for row in report.rows} <= {"rejected", "certified"}
    assert any(row["red_checked"] == 1 for row in report.rows)
    assert all(row["blue_checked"] == 0 for row in report.rows)
    assert "red_checked" in report.columns


def test_max_exact_host_turns_cross_checks_off(tmp_path):
    cfg = get_experiment_preset("witness_core")
    update_config(cfg, trials=20, max_exact_host=0, output=str(tmp_path / "off.csv"))
    report = run_experiment(cfg)
    assert all(row["red_checked"] == 0 for row in report.rows)


def test_explicit_host_budget(tmp_path):
    cfg = small_config(
        tmp_path,
        kind="cfr-success",
        trials=1,
        hedgehog_n=4,
        host_n=10,
        host_kind="all-red",
        max_explicit_triples=100,
    )
    with pytest.raises(ValueError, match="max_explicit_triples"):
        run_experiment(cfg)
    # C(10, 3) = 120
    update_config(cfg, max_explicit_triples=120)
    assert run_experiment(cfg).rows[0]["host"] == "all-red"
    # derived hosts are never materialised
    update_config(cfg, host_kind="derived", max_explicit_triples=1)
    assert len(run_experiment(cfg).rows) == 1


def test_decompose_stats_are_valid(tmp_path):
    cfg = small_config(tmp_path, kind="decompose-stats", trials=50, max_vertices=20)
    report = run_experiment(cfg)
    assert report.success_rate == 1.0
    assert all(3 <= row["vertices"] <= 20 for row in report.rows)


def test_csv_layout(tmp_path):
    cfg = small_config(tmp_path, kind="decompose-stats", trials=5, max_vertices=10)
    run_experiment(cfg)
    lines = read_csv_lines(cfg.output)
    assert lines[0] == "trial,seed,vertices,edges,parts,outcome,elapsed_ms"
    assert len(lines) == 6
    assert [line.split(",")[0] for line in lines[1:]] == ["0", "1", "2", "3", "4"]
    assert all(line.endswith(",valid,0") for line in lines[1:])


def test_rerun_is_byte_identical(tmp_path):
    first = small_config(tmp_path, kind="lemma3-rate", trials=6, graph_n=25, p_values="0.2,0.4")
    second = small_config(tmp_path, kind="lemma3-rate", trials=6, graph_n=25, p_values="0.2,0.4")
    second.output = str(tmp_path / "again.csv")
    run_experiment(first)
    run_experiment(second)
    assert open(first.output, "rb").read() == open(second.output, "rb").read()


def test_seed_changes_the_run(tmp_path):
    a = small_config(tmp_path, kind="decompose-stats", trials=5, seed=1)
    b = small_config(tmp_path, kind="decompose-stats", trials=5, seed=2)
    assert [r["seed"] for r in run_experiment(a).rows] != [r["seed"] for r in run_experiment(b).rows]


@pytest.mark.slow
def test_worker_count_does_not_change_the_csv(tmp_path):
    outputs = []
    for workers in (1, 3):
        cfg = small_config(
            tmp_path, kind="decompose-stats", trials=10, max_vertices=15, num_workers=workers
        )
        cfg.output = str(tmp_path / f"workers{workers}.csv")
        run_experiment(cfg)
        outputs.append(open(cfg.output, "rb").read())
    assert outputs[0] == outputs[1]


def test_record_timings(tmp_path):
    cfg = small_config(tmp_path, kind="decompose-stats", trials=3, record_timings=True)
    report = run_experiment(cfg)
    assert all(row["elapsed_ms"] >= 0 for row in report.rows)
    assert "elapsed_ms" in report.columns


def test_run_trial_is_pure():
    cfg = experiment_config(kind="decompose-stats", max_vertices=12)
    a, b = run_trial(cfg, 7), run_trial(cfg, 7)
    assert (a["seed"], a["params"], a["outcome"]) == (b["seed"], b["params"], b["outcome"])


def test_format_csv_has_no_quotes(tmp_path):
    cfg = small_config(tmp_path, kind="cfr-success", trials=1, hedgehog_n=4, host_kind="all-blue")
    report = run_experiment(cfg)
    assert report.rows[0]["host"] == "all-blue"
    assert '"' not in open(cfg.output).read()


def test_experiment_run_command(tmp_path):
    output = str(tmp_path / "cli.csv")
    code = main(
        ["experiment", "run", "--kind", "decompose-stats", "--trials", "4", "--max_vertices", "8", "-o", output]
    )
    assert code == 0
    assert len(read_csv_lines(output)) == 5


def test_experiment_run_rejects_bad_config(tmp_path):
    assert main(["experiment", "run", "--kind", "nonsense", "-o", str(tmp_path / "x.csv")]) == 1
    assert main(["experiment", "run", "--preset", "nonsense"]) == 1


def test_update_config():
    cfg = experiment_config()
    update_config(cfg, trials=7, **{"host-kind": "derived", "experiment_config.gamma_p": 0.2})
    assert (cfg.trials, cfg.host_kind, cfg.gamma_p) == (7, "derived", 0.2)


def test_update_config_warns_on_unknown_keys(caplog):
    cfg = experiment_config()
    with caplog.at_level(logging.WARNING):
        update_config(cfg, bogus=1)
    assert "bogus" in caplog.text
    assert not hasattr(cfg, "bogus")


@pytest.mark.parametrize(
    "variant,kind",
    [
        ("lemma3_desk", "lemma3-rate"),
        ("cfr_guarantee", "cfr-success"),
        ("witness_small", "witness-sweep"),
        ("witness_core", "witness-sweep"),
        ("decompose_small", "decompose-stats"),
    ],
)
def test_presets(variant, kind):
    cfg = get_experiment_preset(variant)
    assert cfg.kind == kind
    assert validate_config(cfg) is cfg


def test_desk_and_guarantee_presets():
    desk = get_experiment_preset("lemma3_desk")
    assert (desk.graph_n, desk.deg_bound, desk.clique_q, desk.indep_s, desk.trials) == (60, 30, 10, 25, 50)
    guarantee = get_experiment_preset("cfr_guarantee")
    assert guarantee.host_n == guaranteed_host_size(guarantee.hedgehog_n) == 416
    with pytest.raises(ValueError):
        get_experiment_preset("lemma3_huge")


@pytest.mark.parametrize(
    "changes",
    [
        {"kind": "lemma3"},
        {"trials": 0},
        {"num_workers": 0},
        {"host_kind": "striped"},
        {"p_values": "0.2,1.5"},
        {"red_bias": -0.1},
        {"kind": "decompose-stats", "max_vertices": 2},
        {"kind": "cfr-success", "hedgehog_n": 2},
        {"tracker": "tensorboard"},
        {"max_explicit_triples": 0},
        {"max_exact_host": -1},
    ],
)
def test_validate_config_errors(changes):
    cfg = experiment_config()
    update_config(cfg, **changes)
    with pytest.raises(ValueError):
        validate_config(cfg)


def test_parse_float_list():
    assert parse_float_list("0.1, 0.2") == [0.1, 0.2]
    assert parse_float_list((0.1, 0.2)) == [0.1, 0.2]
    assert parse_float_list(0.3) == [0.3]
    with pytest.raises(ValueError):
        parse_float_list("0.1,abc")


def test_shard_partition_covers_all_trials():
    trials = list(range(23))
    for worldsize in (1, 2, 5, 23, 30):
        shards = [_shard_partition(trials, rank, worldsize) for rank in range(worldsize)]
        assert [t for shard in shards for t in shard] == trials


def test_csv_keeps_unsigned_seeds(tmp_path):
    cfg = small_config(tmp_path, kind="decompose-stats", trials=40, seed=2**63)
    report = run_experiment(cfg)
    assert all(0 <= row["seed"] < 2**64 for row in report.rows)
