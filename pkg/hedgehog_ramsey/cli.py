import logging
import sys
from typing import List, Optional

import fire

from hedgehog_ramsey import config
from hedgehog_ramsey.utils.colouring_utils import (
    DerivedColouring,
    check_colour,
    materialise,
    random_colouring,
)
from hedgehog_ramsey.utils.config_utils import get_experiment_preset, update_config
from hedgehog_ramsey.utils.construction_utils import (
    Lemma3Params,
    check_lemma3,
    lower_bound_host_size,
    paper_lemma3_params,
    sample_gnp,
    verify_lower_bound_witness,
)
from hedgehog_ramsey.utils.embedding_utils import (
    DEFAULT_MAX_RAMSEY_TRIPLES,
    EmbeddingFailure,
    cfr_embed,
    find_mono_copy_exact,
    ramsey_exact,
    ramsey_number,
)
from hedgehog_ramsey.utils.experiment_utils import run_experiment, setup_logging
from hedgehog_ramsey.utils.hedgehog_utils import (
    Hedgehog,
    HStarParams,
    Spike,
    build_hstar,
    decompose_hedgehogs,
    hstar_vertex_count,
    paper_hstar_params,
    standard_body_size,
    standard_hedgehog,
)
from hedgehog_ramsey.utils.hypergraph_utils import degeneracy2, degeneracy3
from hedgehog_ramsey.utils.io_utils import (
    format_decomposition,
    format_embedding,
    format_explicit_colouring,
    format_graph,
    format_hedgehog,
    load_colouring,
    load_graph,
    load_hedgehog,
    load_hypergraph,
    save_colouring,
    write_text,
)


"""
Command line front end. Every command is a thin wrapper over one library call.

Exit codes: 0 on success, 1 on usage or I/O errors, 2 when the command ran correctly but
the answer is negative (embedding failed, witness not certified, no arrow up to nmax, ...).
The verdict line is printed before exiting with 2.
"""


class NegativeResult(Exception):
    pass


# fire resolves single-dash flags by prefix, which is ambiguous for several commands
SHORT_FLAGS = {
    "-o": "--output",
    "-i": "--input_path",
    "-c": "--colouring",
    "-g": "--graph",
}


def _require_seed(seed: Optional[int]) -> int:
    if seed is None:
        raise ValueError("--seed is required for randomised commands")
    return int(seed)


def _flag(ok: bool) -> int:
    return 1 if ok else 0


#### -------------------------    HEDGEHOGS    ------------------------- ####


def gen_hstar(
    b: Optional[int] = None,
    k: Optional[int] = None,
    m: Optional[int] = None,
    n_total: Optional[int] = None,
    paper_params: Optional[int] = None,
    output: Optional[str] = None,
):
    """Write H*(b, k, m) padded to n_total vertices (default: no padding)."""
    if paper_params is not None:
        p = paper_hstar_params(paper_params)
    else:
        if b is None or k is None or m is None:
            raise ValueError("gen-hstar needs --b, --k and --m, or --paper-params")
        if n_total is None:
            n_total = hstar_vertex_count(b, k, m)
        p = HStarParams(b=b, k=k, m=m, n_total=n_total)
    write_text(format_hedgehog(build_hstar(p)), output)


def gen_standard(b: int, output: Optional[str] = None):
    write_text(format_hedgehog(standard_hedgehog(b)), output)


def decompose(input_path: str, strip_isolated: bool = False, output: Optional[str] = None):
    h = load_hypergraph(input_path)
    if strip_isolated:
        stripped, old_id = h.strip_isolated()
        parts = [
            Hedgehog(
                tuple(old_id[x] for x in part.body),
                tuple(
                    Spike(old_id[s.vertex], (old_id[s.pair[0]], old_id[s.pair[1]]))
                    for s in part.spikes
                ),
                h.n,
            )
            for part in decompose_hedgehogs(stripped)
        ]
    else:
        parts = decompose_hedgehogs(h)
    logging.info(f"decomposed {len(h.edges)} edges into {len(parts)} hedgehogs")
    write_text(format_decomposition(parts), output)


#### -------------------------    GRAPHS    ------------------------- ####


def sample_gnp_cmd(n: int, p: float, seed: Optional[int] = None, output: Optional[str] = None):
    write_text(format_graph(sample_gnp(n, p, _require_seed(seed))), output)


def check_lemma3_cmd(
    input_path: str,
    deg_bound: Optional[int] = None,
    clique: Optional[int] = None,
    indep: Optional[int] = None,
    paper_params: Optional[int] = None,
):
    g = load_graph(input_path)
    if paper_params is not None:
        params = paper_lemma3_params(paper_params)
    else:
        if deg_bound is None or clique is None or indep is None:
            raise ValueError(
                "check-lemma3 needs --deg_bound, --clique and --indep, or --paper-params"
            )
        params = Lemma3Params(
            N=g.n, p=0.0, deg_bound=deg_bound, clique_q=clique, indep_s=indep
        )
    report = check_lemma3(g, params)
    verdict = "PASS" if report.passed else "FAIL"
    print(
        f"{verdict} deg_ok={_flag(report.deg_ok)} clique_ok={_flag(report.clique_ok)} "
        f"indep_ok={_flag(report.indep_ok)} max_degree={report.max_degree}"
    )
    if not report.passed:
        raise NegativeResult(verdict)


def graph_degeneracy(input_path: str, output: Optional[str] = None):
    result = degeneracy2(load_graph(input_path))
    write_text(f"D {result.value}\norder {' '.join(map(str, result.order))}\n", output)


def h3_degeneracy(input_path: str, output: Optional[str] = None):
    result = degeneracy3(load_hypergraph(input_path))
    write_text(f"D {result.value}\norder {' '.join(map(str, result.order))}\n", output)


#### -------------------------    COLOURINGS    ------------------------- ####


def color_derive(graph: str, explicit: bool = False, output: Optional[str] = None):
    """Derived colouring of a graph file, stored as a reference unless --explicit."""
    c = DerivedColouring(load_graph(graph))
    save_colouring(c, output, graph_path=None if explicit else graph)


def color_random(
    n: int, red_bias: float = 0.5, seed: Optional[int] = None, output: Optional[str] = None
):
    c = random_colouring(n, red_bias, _require_seed(seed))
    write_text(format_explicit_colouring(c), output)


def color_materialise(colouring: str, output: Optional[str] = None):
    write_text(format_explicit_colouring(materialise(load_colouring(colouring))), output)


#### -------------------------    EMBEDDINGS    ------------------------- ####


def embed_cfr(colouring: str, red: str, blue: str, n: int, output: Optional[str] = None):
    c = load_colouring(colouring)
    result = cfr_embed(c, load_hedgehog(red), load_hedgehog(blue), n)
    if isinstance(result, EmbeddingFailure):
        print(f"FAILURE stage={result.stage} vertex={result.vertex} detail={result.detail}")
        raise NegativeResult(result.stage)
    write_text(format_embedding(result), output)


def embed_exact(colouring: str, target: str, colour: str, output: Optional[str] = None):
    c = load_colouring(colouring)
    found = find_mono_copy_exact(c, load_hedgehog(target), check_colour(colour))
    if found is None:
        print(f"NONE colour={colour}")
        raise NegativeResult(colour)
    write_text(format_embedding(found), output)


def ramsey_exact_cmd(
    red: str,
    blue: str,
    nmax: Optional[int] = None,
    n: Optional[int] = None,
    max_triples: int = DEFAULT_MAX_RAMSEY_TRIPLES,
):
    """With --nmax print the Ramsey number up to nmax; with --n print whether N arrows."""
    h_red, h_blue = load_hedgehog(red), load_hedgehog(blue)
    if n is not None:
        arrows = ramsey_exact(h_red, h_blue, n, max_triples=max_triples)
        print(f"arrows={'true' if arrows else 'false'}")
        if not arrows:
            raise NegativeResult("arrows=false")
        return
    if nmax is None:
        raise ValueError("ramsey exact needs --nmax or --n")
    value = ramsey_number(h_red, h_blue, nmax, max_triples=max_triples)
    if value is None:
        print(f"EXCEEDS {nmax}")
        raise NegativeResult(f"exceeds {nmax}")
    print(value)


def witness_verify(
    graph: str,
    b: Optional[int] = None,
    k: Optional[int] = None,
    m: Optional[int] = None,
    n_total: Optional[int] = None,
    blue_standard: Optional[int] = None,
    paper_params: Optional[int] = None,
    report: bool = False,
):
    gamma = load_graph(graph)
    if paper_params is not None:
        p = paper_hstar_params(paper_params)
    else:
        if b is None or k is None or m is None:
            raise ValueError("witness verify needs --b, --k and --m, or --paper-params")
        if n_total is None:
            n_total = hstar_vertex_count(b, k, m)
        p = HStarParams(b=b, k=k, m=m, n_total=n_total)
    blue_body = standard_body_size(blue_standard) if blue_standard is not None else None
    result = verify_lower_bound_witness(gamma, p, blue_body=blue_body)
    verdict = "CERTIFIED" if result.certified else "NOT-CERTIFIED"
    print(
        f"{verdict} alpha_ok={_flag(result.alpha_ok)} clique_ok={_flag(result.clique_ok)} "
        f"multiplicity_ok={_flag(result.multiplicity_ok)}"
    )
    if report:
        print(f"gamma: {gamma.n} vertices, {gamma.num_edges} edges")
        print(f"H*: b={p.b} k={p.k} m={p.m} n_total={p.n_total}")
        if blue_body is not None:
            print(f"blue target: standard hedgehog with body {blue_body}")
        print(f"independence number: {result.alpha_value}")
        print(f"max degree: {result.max_degree} (need 2 * max degree < m + 1 = {p.m + 1})")
        if result.independent_found is not None:
            print(f"independent set: {' '.join(map(str, result.independent_found))}")
        if result.clique_found is not None:
            print(f"clique: {' '.join(map(str, result.clique_found))}")
        if paper_params is not None:
            print(f"lower-bound host size: {lower_bound_host_size(paper_params)}")
    if not result.certified:
        raise NegativeResult(verdict)


#### -------------------------    EXPERIMENTS    ------------------------- ####


def experiment_run(preset: Optional[str] = None, **kwargs):
    cfg = get_experiment_preset(preset) if preset else config.experiment_config()
    update_config(cfg, **kwargs)
    print(f"--> running with these configs {cfg}", file=sys.stderr)
    run_experiment(cfg)


COMMANDS = {
    "gen_hstar": gen_hstar,
    "gen_standard": gen_standard,
    "decompose": decompose,
    "graph": {
        "sample_gnp": sample_gnp_cmd,
        "check_lemma3": check_lemma3_cmd,
        "degeneracy": graph_degeneracy,
    },
    "h3": {"degeneracy": h3_degeneracy},
    "color": {
        "derive": color_derive,
        "random": color_random,
        "materialise": color_materialise,
    },
    "embed": {"cfr": embed_cfr, "exact": embed_exact},
    "ramsey": {"exact": ramsey_exact_cmd},
    "witness": {"verify": witness_verify},
    "experiment": {"run": experiment_run},
}


def _expand_flags(argv: List[str]) -> List[str]:
    return [SHORT_FLAGS.get(a, a) for a in argv]


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    argv = _expand_flags(list(sys.argv[1:] if argv is None else argv))
    try:
        fire.Fire(COMMANDS, command=argv, name="hedgehog-ramsey")
    except NegativeResult:
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except fire.core.FireExit as e:
        return 0 if e.code in (0, None) else 1
    return 0


def main_entry():
    sys.exit(main())
