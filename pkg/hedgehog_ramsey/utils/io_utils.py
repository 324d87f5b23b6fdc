import os
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

from hedgehog_ramsey.utils.colouring_utils import (
    DEFAULT_MAX_EXPLICIT_TRIPLES,
    DerivedColouring,
    ExplicitColouring,
    TripleColouring,
    check_colour,
    materialise,
)
from hedgehog_ramsey.utils.embedding_utils import Embedding
from hedgehog_ramsey.utils.hedgehog_utils import Hedgehog, Spike
from hedgehog_ramsey.utils.hypergraph_utils import Graph2, Hypergraph3


"""
Plain-text formats. Every format is whitespace separated, 0-based, with a one-line header
naming the format; blank lines and lines starting with '#' are ignored on reading.

    graph <n> <m>                 then m lines `u v`, u < v
    h3 <n> <m>                    then m lines `u v w`, sorted
    hedgehog <b> <s> <n_total>    then s lines `u v`: the body pair of spike b + i
    color3 <N> explicit           then one line of ceil(C(N,3)/8) bytes in hex
    color3 <N> derived <path>     gamma graph file, relative to the colouring file
    embedding <colour> <n_total>  then n_total lines `x u`
    decomposition <t>             then per part `part <i> <e>` and e lines `u v w s`

Writers take a path; `None` or "-" means stdout.
"""


def _content_lines(text: str) -> List[List[str]]:
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append(stripped.split())
    return out


def _read_lines(path: str) -> List[List[str]]:
    with open(path, "r") as f:
        lines = _content_lines(f.read())
    if not lines:
        raise ValueError(f"{path} is empty")
    return lines


def _header(lines: List[List[str]], kind: str, arity: int, path: str) -> List[str]:
    head = lines[0]
    if head[0] != kind or len(head) < arity + 1:
        raise ValueError(f"{path}: expected a '{kind}' header, got {' '.join(head)}")
    return head[1:]


def _ints(tokens: Sequence[str], count: int, path: str) -> List[int]:
    if len(tokens) != count:
        raise ValueError(f"{path}: expected {count} integers, got {' '.join(tokens)}")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ValueError(f"{path}: non-integer entry in {' '.join(tokens)}")


def _body_lines(lines: List[List[str]], count: int, path: str) -> List[List[str]]:
    body = lines[1:]
    if len(body) != count:
        raise ValueError(f"{path}: header announces {count} records, found {len(body)}")
    return body


def write_text(text: str, output: Optional[str]) -> None:
    if output is None or output == "-":
        print(text, end="")
        return
    directory = os.path.dirname(output)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(output, "w") as f:
        f.write(text)


#### -------------------------    GRAPHS    ------------------------- ####


def format_graph(g: Graph2) -> str:
    edges = g.edges()
    rows = [f"graph {g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(rows) + "\n"


def load_graph(path: str) -> Graph2:
    lines = _read_lines(path)
    n, m = _ints(_header(lines, "graph", 2, path), 2, path)
    edges = [_ints(row, 2, path) for row in _body_lines(lines, m, path)]
    for u, v in edges:
        if not u < v:
            raise ValueError(f"{path}: edge line '{u} {v}' must have u < v")
    return Graph2.from_edges(n, edges)


def format_hypergraph(h: Hypergraph3) -> str:
    rows = [f"h3 {h.n} {len(h.edges)}"] + [f"{u} {v} {w}" for u, v, w in h.edges]
    return "\n".join(rows) + "\n"


def load_hypergraph(path: str) -> Hypergraph3:
    lines = _read_lines(path)
    n, m = _ints(_header(lines, "h3", 2, path), 2, path)
    edges = [_ints(row, 3, path) for row in _body_lines(lines, m, path)]
    for e in edges:
        if not e[0] < e[1] < e[2]:
            raise ValueError(f"{path}: edge line {e} must be sorted")
    h = Hypergraph3.from_edges(n, edges)
    if len(h.edges) != m:
        raise ValueError(f"{path}: duplicate edges in the file")
    return h


#### -------------------------    HEDGEHOGS    ------------------------- ####


def format_hedgehog(h: Hedgehog) -> str:
    h = h.canonical()
    rows = [f"hedgehog {len(h.body)} {len(h.spikes)} {h.n_total}"]
    rows += [f"{s.pair[0]} {s.pair[1]}" for s in h.spikes]
    return "\n".join(rows) + "\n"


def load_hedgehog(path: str) -> Hedgehog:
    lines = _read_lines(path)
    b, s, n_total = _ints(_header(lines, "hedgehog", 3, path), 3, path)
    spikes = []
    for idx, row in enumerate(_body_lines(lines, s, path)):
        u, v = _ints(row, 2, path)
        if not (0 <= u < v < b):
            raise ValueError(f"{path}: spike {b + idx} bound to ({u}, {v}), not a body pair")
        spikes.append(Spike(b + idx, (u, v)))
    return Hedgehog(tuple(range(b)), tuple(spikes), n_total)


#### -------------------------    COLOURINGS    ------------------------- ####


def format_explicit_colouring(c: ExplicitColouring) -> str:
    return f"color3 {c.n} explicit\n{c.packed.hex()}\n"


def save_colouring(
    c: TripleColouring,
    path: Optional[str],
    graph_path: Optional[str] = None,
    max_triples: int = DEFAULT_MAX_EXPLICIT_TRIPLES,
) -> None:
    """
    Derived colourings are written as a reference to graph_path when one is given (the
    graph file must already hold gamma); otherwise they are materialised.
    """
    if isinstance(c, DerivedColouring) and graph_path is not None:
        ref = graph_path
        if path not in (None, "-") and not os.path.isabs(graph_path):
            ref = os.path.relpath(
                os.path.abspath(graph_path), os.path.dirname(os.path.abspath(path))
            )
        write_text(f"color3 {c.n} derived {ref}\n", path)
        return
    write_text(format_explicit_colouring(materialise(c, max_triples)), path)


def load_colouring(path: str) -> TripleColouring:
    lines = _read_lines(path)
    head = _header(lines, "color3", 2, path)
    n = _ints(head[:1], 1, path)[0]
    kind = head[1]
    if kind == "explicit":
        expected = (comb(n, 3) + 7) // 8
        hex_text = "".join(lines[1][0:1]) if len(lines) > 1 else ""
        if len(hex_text) != 2 * expected:
            raise ValueError(
                f"{path}: expected {expected} bytes of hex for N={n}, got {len(hex_text) // 2}"
            )
        return ExplicitColouring(n, bytes.fromhex(hex_text))
    if kind == "derived":
        if len(head) != 3:
            raise ValueError(f"{path}: derived colouring needs a graph file path")
        graph_path = head[2]
        if not os.path.isabs(graph_path):
            graph_path = os.path.join(os.path.dirname(os.path.abspath(path)), graph_path)
        gamma = load_graph(graph_path)
        if gamma.n != n:
            raise ValueError(f"{path}: graph has {gamma.n} vertices, header says {n}")
        return DerivedColouring(gamma)
    raise ValueError(f"{path}: colouring kind {kind} not supported (explicit, derived)")


#### -------------------------    EMBEDDINGS    ------------------------- ####


def format_embedding(e: Embedding) -> str:
    rows = [f"embedding {e.colour} {len(e.map)}"]
    rows += [f"{x} {u}" for x, u in sorted(e.map.items())]
    return "\n".join(rows) + "\n"


def load_embedding(path: str) -> Embedding:
    lines = _read_lines(path)
    head = _header(lines, "embedding", 2, path)
    colour = check_colour(head[0])
    n_total = _ints(head[1:2], 1, path)[0]
    mapping = {}
    for row in _body_lines(lines, n_total, path):
        x, u = _ints(row, 2, path)
        mapping[x] = u
    return Embedding(dict(sorted(mapping.items())), colour)


#### -------------------------    DECOMPOSITIONS    ------------------------- ####


def format_decomposition(parts: Iterable[Hedgehog]) -> str:
    parts = list(parts)
    rows = [f"decomposition {len(parts)}"]
    for i, part in enumerate(parts, start=1):
        rows.append(f"part {i} {len(part.spikes)}")
        for s in part.spikes:
            u, v, w = sorted((s.pair[0], s.pair[1], s.vertex))
            rows.append(f"{u} {v} {w} {s.vertex}")
    return "\n".join(rows) + "\n"


def load_decomposition(path: str) -> List[List[Tuple[Tuple[int, int, int], int]]]:
    """Parts as lists of (edge, spike vertex), in file order."""
    lines = _read_lines(path)
    (t,) = _ints(_header(lines, "decomposition", 1, path), 1, path)
    parts: List[List[Tuple[Tuple[int, int, int], int]]] = []
    pos = 1
    for i in range(1, t + 1):
        if pos >= len(lines) or lines[pos][0] != "part":
            raise ValueError(f"{path}: missing header for part {i}")
        _, count = _ints(lines[pos][1:], 2, path)
        rows = lines[pos + 1 : pos + 1 + count]
        if len(rows) != count:
            raise ValueError(f"{path}: part {i} announces {count} edges, found {len(rows)}")
        part = []
        for row in rows:
            u, v, w, s = _ints(row, 4, path)
            part.append(((u, v, w), s))
        parts.append(part)
        pos += 1 + count
    if pos != len(lines):
        raise ValueError(f"{path}: trailing records after part {t}")
    return parts

