"""Text formats for graphs, parameter lists and chip configurations.

Graph file::

    [multigraph]
    n m
    i j        (m lines, 1-based)

Parameter file: one ``i j p/q`` line per step, both orders for every edge.
Blank lines and ``#`` comments are ignored in both formats.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .graph import Multigraph, SimpleGraph, build_graph, build_multigraph
from .orientations import ParameterList, preset, sample_generic, validate_parameters


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_graph(text: str):
    """Return a :class:`SimpleGraph`, or a :class:`Multigraph` if the header says so."""
    lines = list(_lines(text))
    multi = False
    if lines and lines[0].lower() == "multigraph":
        multi = True
        lines = lines[1:]
    if not lines:
        raise InputError("empty graph file")
    try:
        n, m = (int(tok) for tok in lines[0].split())
        pairs = [tuple(int(tok) for tok in line.split()) for line in lines[1:]]
    except ValueError as exc:
        raise InputError(f"malformed graph file: {exc}") from None
    if len(pairs) != m or any(len(p) != 2 for p in pairs):
        raise InputError(f"expected {m} edge lines of the form 'i j'")
    return build_multigraph(n, pairs) if multi else build_graph(n, pairs)


def load_graph(path) -> SimpleGraph:
    G = parse_graph(Path(path).read_text(encoding="utf-8"))
    if isinstance(G, Multigraph):
        raise InputError(f"{path}: expected a simple graph, got a multigraph")
    return G


def load_multigraph(path) -> Multigraph:
    """Read either format; simple graphs are promoted to multigraphs."""
    G = parse_graph(Path(path).read_text(encoding="utf-8"))
    return Multigraph.from_simple(G) if isinstance(G, SimpleGraph) else G


def format_graph(G) -> str:
    head = "multigraph\n" if isinstance(G, Multigraph) else ""
    body = "".join(f"{i} {j}\n" for i, j in G.edges)
    return f"{head}{G.n} {len(G.edges)}\n{body}"


def parse_parameters(G: SimpleGraph, text: str, name: str = "file") -> ParameterList:
    values = {}
    for line in _lines(text):
        toks = line.split()
        if len(toks) != 3:
            raise InputError(f"bad parameter line {line!r}; expected 'i j p/q'")
        try:
            i, j, val = int(toks[0]), int(toks[1]), Fraction(toks[2])
        except ValueError:
            raise InputError(f"bad parameter line {line!r}") from None
        if (i, j) in values:
            raise InputError(f"parameter a_{i}{j} given twice")
        values[(i, j)] = val
    A = ParameterList(G, values, name)
    validate_parameters(G, A)
    return A


def format_parameters(A: ParameterList) -> str:
    return "".join(f"{i} {j} {v}\n" for (i, j), v in A.items())


def resolve_parameters(G: SimpleGraph, selector: str, max_cycles=None) -> ParameterList:
    """``semi``, ``shi``, ``interval:l1,...,ln``, ``generic:SEED`` or ``file:PATH``."""
    kind, _, arg = selector.partition(":")
    if kind in ("semi", "shi") and not arg:
        return preset(G, kind)
    if kind == "interval":
        try:
            eta = [int(tok) for tok in arg.split(",")]
        except ValueError:
            raise InputError(f"bad interval lengths {arg!r}") from None
        return preset(G, "interval", eta)
    if kind == "generic":
        try:
            seed = int(arg)
        except ValueError:
            raise InputError(f"bad seed {arg!r}") from None
        kwargs = {} if max_cycles is None else {"max_cycles": max_cycles}
        return sample_generic(G, seed, **kwargs)
    if kind == "file":
        return parse_parameters(G, Path(arg).read_text(encoding="utf-8"), name=selector)
    raise InputError(f"unknown parameter selector {selector!r}")


def parse_chip_config(text: str) -> tuple:
    try:
        return tuple(int(tok) for tok in text.split())
    except ValueError:
        raise InputError(f"bad chip configuration {text!r}") from None


def format_chip_config(c) -> str:
    return " ".join(str(x) for x in c)
