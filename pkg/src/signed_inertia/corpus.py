"""Bundled test graphs: a frozen corpus plus a handful of named fixtures."""

from __future__ import annotations

from importlib import resources

from .exact_matrix import SymMat
from .signed_graph import SignedGraph, parse

FIXTURES = {
    # a 2-path whose two edges are both odd
    "path2_odd": "n 3\ne 1 2 o\ne 2 3 o\n",
    "isolated3": "n 3\n",
    # the same path with an odd loop on every vertex
    "path2_odd_loops": "n 3\ne 1 2 o\ne 2 3 o\ne 1 1 o\ne 2 2 o\ne 3 3 o\n",
    "single_vertex": "n 1\n",
    # smallest graph admitting EXAMPLE_MATRIX
    "path2_mixed": "n 3\ne 1 2 o\ne 2 3 e\ne 3 3 e\n",
}

EXAMPLE_MATRIX = SymMat([[0, 1, 0], [1, 0, -2], [0, -2, -3]])


def fixture(name: str) -> SignedGraph:
    return parse(FIXTURES[name])


def _blocks(text: str):
    name, buf = None, []
    for line in text.splitlines():
        if line.startswith("## "):
            if name is not None:
                yield name, "\n".join(buf)
            name, buf = line[3:].strip(), []
        elif name is not None:
            buf.append(line)
    if name is not None:
        yield name, "\n".join(buf)


def load_corpus() -> list[tuple[str, SignedGraph]]:
    """The 40 frozen corpus graphs as ``(name, graph)`` pairs, in file order."""
    text = resources.files(__package__).joinpath("data").joinpath("corpus.sg").read_text()
    return [(name, parse(body)) for name, body in _blocks(text)]
