"""Plain-text file formats.

Matrix:   first line `n`, optional second line `weights: w1 ... wn`,
          then n rows of n space-separated decimals.
Step:     line `parts: s`, a line of n part labels (any integers; mapped to
          0..s-1 in sorted order; atoms are uniform), then s block rows.
Graph:    line `k m`, then m lines `u v` with 1-based vertex indices.
"""

from __future__ import annotations

import os
import tempfile

import numpy as np

from .core import (
    DiscreteSpace,
    Kernel,
    SimpleGraph,
    StepFunction,
    kernel_from_matrix,
    step_function,
)

_FLOAT_FMT = "%.17g"  # round-trips doubles exactly


class FormatError(ValueError):
    """Malformed input file."""


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def parse_matrix(text: str) -> Kernel:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty matrix file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise FormatError(f"first line must be the size, got {lines[0]!r}") from exc
    pos = 1
    weights = None
    if pos < len(lines) and lines[pos].startswith("weights:"):
        weights = np.array(lines[pos].split(":", 1)[1].split(), dtype=float)
        if weights.size != n:
            raise FormatError(f"expected {n} weights, got {weights.size}")
        pos += 1
    if len(lines) - pos != n:
        raise FormatError(f"expected {n} matrix rows, got {len(lines) - pos}")
    rows = []
    for ln in lines[pos:]:
        row = np.array(ln.split(), dtype=float)
        if row.size != n:
            raise FormatError(f"expected {n} entries per row, got {row.size}")
        rows.append(row)
    return kernel_from_matrix(np.vstack(rows), weights)


def format_matrix(kernel: Kernel) -> str:
    out = [str(kernel.n)]
    w = kernel.space.weights
    if not np.allclose(w, 1.0 / kernel.n, rtol=0, atol=0):
        out.append("weights: " + " ".join(_FLOAT_FMT % x for x in w))
    for row in kernel.values:
        out.append(" ".join(_FLOAT_FMT % x for x in row))
    return "\n".join(out) + "\n"


def parse_step(text: str) -> StepFunction:
    lines = _lines(text)
    if not lines or not lines[0].startswith("parts:"):
        raise FormatError("step file must start with 'parts: s'")
    try:
        s = int(lines[0].split(":", 1)[1])
    except ValueError as exc:
        raise FormatError("unreadable part count") from exc
    if len(lines) < 2 + s:
        raise FormatError(f"expected a label line and {s} block rows")
    raw = np.array(lines[1].split(), dtype=int)
    uniq, labels = np.unique(raw, return_inverse=True)
    if uniq.size != s:
        raise FormatError(f"label line uses {uniq.size} parts, header says {s}")
    block = []
    for ln in lines[2 : 2 + s]:
        row = np.array(ln.split(), dtype=float)
        if row.size != s:
            raise FormatError(f"expected {s} block entries per row, got {row.size}")
        block.append(row)
    block = np.vstack(block)
    block = (block + block.T) / 2.0
    return step_function(DiscreteSpace.uniform(raw.size), labels, block)


def format_step(sf: StepFunction) -> str:
    out = [f"parts: {sf.parts}"]
    out.append(" ".join(str(p + 1) for p in sf.part_of))
    for row in sf.block:
        out.append(" ".join(_FLOAT_FMT % x for x in row))
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> SimpleGraph:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("first line must be 'k m'")
    k, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise FormatError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = set()
    for ln in lines[1:]:
        u, v = (int(t) for t in ln.split())
        edges.add((u, v))
    return SimpleGraph(k, frozenset(edges))


def format_graph(graph: SimpleGraph) -> str:
    out = [f"{graph.k} {graph.edge_count}"]
    for u, v in sorted(graph.edges):
        out.append(f"{u} {v}")
    return "\n".join(out) + "\n"


def load_kernel(path: str) -> Kernel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def load_step(path: str) -> StepFunction:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_step(fh.read())


def load_graph(path: str) -> SimpleGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def sniff_kind(path: str) -> str:
    """'step' if the file opens with a parts header, else 'matrix'."""
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline().strip()
    return "step" if first.startswith("parts:") else "matrix"


def write_text_atomic(path: str, text: str) -> None:
    """Write via a temp file in the same directory plus rename, so readers
    never observe a half-written file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
