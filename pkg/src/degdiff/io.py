"""Edge-list ingestion and results persistence.

Edge lists are SNAP-compatible: whitespace-separated "u v" lines, comments
starting with '#' or '%'.  Labels need not be integers; they are remapped to
dense ids and the label map is kept.  Files written by save_edge_list carry
a "# nodes N edges M" header so a save/load round trip reproduces the edge
set (and the isolated-vertex count) exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .graph import Graph

__all__ = [
    "ParseError",
    "LoadResult",
    "load_edge_list",
    "save_edge_list",
    "write_csv",
    "write_manifest",
    "render_value",
]


class ParseError(ValueError):
    """Malformed edge-list content, annotated with the line number."""


@dataclass
class LoadResult:
    graph: Graph
    label_map: dict[str, int]
    self_loops_dropped: int
    duplicates_dropped: int


_NODES_RE = re.compile(r"nodes[:\s]+(\d+)", re.IGNORECASE)


def load_edge_list(path, directed: bool = False) -> LoadResult:
    """Parse an edge-list file into a simple Graph.

    Integer labels are kept verbatim when a "nodes N" header confirms they
    are dense in [0, N); otherwise labels map to dense ids, integers by
    ascending value, other tokens in first-appearance order.
    """
    path = Path(path)
    raw: list[tuple[str, str]] = []
    header_n = None
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped[0] in "#%":
                m = _NODES_RE.search(stripped)
                if m and header_n is None:
                    header_n = int(m.group(1))
                continue
            tokens = stripped.split()
            if len(tokens) != 2:
                raise ParseError(
                    f"{path}:{lineno}: expected 'u v', got {stripped!r}")
            raw.append((tokens[0], tokens[1]))
    if not raw:
        raise ValueError(f"{path}: no edges found")

    labels = {t for pair in raw for t in pair}
    all_int = all(re.fullmatch(r"[+-]?\d+", t) for t in labels)
    if all_int:
        ints = {t: int(t) for t in labels}
        lo = min(ints.values())
        hi = max(ints.values())
        if header_n is not None and lo >= 0 and hi < header_n:
            label_map = {t: ints[t] for t in labels}
            n = header_n
        else:
            ordered = sorted(labels, key=lambda t: ints[t])
            label_map = {t: i for i, t in enumerate(ordered)}
            n = len(ordered)
    else:
        seen: dict[str, int] = {}
        for pair in raw:
            for t in pair:
                if t not in seen:
                    seen[t] = len(seen)
        label_map = seen
        n = len(seen)

    edges = np.array([(label_map[a], label_map[b]) for a, b in raw],
                     dtype=np.int64)
    g = Graph(n, edges, directed=directed)
    return LoadResult(g, label_map, g.dropped_self_loops, g.dropped_duplicates)


def save_edge_list(g: Graph, path) -> None:
    path = Path(path)
    with path.open("w") as fh:
        fh.write(f"# nodes {g.vertex_count} edges {g.edge_count}\n")
        fh.write(f"# directed {'true' if g.directed else 'false'}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


def render_value(x) -> str:
    """Stable CSV cell; None becomes the literal 'undefined'."""
    if x is None:
        return "undefined"
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        if np.isnan(x):
            return "undefined"
        return repr(float(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def write_csv(path, header: list[str], rows) -> None:
    path = Path(path)
    with path.open("w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(render_value(x) for x in row) + "\n")


def write_manifest(out_dir, payload: dict) -> Path:
    """Record the full run configuration next to its artifacts."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = dict(payload)
    payload["library_version"] = __version__
    target = out_dir / "manifest.json"
    with target.open("w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
    return target
