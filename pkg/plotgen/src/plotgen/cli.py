"""One entry script per figure id (plotgen-fig3 ... plotgen-s3)."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FigureSpec, render
from .schemas import SchemaError


def _labeled(value: str) -> tuple[str, Path]:
    """Parse LABEL=path (a bare path gets its stem as label)."""
    if "=" in value:
        label, _, path = value.partition("=")
        return label, Path(path)
    p = Path(value)
    return p.stem, p


def _run(figure_id: str, roles: dict[str, tuple[str, bool]], argv) -> int:
    """Shared driver: roles maps role -> (help text, repeatable)."""
    parser = argparse.ArgumentParser(
        prog=f"plotgen-{figure_id}",
        description=f"Render {figure_id} from degdiff CSV outputs")
    for role, (help_text, repeatable) in roles.items():
        parser.add_argument(f"--{role}", action="append" if repeatable else
                            "store", required=True, type=_labeled,
                            help=help_text)
    parser.add_argument("--out", default=f"{figure_id}.png",
                        help="output image path (.png or .svg)")
    parser.add_argument("--linear-y", action="store_true",
                        help="linear instead of log probability axis")
    args = parser.parse_args(argv)
    inputs = {}
    for role, (_, repeatable) in roles.items():
        val = getattr(args, role.replace("-", "_"))
        inputs[role] = val if repeatable else [val]
    spec = FigureSpec(figure_id, inputs, Path(args.out),
                      log_y=False if args.linear_y else None)
    try:
        out = render(spec)
    except (SchemaError, OSError) as exc:
        print(f"plotgen-{figure_id}: error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


def main_fig3(argv=None) -> int:
    return _run("fig3", {
        "analytic": ("analytic_dd CSV (d, probability)", True),
        "empirical": ("dd_dist_ensemble CSV", True),
    }, argv)


def main_fig4(argv=None) -> int:
    return _run("fig4", {
        "input": ("LABEL=dd_dist_ensemble.csv, one per model panel", True),
    }, argv)


def main_fig5(argv=None) -> int:
    return _run("fig5", {
        "input": ("LABEL=dd_dist.csv, one per network panel", True),
    }, argv)


def main_fig6(argv=None) -> int:
    return _run("fig6", {
        "dd": ("LABEL=dd_dist.csv (direction-collapsed)", True),
        "didd": ("LABEL=dd_dist.csv from --didd runs", True),
    }, argv)


def main_fig7(argv=None) -> int:
    return _run("fig7", {
        "input": ("LABEL=correlations_ensemble.csv, one per model", True),
    }, argv)


def main_fig8(argv=None) -> int:
    return _run("fig8", {
        "input": ("ORDERING=percolate_<ordering>.csv traces", True),
    }, argv)


def main_fig9(argv=None) -> int:
    return _run("fig9", {
        "input": ("LABEL=mec_percentiles.csv, one per model", True),
    }, argv)


def main_s2(argv=None) -> int:
    return _run("s2", {
        "input": ("LABEL=dd_dist_ensemble.csv: original + rewirings", True),
    }, argv)


def main_s3(argv=None) -> int:
    return _run("s3", {
        "stages": ("stages.csv from the assortative rewiring run", False),
    }, argv)
