"""Figure builders: one deterministic image per figure id.

Rendering is a pure function of the CSV contents and the spec: fixed style,
fixed canvas sizes, no timestamps in the output metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "plotgen"

import matplotlib.pyplot as plt
import numpy as np

from .schemas import SchemaError, read_table

__all__ = ["FigureSpec", "render", "FIGURE_IDS"]

FIGURE_IDS = ("fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
              "s2", "s3")

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#7f7f7f"]


@dataclass
class FigureSpec:
    """What to draw: figure id, labeled input CSVs per role, output path."""

    figure_id: str
    inputs: dict[str, list[tuple[str, Path]]] = field(default_factory=dict)
    output: Path = Path("figure.png")
    log_y: bool | None = None  # per-figure default when None

    def labeled(self, role: str) -> list[tuple[str, Path]]:
        if role not in self.inputs or not self.inputs[role]:
            raise SchemaError(f"{self.figure_id}: missing required input "
                              f"role {role!r}")
        return self.inputs[role]


def _save(fig, spec: FigureSpec) -> Path:
    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    kwargs = {}
    if out.suffix.lower() == ".png":
        kwargs["metadata"] = {"Software": "plotgen"}
    fig.savefig(out, dpi=150, bbox_inches="tight", **kwargs)
    plt.close(fig)
    return out


def _panel_grid(count: int, per_row: int):
    rows = (count + per_row - 1) // per_row
    cols = min(count, per_row)
    fig, axes = plt.subplots(rows, cols,
                             figsize=(3.2 * cols, 2.6 * rows),
                             squeeze=False)
    return fig, [axes[i // cols][i % cols] for i in range(rows * cols)]


def _dd_panel(ax, d, prob, std=None, label=None, color="#1f77b4",
              log_y=True):
    d = np.asarray(d)
    prob = np.asarray(prob, dtype=float)
    if std is not None:
        ax.errorbar(d, prob, yerr=np.asarray(std, dtype=float), fmt="o",
                    ms=3.5, lw=0.9, capsize=1.5, color=color, label=label)
    else:
        ax.plot(d, prob, "o", ms=3.5, color=color, label=label)
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel("degree difference")
    ax.set_ylabel("probability")


def _render_fig3(spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    for label, path in spec.labeled("analytic"):
        t = read_table(path, "analytic_dd")
        ax.plot(t["d"], t["probability"], "-", lw=1.4, color="#d62728",
                label=label or "analytic")
    for label, path in spec.labeled("empirical"):
        t = read_table(path, "dd_dist_ensemble")
        ax.errorbar(t["d"], t["mean_probability"], yerr=t["std_probability"],
                    fmt="o", ms=3.5, lw=0.9, capsize=1.5, color="#1f77b4",
                    label=label or "numerical")
    ax.set_yscale("log")
    ax.set_xlabel("degree difference")
    ax.set_ylabel("probability")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, spec)


def _render_ensemble_panels(spec: FigureSpec, schema: str):
    series = spec.labeled("input")
    fig, axes = _panel_grid(len(series), per_row=2)
    for ax in axes[len(series):]:
        ax.set_visible(False)
    for ax, (label, path), color in zip(axes, series, _PALETTE):
        t = read_table(path, schema)
        if schema == "dd_dist_ensemble":
            _dd_panel(ax, t["d"], t["mean_probability"],
                      t["std_probability"], color=color,
                      log_y=spec.log_y is not False)
        else:
            _dd_panel(ax, t["d"], t["probability"], color=color,
                      log_y=spec.log_y is not False)
        ax.set_title(label, fontsize=9)
    return _save(fig, spec)


def _render_fig4(spec: FigureSpec):
    return _render_ensemble_panels(spec, "dd_dist_ensemble")


def _render_fig5(spec: FigureSpec):
    return _render_ensemble_panels(spec, "dd_dist")


def _render_fig6(spec: FigureSpec):
    und = spec.labeled("dd")
    dird = spec.labeled("didd")
    cols = max(len(und), len(dird))
    fig, axes = plt.subplots(2, cols, figsize=(3.2 * cols, 5.2),
                             squeeze=False)
    for row, series in enumerate((und, dird)):
        for i in range(cols):
            ax = axes[row][i]
            if i >= len(series):
                ax.set_visible(False)
                continue
            label, path = series[i]
            t = read_table(path, "dd_dist")
            _dd_panel(ax, t["d"], t["probability"],
                      color=_PALETTE[row], log_y=spec.log_y is not False)
            kind = "DD (collapsed)" if row == 0 else "diDD"
            ax.set_title(f"{label} [{kind}]", fontsize=9)
            if row == 1:
                ax.set_xlabel("directed degree difference")
    return _save(fig, spec)


def _render_fig7(spec: FigureSpec):
    series = spec.labeled("input")
    kinds = ("pearson", "spearman")
    fig, axes = plt.subplots(1, 2, figsize=(9.0, 3.4), squeeze=False)
    pair_labels = None
    for k_i, kind in enumerate(kinds):
        ax = axes[0][k_i]
        width = 0.8 / len(series)
        for s_i, (label, path) in enumerate(series):
            t = read_table(path, "correlations_ensemble")
            rows = [(a, b, mu, sd) for a, b, kd, mu, sd in
                    zip(t["measure_a"], t["measure_b"], t["kind"],
                        t["mean"], t["std"])
                    if kd == kind and "dd" in (a, b)]
            if pair_labels is None:
                pair_labels = [f"{a} vs {b}" for a, b, _, _ in rows]
            xs = np.arange(len(rows)) + s_i * width
            mus = [0.0 if mu is None else mu for _, _, mu, _ in rows]
            sds = [0.0 if sd is None else sd for _, _, _, sd in rows]
            ax.bar(xs, mus, width=width, yerr=sds, capsize=2,
                   color=_PALETTE[s_i % len(_PALETTE)], label=label)
        ax.axhline(0.0, color="black", lw=0.7)
        ax.set_xticks(np.arange(len(pair_labels)) + 0.4 - width / 2)
        ax.set_xticklabels(pair_labels, fontsize=7, rotation=20)
        ax.set_title(f"{kind} correlation", fontsize=9)
        ax.set_ylim(-1, 1)
    axes[0][0].legend(frameon=False, fontsize=7)
    return _save(fig, spec)


def _render_fig8(spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    for (label, path), color in zip(spec.labeled("input"), _PALETTE):
        t = read_table(path, "percolate")
        frac = np.asarray(t["fraction"], dtype=float)
        mean = np.asarray(t["mean_lcc"], dtype=float)
        std = np.asarray(t["std_lcc"], dtype=float)
        ax.plot(frac, mean, "-", lw=1.3, color=color, label=label)
        ax.fill_between(frac, mean - std, mean + std, color=color, alpha=0.2,
                        linewidth=0)
    ax.set_xlabel("fraction of edges removed")
    ax.set_ylabel("normalized LCC size")
    ax.set_ylim(0, 1.02)
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, spec)


def _render_fig9(spec: FigureSpec):
    series = spec.labeled("input")
    fig, axes = _panel_grid(len(series), per_row=2)
    for ax in axes[len(series):]:
        ax.set_visible(False)
    for ax, (label, path) in zip(axes, series):
        t = read_table(path, "mec_percentiles")
        measures = sorted(set(t["measure"]))
        data = [[p for m, p in zip(t["measure"], t["percentile"]) if m == mm]
                for mm in measures]
        parts = ax.violinplot(data, showmedians=True)
        for body, color in zip(parts["bodies"], _PALETTE):
            body.set_facecolor(color)
        ax.set_xticks(np.arange(1, len(measures) + 1))
        ax.set_xticklabels(measures, fontsize=7, rotation=15)
        ax.set_ylabel("MEC edge percentile")
        ax.set_ylim(-2, 102)
        ax.set_title(label, fontsize=9)
    return _save(fig, spec)


def _render_s2(spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    for (label, path), color in zip(spec.labeled("input"), _PALETTE):
        t = read_table(path, "dd_dist_ensemble")
        ax.errorbar(t["d"], t["mean_probability"], yerr=t["std_probability"],
                    fmt="o", ms=3.5, lw=0.9, capsize=1.5, color=color,
                    label=label)
    ax.set_yscale("log")
    ax.set_xlabel("degree difference")
    ax.set_ylabel("probability")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, spec)


def _render_s3(spec: FigureSpec):
    label, path = spec.labeled("stages")[0]
    t = read_table(path, "stages")
    stages = sorted({int(s) for s in t["stage"]})
    fig, axes = _panel_grid(len(stages), per_row=4)
    for ax in axes[len(stages):]:
        ax.set_visible(False)
    for ax, stage in zip(axes, stages):
        sel = [i for i, s in enumerate(t["stage"]) if int(s) == stage]
        d = [t["d"][i] for i in sel]
        p = [t["probability"][i] for i in sel]
        ga = t["ga"][sel[0]] if sel else None
        _dd_panel(ax, d, p, color=_PALETTE[stage % len(_PALETTE)],
                  log_y=spec.log_y is not False)
        ga_txt = "undefined" if ga is None else f"{ga:+.3f}"
        ax.set_title(f"stage {stage}, GA {ga_txt}", fontsize=8)
    return _save(fig, spec)


_RENDERERS = {
    "fig3": _render_fig3,
    "fig4": _render_fig4,
    "fig5": _render_fig5,
    "fig6": _render_fig6,
    "fig7": _render_fig7,
    "fig8": _render_fig8,
    "fig9": _render_fig9,
    "s2": _render_s2,
    "s3": _render_s3,
}


def render(spec: FigureSpec) -> Path:
    """Validate inputs and draw the figure; returns the written path."""
    if spec.figure_id not in _RENDERERS:
        raise SchemaError(f"unknown figure id {spec.figure_id!r}; expected "
                          f"one of {FIGURE_IDS}")
    return _RENDERERS[spec.figure_id](spec)
