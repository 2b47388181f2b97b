from pathlib import Path

import pytest

from plotgen import FigureSpec, SchemaError, read_table, render
from plotgen.cli import (main_fig3, main_fig4, main_fig5, main_fig6,
                         main_fig7, main_fig8, main_fig9, main_s2, main_s3)

FIX = Path(__file__).parent / "fixtures"


def spec(figure_id, inputs, out):
    return FigureSpec(figure_id, inputs, out)


def test_read_table_parses_undefined(tmp_path):
    p = tmp_path / "corr.csv"
    p.write_text("measure_a,measure_b,kind,mean,std,defined_samples\n"
                 "dd,forman_ricci,pearson,undefined,undefined,0\n")
    t = read_table(p, "correlations_ensemble")
    assert t["mean"] == [None]


def test_schema_mismatch_names_offending_column(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("d,prob\n0,1.0\n")
    with pytest.raises(SchemaError, match="'probability'"):
        read_table(p, "dd_dist")


def test_header_only_is_an_error(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("d,probability\n")
    with pytest.raises(SchemaError, match="no data rows"):
        read_table(p, "dd_dist")


def test_non_numeric_cell_is_an_error(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("d,probability\n0,lots\n")
    with pytest.raises(SchemaError, match="'probability'"):
        read_table(p, "dd_dist")


def test_render_all_figures(tmp_path):
    cases = {
        "fig3": {"analytic": [("analytic", FIX / "analytic_dd.csv")],
                 "empirical": [("numerical", FIX / "dd_dist_ensemble.csv")]},
        "fig4": {"input": [("ER", FIX / "dd_dist_ensemble.csv"),
                           ("BA", FIX / "dd_dist_ensemble.csv")]},
        "fig5": {"input": [("net-a", FIX / "dd_dist.csv"),
                           ("net-b", FIX / "dd_dist.csv")]},
        "fig6": {"dd": [("net", FIX / "dd_dist.csv")],
                 "didd": [("net", FIX / "didd_dist.csv")]},
        "fig7": {"input": [("ER", FIX / "correlations_ensemble.csv"),
                           ("BA", FIX / "correlations_ensemble.csv")]},
        "fig8": {"input": [("dd_desc", FIX / "percolate_dd_desc.csv"),
                           ("random", FIX / "percolate_random.csv")]},
        "fig9": {"input": [("WS", FIX / "mec_percentiles.csv")]},
        "s2": {"input": [("original", FIX / "dd_dist_ensemble.csv"),
                         ("rewiring 1", FIX / "dd_dist_ensemble.csv"),
                         ("rewiring 2", FIX / "dd_dist_ensemble.csv")]},
        "s3": {"stages": [("stages", FIX / "stages.csv")]},
    }
    for figure_id, inputs in cases.items():
        out = tmp_path / f"{figure_id}.png"
        written = render(spec(figure_id, inputs, out))
        assert written == out
        assert out.stat().st_size > 1000


def test_render_unknown_figure(tmp_path):
    with pytest.raises(SchemaError, match="unknown figure id"):
        render(spec("fig99", {}, tmp_path / "x.png"))


def test_render_missing_role(tmp_path):
    with pytest.raises(SchemaError, match="missing required input"):
        render(spec("fig3", {"analytic": [("a", FIX / "analytic_dd.csv")]},
                    tmp_path / "x.png"))


def test_render_is_deterministic(tmp_path):
    inputs = {"input": [("dd_desc", FIX / "percolate_dd_desc.csv")]}
    a = render(spec("fig8", inputs, tmp_path / "a.png"))
    b = render(spec("fig8", inputs, tmp_path / "b.png"))
    assert a.read_bytes() == b.read_bytes()


def test_cli_entry_points(tmp_path):
    runs = [
        (main_fig3, ["--analytic", f"analytic={FIX/'analytic_dd.csv'}",
                     "--empirical", f"numerical={FIX/'dd_dist_ensemble.csv'}"]),
        (main_fig4, ["--input", f"ER={FIX/'dd_dist_ensemble.csv'}"]),
        (main_fig5, ["--input", f"net={FIX/'dd_dist.csv'}"]),
        (main_fig6, ["--dd", f"net={FIX/'dd_dist.csv'}",
                     "--didd", f"net={FIX/'didd_dist.csv'}"]),
        (main_fig7, ["--input", f"BA={FIX/'correlations_ensemble.csv'}"]),
        (main_fig8, ["--input", f"dd_desc={FIX/'percolate_dd_desc.csv'}",
                     "--input", f"random={FIX/'percolate_random.csv'}"]),
        (main_fig9, ["--input", f"WS={FIX/'mec_percentiles.csv'}"]),
        (main_s2, ["--input", f"original={FIX/'dd_dist_ensemble.csv'}"]),
        (main_s3, ["--stages", str(FIX / "stages.csv")]),
    ]
    for i, (entry, argv) in enumerate(runs):
        out = tmp_path / f"cli_{i}.png"
        assert entry(argv + ["--out", str(out)]) == 0
        assert out.exists()


def test_cli_schema_drift_fails_fast(tmp_path):
    bad = tmp_path / "drift.csv"
    bad.write_text("d,mean_prob,std_probability\n0,0.5,0.1\n")
    out = tmp_path / "x.png"
    rc = main_fig4(["--input", f"ER={bad}", "--out", str(out)])
    assert rc == 1
    assert not out.exists()


def test_cli_bare_path_label(tmp_path):
    out = tmp_path / "f5.png"
    assert main_fig5(["--input", str(FIX / "dd_dist.csv"),
                      "--out", str(out)]) == 0
    assert out.exists()
