"""
End-to-end tests of the netdist command line.
"""

import json
import re

import numpy as np
import pandas as pd
import pytest

from cli import main
from engine.simulation import evolve, start_graph
from graphs.graph_io import write_adjacency_csv, write_edge_list
from graphs.graph_model import complete_graph, empty_graph
from utils.parallel import spawn_seeds


@pytest.fixture
def example_files(tmp_path, i1, i2):
    a, b = tmp_path / "i1.csv", tmp_path / "i2.csv"
    write_adjacency_csv(i1, a)
    write_adjacency_csv(i2, b)
    return a, b


def _values(text):
    return {k: float(v) for k, v in re.findall(r"(\w+)=([-0-9.]+)", text)}


def test_dist(example_files, capsys):
    a, b = example_files
    assert main(["dist", str(a), str(b)]) == 0
    out = capsys.readouterr().out.strip()
    assert re.fullmatch(r"H=\d\.\d{7} IM=\d\.\d{7} HIM=\d\.\d{7}", out)
    values = _values(out)
    assert values["H"] == 0.5
    assert values["IM"] == pytest.approx(0.1004144, abs=1e-5)
    assert values["HIM"] == pytest.approx(0.3606127, abs=1e-5)


def test_dist_xi_zero(example_files, capsys):
    a, b = example_files
    assert main(["dist", str(a), str(b), "--xi", "0"]) == 0
    assert _values(capsys.readouterr().out)["HIM"] == 0.5


def test_dist_directed_edge_lists(tmp_path, directed_example, capsys):
    write_edge_list(directed_example, tmp_path / "d.tsv")
    write_edge_list(empty_graph(3, directed=True), tmp_path / "e.tsv")
    assert main(["dist", str(tmp_path / "d.tsv"), str(tmp_path / "e.tsv")]) == 0
    assert _values(capsys.readouterr().out)["H"] == pytest.approx(8 / 12, abs=1e-7)


def test_dist_errors(tmp_path, example_files, capsys):
    a, _ = example_files
    bad = tmp_path / "bad.csv"
    bad.write_text("0,2\n2,0\n")
    assert main(["dist", str(a), str(bad)]) == 2
    assert main(["dist", str(a), str(tmp_path / "missing.csv")]) == 2

    small = tmp_path / "small.csv"
    write_adjacency_csv(complete_graph(3), small)
    assert main(["dist", str(a), str(small)]) == 3

    one = tmp_path / "one.csv"
    one.write_text("0\n")
    assert main(["dist", str(one), str(one)]) == 3
    assert "netdist dist" in capsys.readouterr().err

    assert main(["dist", str(a), str(a), "--xi", "-1"]) == 3


@pytest.mark.parametrize("argv, expected", [
    (["--n", "8"], "0.4450034"),
    (["--n", "5", "--directed"], "0.3866861"),
])
def test_gamma(argv, expected, capsys):
    assert main(["gamma", *argv]) == 0
    assert capsys.readouterr().out.strip() == expected


def test_gamma_single_vertex():
    assert main(["gamma", "--n", "1"]) == 3


def test_simulate(tmp_path):
    out = tmp_path / "trace.csv"
    assert main(["simulate", "--process", "ra", "--n", "6", "--seed", "3", "--out", str(out)]) == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["step", "h", "im", "him"]
    assert len(frame) == 16
    assert frame.iloc[-1][["h", "im", "him"]].tolist() == pytest.approx([1.0, 1.0, 1.0], abs=1e-8)

    again = tmp_path / "again.csv"
    main(["simulate", "--process", "RA", "--n", "6", "--seed", "3", "--out", str(again)])
    assert again.read_bytes() == out.read_bytes()


def test_simulate_er_start_uses_separate_streams(tmp_path):
    out = tmp_path / "er.csv"
    assert main(["simulate", "--process", "RA", "--n", "10", "--start", "er", "--p", "0.3",
                 "--seed", "7", "--out", str(out)]) == 0
    start_seed, process_seed = spawn_seeds(7, 2)
    expected = evolve(start_graph("er", 10, 0.3, start_seed), "RA", seed=process_seed).to_frame()
    frame = pd.read_csv(out)
    assert len(frame) == len(expected)
    assert np.allclose(frame[["h", "im", "him"]].to_numpy(), expected[["h", "im", "him"]].to_numpy(),
                       atol=1e-7)

    again = tmp_path / "again.csv"
    main(["simulate", "--process", "RA", "--n", "10", "--start", "er", "--p", "0.3",
          "--seed", "7", "--out", str(again)])
    assert again.read_bytes() == out.read_bytes()


def test_simulate_scale_free_starts(tmp_path):
    out = tmp_path / "pl.csv"
    assert main(["simulate", "--process", "RR", "--n", "12", "--start", "pl", "--edges", "20",
                 "--exponent", "2.5", "--out", str(out)]) == 0
    frame = pd.read_csv(out)
    # removing all 20 links
    assert len(frame) == 21
    assert frame.iloc[-1]["h"] == pytest.approx(20 / 66, abs=1e-7)

    assert main(["simulate", "--process", "SR", "--n", "9", "--start", "ba", "--m", "2",
                 "--power", "0.5", "--out", str(tmp_path / "ba.csv")]) == 0
    # 15 links to remove, plus the start row
    assert len(pd.read_csv(tmp_path / "ba.csv")) == 16
    assert main(["simulate", "--process", "RA", "--n", "6", "--start", "pl", "--exponent", "1.5",
                 "--out", str(tmp_path / "bad.csv")]) == 3


def test_simulate_mean_and_errors(tmp_path):
    out = tmp_path / "mean.csv"
    argv = ["simulate", "--process", "SR", "--n", "5", "--start", "clique", "--runs", "3",
            "--threads", "2", "--out", str(out)]
    assert main(argv) == 0
    assert "him_std" in pd.read_csv(out).columns

    assert main(["simulate", "--process", "RR", "--n", "5", "--out", str(tmp_path / "x.csv")]) == 3
    assert main(["simulate", "--process", "RA", "--n", "4", "--steps", "9",
                 "--out", str(tmp_path / "y.csv")]) == 3


def test_enumerate_then_matrix(tmp_path, capsys):
    export = tmp_path / "g4"
    table = tmp_path / "classes.csv"
    assert main(["enumerate", "--n", "4", "--out", str(table), "--export-dir", str(export)]) == 0
    assert capsys.readouterr().out.strip() == "n=4 graphs=64 classes=11"
    classes = pd.read_csv(table)
    assert classes["class"].nunique() == 11
    assert len(list(export.glob("*.csv"))) == 64

    h_out, im_out = tmp_path / "h.csv", tmp_path / "im.csv"
    assert main(["matrix", "--input", str(export), "--measure", "h", "--out", str(h_out)]) == 0
    assert main(["matrix", "--input", str(export), "--measure", "im", "--out", str(im_out)]) == 0
    h = pd.read_csv(h_out).to_numpy()
    im = pd.read_csv(im_out).to_numpy()
    upper = np.triu_indices(64, k=1)
    assert int(np.sum((h[upper] == 1.0) & (im[upper] < 1e-9))) == 6


def test_matrix_empty_directory(tmp_path):
    (tmp_path / "empty").mkdir()
    assert main(["matrix", "--input", str(tmp_path / "empty"), "--out", str(tmp_path / "m.csv")]) == 2


def test_gram_and_mds(tmp_path, example_files):
    a, b = example_files
    gram_out = tmp_path / "gram.csv"
    assert main(["gram", "--input", str(a), str(b), "--kernel-gamma", "2", "--out", str(gram_out)]) == 0
    first = gram_out.read_text().splitlines()[0]
    assert re.fullmatch(r"#kernel_gamma=2 xi=1 min_eig=\S+ psd=(true|false)", first)
    gram = pd.read_csv(gram_out, comment="#").to_numpy()
    assert gram[0, 0] == 1.0
    assert gram[0, 1] == pytest.approx(np.exp(-2 * 0.3606127 ** 2), abs=1e-5)

    matrix_out = tmp_path / "him.csv"
    assert main(["matrix", "--input", str(a), str(b), "--out", str(matrix_out)]) == 0
    mds_out = tmp_path / "mds.csv"
    assert main(["mds", "--input", str(matrix_out), "--out", str(mds_out)]) == 0
    lines = mds_out.read_text().splitlines()
    assert lines[0] == "label,x,y"
    assert lines[-1].startswith("#stress=")
    points = pd.read_csv(mds_out, comment="#")
    assert points["label"].tolist() == ["i1", "i2"]
    assert abs(points["x"][0] - points["x"][1]) == pytest.approx(0.3606127, abs=1e-5)


def test_mds_input_errors(tmp_path, capsys):
    asymmetric = tmp_path / "asym.csv"
    asymmetric.write_text("a,b\n0,0.5\n0.25,0\n")
    assert main(["mds", "--input", str(asymmetric), "--out", str(tmp_path / "m1.csv")]) == 3
    assert "not symmetric" in capsys.readouterr().err

    nonzero_diagonal = tmp_path / "diag.csv"
    nonzero_diagonal.write_text("a,b\n1,0.5\n0.5,0\n")
    assert main(["mds", "--input", str(nonzero_diagonal), "--out", str(tmp_path / "m2.csv")]) == 3

    wide = tmp_path / "wide.csv"
    wide.write_text("a,b,c\n0,1,2\n1,0,3\n")
    assert main(["mds", "--input", str(wide), "--out", str(tmp_path / "m3.csv")]) == 2

    text = tmp_path / "text.csv"
    text.write_text("a,b\n0,x\nx,0\n")
    assert main(["mds", "--input", str(text), "--out", str(tmp_path / "m4.csv")]) == 2
    assert main(["mds", "--input", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "m5.csv")]) == 2


def test_mcc(tmp_path, capsys):
    e, f = tmp_path / "e.csv", tmp_path / "f.csv"
    write_adjacency_csv(empty_graph(5), e)
    write_adjacency_csv(complete_graph(5), f)
    assert main(["mcc", str(e), str(f)]) == 0
    assert capsys.readouterr().out.strip() == "MCC=0.0000000 DISSIM=0.5000000"


def test_family(tmp_path):
    out = tmp_path / "scan.csv"
    assert main(["family", "--model", "er", "--n", "20", "--count", "10", "--seed", "1",
                 "--out", str(out)]) == 0
    text = out.read_text()
    assert "#him_mean=" in text
    assert len(pd.read_csv(out, comment="#")) == 10

    mutual, blocks = tmp_path / "mutual.csv", tmp_path / "blocks.csv"
    assert main(["family", "--model", "ER", "KR", "--n", "12", "--count", "3", "--mutual",
                 "--blocks", str(blocks), "--out", str(mutual)]) == 0
    assert pd.read_csv(mutual).shape == (6, 6)
    assert len(pd.read_csv(blocks)) == 3

    assert main(["family", "--model", "ER", "KR", "--n", "12", "--out", str(out)]) == 3


def test_scatter(tmp_path):
    out = tmp_path / "scatter.csv"
    assert main(["scatter", "--count", "30", "--size-min", "4", "--size-max", "12", "--seed", "5",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "mcc_dissim,h,im,him"
    assert any(line.startswith("#pearson_h=") for line in lines)


def test_run_ledger(tmp_path, example_files):
    a, b = example_files
    log_dir = tmp_path / "logs"
    assert main(["dist", str(a), str(b), "--log-dir", str(log_dir)]) == 0
    assert main(["gamma", "--n", "1", "--log-dir", str(log_dir)]) == 3

    ledger = next(log_dir.glob("runs_*.jsonl"))
    entries = [json.loads(line) for line in ledger.read_text().splitlines()]
    assert [e["command"] for e in entries] == ["dist", "gamma"]
    assert entries[0]["outputs"]["h"] == 0.5
    assert entries[1]["exit_code"] == 3
    assert list(log_dir.glob("netdist_*.log"))


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["plot"])
