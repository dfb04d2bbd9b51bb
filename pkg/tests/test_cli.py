from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from udgkit.cli import main
from udgkit.embedder import complement_pipeline
from udgkit.formats import from_graph6, to_graph6
from udgkit.graph import complement, cycle_graph, from_edge_list, path_graph
from udgkit.numeric import mp_backend
from udgkit.serialize import embedding_to_json


def run(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(monkeypatch, capsys):
    return lambda argv, stdin="": run(argv, stdin, monkeypatch, capsys)


def docs(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


# -- graph commands ------------------------------------------------------------------------


def test_detect_clean_and_forbidden(cli):
    code, out, _ = cli(["detect"], to_graph6(cycle_graph(6)) + "\n")
    assert code == 0 and docs(out)[0]["forbidden"] is False
    code, out, _ = cli(["detect"], to_graph6(complement(cycle_graph(8))) + "\n")
    assert code == 1
    assert "co-even-cycle[4]" in [m["name"] for m in docs(out)[0]["matches"]]


def test_detect_reads_edge_lists(cli):
    code, out, _ = cli(["detect", "--format", "edgelist"], "5 6\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n")
    assert code == 1 and docs(out)[0]["matches"][0]["name"] == "K2,3"


def test_recognize_witness_and_partition(cli):
    code, out, err = cli(["recognize"], "Cl\n")
    assert code == 1 and docs(out)[0]["witness"]["name"] == "C4"
    assert "C4" in err
    code, _, err = cli(["recognize", "--partition", "UW"], "Cl\n")
    assert code == 2 and "partition" in err


def test_embed_star_then_verify(cli):
    code, emb_out, _ = cli(["embed-star", "--precision", "40"], to_graph6(cycle_graph(6)) + "\n")
    assert code == 0
    code, out, _ = cli(["verify", "--strip", "--slack", "1e-30"], emb_out)
    rep = docs(out)[0]
    assert code == 0 and rep["ok"] and rep["strip_ok"]


def test_embed_star_forbidden_input(cli):
    code, out, err = cli(["embed-star"], "Cl\n")
    assert code == 1 and docs(out)[0]["witness"]["name"] == "C4"
    assert err.startswith("embed-star:")


def test_embed_star_lobster_mode(cli):
    code, out, _ = cli(["embed-star", "--mu", "0.1", "--float"], to_graph6(path_graph(5)) + "\n")
    assert code == 0 and docs(out)[0]["kind"] == "lobster-star"
    code, _, err = cli(["embed-star", "--mu", "0.1"], to_graph6(cycle_graph(6)) + "\n")
    assert code == 1 and "lobster" in err


@pytest.mark.parametrize("argv", [
    ["embed-star", "--epsilon", "0.5"],
    ["embed-star", "--epsilon", "-1"],
    ["embed-star", "--epsilon", "abc"],
    ["embed-star", "--mu", "0"],
])
def test_embed_star_bad_parameters_exit_2(cli, argv):
    code, _, err = cli(argv, to_graph6(cycle_graph(6)) + "\n")
    assert code == 2 and err


def test_embed_complement_then_verify(cli):
    code, emb_out, _ = cli(["embed-complement", "--precision", "60"], to_graph6(cycle_graph(6)) + "\n")
    assert code == 0
    code, out, _ = cli(["verify", "--slack", "0"], emb_out)
    assert code == 0 and docs(out)[0]["ok"]


def test_verify_against_other_graph_fails(cli, tmp_path):
    _, emb_out, _ = cli(["embed-star", "--float"], to_graph6(cycle_graph(6)) + "\n")
    gfile = tmp_path / "g.g6"
    gfile.write_text(to_graph6(from_edge_list(6, [])) + "\n")
    code, out, err = cli(["verify", "--graph", str(gfile)], emb_out)
    assert code == 1 and not docs(out)[0]["ok"] and "violated" in err


def test_verify_rejects_witness_documents(cli):
    _, out, _ = cli(["embed-star"], "Cl\n")
    code, _, err = cli(["verify"], out)
    assert code == 2 and "witness C4" in err


def test_tau_refuses_unscaled_star_output(cli):
    _, emb_out, _ = cli(["embed-star", "--precision", "50", "--epsilon", "0.001"],
                        to_graph6(cycle_graph(6)) + "\n")
    # exact unit pairs sit inside the excluded band around distance 1
    code, out, err = cli(["tau"], emb_out)
    assert code == 1 and out == "" and err.startswith("tau:")


def test_tau_maps_scaled_layout(cli):
    scaled = complement_pipeline(cycle_graph(6), num=mp_backend(60)).scaled
    code, out, _ = cli(["tau"], embedding_to_json(scaled) + "\n")
    doc = docs(out)[0]
    assert code == 0 and doc["kind"] == "tau"
    assert from_graph6(doc["graph6"]) == complement(cycle_graph(6))


# -- generators and catalogue ---------------------------------------------------------------------


def test_gen_family_and_member(cli):
    code, out, _ = cli(["gen-family", "co-even-cycle", "4"])
    assert code == 0 and from_graph6(out.strip()) == complement(cycle_graph(8))
    code, _, err = cli(["gen-family", "co-even-cycle", "2"])
    assert code == 2 and "k >= 4" in err
    code, out, _ = cli(["gen-member", "--seed", "3", "--size", "20", "--count", "3"])
    lines = out.split()
    assert code == 0 and len(lines) == 3 and all(from_graph6(s).n <= 20 for s in lines)


def test_catalog_dump(cli, tmp_path):
    manifest = tmp_path / "m.json"
    code, out, _ = cli(["catalog", "dump", "--manifest", str(manifest)])
    lines = out.split()
    data = json.loads(manifest.read_text())
    assert code == 0 and len(lines) == len(data)
    assert [d["graph6"] for d in data] == lines
    code, out, _ = cli(["catalog", "dump", "--json"])
    assert json.loads(out)[0]["name"] == "K1,6"


def test_search_and_minimality(cli):
    code, out, _ = cli(["search", "--budget", "2", "--iterations", "1000"], to_graph6(path_graph(4)) + "\n")
    assert code == 0 and docs(out)[0]["ok"]
    code, out, _ = cli(["minimality", "--budget", "1", "--iterations", "50"],
                       to_graph6(complement(cycle_graph(8))) + "\n")
    rows = docs(out)[0]["deletions"]
    assert code == 0 and len(rows) == 8 and all(r["ok"] for r in rows)
    code, _, err = cli(["search", "--budget", "0"], "Cl\n")
    assert code == 2


def test_plot_writes_svg(cli, tmp_path):
    _, emb_out, _ = cli(["embed-star", "--float"], to_graph6(cycle_graph(6)) + "\n")
    target = tmp_path / "c6.svg"
    code, _, _ = cli(["plot", "--circles", "-o", str(target)], emb_out)
    assert code == 0 and target.read_text().startswith("<svg")


# -- errors ----------------------------------------------------------------------------------------


def test_malformed_graph6_exit_2_with_line(cli):
    code, _, err = cli(["detect"], "Cl\nC!\n")
    assert code == 2 and "line 2" in err


def test_unknown_command_and_missing_file(cli):
    code, _, _ = cli(["nonsense"])
    assert code == 2
    code, _, err = cli(["detect", "/nonexistent/file.g6"])
    assert code == 2 and err


def test_console_pipeline():
    gen = subprocess.run([sys.executable, "-m", "udgkit.cli", "gen-member", "--seed", "7", "--size", "30"],
                         capture_output=True, text=True, check=True)
    emb = subprocess.run([sys.executable, "-m", "udgkit.cli", "embed-star"], input=gen.stdout,
                         capture_output=True, text=True)
    assert emb.returncode == 0
    ver = subprocess.run([sys.executable, "-m", "udgkit.cli", "verify"], input=emb.stdout,
                         capture_output=True, text=True)
    assert ver.returncode == 0 and json.loads(ver.stdout)["ok"]
