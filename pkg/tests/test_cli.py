import json
import pathlib

import pytest

from triorbit.cli import main

DATA = pathlib.Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_certify_text_output(capsys):
    code, out, _ = run(capsys, "certify", "1", "2", "8")
    assert code == 0
    assert "verdict: DenseInStratumComponent" in out
    assert "genus: 5" in out
    assert "stratum: H(7, 1) + 1 marked" in out
    assert "rank lower bound: 5" in out


def test_certify_inconclusive(capsys):
    code, out, _ = run(capsys, "certify", "1", "2", "4")
    assert code == 0
    assert "verdict: Inconclusive" in out
    assert "rank lower bound: 1" in out


def test_certify_json_round_trip(capsys):
    code, out, _ = run(capsys, "certify", "1", "2", "8", "--json")
    assert code == 0
    d = json.loads(out)
    assert json.dumps(d, sort_keys=True) == out.strip()
    assert d["verdict"] == "DenseInStratumComponent"


def test_certify_reduce_matches_primitive(capsys):
    _, out1, _ = run(capsys, "certify", "2", "4", "8", "--reduce")
    _, out2, _ = run(capsys, "certify", "1", "2", "4")
    assert out1 == out2


def test_certify_rejects_imprimitive_without_reduce(capsys):
    code, _, err = run(capsys, "certify", "2", "4", "8")
    assert code == 1
    assert "error" in err


def test_table_matches_golden_transcription(tmp_path, capsys):
    out_file = tmp_path / "table.txt"
    code, _, _ = run(capsys, "table", "--k-max", "25", "--out", str(out_file))
    assert code == 0
    assert out_file.read_bytes() == (DATA / "certified_table_k25.txt").read_bytes()


def test_table_k_max_15(capsys):
    code, out, _ = run(capsys, "table", "--k-max", "15")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("k=11: ") and lines[0].count("(") == 3
    assert lines[1].startswith("k=13: ") and lines[1].count("(") == 3
    assert lines[2] == "k=15: (4,5,6)"


def test_table_empty_below_11(capsys):
    code, out, _ = run(capsys, "table", "--k-max", "9")
    assert code == 0
    assert out == "\n"


def test_table_worker_determinism(tmp_path, capsys):
    f1 = tmp_path / "w1.txt"
    f2 = tmp_path / "w2.txt"
    run(capsys, "table", "--k-max", "19", "--out", str(f1), "--workers", "1")
    run(capsys, "table", "--k-max", "19", "--out", str(f2), "--workers", "2")
    assert f1.read_bytes() == f2.read_bytes()


def test_stats_k25(capsys):
    code, out, _ = run(capsys, "stats", "--k-max", "25")
    assert code == 0
    assert "certified full rank (gcd = 1): 102" in out


def test_stats_k3(capsys):
    code, out, _ = run(capsys, "stats", "--k-max", "3")
    assert code == 0
    assert "triangles (any gcd): 0" in out


def test_enumerate_csv_header(capsys):
    code, out, _ = run(capsys, "enumerate", "--k-max", "11", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "q1,q2,q3,k,genus,stratum,rank_lb,full_rank,hyp_excluded,verdict"
    row = next(ln for ln in lines if ln.startswith("1,2,8,"))
    assert row.endswith("DenseInStratumComponent")
    assert ",true," in row


def test_enumerate_json_lines(capsys):
    code, out, _ = run(capsys, "enumerate", "--k-max", "7", "--format", "json")
    assert code == 0
    for line in out.splitlines():
        d = json.loads(line)
        assert "verdict" in d and "trace" in d


def test_digraph_dim(tmp_path, capsys):
    f = tmp_path / "rose2.txt"
    f.write_text("1 2\n0 0\n0 0\n")
    code, out, _ = run(capsys, "digraph", "dim", "--file", str(f))
    assert code == 0
    assert "loop space dim: 2" in out
    assert "|E| - |V| + 1:  2" in out


def test_digraph_dim_not_strongly_connected(tmp_path, capsys):
    f = tmp_path / "path.txt"
    f.write_text("2 1\n0 1\n")
    code, out, _ = run(capsys, "digraph", "dim", "--file", str(f))
    assert code == 0
    assert "not strongly connected" in out


def test_digraph_verify(capsys):
    code, out, _ = run(capsys, "digraph", "verify", "--random", "50", "--seed", "7")
    assert code == 0
    assert "50/50 pass" in out


def test_bform_positive_case(capsys):
    code, out, _ = run(capsys, "bform", "--a1", "1/3", "--a2", "1/3")
    assert code == 0
    assert "nonvanishing: yes" in out
    assert "value: 24.3258847922" in out


def test_bform_single_eps(capsys):
    code, out, _ = run(capsys, "bform", "--a1", "1/5", "--a2", "2/5", "--eps1", "1")
    assert code == 0
    assert "nonvanishing: yes" in out


def test_bform_rejects_double_eps(capsys):
    code, _, err = run(
        capsys, "bform", "--a1", "1/3", "--a2", "1/3", "--eps1", "1", "--eps2", "1"
    )
    assert code == 1
    assert "error" in err
