import json
import subprocess
import sys

import pytest

from moondec.cli import main
from planting import self_replicable
from conftest import FLAGSHIP_TEXT


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decompose_power(capsys):
    code, out, _ = run_cli(capsys, "decompose", "x^4")
    assert code == 0
    assert out == "degrees 2*2: x^2 o x^2\n"


def test_decompose_indecomposable_exit_code(capsys):
    code, out, _ = run_cli(capsys, "decompose", "x^2+x+1")
    assert code == 3
    assert out == "indecomposable\n"


def test_decompose_degree_one_is_a_data_error(capsys):
    code, _, err = run_cli(capsys, "decompose", "x+1")
    assert code == 2
    assert err.startswith("error: invalid-input:")


def test_decompose_flagship_chains(capsys):
    code, out, _ = run_cli(capsys, "decompose", FLAGSHIP_TEXT,
                           "--chains", "--verify")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 3
    assert sum(1 for l in lines if l.startswith("chain length 3")) == 1
    assert sum(1 for l in lines if l.startswith("chain length 2")) == 2
    long_chain = next(l for l in lines if l.startswith("chain length 3"))
    assert "degrees 3*2*2" in long_chain


def test_decompose_syntax_error(capsys):
    code, _, err = run_cli(capsys, "decompose", "x^")
    assert code == 2
    assert err.startswith("error: syntax-error:")


def test_usage_error_exit_one(capsys):
    assert main(["decompose"]) == 1
    assert main(["no-such-verb"]) == 1
    capsys.readouterr()


def test_relate_bundled_synthetic_pair(capsys, synthetic_pair_path):
    code, out, _ = run_cli(capsys, "relate", "--catalog",
                           str(synthetic_pair_path),
                           "--from", "TOP", "--to", "BASE", "--verify")
    assert code == 0
    assert out == "r=1 e=2 verified_to=15 f=(x^2+2*x+3)/(x+5)\n"


def test_relate_none_direction(capsys, synthetic_pair_path):
    code, out, _ = run_cli(capsys, "relate", "--catalog",
                           str(synthetic_pair_path),
                           "--from", "BASE", "--to", "TOP")
    assert code == 3
    assert out == "none\n"


def test_relate_all_r_moonshine(capsys, moonshine_catalog_path):
    code, out, _ = run_cli(capsys, "relate", "--catalog",
                           str(moonshine_catalog_path),
                           "--from", "1A", "--to", "9B", "--all-r")
    assert code == 0
    lines = out.strip().split("\n")
    assert [l.split()[0] for l in lines] == ["r=1", "r=3", "r=9"]
    from moondec.parsing import parse_ratfun
    from moondec.ratfun import ratfun_text
    expanded = ratfun_text(parse_ratfun(FLAGSHIP_TEXT))
    assert any(l.endswith(f"f={expanded}") for l in lines)


def test_relate_nonpositive_degree(capsys, moonshine_catalog_path):
    code, _, err = run_cli(capsys, "relate", "--catalog",
                           str(moonshine_catalog_path),
                           "--from", "1A", "--to", "9B", "--e", "0")
    assert code == 2
    assert err.startswith("error: invalid-input:")


def test_relate_unknown_node(capsys, moonshine_catalog_path):
    code, _, err = run_cli(capsys, "relate", "--catalog",
                           str(moonshine_catalog_path),
                           "--from", "1A", "--to", "nope")
    assert code == 2
    assert err.startswith("error: unknown-node:")


def test_relate_determinism(capsys, moonshine_catalog_path):
    args = ("relate", "--catalog", str(moonshine_catalog_path),
            "--from", "1A", "--to", "9B")
    first = run_cli(capsys, *args)
    second = run_cli(capsys, *args)
    assert first == second


@pytest.fixture()
def replicable_catalog(tmp_path):
    base = self_replicable(4, 2, 24)
    path = tmp_path / "replicable.jsonl"
    rec = {"name": "B", "area": "1",
           "coeffs": [str(c) for c in base.coeffs]}
    path.write_text(json.dumps(rec) + "\n")
    return path


def test_modpoly_classical_shape(capsys, replicable_catalog):
    code, out, _ = run_cli(capsys, "modpoly", "--catalog",
                           str(replicable_catalog), "--target", "B",
                           "--emax", "2")
    assert code == 0
    assert out == "source=B r1=1 r2=2 k1=2 k2=1 P=x-y^2-4*y-2\n"


def test_modpoly_none(capsys, synthetic_pair_path):
    code, out, _ = run_cli(capsys, "modpoly", "--catalog",
                           str(synthetic_pair_path), "--target", "BASE",
                           "--emax", "2")
    assert code == 3
    assert out == "none\n"


def test_graph_workflow(capsys, tmp_path, moonshine_catalog_path, flagship):
    graph_path = tmp_path / "graph.jsonl"
    refined_path = tmp_path / "refined.jsonl"
    report_path = tmp_path / "report.jsonl"

    code, out, _ = run_cli(capsys, "graph-build",
                           "--catalog", str(moonshine_catalog_path),
                           "--out", str(graph_path),
                           "--report", str(report_path))
    assert code == 0
    assert out == "nodes=2 edges=1\n"
    report = [json.loads(l) for l in report_path.read_text().splitlines()]
    assert report == [{"kind": "skip", "from": "9B", "to": "1A",
                       "reason": "area-quotient-not-natural"}]

    # the bundled pair relates at r=1 (the index-12 relation), whose
    # function refines through a single intermediate
    code, out, _ = run_cli(capsys, "graph-refine", "--in", str(graph_path),
                           "--out", str(refined_path),
                           "--report", str(report_path))
    assert code == 0
    assert out == "nodes=3 edges=2\n"

    code, out, _ = run_cli(capsys, "chains", "--in", str(refined_path),
                           "--from", "1A", "--to", "9B")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 1
    assert lines[0].count("->") == 2

    code, out, _ = run_cli(capsys, "export", "--in", str(refined_path),
                           "--format", "dot")
    assert code == 0
    assert out.startswith("digraph relations {")
    assert 'label="d=' in out

    code, out, _ = run_cli(capsys, "export", "--in", str(refined_path),
                           "--format", "jsonlines")
    assert code == 0
    assert out.encode() == refined_path.read_bytes()


def test_chains_same_node(capsys, tmp_path, moonshine_catalog_path):
    graph_path = tmp_path / "graph.jsonl"
    run_cli(capsys, "graph-build", "--catalog", str(moonshine_catalog_path),
            "--out", str(graph_path))
    code, out, _ = run_cli(capsys, "chains", "--in", str(graph_path),
                           "--from", "1A", "--to", "1A")
    assert code == 0
    assert out == "(empty path)\n"


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "moondec.cli", "decompose", "x^4"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout == "degrees 2*2: x^2 o x^2\n"
