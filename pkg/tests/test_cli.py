import csv
import json

import pytest
from click.testing import CliRunner

from cliffsynth.bench import RESULT_FIELDS, SUMMARY_FIELDS
from cliffsynth.circuit import Circuit
from cliffsynth.cli import main
from cliffsynth.tableau import CliffordTableau
from cliffsynth.verify import relabel_circuit


@pytest.fixture
def runner():
    return CliRunner()


def write(path, text):
    path.write_text(text)
    return str(path)


QUITO_GATES = "qubits 5\nh 0\ncx 0 2\ns 1\ncx 3 1\n"


# -- synth ---------------------------------------------------------------------


def test_synth_gatelist_to_file_with_stats(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", QUITO_GATES)
    out_path = tmp_path / "out.txt"
    stats_path = tmp_path / "stats.json"
    result = runner.invoke(main, [
        "synth", "--arch", "quito", "--in", in_path,
        "--out", str(out_path), "--stats", str(stats_path),
    ])
    assert result.exit_code == 0, result.output

    routed = Circuit.from_gatelist(out_path.read_text())
    stats = json.loads(stats_path.read_text())
    assert set(stats) == {
        "arch", "placement", "pivot_rule", "counts", "mapping", "wall_time_ms"
    }
    assert stats["arch"] == "quito"
    assert stats["placement"] == "lazy"
    counts = routed.count_gates()
    assert stats["counts"] == {"h": counts.h, "s": counts.s, "cx": counts.cx}
    assert stats["wall_time_ms"] >= 0

    # the routed circuit rebuilds the input tableau under the reported mapping
    mapping = {int(k): v for k, v in stats["mapping"].items()}
    assert sorted(mapping) == list(range(5))
    expected = CliffordTableau.from_circuit(Circuit.from_gatelist(QUITO_GATES))
    assert CliffordTableau.from_circuit(relabel_circuit(routed, mapping)) == expected


def test_synth_writes_to_stdout_by_default(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", QUITO_GATES)
    result = runner.invoke(main, ["synth", "--arch", "quito", "--in", in_path])
    assert result.exit_code == 0
    assert result.output.startswith("qubits 5\n")
    Circuit.from_gatelist(result.output)  # parses back


def test_synth_tableau_in(runner, tmp_path):
    text = CliffordTableau.from_circuit(
        Circuit.from_gatelist(QUITO_GATES)
    ).to_text()
    t_path = write(tmp_path / "t.txt", text)
    result = runner.invoke(main, ["synth", "--arch", "quito", "--tableau-in", t_path])
    assert result.exit_code == 0
    routed = Circuit.from_gatelist(result.output)
    assert routed.n == 5


def test_synth_in_autodetects_tableau_text(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", CliffordTableau.identity(3).to_text())
    result = runner.invoke(main, ["synth", "--arch", "complete-3", "--in", in_path])
    assert result.exit_code == 0
    parsed = Circuit.from_gatelist(result.output)
    assert parsed.n == 3
    assert CliffordTableau.from_circuit(parsed) == CliffordTableau.identity(3)


def test_synth_requires_exactly_one_input(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", QUITO_GATES)
    neither = runner.invoke(main, ["synth", "--arch", "quito"])
    assert neither.exit_code == 2
    assert "exactly one of --in or --tableau-in" in neither.output
    both = runner.invoke(main, [
        "synth", "--arch", "quito", "--in", in_path, "--tableau-in", in_path,
    ])
    assert both.exit_code == 2


def test_synth_rejects_size_mismatch(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", "qubits 3\nh 0\n")
    result = runner.invoke(main, ["synth", "--arch", "quito", "--in", in_path])
    assert result.exit_code == 1
    assert "Error" in result.output


def test_synth_rejects_unknown_arch(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", QUITO_GATES)
    result = runner.invoke(main, ["synth", "--arch", "nosuch", "--in", in_path])
    assert result.exit_code == 1


def test_synth_rejects_malformed_input(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", "qubits 5\nfrobnicate 1\n")
    result = runner.invoke(main, ["synth", "--arch", "quito", "--in", in_path])
    assert result.exit_code == 1
    assert "in.txt" in result.output


def test_synth_qasm_out(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", QUITO_GATES)
    qasm_path = tmp_path / "out.qasm"
    result = runner.invoke(main, [
        "synth", "--arch", "quito", "--in", in_path,
        "--out", str(tmp_path / "out.txt"), "--qasm-out", str(qasm_path),
    ])
    assert result.exit_code == 0
    qasm = qasm_path.read_text()
    assert qasm.startswith("OPENQASM 2.0;")
    assert "qreg q[5];" in qasm


def test_synth_identity_placement_flag(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", QUITO_GATES)
    stats_path = tmp_path / "stats.json"
    result = runner.invoke(main, [
        "synth", "--arch", "quito", "--in", in_path,
        "--placement", "identity", "--pivot-rule", "fixed-order",
        "--out", str(tmp_path / "out.txt"), "--stats", str(stats_path),
    ])
    assert result.exit_code == 0
    stats = json.loads(stats_path.read_text())
    assert stats["placement"] == "identity"
    assert stats["pivot_rule"] == "fixed-order"
    assert stats["mapping"] == {str(i): i for i in range(5)}


# -- verify ------------------------------------------------------------------------


def quito_files(tmp_path, circuit_text, tableau_circuit_text=None):
    tableau = CliffordTableau.from_circuit(
        Circuit.from_gatelist(tableau_circuit_text or circuit_text)
    )
    return (
        write(tmp_path / "t.txt", tableau.to_text()),
        write(tmp_path / "c.txt", circuit_text),
    )


def test_verify_ok(runner, tmp_path):
    t_path, c_path = quito_files(tmp_path, "qubits 5\nh 0\ncx 0 1\n")
    result = runner.invoke(main, [
        "verify", "--arch", "quito", "--tableau", t_path, "--circuit", c_path,
    ])
    assert result.exit_code == 0
    assert result.output == "OK: circuit matches tableau on quito\n"


def test_verify_flags_connectivity_violation(runner, tmp_path):
    # correct tableau, but qubits 0 and 2 are not adjacent on quito
    t_path, c_path = quito_files(tmp_path, "qubits 5\ncx 0 2\n")
    result = runner.invoke(main, [
        "verify", "--arch", "quito", "--tableau", t_path, "--circuit", c_path,
    ])
    assert result.exit_code == 1
    assert "FAIL: gate 0 (cx 0 2) is not a coupling edge" in result.output


def test_verify_flags_wrong_tableau(runner, tmp_path):
    t_path, c_path = quito_files(
        tmp_path, "qubits 5\nh 0\n", tableau_circuit_text="qubits 5\ns 0\n"
    )
    result = runner.invoke(main, [
        "verify", "--arch", "quito", "--tableau", t_path, "--circuit", c_path,
    ])
    assert result.exit_code == 1
    assert "FAIL: circuit does not rebuild the expected tableau" in result.output


SWAP01 = {0: 1, 1: 0, 2: 2, 3: 3, 4: 4}


@pytest.mark.parametrize("payload", [
    {str(k): v for k, v in SWAP01.items()},
    [1, 0, 2, 3, 4],
    {"arch": "quito", "mapping": {str(k): v for k, v in SWAP01.items()}},
])
def test_verify_accepts_mapping_forms(runner, tmp_path, payload):
    # logical cx 0 1 placed with 0->1, 1->0 becomes physical cx 1 0
    t_path, c_path = quito_files(
        tmp_path, "qubits 5\ncx 1 0\n", tableau_circuit_text="qubits 5\ncx 0 1\n"
    )
    m_path = write(tmp_path / "m.json", json.dumps(payload))
    result = runner.invoke(main, [
        "verify", "--arch", "quito", "--tableau", t_path, "--circuit", c_path,
        "--mapping", m_path,
    ])
    assert result.exit_code == 0, result.output


def test_verify_mapping_changes_verdict(runner, tmp_path):
    # without the swap mapping the same pair fails the roundtrip
    t_path, c_path = quito_files(
        tmp_path, "qubits 5\ncx 1 0\n", tableau_circuit_text="qubits 5\ncx 0 1\n"
    )
    result = runner.invoke(main, [
        "verify", "--arch", "quito", "--tableau", t_path, "--circuit", c_path,
    ])
    assert result.exit_code == 1


def test_synth_then_verify_via_stats_mapping(runner, tmp_path):
    in_path = write(tmp_path / "in.txt", QUITO_GATES)
    out_path = tmp_path / "out.txt"
    stats_path = tmp_path / "stats.json"
    t_path = write(
        tmp_path / "t.txt",
        CliffordTableau.from_circuit(Circuit.from_gatelist(QUITO_GATES)).to_text(),
    )
    synth_result = runner.invoke(main, [
        "synth", "--arch", "quito", "--in", in_path,
        "--out", str(out_path), "--stats", str(stats_path),
    ])
    assert synth_result.exit_code == 0
    verify_result = runner.invoke(main, [
        "verify", "--arch", "quito", "--tableau", t_path,
        "--circuit", str(out_path), "--mapping", str(stats_path),
    ])
    assert verify_result.exit_code == 0, verify_result.output


# -- arch ---------------------------------------------------------------------------


def test_arch_list(runner):
    result = runner.invoke(main, ["arch", "list"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    names = [ln.split(":")[0] for ln in lines[:-1]]
    assert names == ["quito", "nairobi", "guadalupe", "mumbai", "ithaca", "brisbane"]
    assert lines[-1] == "parametric: complete-N, line-N (any N >= 1)"


def test_arch_show(runner):
    result = runner.invoke(main, ["arch", "show", "quito"])
    assert result.exit_code == 0
    assert "name: quito" in result.output
    assert "qubits: 5" in result.output
    assert "diameter: 3" in result.output
    assert "edges (4):" in result.output
    assert "  1 - 3" in result.output


def test_arch_show_unknown(runner):
    result = runner.invoke(main, ["arch", "show", "nosuch"])
    assert result.exit_code == 1


# -- bench --------------------------------------------------------------------------


def test_bench_writes_rows_and_summary(runner, tmp_path):
    out_path = tmp_path / "rows.csv"
    summary_path = tmp_path / "summary.csv"
    result = runner.invoke(main, [
        "bench", "--arch", "quito", "--gates", "5:10:5", "--trials", "2",
        "--seed", "7", "--out", str(out_path), "--summary", str(summary_path),
    ])
    assert result.exit_code == 0, result.output
    with open(out_path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        rows = list(reader)
    assert header == RESULT_FIELDS
    assert len(rows) == 4  # two gate counts x two trials
    assert {r[1] for r in rows} == {"5", "10"}
    with open(summary_path, newline="") as fh:
        sreader = csv.DictReader(fh)
        assert tuple(sreader.fieldnames) == SUMMARY_FIELDS
        recs = list(sreader)
    assert len(recs) == 1 and recs[0]["arch"] == "quito"


def test_bench_gates_forms(runner, tmp_path):
    out_path = tmp_path / "rows.csv"
    result = runner.invoke(main, [
        "bench", "--arch", "complete-3", "--gates", "4,8", "--trials", "1",
        "--out", str(out_path),
    ])
    assert result.exit_code == 0
    assert len(out_path.read_text().splitlines()) == 3  # header + 2 rows


@pytest.mark.parametrize("bad", ["5:10", "abc", "5:10:2:1", "5,x"])
def test_bench_rejects_bad_gates(runner, tmp_path, bad):
    result = runner.invoke(main, [
        "bench", "--arch", "quito", "--gates", bad,
        "--out", str(tmp_path / "rows.csv"),
    ])
    assert result.exit_code == 2


def test_bench_requires_one_arch_selector(runner, tmp_path):
    neither = runner.invoke(main, ["bench", "--out", str(tmp_path / "r.csv")])
    assert neither.exit_code == 2
    assert "exactly one of --arch or --all-paper-archs" in neither.output
    both = runner.invoke(main, [
        "bench", "--arch", "quito", "--all-paper-archs",
        "--out", str(tmp_path / "r.csv"),
    ])
    assert both.exit_code == 2


def test_bench_plot_dir(runner, tmp_path):
    result = runner.invoke(main, [
        "bench", "--arch", "quito", "--gates", "5", "--trials", "2",
        "--out", str(tmp_path / "rows.csv"),
        "--plot-dir", str(tmp_path / "figs"),
    ])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "figs" / "median_cx.png").exists()
    assert (tmp_path / "figs" / "routing_portion.png").exists()
