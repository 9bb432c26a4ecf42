import pytest

from bitalign.cli import BENCH_COLUMNS, main


@pytest.fixture
def pairs_file(tmp_path):
    path = tmp_path / "pairs.tsv"
    path.write_text(
        "# test pairs\n"
        "p1\tACGT\tACGT\n"
        "p2\tACGT\tAGGT\n"
        "p3\tACGTACGTACGT\tACGTACGTACGT\n",
        encoding="utf-8")
    return path


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAlignCommand:
    def test_identity_pair_row(self, capsys, pairs_file):
        code, out, _ = run(capsys, ["align", "--pairs", str(pairs_file)])
        assert code == 0
        rows = out.strip().split("\n")
        assert rows[0] == "p1\t0\t4\t4="
        assert rows[1] == "p2\t1\t4\t1=1X2="

    def test_stats_columns(self, capsys, pairs_file):
        code, out, _ = run(capsys, ["align", "--pairs", str(pairs_file), "--stats"])
        assert code == 0
        first = out.strip().split("\n")[0].split("\t")
        assert len(first) == 8
        # rows_computed for an identity pair: one level per window
        assert first[4] == "1"

    def test_modes_agree_on_cost(self, capsys, pairs_file):
        _, improved, _ = run(capsys, ["align", "--pairs", str(pairs_file)])
        _, baseline, _ = run(capsys, ["align", "--pairs", str(pairs_file),
                                      "--mode", "baseline"])
        improved_costs = [line.split("\t")[1] for line in improved.strip().split("\n")]
        baseline_costs = [line.split("\t")[1] for line in baseline.strip().split("\n")]
        assert improved_costs == baseline_costs

    def test_collapse_m_flag(self, capsys, pairs_file):
        _, out, _ = run(capsys, ["align", "--pairs", str(pairs_file), "--collapse-m"])
        assert out.strip().split("\n")[1].split("\t")[3] == "4M"

    def test_per_row_error_and_exit_code(self, capsys, tmp_path):
        path = tmp_path / "pairs.tsv"
        path.write_text("bad\tAAAAAAAAAAAA\tTTTTTTTTTTTT\nok\tACGT\tACGT\n",
                        encoding="utf-8")
        code, out, _ = run(capsys, ["align", "--pairs", str(path),
                                    "--w", "8", "--o", "2", "--k", "2"])
        assert code == 1
        rows = out.strip().split("\n")
        assert rows[0].startswith("bad\tERROR ")
        assert rows[1].startswith("ok\t0")

    def test_parse_error_exit_code(self, capsys, tmp_path):
        path = tmp_path / "pairs.tsv"
        path.write_text("only-two-columns\tACGT\n", encoding="utf-8")
        code, _, err = run(capsys, ["align", "--pairs", str(path)])
        assert code == 2
        assert "line 1" in err

    def test_missing_file_exit_code(self, capsys, tmp_path):
        code, _, err = run(capsys, ["align", "--pairs", str(tmp_path / "nope.tsv")])
        assert code == 2

    def test_threads_do_not_change_output(self, capsys, pairs_file):
        _, serial, _ = run(capsys, ["align", "--pairs", str(pairs_file), "--stats"])
        _, threaded, _ = run(capsys, ["align", "--pairs", str(pairs_file), "--stats",
                                      "--threads", "4"])
        assert serial == threaded

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["align"])  # --pairs is required
        assert exc_info.value.code == 2


class TestSimulateCommand:
    def test_outputs_and_determinism(self, capsys, tmp_path):
        argv = ["simulate", "--ref-len", "2000", "--count", "5",
                "--read-len", "300", "--seed", "11",
                "--out-prefix", str(tmp_path / "a")]
        assert main(argv) == 0
        first = {name: (tmp_path / f"a_{name}").read_bytes()
                 for name in ("ref.fasta", "reads.fasta", "truth.tsv")}
        argv[-1] = str(tmp_path / "b")
        assert main(argv) == 0
        second = {name: (tmp_path / f"b_{name}").read_bytes()
                  for name in ("ref.fasta", "reads.fasta", "truth.tsv")}
        assert first == second
        truth = first["truth.tsv"].decode()
        assert truth.startswith("# simulate ref-len=2000")
        assert len([line for line in truth.strip().split("\n")
                    if not line.startswith("#")]) == 5

    def test_count_zero_writes_headers(self, capsys, tmp_path):
        assert main(["simulate", "--ref-len", "100", "--count", "0",
                     "--read-len", "50", "--seed", "1",
                     "--out-prefix", str(tmp_path / "z")]) == 0
        truth = (tmp_path / "z_truth.tsv").read_text(encoding="utf-8")
        assert truth.startswith("# simulate")
        assert (tmp_path / "z_ref.fasta").read_text(encoding="utf-8").startswith(">ref1")

    def test_invalid_rates_rejected_before_writing(self, capsys, tmp_path):
        code, _, err = run(capsys, ["simulate", "--ref-len", "100", "--count", "1",
                                    "--read-len", "50", "--sub", "0.9", "--ins", "0.2",
                                    "--seed", "1", "--out-prefix", str(tmp_path / "x")])
        assert code == 2
        assert not (tmp_path / "x_truth.tsv").exists()

    def test_emit_pairs(self, capsys, tmp_path):
        assert main(["simulate", "--ref-len", "1000", "--count", "3",
                     "--read-len", "200", "--seed", "7", "--emit-pairs",
                     "--out-prefix", str(tmp_path / "p")]) == 0
        pairs = (tmp_path / "p_pairs.tsv").read_text(encoding="utf-8")
        rows = [line for line in pairs.strip().split("\n") if not line.startswith("#")]
        assert len(rows) == 3
        assert all(len(row.split("\t")) == 3 for row in rows)


class TestBenchCommand:
    def test_report_columns_and_reductions(self, capsys, tmp_path):
        path = tmp_path / "pairs.tsv"
        rows = []
        base = "ACGTTGCA" * 16  # 128 bases
        rows.append(f"q1\t{base}\t{base}")
        rows.append(f"q2\t{base}\t{base[:64] + 'T' + base[65:]}")
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        code, out, _ = run(capsys, ["bench", "--pairs", str(path), "--threads", "1"])
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].split("\t") == list(BENCH_COLUMNS)
        record = dict(zip(BENCH_COLUMNS, lines[1].split("\t")))
        assert float(record["footprint_reduction"]) > 1.0
        assert float(record["access_reduction"]) > 1.0
        assert int(record["failed"]) == 0
        # dense baseline writes exactly 4 per entry; improved at most 1
        assert int(record["writes_baseline"]) >= 4 * int(record["writes_improved"])

    def test_identical_pairs_reduction_matches_formulas(self, capsys, tmp_path):
        from bitalign.dptable import StorageParams, stored
        path = tmp_path / "pairs.tsv"
        base = "ACGTTGCA" * 8  # single 64-char window
        path.write_text(f"q1\t{base}\t{base}\n", encoding="utf-8")
        code, out, _ = run(capsys, ["bench", "--pairs", str(path)])
        assert code == 0
        record = dict(zip(BENCH_COLUMNS, out.strip().split("\n")[1].split("\t")))
        params = StorageParams(n=64, m=64, k=64, budget=64)
        words_improved = sum(1 for j in range(1, 65) if stored(params, 0, j))
        words_baseline = 4 * 65 * 64
        assert int(record["words_improved"]) == words_improved
        assert int(record["words_baseline"]) == words_baseline
        expected = words_baseline / words_improved
        assert float(record["footprint_reduction"]) == pytest.approx(expected, abs=1e-3)

    def test_sweep_k_rows(self, capsys, tmp_path):
        path = tmp_path / "pairs.tsv"
        base = "ACGT" * 32
        path.write_text(f"q1\t{base}\t{base}\n", encoding="utf-8")
        code, out, _ = run(capsys, ["bench", "--pairs", str(path),
                                    "--sweep-k", "16,32,64"])
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 4
        assert [line.split("\t")[2] for line in lines[1:]] == ["16", "32", "64"]

    def test_threads_do_not_change_non_timing_columns(self, capsys, tmp_path):
        path = tmp_path / "pairs.tsv"
        base = "ACGTTGCA" * 16
        path.write_text(f"q1\t{base}\t{base}\nq2\t{base}\t{base[1:]}\n", encoding="utf-8")
        timing = {"seconds_improved", "seconds_baseline",
                  "throughput_improved", "throughput_baseline", "speedup"}

        def non_timing(output):
            record = dict(zip(BENCH_COLUMNS, output.strip().split("\n")[1].split("\t")))
            return {key: value for key, value in record.items() if key not in timing}

        _, serial, _ = run(capsys, ["bench", "--pairs", str(path), "--threads", "1"])
        _, threaded, _ = run(capsys, ["bench", "--pairs", str(path), "--threads", "3"])
        assert non_timing(serial) == non_timing(threaded)

    def test_bad_sweep_list(self, capsys, tmp_path):
        path = tmp_path / "pairs.tsv"
        path.write_text("q1\tACGT\tACGT\n", encoding="utf-8")
        code, _, err = run(capsys, ["bench", "--pairs", str(path), "--sweep-k", "a,b"])
        assert code == 2
