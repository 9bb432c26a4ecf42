"""Command-line entry point: align pairs, simulate workloads, benchmark.

Exit codes: 0 success, 1 at least one per-row alignment failure, 2 usage
or input parse error.  All output is deterministic in (flags, seed) except
wall-time fields.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time
from dataclasses import replace
from typing import Sequence

from . import io as formats
from . import oracle
from .backtrace import DEFAULT_PRIORITY
from .bitvec import word_count
from .dptable import AccessCounters, reduction_report
from .sim import ErrorProfile, SimRecord, derive_seed, make_reference, simulate_read
from .window import DEFAULT_OVERLAP, DEFAULT_WINDOW, WindowConfig, align_batch

BENCH_COLUMNS = (
    "w", "o", "k", "pairs", "bases", "failed",
    "seconds_improved", "seconds_baseline",
    "throughput_improved", "throughput_baseline", "speedup",
    "words_baseline", "words_improved",
    "reads_baseline", "writes_baseline", "reads_improved", "writes_improved",
    "footprint_reduction", "access_reduction", "working_buffer_words",
    "oracle_pairs", "mean_cost_overhead", "median_cost_overhead",
)

# Skip the oracle-overhead column for pairs above this many DP cells.
DEFAULT_ORACLE_CAP = 200_000_000


def _add_window_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--w", type=int, default=DEFAULT_WINDOW, help="window size")
    parser.add_argument("--o", type=int, default=DEFAULT_OVERLAP, help="window overlap")
    parser.add_argument("--k", type=int, default=None,
                        help="error threshold per window (default: window size)")
    parser.add_argument("--priority", default=DEFAULT_PRIORITY,
                        help="edge tie-break order, a permutation of MSID")
    parser.add_argument("--threads", type=int, default=1,
                        help="parallel alignment workers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitalign",
        description="Bit-parallel edit-distance alignment with a compressed DP table.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_align = sub.add_parser("align", help="align a pair-list TSV, one row per pair")
    p_align.add_argument("--pairs", required=True, help="TSV: id, pattern, text")
    _add_window_flags(p_align)
    p_align.add_argument("--mode", choices=["improved", "baseline"], default="improved")
    p_align.add_argument("--stats", action="store_true",
                         help="append rows_computed, entry_reads, entry_writes, words_allocated")
    p_align.add_argument("--collapse-m", action="store_true",
                         help="emit classic 'M' instead of '='/'X' in CIGARs")
    p_align.set_defaults(func=_cmd_align)

    p_sim = sub.add_parser("simulate", help="generate a reference, noisy reads, and truth")
    p_sim.add_argument("--ref-len", type=int, required=True)
    p_sim.add_argument("--count", type=int, required=True, help="number of reads")
    p_sim.add_argument("--read-len", type=int, required=True)
    p_sim.add_argument("--sub", type=float, default=0.05, help="substitution rate per base")
    p_sim.add_argument("--ins", type=float, default=0.025, help="insertion rate per base")
    p_sim.add_argument("--del", type=float, default=0.025, dest="dele",
                       help="deletion rate per base")
    p_sim.add_argument("--seed", type=int, default=1)
    p_sim.add_argument("--out-prefix", required=True)
    p_sim.add_argument("--emit-pairs", action="store_true",
                       help="also write <prefix>_pairs.tsv pairing each read with its true region")
    p_sim.set_defaults(func=_cmd_simulate)

    p_bench = sub.add_parser("bench", help="run both engines and report reductions")
    p_bench.add_argument("--pairs", required=True)
    _add_window_flags(p_bench)
    p_bench.add_argument("--sweep-k", default=None,
                         help="comma-separated k values; one report row per value")
    p_bench.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP,
                         help="max pattern*text cells for the oracle-overhead column; 0 disables")
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def _load_pairs(path: str) -> list[formats.PairRecord]:
    with open(path, encoding="utf-8") as handle:
        return formats.read_pairs(handle)


def _cmd_align(args: argparse.Namespace) -> int:
    pairs = _load_pairs(args.pairs)
    cfg = WindowConfig(window=args.w, overlap=args.o, k=args.k,
                       priority=args.priority, mode=args.mode)
    outcomes = align_batch([(p.pattern, p.text) for p in pairs], cfg,
                           parallelism=args.threads)
    failures = 0
    out = sys.stdout
    for record, slot in zip(pairs, outcomes):
        if not slot.ok:
            out.write(f"{record.id}\tERROR {slot.error}\n")
            failures += 1
            continue
        result = slot.result
        cigar_text = (formats.format_classic_cigar(result.cigar) if args.collapse_m
                      else formats.format_cigar(result.cigar))
        row = [record.id, str(result.cost), str(result.text_consumed), cigar_text]
        if args.stats:
            counters = result.counters
            row += [str(result.rows_computed), str(counters.entry_reads),
                    str(counters.entry_writes), str(counters.words_allocated)]
        out.write("\t".join(row) + "\n")
    return 1 if failures else 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.ref_len < 1 or args.count < 0 or args.read_len < 1:
        print("error: ref-len and read-len must be >= 1 and count >= 0", file=sys.stderr)
        return 2
    if args.read_len > args.ref_len:
        print("error: read-len exceeds ref-len", file=sys.stderr)
        return 2
    try:
        profile = ErrorProfile(sub_rate=args.sub, ins_rate=args.ins,
                               del_rate=args.dele, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    header = ("# simulate ref-len={} count={} read-len={} sub={} ins={} del={} seed={}"
              .format(args.ref_len, args.count, args.read_len, args.sub, args.ins,
                      args.dele, args.seed))
    reference = make_reference(args.ref_len, args.seed)
    ref_id = "ref1"
    position_rng = random.Random(derive_seed(args.seed, 0xB0B))
    records: list[tuple[str, SimRecord]] = []
    for index in range(args.count):
        pos = position_rng.randrange(0, args.ref_len - args.read_len + 1)
        per_read = replace(profile, seed=derive_seed(args.seed, index + 1))
        records.append((f"r{index + 1}",
                        simulate_read(reference, pos, args.read_len, per_read, ref_id=ref_id)))

    prefix = args.out_prefix
    with open(f"{prefix}_ref.fasta", "w", encoding="utf-8") as handle:
        formats.write_fasta([formats.FastaRecord(id=ref_id, sequence=reference)], handle)
    with open(f"{prefix}_reads.fasta", "w", encoding="utf-8") as handle:
        formats.write_fasta(
            [formats.FastaRecord(id=read_id, sequence=rec.read) for read_id, rec in records],
            handle)
    with open(f"{prefix}_truth.tsv", "w", encoding="utf-8") as handle:
        handle.write(header + "\n")
        handle.write("# read_id\tref_id\tref_start\ttruth_cigar\ttruth_cost\n")
        for read_id, rec in records:
            handle.write(f"{read_id}\t{rec.ref_id}\t{rec.ref_start}\t"
                         f"{rec.truth_cigar}\t{rec.truth_cost}\n")
    if args.emit_pairs:
        with open(f"{prefix}_pairs.tsv", "w", encoding="utf-8") as handle:
            handle.write(header + "\n")
            formats.write_pairs(
                [formats.PairRecord(id=read_id, pattern=rec.read,
                                    text=reference[rec.ref_start:rec.ref_start + args.read_len])
                 for read_id, rec in records],
                handle)
    return 0


def _run_engine(pairs: list[formats.PairRecord], cfg: WindowConfig,
                threads: int) -> tuple[float, list, AccessCounters, int]:
    start = time.perf_counter()
    outcomes = align_batch([(p.pattern, p.text) for p in pairs], cfg, parallelism=threads)
    elapsed = time.perf_counter() - start
    counters = AccessCounters()
    failed = 0
    for slot in outcomes:
        if slot.ok:
            counters.absorb(slot.result.counters)
        else:
            failed += 1
    return elapsed, outcomes, counters, failed


def _bench_row(pairs: list[formats.PairRecord], w: int, o: int, k: int | None,
               priority: str, threads: int, oracle_cap: int) -> dict[str, object]:
    improved_cfg = WindowConfig(window=w, overlap=o, k=k, priority=priority, mode="improved")
    baseline_cfg = replace(improved_cfg, mode="baseline")
    t_imp, out_imp, ctr_imp, failed_imp = _run_engine(pairs, improved_cfg, threads)
    t_base, out_base, ctr_base, failed_base = _run_engine(pairs, baseline_cfg, threads)

    bases = sum(len(p.pattern) for p in pairs)
    report = reduction_report(ctr_imp, ctr_base,
                              working_buffer_words=2 * (w + 1) * word_count(w))
    overheads: list[float] = []
    for record, slot in zip(pairs, out_imp):
        if not slot.ok:
            continue
        if oracle_cap <= 0 or len(record.pattern) * len(record.text) > oracle_cap:
            continue
        reference_cost = oracle.global_distance(record.pattern, record.text)
        overheads.append((slot.result.cost - reference_cost) / max(reference_cost, 1))

    row: dict[str, object] = {
        "w": w, "o": o, "k": improved_cfg.k, "pairs": len(pairs), "bases": bases,
        "failed": failed_imp + failed_base,
        "seconds_improved": t_imp, "seconds_baseline": t_base,
        "throughput_improved": bases / t_imp if t_imp > 0 else 0.0,
        "throughput_baseline": bases / t_base if t_base > 0 else 0.0,
        "speedup": t_base / t_imp if t_imp > 0 else 0.0,
        "words_baseline": report.words_baseline,
        "words_improved": report.words_improved,
        "reads_baseline": report.reads_baseline,
        "writes_baseline": report.writes_baseline,
        "reads_improved": report.reads_improved,
        "writes_improved": report.writes_improved,
        "footprint_reduction": report.footprint_reduction,
        "access_reduction": report.access_reduction,
        "working_buffer_words": report.working_buffer_words,
        "oracle_pairs": len(overheads),
        "mean_cost_overhead": statistics.fmean(overheads) if overheads else None,
        "median_cost_overhead": statistics.median(overheads) if overheads else None,
    }
    return row


def _format_cell(value: object) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _cmd_bench(args: argparse.Namespace) -> int:
    pairs = _load_pairs(args.pairs)
    if args.sweep_k:
        try:
            sweep = [int(item) for item in args.sweep_k.split(",") if item.strip()]
        except ValueError:
            print(f"error: bad --sweep-k list {args.sweep_k!r}", file=sys.stderr)
            return 2
    else:
        sweep = [args.k if args.k is not None else args.w]
    out = sys.stdout
    out.write("\t".join(BENCH_COLUMNS) + "\n")
    any_failed = False
    for k in sweep:
        row = _bench_row(pairs, args.w, args.o, k, args.priority,
                         args.threads, args.oracle_cap)
        any_failed = any_failed or bool(row["failed"])
        out.write("\t".join(_format_cell(row[name]) for name in BENCH_COLUMNS) + "\n")
    return 1 if any_failed else 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (formats.MalformedFasta, formats.PairParseError, formats.CigarError,
            FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
