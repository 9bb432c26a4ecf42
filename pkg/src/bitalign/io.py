"""File formats: minimal FASTA, pair-list TSV, run-length CIGAR text.

Only the extended CIGAR operators =, X, I, D are accepted; the classic
ambiguous 'M' is rejected on input because the replay validator needs the
match/substitution distinction.  The CLI offers an opt-in collapse to 'M'
on output for interoperability.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import IO, Iterable

_STANDARD_SYMBOLS = frozenset("ACGT")
_CIGAR_RUN = re.compile(r"(\d+)([=XID])")
_CIGAR_OPS = frozenset("=XID")

FASTA_LINE_WIDTH = 60


class MalformedFasta(ValueError):
    pass


class PairParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class CigarError(ValueError):
    pass


@dataclass(frozen=True)
class FastaRecord:
    """One FASTA record; sequence is uppercased with whitespace stripped.

    ``nonstandard`` flags symbols outside ACGT, which are preserved but
    never match during alignment.
    """

    id: str
    sequence: str

    @property
    def nonstandard(self) -> frozenset[str]:
        return frozenset(self.sequence) - _STANDARD_SYMBOLS


@dataclass(frozen=True)
class PairRecord:
    """An alignment job: a read and its candidate reference region."""

    id: str
    pattern: str
    text: str


def read_fasta(stream: IO[str]) -> list[FastaRecord]:
    records: list[FastaRecord] = []
    header: str | None = None
    chunks: list[str] = []

    def flush() -> None:
        if header is None:
            return
        sequence = "".join(chunks)
        if not sequence:
            raise MalformedFasta(f"record {header!r} has an empty sequence")
        records.append(FastaRecord(id=header, sequence=sequence))

    for raw in stream:
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            header = line[1:].split()[0] if line[1:].split() else ""
            if not header:
                raise MalformedFasta("header line with an empty id")
            chunks = []
        else:
            if header is None:
                raise MalformedFasta("sequence data before any '>' header")
            chunks.append(line.upper())
    flush()
    return records


def write_fasta(records: Iterable[FastaRecord], stream: IO[str],
                line_width: int = FASTA_LINE_WIDTH) -> None:
    for record in records:
        stream.write(f">{record.id}\n")
        seq = record.sequence
        for start in range(0, len(seq), line_width):
            stream.write(seq[start:start + line_width] + "\n")


def read_pairs(stream: IO[str]) -> list[PairRecord]:
    """Parse `id<TAB>pattern<TAB>text` rows; '#' comments and blanks skipped."""
    records: list[PairRecord] = []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise PairParseError(line_no, f"expected 3 tab-separated columns, got {len(fields)}")
        pair_id, pattern, text = fields
        if not pattern:
            raise PairParseError(line_no, "empty pattern column")
        records.append(PairRecord(id=pair_id, pattern=pattern.upper(), text=text.upper()))
    return records


def write_pairs(records: Iterable[PairRecord], stream: IO[str]) -> None:
    for record in records:
        stream.write(f"{record.id}\t{record.pattern}\t{record.text}\n")


def _run_length(ops: str) -> str:
    out: list[str] = []
    run_op = ""
    run_len = 0
    for op in ops:
        if op == run_op:
            run_len += 1
        else:
            if run_len:
                out.append(f"{run_len}{run_op}")
            run_op = op
            run_len = 1
    if run_len:
        out.append(f"{run_len}{run_op}")
    return "".join(out)


def format_cigar(ops: str) -> str:
    """Run-length encode an expanded op string, e.g. '====XX=' -> '4=2X1='."""
    for op in ops:
        if op not in _CIGAR_OPS:
            raise CigarError(f"unknown operator {op!r}")
    return _run_length(ops)


def parse_cigar(text: str) -> str:
    """Expand run-length CIGAR text, e.g. '2=1I' -> '==I'."""
    pos = 0
    out: list[str] = []
    for match in _CIGAR_RUN.finditer(text):
        if match.start() != pos:
            raise CigarError(f"unparsable CIGAR near {text[pos:match.start()]!r}")
        length = int(match.group(1))
        if length == 0:
            raise CigarError(f"zero-length run {match.group(0)!r}")
        out.append(match.group(2) * length)
        pos = match.end()
    if pos != len(text):
        raise CigarError(f"unparsable CIGAR near {text[pos:]!r}")
    return "".join(out)


def collapse_matches(ops: str) -> str:
    """Fold '=' and 'X' into classic 'M' (for interoperable output only)."""
    return ops.replace("=", "M").replace("X", "M")


def format_classic_cigar(ops: str) -> str:
    """Run-length CIGAR with '='/'X' collapsed to classic 'M'."""
    for op in ops:
        if op not in _CIGAR_OPS:
            raise CigarError(f"unknown operator {op!r}")
    return _run_length(collapse_matches(ops))
