"""Persistent per-window DP storage, in compressed and dense baseline forms.

The compressed table keeps a single status row per (level, column) entry,
and only for columns the traceback can still reach; everything else is
recomputed on demand.  The baseline table stores all four edge vectors for
every entry, which is what the improvements are measured against.  Both
carry access counters so the footprint/traffic reduction can be reported.

A table instance is confined to one alignment task; distinct instances may
be used concurrently without synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitvec import BitRow, init_bits, row_masks, word_count


class PrunedAccess(LookupError):
    """Read of an entry the reachability predicate pruned from storage.

    The traceback of a correctly filled table can never trigger this; it
    doubles as the safety tripwire for the storage predicate.
    """

    def __init__(self, level: int, column: int):
        super().__init__(f"entry (d={level}, j={column}) was pruned from storage")
        self.level = level
        self.column = column


class TableContractError(RuntimeError):
    """Use of a table outside its fill/read contract (not a domain error)."""


@dataclass(frozen=True)
class StorageParams:
    """Shape of one window's DP problem.

    n: text-chunk length (columns 1..n), m: pattern-chunk length,
    k: error threshold (levels 0..k), budget: pattern characters the
    traceback may consume before the window commits.
    """

    n: int
    m: int
    k: int
    budget: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"pattern length must be >= 1, got {self.m}")
        if self.n < 0:
            raise ValueError(f"text length must be >= 0, got {self.n}")
        if self.k < 1:
            raise ValueError(f"error threshold must be >= 1, got {self.k}")
        if not 1 <= self.budget <= self.m:
            raise ValueError(f"budget must be in [1, {self.m}], got {self.budget}")


def stored(params: StorageParams, level: int, column: int) -> bool:
    """Whether entry (level, column) must be kept for the traceback.

    True iff ``(n - column) <= budget + (k - level) + 1``.  A traceback
    starts at column n; every column-consuming step either consumes a
    pattern character (at most ``budget`` of those before the window
    commits) or is a deletion, and each deletion lowers the level by one,
    so at most ``k - level`` deletions can have happened by the time level
    ``level`` is reached.  The +1 covers the predecessor-column read made
    at the current state.
    """
    if not 0 <= level <= params.k:
        raise ValueError(f"level {level} out of range [0, {params.k}]")
    if not 1 <= column <= params.n:
        raise ValueError(f"column {column} out of range [1, {params.n}]")
    return (params.n - column) <= params.budget + (params.k - level) + 1


def stored_start(params: StorageParams, level: int) -> int:
    """First stored column of a level (may exceed n when nothing is stored)."""
    return max(1, params.n - params.budget - (params.k - level) - 1)


@dataclass
class AccessCounters:
    """Monotone counters over persistent-table traffic.

    Only reads/writes of persistent payload entries are counted; transient
    working buffers are the on-chip analog and are reported separately,
    outside the reduction ratios.
    """

    entry_reads: int = 0
    entry_writes: int = 0
    words_allocated: int = 0

    @property
    def total_accesses(self) -> int:
        return self.entry_reads + self.entry_writes

    def absorb(self, other: "AccessCounters") -> None:
        self.entry_reads += other.entry_reads
        self.entry_writes += other.entry_writes
        self.words_allocated += other.words_allocated


class CompressedTable:
    """Compressed persistent storage: one status row per surviving entry.

    Levels materialize lazily in increasing order; writes land only on the
    frontier level and only at stored columns (others are silently
    skipped).  Column 0 is a closed-form function of (m, level) and is
    recomputed on every read instead of being stored.
    """

    __slots__ = ("params", "counters", "_rows", "_word_count", "_full")

    def __init__(self, params: StorageParams):
        self.params = params
        self.counters = AccessCounters()
        self._rows: list[list[int | None]] = []
        self._word_count = word_count(params.m)
        self._full = row_masks(params.m)[0]

    @property
    def rows_present(self) -> int:
        return len(self._rows)

    def stored(self, level: int, column: int) -> bool:
        return stored(self.params, level, column)

    def put(self, level: int, column: int, value: BitRow) -> None:
        if value.width != self.params.m:
            raise TableContractError(
                f"row width {value.width} does not match pattern length {self.params.m}")
        if not 0 <= level <= self.params.k:
            raise ValueError(f"level {level} out of range [0, {self.params.k}]")
        if not 1 <= column <= self.params.n:
            raise ValueError(f"column {column} out of range [1, {self.params.n}]")
        if level == len(self._rows):
            j_lo = stored_start(self.params, level)
            self._rows.append([None] * (self.params.n - j_lo + 1))
        elif level != len(self._rows) - 1:
            raise TableContractError(
                f"write to level {level} below the frontier {len(self._rows) - 1}")
        if not stored(self.params, level, column):
            return  # pruned: skipped, counted nowhere
        idx = column - stored_start(self.params, level)
        row = self._rows[level]
        if row[idx] is None:
            self.counters.words_allocated += self._word_count
        row[idx] = value.bits
        self.counters.entry_writes += 1

    def append_level(self, values: list[int]) -> None:
        """Bulk-commit the stored slice of the next level (fill fast path).

        ``values`` must hold the raw row integers for exactly the stored
        columns of the new frontier level, in column order.  Counter
        semantics are identical to per-entry :meth:`put` calls.
        """
        level = len(self._rows)
        j_lo = stored_start(self.params, level)
        expected = max(0, self.params.n - j_lo + 1)
        if len(values) != expected:
            raise TableContractError(
                f"level {level} expects {expected} stored columns, got {len(values)}")
        self._rows.append(values)  # type: ignore[arg-type]
        self.counters.entry_writes += len(values)
        self.counters.words_allocated += len(values) * self._word_count

    def read_raw(self, level: int, column: int) -> int:
        """Raw-int read with full get() semantics (used by the traceback)."""
        if column == 0:
            # Initialization column: recomputed, never stored, never counted.
            return init_bits(self.params.m, level, self._full)
        if not 1 <= column <= self.params.n:
            raise ValueError(f"column {column} out of range [0, {self.params.n}]")
        if not 0 <= level < len(self._rows):
            raise TableContractError(f"level {level} has not been computed")
        j_lo = stored_start(self.params, level)
        if column < j_lo:
            raise PrunedAccess(level, column)
        value = self._rows[level][column - j_lo]
        if value is None:
            raise TableContractError(f"entry (d={level}, j={column}) was never written")
        self.counters.entry_reads += 1
        return value

    def get(self, level: int, column: int) -> BitRow:
        return BitRow(self.read_raw(level, column), self.params.m)


class BaselineEdgeTable:
    """Dense storage of all four edge vectors for every (level, column).

    No pruning and no early-termination interplay: levels 0..k, columns
    1..n, four payload rows each.  Level 0 has no substitution, deletion,
    or insertion edge; all-ones rows are stored there so the payload stays
    uniform.
    """

    __slots__ = ("n", "m", "k", "counters", "_m_edges", "_s_edges", "_d_edges",
                 "_i_edges", "_word_count", "_full")

    def __init__(self, n: int, m: int, k: int):
        if m < 1 or n < 0 or k < 1:
            raise ValueError(f"bad table shape n={n}, m={m}, k={k}")
        self.n = n
        self.m = m
        self.k = k
        self.counters = AccessCounters()
        self._m_edges: list[int] = []
        self._s_edges: list[int] = []
        self._d_edges: list[int] = []
        self._i_edges: list[int] = []
        self._word_count = word_count(m)
        self._full = row_masks(m)[0]

    def read_edges_raw(self, level: int, column: int) -> tuple[int, int, int, int]:
        """Edge vectors (M, S, D, I) at an entry, counting the reads.

        Level 0 reads only the match edge (one counted read); the other
        three are returned as all-ones.
        """
        if not 0 <= level <= self.k:
            raise ValueError(f"level {level} out of range [0, {self.k}]")
        if not 1 <= column <= self.n:
            raise ValueError(f"column {column} out of range [1, {self.n}]")
        idx = (column - 1) * (self.k + 1) + level
        if level == 0:
            self.counters.entry_reads += 1
            return self._m_edges[idx], self._full, self._full, self._full
        self.counters.entry_reads += 4
        return (self._m_edges[idx], self._s_edges[idx],
                self._d_edges[idx], self._i_edges[idx])

    def get_edges(self, level: int, column: int) -> tuple[BitRow, BitRow, BitRow, BitRow]:
        m_e, s_e, d_e, i_e = self.read_edges_raw(level, column)
        return (BitRow(m_e, self.m), BitRow(s_e, self.m),
                BitRow(d_e, self.m), BitRow(i_e, self.m))

    def status_row(self, level: int, column: int) -> BitRow:
        """AND of the four stored edges (the entry's status row)."""
        m_e, s_e, d_e, i_e = self.read_edges_raw(level, column)
        return BitRow(m_e & s_e & d_e & i_e, self.m)


@dataclass(frozen=True)
class ReductionReport:
    """Footprint and access comparison of the two engines on one workload."""

    words_baseline: int
    words_improved: int
    reads_baseline: int
    writes_baseline: int
    reads_improved: int
    writes_improved: int
    footprint_reduction: float | None
    access_reduction: float | None
    working_buffer_words: int
    degenerate: bool = field(default=False)

    TSV_FIELDS = ("words_baseline", "words_improved", "reads_baseline",
                  "writes_baseline", "reads_improved", "writes_improved",
                  "footprint_reduction", "access_reduction",
                  "working_buffer_words")

    def tsv_values(self) -> list[str]:
        out = []
        for name in self.TSV_FIELDS:
            value = getattr(self, name)
            if value is None:
                out.append("NA")
            elif isinstance(value, float):
                out.append(f"{value:.3f}")
            else:
                out.append(str(value))
        return out


def reduction_report(improved: AccessCounters, baseline: AccessCounters,
                     working_buffer_words: int) -> ReductionReport:
    """Build a reduction report from two engines' counters.

    The transient DC working buffer is reported as its own line item and
    excluded from both ratios.  Zero improved counters mark the report
    degenerate instead of dividing by zero.
    """
    degenerate = improved.words_allocated == 0 or improved.total_accesses == 0
    footprint = None if degenerate else baseline.words_allocated / improved.words_allocated
    access = None if degenerate else baseline.total_accesses / improved.total_accesses
    return ReductionReport(
        words_baseline=baseline.words_allocated,
        words_improved=improved.words_allocated,
        reads_baseline=baseline.entry_reads,
        writes_baseline=baseline.entry_writes,
        reads_improved=improved.entry_reads,
        writes_improved=improved.entry_writes,
        footprint_reduction=footprint,
        access_reduction=access,
        working_buffer_words=working_buffer_words,
        degenerate=degenerate,
    )


def footprint_report(improved: CompressedTable, baseline: BaselineEdgeTable) -> ReductionReport:
    """Reduction report for two tables describing the same window workload."""
    working = 2 * (improved.params.n + 1) * word_count(improved.params.m)
    return reduction_report(improved.counters, baseline.counters, working)
