"""Distance calculation: pattern bitmasks and the two DP fill engines.

Both engines evaluate the same recurrence over status rows R[d][j] (level
d, text column j; 0 bits mark active states):

    R[d][0] = init(m, d)
    R[0][j] = shift(R[0][j-1]) | PM[T[j-1]]
    R[d][j] = (shift(R[d][j-1]) | PM[T[j-1]])   match edge
              & shift(R[d-1][j-1])              substitution edge
              & R[d-1][j-1]                     deletion edge
              & shift(R[d-1][j])                insertion edge

Shifting in an active 0 gives free-text-prefix (semi-global) semantics:
bit m-1 of R[d][n] is 0 iff some text suffix matches the whole pattern
with at most d edits.

The improved engine runs level-major so it can stop at the first level
containing a full-pattern solution, and persists only the ANDed status row
at columns the traceback can reach.  The baseline engine runs text-major,
computes all k+1 levels unconditionally, and stores all four edge vectors
per entry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitvec import BitRow, init_bits, row_masks
from .dptable import BaselineEdgeTable, CompressedTable, StorageParams, stored_start

DNA_ALPHABET = "ACGT"


class NotFound(Exception):
    """Minimum distance exceeds the error threshold."""

    def __init__(self, k: int):
        super().__init__(f"no alignment within error threshold k={k}")
        self.k = k


class PatternMasks:
    """One match mask per alphabet symbol; bit i is 0 iff pattern[i] == symbol.

    Symbols outside the alphabet (in the pattern or looked up from the
    text) map to the all-ones sentinel and never match anything.
    """

    __slots__ = ("width", "_table", "_miss")

    def __init__(self, width: int, table: dict[str, int], miss: int):
        self.width = width
        self._table = table
        self._miss = miss

    @property
    def symbols(self) -> frozenset[str]:
        return frozenset(self._table)

    def raw(self, symbol: str) -> int:
        return self._table.get(symbol, self._miss)

    def row(self, symbol: str) -> BitRow:
        return BitRow(self.raw(symbol), self.width)

    def __repr__(self) -> str:
        return f"PatternMasks(width={self.width}, symbols={sorted(self._table)})"


def build_masks(pattern: str, alphabet: str = DNA_ALPHABET) -> PatternMasks:
    if not pattern:
        raise ValueError("pattern must not be empty")
    m = len(pattern)
    full, _ = row_masks(m)
    table = {symbol: full for symbol in alphabet}
    for i, symbol in enumerate(pattern):
        if symbol in table:
            table[symbol] &= ~(1 << i)
    return PatternMasks(m, table, full)


@dataclass(frozen=True)
class DcOutcome:
    """Result of one DP fill: minimal solving level, levels evaluated, table."""

    d_min: int
    rows_computed: int
    table: CompressedTable | BaselineEdgeTable


def _column_masks(text: str, masks: PatternMasks) -> list[int]:
    """Per-column pattern mask, indexed 1..n (index 0 unused)."""
    raw = masks.raw
    return [0] + [raw(symbol) for symbol in text]


def dc_improved(pattern: str, text: str, k: int, budget: int,
                masks: PatternMasks | None = None) -> DcOutcome:
    """Fill levels 0,1,2,... until one solves the whole pattern.

    Returns the outcome with a :class:`CompressedTable` holding the status
    rows of the computed levels at stored columns.  ``d_min`` equals the
    semi-global distance (min over text start positions) whenever that is
    <= k; otherwise :class:`NotFound` is raised.

    Inputs are taken in DC orientation; the window driver reverses chunks
    before calling, this function is orientation-agnostic.
    """
    m = len(pattern)
    n = len(text)
    params = StorageParams(n=n, m=m, k=k, budget=budget)
    if masks is None:
        masks = build_masks(pattern)
    elif masks.width != m:
        raise ValueError(f"mask width {masks.width} does not match pattern length {m}")
    table = CompressedTable(params)
    full, pad = row_masks(m)
    top = 1 << (m - 1)
    pm_col = _column_masks(text, masks)

    # Two-row transient working buffer; the table serves the traceback only.
    prev_row = [0] * (n + 1)
    cur_row = [0] * (n + 1)

    v = full  # init(m, 0)
    cur_row[0] = v
    for j in range(1, n + 1):
        v = ((v << 1) & full) | pad | pm_col[j]
        cur_row[j] = v
    table.append_level(cur_row[stored_start(params, 0):n + 1])
    if cur_row[n] & top == 0:
        return DcOutcome(0, 1, table)

    for d in range(1, k + 1):
        prev_row, cur_row = cur_row, prev_row
        v = init_bits(m, d, full)
        cur_row[0] = v
        diag = prev_row[0]
        for j in range(1, n + 1):
            up = prev_row[j]
            v = (((v << 1) & full) | pad | pm_col[j]) \
                & (((diag << 1) & full) | pad) \
                & diag \
                & (((up << 1) & full) | pad)
            cur_row[j] = v
            diag = up
        table.append_level(cur_row[stored_start(params, d):n + 1])
        if cur_row[n] & top == 0:
            return DcOutcome(d, d + 1, table)
    raise NotFound(k)


def dc_baseline(pattern: str, text: str, k: int,
                masks: PatternMasks | None = None) -> DcOutcome:
    """Dense reference engine: all levels, all four edges stored per entry.

    Text-major loop (outer column, inner level); ``d_min`` is found
    afterwards by scanning the final column.  Produces the same ``d_min``
    as :func:`dc_improved` on every input.
    """
    m = len(pattern)
    n = len(text)
    if m < 1:
        raise ValueError("pattern must not be empty")
    if k < 1:
        raise ValueError(f"error threshold must be >= 1, got {k}")
    if masks is None:
        masks = build_masks(pattern)
    elif masks.width != m:
        raise ValueError(f"mask width {masks.width} does not match pattern length {m}")
    table = BaselineEdgeTable(n=n, m=m, k=k)
    full, pad = row_masks(m)
    top = 1 << (m - 1)
    pm_col = _column_masks(text, masks)

    m_app = table._m_edges.append
    s_app = table._s_edges.append
    d_app = table._d_edges.append
    i_app = table._i_edges.append

    col = [init_bits(m, d, full) for d in range(k + 1)]
    for j in range(1, n + 1):
        pm = pm_col[j]
        prev = col[0]
        sh = ((prev << 1) & full) | pad
        m_edge = sh | pm
        r = m_edge
        new_col = [r]
        m_app(m_edge)
        s_app(full)
        d_app(full)
        i_app(full)
        sh_diag = sh
        del_edge = prev
        up = r
        for d in range(1, k + 1):
            prev = col[d]
            sh = ((prev << 1) & full) | pad
            m_edge = sh | pm
            i_edge = ((up << 1) & full) | pad
            r = m_edge & sh_diag & del_edge & i_edge
            m_app(m_edge)
            s_app(sh_diag)
            d_app(del_edge)
            i_app(i_edge)
            new_col.append(r)
            sh_diag = sh
            del_edge = prev
            up = r
        col = new_col

    table.counters.entry_writes += 4 * (k + 1) * n
    table.counters.words_allocated += 4 * (k + 1) * n * table._word_count

    for d in range(k + 1):
        if col[d] & top == 0:
            return DcOutcome(d, k + 1, table)
    raise NotFound(k)
