"""Long-read driver: chunked alignment with overlap and committed prefixes.

Overall semantics are pattern-global and text prefix-anchored with a free
tail ("glocal"): the whole pattern is aligned starting at text position 0
and the consumed text length is reported.

Each round takes a window-sized chunk of pattern and text at the cursors
and reverses both before the distance calculation, which turns the DC
engine's free text *prefix* into the forward chunk's far end - so every
window is anchored at the cursors and the unconsumed text tail is simply
re-examined by the next window.  The traceback budget commits
window - overlap pattern characters per non-final window; the trailing
overlap is re-aligned with more context next round.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .backtrace import DEFAULT_PRIORITY, OP_COST, traceback, validate_priority
from .distance import NotFound, build_masks, dc_baseline, dc_improved
from .dptable import AccessCounters

DEFAULT_WINDOW = 64
DEFAULT_OVERLAP = 24

MODES = ("improved", "baseline")


class EmptyPattern(ValueError):
    """Alignment of an empty pattern was requested."""


class WindowFailed(RuntimeError):
    """A window's distance exceeded the configured threshold."""

    def __init__(self, window_index: int, k: int):
        super().__init__(f"window {window_index} found no alignment within k={k}")
        self.window_index = window_index
        self.k = k


@dataclass(frozen=True)
class WindowConfig:
    """Driver parameters: window size, overlap, threshold, engine mode.

    ``k`` defaults to the window size, which guarantees every window
    succeeds; smaller values are faster but can surface WindowFailed.
    """

    window: int = DEFAULT_WINDOW
    overlap: int = DEFAULT_OVERLAP
    k: int | None = None
    priority: str = DEFAULT_PRIORITY
    mode: str = "improved"

    def __post_init__(self):
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")
        if not 0 <= self.overlap < self.window:
            raise ValueError(
                f"overlap must be in [0, window), got {self.overlap} for window {self.window}")
        if self.k is None:
            object.__setattr__(self, "k", self.window)
        if not 1 <= self.k <= self.window:
            raise ValueError(f"k must be in [1, {self.window}], got {self.k}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        validate_priority(self.priority)


@dataclass(frozen=True)
class AlignmentResult:
    """Full-pattern alignment: edit script, cost, and per-window stats."""

    cigar: str
    cost: int
    text_consumed: int
    window_distances: tuple[int, ...]
    counters: AccessCounters
    rows_computed: int


def align(pattern: str, text: str, cfg: WindowConfig = WindowConfig()) -> AlignmentResult:
    """Align the whole pattern against a prefix of the text."""
    if not pattern:
        raise EmptyPattern("pattern must not be empty")
    p = t = 0
    parts: list[str] = []
    distances: list[int] = []
    counters = AccessCounters()
    rows_total = 0
    index = 0
    while p < len(pattern):
        remaining = len(pattern) - p
        final = remaining <= cfg.window
        m_chunk = remaining if final else cfg.window
        chunk_p = pattern[p:p + m_chunk][::-1]
        chunk_t = text[t:t + cfg.window][::-1]
        budget = m_chunk if final else cfg.window - cfg.overlap
        masks = build_masks(chunk_p)
        try:
            if cfg.mode == "improved":
                outcome = dc_improved(chunk_p, chunk_t, cfg.k, budget, masks=masks)
            else:
                outcome = dc_baseline(chunk_p, chunk_t, cfg.k, masks=masks)
        except NotFound as exc:
            raise WindowFailed(index, cfg.k) from exc
        result = traceback(outcome.table, masks, chunk_p, chunk_t,
                           outcome.d_min, budget, cfg.priority)
        # Reversed-chunk ops come back ordered by reversed-pattern position;
        # flipping them yields the forward-chunk script anchored at the cursors.
        parts.append(result.ops[::-1])
        p += result.pattern_consumed
        t += result.text_consumed
        distances.append(outcome.d_min)
        rows_total += outcome.rows_computed
        counters.absorb(outcome.table.counters)
        index += 1
    cigar = "".join(parts)
    return AlignmentResult(
        cigar=cigar,
        cost=sum(OP_COST[op] for op in cigar),
        text_consumed=t,
        window_distances=tuple(distances),
        counters=counters,
        rows_computed=rows_total,
    )


@dataclass(frozen=True)
class BatchOutcome:
    """One slot of a batch: either a result or the failure reason."""

    result: AlignmentResult | None = None
    error: str | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.error is None


def _align_slot(job: tuple[str, str, WindowConfig]) -> BatchOutcome:
    pattern, text, cfg = job
    try:
        return BatchOutcome(result=align(pattern, text, cfg))
    except (WindowFailed, EmptyPattern) as exc:
        return BatchOutcome(error=f"{type(exc).__name__}: {exc}")


def align_batch(pairs: list[tuple[str, str]], cfg: WindowConfig,
                parallelism: int = 1) -> list[BatchOutcome]:
    """Align many pairs; results in input order, bit-identical at any
    parallelism degree.  Per-pair failures land in their slot and never
    abort the batch.
    """
    jobs = [(pattern, text, cfg) for pattern, text in pairs]
    if parallelism <= 1 or len(jobs) <= 1:
        return [_align_slot(job) for job in jobs]
    chunk = max(1, len(jobs) // (parallelism * 4))
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(_align_slot, jobs, chunksize=chunk))
