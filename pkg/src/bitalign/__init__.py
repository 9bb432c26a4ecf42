"""Bit-parallel edit-distance alignment with a compressed DP table.

The engine stores one status row per (error level, text column) instead of
four edge vectors, skips error levels above the first one that contains a
full-pattern solution, and omits entries the traceback can never reach.
A dense four-edge engine is kept alongside as the measurement baseline,
and a windowed driver scales both to long reads.
"""

from .bitvec import BitRow, make_init, make_ones, word_count
from .dptable import (
    AccessCounters,
    BaselineEdgeTable,
    CompressedTable,
    PrunedAccess,
    ReductionReport,
    StorageParams,
    TableContractError,
    footprint_report,
    reduction_report,
    stored,
)
from .distance import (
    DNA_ALPHABET,
    DcOutcome,
    NotFound,
    PatternMasks,
    build_masks,
    dc_baseline,
    dc_improved,
)
from .backtrace import (
    InvalidScript,
    ReplayResult,
    StuckTraceback,
    TracebackResult,
    replay,
    traceback,
)
from .window import (
    AlignmentResult,
    BatchOutcome,
    EmptyPattern,
    WindowConfig,
    WindowFailed,
    align,
    align_batch,
)
from . import oracle, sim
from . import io

__version__ = "0.1.0"

__all__ = [
    "AccessCounters",
    "AlignmentResult",
    "BaselineEdgeTable",
    "BatchOutcome",
    "BitRow",
    "CompressedTable",
    "DNA_ALPHABET",
    "DcOutcome",
    "EmptyPattern",
    "InvalidScript",
    "NotFound",
    "PatternMasks",
    "PrunedAccess",
    "ReductionReport",
    "ReplayResult",
    "StorageParams",
    "StuckTraceback",
    "TableContractError",
    "TracebackResult",
    "WindowConfig",
    "WindowFailed",
    "align",
    "align_batch",
    "build_masks",
    "dc_baseline",
    "dc_improved",
    "footprint_report",
    "io",
    "make_init",
    "make_ones",
    "oracle",
    "reduction_report",
    "replay",
    "sim",
    "stored",
    "traceback",
    "word_count",
]
