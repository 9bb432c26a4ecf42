"""Fixed-width status bitvectors for the level-by-level alignment recurrence.

Convention: a 0 bit marks an active (reachable) DP state, so a bitwise AND
unions active states and 1 is the safe identity.  Bits at positions at or
above the logical width are padding and are forced to 1 after every
operation; that makes whole-word AND/OR/shift safe without width guards.

Rows are backed by a single Python integer covering ``word_count(width)``
64-bit machine words.  Values are immutable once constructed and can be
shared freely between threads and processes.
"""

from __future__ import annotations

from functools import lru_cache

WORD_BITS = 64


def word_count(width: int) -> int:
    """Number of 64-bit machine words spanned by ``width`` bits."""
    return (width + WORD_BITS - 1) // WORD_BITS


def word_span(width: int) -> int:
    """Total bit capacity of the words backing a row of ``width`` bits."""
    return word_count(width) * WORD_BITS


@lru_cache(maxsize=None)
def row_masks(width: int) -> tuple[int, int]:
    """Return ``(full, pad)`` for a row width.

    ``full`` selects every bit of the word span; ``pad`` selects only the
    padding bits in ``[width, span)``.  Hot loops use these raw masks
    directly instead of going through :class:`BitRow`.
    """
    if width < 1:
        raise ValueError(f"row width must be >= 1, got {width}")
    full = (1 << word_span(width)) - 1
    return full, full ^ ((1 << width) - 1)


class BitRow:
    """Immutable bitvector with a fixed logical width.

    Bit 0 is the lowest pattern position.  Operations combining two rows
    require equal widths.
    """

    __slots__ = ("bits", "width")

    def __init__(self, bits: int, width: int):
        full, pad = row_masks(width)
        self.bits = (bits & full) | pad
        self.width = width

    def __and__(self, other: "BitRow") -> "BitRow":
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")
        return BitRow(self.bits & other.bits, self.width)

    def __or__(self, other: "BitRow") -> "BitRow":
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")
        return BitRow(self.bits | other.bits, self.width)

    def shift_left_active(self) -> "BitRow":
        """Shift every bit up one position, shifting in an active 0 at bit 0.

        The old top bit (width-1) is discarded; padding stays 1.
        """
        full, pad = row_masks(self.width)
        return BitRow(((self.bits << 1) & full) | pad, self.width)

    def test_bit(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise IndexError(f"bit index {i} out of range for width {self.width}")
        return (self.bits >> i) & 1

    @property
    def word_count(self) -> int:
        return word_count(self.width)

    @property
    def bitstring(self) -> str:
        """Bits as a string, most significant (highest index) first."""
        return format(self.bits & ((1 << self.width) - 1), f"0{self.width}b")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitRow):
            return NotImplemented
        return self.width == other.width and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.bits, self.width))

    def __repr__(self) -> str:
        return f"BitRow({self.bitstring!r})"


def make_ones(width: int) -> BitRow:
    """All-ones row of ``width`` bits: no active state anywhere."""
    full, _ = row_masks(width)
    return BitRow(full, width)


def make_init(width: int, level: int) -> BitRow:
    """Initialization row for error level ``level`` at text column 0.

    Bits 0..min(level, width)-1 are 0: a pattern prefix of length <= level
    is reachable with that many insertions before any text is consumed.
    """
    if level < 0:
        raise ValueError(f"error level must be >= 0, got {level}")
    full, _ = row_masks(width)
    return BitRow(full ^ ((1 << min(level, width)) - 1), width)


def init_bits(width: int, level: int, full: int) -> int:
    """Raw-integer variant of :func:`make_init` for hot paths."""
    return full ^ ((1 << min(level, width)) - 1)
