import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bitalign.bitvec import (
    BitRow,
    make_init,
    make_ones,
    row_masks,
    word_count,
    word_span,
)


def row(bits: str) -> BitRow:
    """Build a row from a most-significant-first bit string."""
    return BitRow(int(bits, 2), len(bits))


class TestConstructors:
    def test_make_ones_m4(self):
        assert make_ones(4).bitstring == "1111"

    def test_make_ones_m1(self):
        assert make_ones(1).bitstring == "1"

    def test_make_ones_multiword(self):
        r = make_ones(65)
        assert r.width == 65
        assert all(r.test_bit(i) == 1 for i in range(65))
        # padding bits up to the word span are 1
        assert r.bits == (1 << word_span(65)) - 1

    def test_make_ones_rejects_zero_width(self):
        with pytest.raises(ValueError):
            make_ones(0)

    def test_make_init_no_free_states(self):
        assert make_init(4, 0).bitstring == "1111"

    def test_make_init_two_insertions(self):
        assert make_init(4, 2).bitstring == "1100"

    def test_make_init_clamped_at_width(self):
        assert make_init(4, 9).bitstring == "0000"

    def test_make_init_negative_level(self):
        with pytest.raises(ValueError):
            make_init(4, -1)


class TestShift:
    def test_basic(self):
        assert row("1010").shift_left_active().bitstring == "0100"

    def test_shift_in_active(self):
        assert row("1111").shift_left_active().bitstring == "1110"

    def test_cross_word(self):
        r = BitRow(1 << 63, 70)
        shifted = r.shift_left_active()
        assert shifted.test_bit(64) == 1
        assert shifted.test_bit(63) == 0

    def test_bit_zero_always_active(self):
        rng = random.Random(7)
        for _ in range(50):
            width = rng.randrange(1, 130)
            r = BitRow(rng.getrandbits(width), width)
            assert r.shift_left_active().test_bit(0) == 0

    def test_top_bit_discarded(self):
        r = row("1000")
        assert r.shift_left_active().bitstring == "0000"
        # padding must still be all ones
        full, pad = row_masks(4)
        assert r.shift_left_active().bits & pad == pad


class TestCombine:
    def test_and(self):
        assert (row("1100") & row("1010")).bitstring == "1000"

    def test_or(self):
        assert (row("0001") | row("0010")).bitstring == "0011"

    def test_test_bit(self):
        assert row("1000").test_bit(3) == 1
        assert row("1000").test_bit(0) == 0

    def test_width_mismatch(self):
        with pytest.raises(ValueError):
            row("1100") & BitRow(0, 5)
        with pytest.raises(ValueError):
            row("1100") | BitRow(0, 5)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            row("1100").test_bit(4)
        with pytest.raises(IndexError):
            row("1100").test_bit(-1)

    def test_and_or_laws_exhaustive_m4(self):
        rows = [BitRow(v, 4) for v in range(16)]
        for a in rows:
            for b in rows:
                assert a & b == b & a
                assert a | b == b | a
                for c in rows:
                    assert (a & b) & c == a & (b & c)
                    assert (a | b) | c == a | (b | c)

    def test_idempotence_exhaustive_m8(self):
        for v in range(256):
            r = BitRow(v, 8)
            assert r & r == r
            assert r | r == r


class TestWordLayout:
    def test_word_count(self):
        assert word_count(1) == 1
        assert word_count(64) == 1
        assert word_count(65) == 2
        assert word_count(128) == 2
        assert word_count(129) == 3

    def test_value_normalization_masks_high_bits(self):
        r = BitRow((1 << 100), 4)
        assert r.bitstring == "0000"
        assert r.bits == row_masks(4)[1]  # only padding set


class _ListModel:
    """Naive bit-list model used for differential fuzzing of BitRow."""

    def __init__(self, bits: list[int]):
        self.bits = bits

    @classmethod
    def ones(cls, width):
        return cls([1] * width)

    @classmethod
    def init(cls, width, level):
        return cls([0 if i < min(level, width) else 1 for i in range(width)])

    def shift(self):
        return _ListModel([0] + self.bits[:-1])

    def combine(self, other, op):
        return _ListModel([op(a, b) for a, b in zip(self.bits, other.bits)])


_OP = st.sampled_from(["shift", "and_ones", "or_init", "and_init", "or_random", "and_random"])


@settings(max_examples=200, deadline=None)
@given(
    width=st.integers(min_value=1, max_value=150),
    seed=st.integers(min_value=0, max_value=2**32),
    ops=st.lists(_OP, min_size=1, max_size=12),
)
def test_differential_against_list_model(width, seed, ops):
    rng = random.Random(seed)
    value = rng.getrandbits(width)
    actual = BitRow(value, width)
    model = _ListModel([(value >> i) & 1 for i in range(width)])
    full, pad = row_masks(width)
    for op in ops:
        if op == "shift":
            actual, model = actual.shift_left_active(), model.shift()
        else:
            level = rng.randrange(0, width + 2)
            raw = rng.getrandbits(width)
            if op.endswith("ones"):
                other_a, other_m = make_ones(width), _ListModel.ones(width)
            elif op.endswith("init"):
                other_a, other_m = make_init(width, level), _ListModel.init(width, level)
            else:
                other_a, other_m = BitRow(raw, width), _ListModel(
                    [(raw >> i) & 1 for i in range(width)])
            if op.startswith("and"):
                actual, model = actual & other_a, model.combine(other_m, lambda a, b: a & b)
            else:
                actual, model = actual | other_a, model.combine(other_m, lambda a, b: a | b)
        # padding invariant holds after every operation
        assert actual.bits & pad == pad
        assert actual.bits >> word_span(width) == 0
        for i in range(width):
            assert actual.test_bit(i) == model.bits[i], f"bit {i} diverged after {op}"
