"""Synthetic workload generator: random references and noisy reads.

A simple i.i.d. per-base error model (no homopolymer or correlation
structure); each read carries its ground-truth location and edit script.
Everything is a pure function of its arguments including the seed, so
records can be generated in parallel from derived seeds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .distance import DNA_ALPHABET
from .io import format_cigar

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ErrorProfile:
    """Per-base substitution/insertion/deletion probabilities plus the seed."""

    sub_rate: float
    ins_rate: float
    del_rate: float
    seed: int

    def __post_init__(self):
        for name in ("sub_rate", "ins_rate", "del_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate < 1.0:
                raise ValueError(f"{name} must be in [0, 1), got {rate}")
        if self.sub_rate + self.ins_rate + self.del_rate >= 1.0:
            raise ValueError("sub + ins + del must be < 1")


@dataclass(frozen=True)
class SimRecord:
    """A simulated read with its ground truth.

    ``truth_cigar`` replays against (read, reference slice) with cost
    exactly ``truth_cost``.
    """

    read: str
    ref_id: str
    ref_start: int
    truth_cigar: str
    truth_cost: int


def derive_seed(seed: int, *salts: int) -> int:
    mixed = seed & _MASK64
    for salt in salts:
        mixed = (mixed * 6364136223846793005 + salt + 1442695040888963407) & _MASK64
    return mixed


def make_reference(length: int, seed: int) -> str:
    """Uniform i.i.d. ACGT sequence, deterministic in the seed."""
    if length < 1:
        raise ValueError(f"reference length must be >= 1, got {length}")
    rng = random.Random(derive_seed(seed, 0x5EED))
    return "".join(rng.choices(DNA_ALPHABET, k=length))


def simulate_read(reference: str, pos: int, length: int,
                  profile: ErrorProfile, ref_id: str = "ref") -> SimRecord:
    """Sample one read from reference[pos:pos+length] under the profile.

    Walks the slice emitting per-base edits: an optional inserted base
    before each reference base, then deletion / substitution / match of
    the base itself.
    """
    if pos < 0 or length < 1 or pos + length > len(reference):
        raise ValueError(
            f"slice [{pos}, {pos + length}) out of range for reference of "
            f"length {len(reference)}")
    rng = random.Random(derive_seed(profile.seed, pos, length))
    bases: list[str] = []
    ops: list[str] = []
    sub_edge = profile.del_rate + profile.sub_rate
    for base in reference[pos:pos + length]:
        if rng.random() < profile.ins_rate:
            bases.append(rng.choice(DNA_ALPHABET))
            ops.append("I")
        draw = rng.random()
        if draw < profile.del_rate:
            ops.append("D")
        elif draw < sub_edge:
            bases.append(rng.choice(DNA_ALPHABET.replace(base, "")))
            ops.append("X")
        else:
            bases.append(base)
            ops.append("=")
    return SimRecord(
        read="".join(bases),
        ref_id=ref_id,
        ref_start=pos,
        truth_cigar=format_cigar("".join(ops)),
        truth_cost=sum(op != "=" for op in ops),
    )
