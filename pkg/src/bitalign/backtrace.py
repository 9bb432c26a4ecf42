"""Traceback: reconstruct an optimal edit script from a filled table.

The compressed engine never stored the four edge vectors, so each visited
state recomputes its edge bits from three status-row reads: the match edge
from (d, j-1), substitution and deletion from (d-1, j-1), insertion from
(d-1, j).  The baseline engine reads its stored edge vectors instead.
Both walk the identical state graph, so identical priorities yield
identical scripts.

Ops: '=' match (pattern+text consumed), 'X' substitution (both), 'I'
insertion (pattern only), 'D' deletion (text only).  '=' costs 0, the
rest cost 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .distance import DNA_ALPHABET, PatternMasks
from .dptable import BaselineEdgeTable, CompressedTable

DEFAULT_PRIORITY = "MSID"

OP_COST = {"=": 0, "X": 1, "I": 1, "D": 1}

PATTERN_OPS = frozenset("=XI")
TEXT_OPS = frozenset("=XD")


class StuckTraceback(RuntimeError):
    """No edge bit is active at the current state: the table is corrupt.

    Impossible on tables produced by the fill engines, since a 0 in the
    status row implies a 0 in at least one edge.
    """


class InvalidScript(ValueError):
    """Edit script does not replay against the given sequences."""


@dataclass(frozen=True)
class TracebackResult:
    """Edit script with consumption totals.

    ``ops`` is ordered from the DC-frame start (lowest pattern position
    first).  ``hit_budget`` marks scripts truncated at the commit budget.
    """

    ops: str
    pattern_consumed: int
    text_consumed: int
    cost: int
    hit_budget: bool


@dataclass(frozen=True)
class ReplayResult:
    cost: int
    pattern_consumed: int
    text_consumed: int


def validate_priority(priority: str) -> str:
    if sorted(priority) != sorted(DEFAULT_PRIORITY):
        raise ValueError(f"priority must be a permutation of 'MSID', got {priority!r}")
    return priority


def traceback(table: CompressedTable | BaselineEdgeTable, masks: PatternMasks,
              pattern: str, text: str, d_min: int, budget: int,
              priority: str = DEFAULT_PRIORITY) -> TracebackResult:
    """Walk an optimal path from state (j=n, d=d_min, i=m-1).

    At each state the four edge bits are evaluated and the highest-priority
    active edge is taken (level 0 only has the match edge).  The walk ends
    when the pattern is exhausted, when column 0 covers the remaining
    prefix with insertions, or when ``budget`` pattern characters have been
    consumed; ops beyond the budget boundary are discarded.
    """
    validate_priority(priority)
    m = len(pattern)
    n = len(text)
    if isinstance(table, CompressedTable):
        read = table.read_raw
        pm_raw = masks.raw

        def edge_bits(d: int, j: int, i: int) -> tuple[bool, bool, bool, bool]:
            r_m = read(d, j - 1)
            m_ok = ((pm_raw(text[j - 1]) >> i) & 1) == 0 and (
                i == 0 or ((r_m >> (i - 1)) & 1) == 0)
            if d == 0:
                return m_ok, False, False, False
            r_diag = read(d - 1, j - 1)
            r_up = read(d - 1, j)
            return (m_ok,
                    i == 0 or ((r_diag >> (i - 1)) & 1) == 0,
                    ((r_diag >> i) & 1) == 0,
                    i == 0 or ((r_up >> (i - 1)) & 1) == 0)
    else:
        read_edges = table.read_edges_raw

        def edge_bits(d: int, j: int, i: int) -> tuple[bool, bool, bool, bool]:
            m_e, s_e, d_e, i_e = read_edges(d, j)
            m_ok = ((m_e >> i) & 1) == 0
            if d == 0:
                return m_ok, False, False, False
            return (m_ok,
                    ((s_e >> i) & 1) == 0,
                    ((d_e >> i) & 1) == 0,
                    ((i_e >> i) & 1) == 0)

    emitted: list[str] = []  # walk order: highest pattern position first
    j, d, i, consumed = n, d_min, m - 1, 0
    hit_budget = False
    while True:
        if i < 0:
            break  # pattern exhausted; remaining text prefix is the free region
        if consumed >= budget:
            hit_budget = True
            break
        if j == 0:
            # Initialization zeros cover i+1 leading insertions at level d.
            if i + 1 > d:
                raise StuckTraceback(
                    f"column 0 reached at i={i} with only d={d} levels available")
            take = min(i + 1, budget - consumed)
            emitted.extend("I" * take)
            consumed += take
            i -= take
            hit_budget = i >= 0
            break
        m_ok, s_ok, d_ok, i_ok = edge_bits(d, j, i)
        for choice in priority:
            if choice == "M" and m_ok:
                emitted.append("=")
                j -= 1
                i -= 1
                consumed += 1
                break
            if choice == "S" and s_ok:
                emitted.append("X")
                j -= 1
                d -= 1
                i -= 1
                consumed += 1
                break
            if choice == "I" and i_ok:
                emitted.append("I")
                d -= 1
                i -= 1
                consumed += 1
                break
            if choice == "D" and d_ok:
                emitted.append("D")
                j -= 1
                d -= 1
                break
        else:
            raise StuckTraceback(f"no active edge at state (d={d}, j={j}, i={i})")

    ops = "".join(reversed(emitted))
    text_consumed = sum(1 for op in ops if op in TEXT_OPS)
    cost = sum(OP_COST[op] for op in ops)
    return TracebackResult(ops=ops, pattern_consumed=consumed,
                           text_consumed=text_consumed, cost=cost,
                           hit_budget=hit_budget)


def replay(pattern: str, text: str, ops: str,
           alphabet: str = DNA_ALPHABET) -> ReplayResult:
    """Walk an edit script against both sequences from their starts.

    '=' requires equal symbols; 'X' requires unequal ones (symbols outside
    the alphabet never match, so 'X' is also accepted there).  Raises
    :class:`InvalidScript` on any violation or overrun, which makes this a
    real validator for engine output.
    """
    p = t = cost = 0
    for op in ops:
        if op == "=":
            if p >= len(pattern) or t >= len(text):
                raise InvalidScript(f"'=' overruns at op {p + t}")
            if pattern[p] != text[t]:
                raise InvalidScript(
                    f"'=' on unequal symbols {pattern[p]!r} vs {text[t]!r} at (p={p}, t={t})")
            p += 1
            t += 1
        elif op == "X":
            if p >= len(pattern) or t >= len(text):
                raise InvalidScript(f"'X' overruns at op {p + t}")
            if pattern[p] == text[t] and pattern[p] in alphabet:
                raise InvalidScript(
                    f"'X' on equal symbols {pattern[p]!r} at (p={p}, t={t})")
            p += 1
            t += 1
            cost += 1
        elif op == "I":
            if p >= len(pattern):
                raise InvalidScript(f"'I' overruns the pattern at p={p}")
            p += 1
            cost += 1
        elif op == "D":
            if t >= len(text):
                raise InvalidScript(f"'D' overruns the text at t={t}")
            t += 1
            cost += 1
        else:
            raise InvalidScript(f"unknown op {op!r}")
    return ReplayResult(cost=cost, pattern_consumed=p, text_consumed=t)
