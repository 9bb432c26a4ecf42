"""Ground-truth reference engines, kept free of any bit-parallel code.

These are deliberately naive so a bug cannot be shared with the engine
under test: the distances are the classical quadratic DP, and the
reachability check enumerates every traceback path on a boolean table.
Everything here is a pure function; use from any number of threads.
"""

from __future__ import annotations

import numpy as np

# Above this many DP cells the classical DP switches to a row-vectorized
# evaluation of the same recurrence (exact integer math, just faster).
_VECTOR_THRESHOLD = 250_000

_ENUM_LIMIT = 12


class InstanceTooLarge(ValueError):
    """Exhaustive enumeration is only tractable on tiny instances."""


def _distance_rows(pattern: str, text: str, free_text_prefix: bool) -> int:
    m, n = len(pattern), len(text)
    prev = [0] * (n + 1) if free_text_prefix else list(range(n + 1))
    for i in range(1, m + 1):
        symbol = pattern[i - 1]
        cur = [i] * (n + 1)
        for j in range(1, n + 1):
            a = prev[j - 1] + (symbol != text[j - 1])
            b = prev[j] + 1
            c = cur[j - 1] + 1
            cur[j] = a if a < b else b
            if c < cur[j]:
                cur[j] = c
        prev = cur
    return prev[n]


def _distance_rows_vectorized(pattern: str, text: str, free_text_prefix: bool) -> int:
    n = len(text)
    text_codes = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
    ramp = np.arange(n + 1, dtype=np.int64)
    prev = np.zeros(n + 1, dtype=np.int64) if free_text_prefix else ramp.copy()
    seq = np.empty(n + 1, dtype=np.int64)
    for i in range(1, len(pattern) + 1):
        code = ord(pattern[i - 1])
        neq = (text_codes != code).astype(np.int64)
        seq[0] = i
        # min(diagonal + mismatch, above + 1); the horizontal (+1 per step)
        # relaxation is a running minimum of seq[l] - l, shifted back by +j.
        np.minimum(prev[:-1] + neq, prev[1:] + 1, out=seq[1:])
        prev = np.minimum.accumulate(seq - ramp) + ramp
    return int(prev[n])


def semiglobal_distance(pattern: str, text: str) -> int:
    """Min over text start positions s of Levenshtein(pattern, text[s:]).

    Classical DP with a free text prefix: dp[0][j] = 0, dp[i][0] = i.
    """
    if not pattern:
        raise ValueError("pattern must not be empty")
    if len(pattern) * len(text) > _VECTOR_THRESHOLD and text:
        return _distance_rows_vectorized(pattern, text, free_text_prefix=True)
    return _distance_rows(pattern, text, free_text_prefix=True)


def global_distance(pattern: str, text: str) -> int:
    """Standard Levenshtein distance, both ends anchored."""
    if len(pattern) * len(text) > _VECTOR_THRESHOLD and pattern and text:
        return _distance_rows_vectorized(pattern, text, free_text_prefix=False)
    return _distance_rows(pattern, text, free_text_prefix=False)


def active_table(pattern: str, text: str, k: int) -> list[list[list[bool]]]:
    """Dense boolean DP table: table[d][j][i] is True iff state is active.

    Bit-free translation of the engine recurrence (True corresponds to a
    0 bit), used to recompute edges and enumerate traceback paths.
    """
    m, n = len(pattern), len(text)
    table: list[list[list[bool]]] = []
    for d in range(k + 1):
        cols = [[i < d for i in range(m)]]  # column 0: init zeros
        below = table[d - 1] if d else None
        for j in range(1, n + 1):
            symbol = text[j - 1]
            col = []
            for i in range(m):
                match = pattern[i] == symbol and (i == 0 or cols[j - 1][i - 1])
                if below is None:
                    col.append(match)
                    continue
                subst = i == 0 or below[j - 1][i - 1]
                insert = i == 0 or below[j][i - 1]
                delete = below[j - 1][i]
                col.append(match or subst or insert or delete)
            cols.append(col)
        table.append(cols)
    return table


def enumerate_reachable(pattern: str, text: str, k: int, budget: int) -> set[tuple[int, int]]:
    """Every (level, column) a traceback read can touch, by exhaustive DFS.

    Explores all active edges from every successful start state under the
    same budget rules as the real traceback, independent of edge priority.
    Column-0 reads are recomputed by the engine, not stored, and are not
    recorded.
    """
    m, n = len(pattern), len(text)
    if m > _ENUM_LIMIT or n > _ENUM_LIMIT:
        raise InstanceTooLarge(f"instance {m}x{n} exceeds the {_ENUM_LIMIT} limit")
    if not pattern:
        raise ValueError("pattern must not be empty")
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    table = active_table(pattern, text, k)

    reads: set[tuple[int, int]] = set()
    best: dict[tuple[int, int, int], int] = {}
    stack = [(d, n, m - 1, 0) for d in range(k + 1) if table[d][n][m - 1]]
    while stack:
        d, j, i, consumed = stack.pop()
        if i < 0 or consumed >= budget or j == 0:
            continue  # complete, budget-stopped, or covered by column-0 insertions
        key = (d, j, i)
        prior = best.get(key)
        if prior is not None and prior <= consumed:
            continue
        best[key] = consumed
        if j - 1 >= 1:
            reads.add((d, j - 1))
        if d >= 1:
            if j - 1 >= 1:
                reads.add((d - 1, j - 1))
            reads.add((d - 1, j))
        if pattern[i] == text[j - 1] and (i == 0 or table[d][j - 1][i - 1]):
            stack.append((d, j - 1, i - 1, consumed + 1))
        if d >= 1:
            if i == 0 or table[d - 1][j - 1][i - 1]:
                stack.append((d - 1, j - 1, i - 1, consumed + 1))
            if i == 0 or table[d - 1][j][i - 1]:
                stack.append((d - 1, j, i - 1, consumed + 1))
            if table[d - 1][j - 1][i]:
                stack.append((d - 1, j - 1, i, consumed))
    return reads
