"""Method source extraction and line-level diffing.

The diff is a Myers shortest-edit-script: the emitted hunks replay ``a``
into ``b`` with the minimal number of inserted plus deleted lines. Also
home of the reference method fingerprint used when producing fixture
call graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

from .errors import NoSourceLocation, RangeOutOfBounds
from .model import MethodRecord, MethodSig, SourceSpan


class DiffOp(str, Enum):
    EQUAL = "equal"
    INSERT = "insert"
    DELETE = "delete"


@dataclass(frozen=True)
class DiffHunk:
    """A maximal run of same-op lines; consecutive hunks never share an op."""

    op: DiffOp
    lines: tuple[str, ...]


@dataclass(frozen=True)
class MethodSourceView:
    """The exact source lines recorded for one method."""

    sig: MethodSig
    lines: tuple[str, ...]
    origin: SourceSpan


def extract_method_source(source_root: str | Path, rec: MethodRecord) -> MethodSourceView:
    """Read the inclusive line range recorded for ``rec``.

    Newlines are normalized to ``\\n``; returned lines carry no line
    terminators at all.
    """
    if rec.source is None:
        raise NoSourceLocation(f"no source location recorded for {rec.sig}")
    path = Path(source_root) / rec.source.path
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    if rec.source.end_line > len(lines):
        raise RangeOutOfBounds(
            f"{path}: end_line {rec.source.end_line} exceeds file length {len(lines)}"
        )
    return MethodSourceView(
        sig=rec.sig,
        lines=tuple(lines[rec.source.start_line - 1 : rec.source.end_line]),
        origin=rec.source,
    )


def line_diff(a: Sequence[str], b: Sequence[str]) -> list[DiffHunk]:
    """Myers shortest edit script between two line lists, as maximal hunks.

    Replaying the hunks (equal/delete consume from ``a``, equal/insert
    produce into ``b``) reconstructs ``b``; the total inserted plus
    deleted line count equals ``len(a) + len(b) - 2 * LCS(a, b)``.
    """
    ops = _myers_ops(list(a), list(b))
    hunks: list[DiffHunk] = []
    run_op: DiffOp | None = None
    run: list[str] = []
    for op, line in ops:
        if op is not run_op:
            if run:
                hunks.append(DiffHunk(op=run_op, lines=tuple(run)))
            run_op, run = op, []
        run.append(line)
    if run:
        hunks.append(DiffHunk(op=run_op, lines=tuple(run)))
    return hunks


def _myers_ops(a: list[str], b: list[str]) -> list[tuple[DiffOp, str]]:
    """Greedy O(ND) forward search, then trace backtracking."""
    n, m = len(a), len(b)
    if n == 0 and m == 0:
        return []
    v: dict[int, int] = {1: 0}
    trace: list[dict[int, int]] = []
    for d in range(n + m + 1):
        trace.append(dict(v))
        for k in range(-d, d + 1, 2):
            if k == -d or (k != d and v.get(k - 1, 0) < v.get(k + 1, 0)):
                x = v.get(k + 1, 0)
            else:
                x = v.get(k - 1, 0) + 1
            y = x - k
            while x < n and y < m and a[x] == b[y]:
                x += 1
                y += 1
            v[k] = x
            if x >= n and y >= m:
                return _backtrack(a, b, trace, d)
    raise AssertionError("edit path not found")


def _backtrack(
    a: list[str], b: list[str], trace: list[dict[int, int]], d_final: int
) -> list[tuple[DiffOp, str]]:
    ops: list[tuple[DiffOp, str]] = []
    x, y = len(a), len(b)
    for d in range(d_final, -1, -1):
        v = trace[d]
        k = x - y
        if k == -d or (k != d and v.get(k - 1, 0) < v.get(k + 1, 0)):
            prev_k = k + 1
        else:
            prev_k = k - 1
        prev_x = v.get(prev_k, 0)
        prev_y = prev_x - prev_k
        while x > prev_x and y > prev_y:
            ops.append((DiffOp.EQUAL, a[x - 1]))
            x -= 1
            y -= 1
        if d > 0:
            if x == prev_x:
                ops.append((DiffOp.INSERT, b[prev_y]))
            else:
                ops.append((DiffOp.DELETE, a[prev_x]))
        x, y = prev_x, prev_y
    ops.reverse()
    return ops


_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def method_fingerprint(lines: Sequence[str]) -> str:
    """64-bit FNV-1a digest of the lines, trailing whitespace stripped,
    joined by newlines. Stable across platforms."""
    data = "\n".join(line.rstrip() for line in lines).encode("utf-8")
    digest = _FNV_OFFSET
    for byte in data:
        digest ^= byte
        digest = (digest * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return f"{digest:016x}"
