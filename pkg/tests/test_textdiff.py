"""Source extraction, Myers line diff, and the reference fingerprint."""

import random

import pytest
from hypothesis import given, strategies as st

from evotrack.errors import NoSourceLocation, RangeOutOfBounds
from evotrack.model import MethodRecord, SourceSpan
from evotrack.textdiff import (
    DiffHunk,
    DiffOp,
    extract_method_source,
    line_diff,
    method_fingerprint,
)

SIG = "a.B#m():void"


def lcs_length(a, b):
    """Independent dynamic-programming LCS oracle."""
    m, n = len(a), len(b)
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m):
        for j in range(n):
            if a[i] == b[j]:
                table[i + 1][j + 1] = table[i][j] + 1
            else:
                table[i + 1][j + 1] = max(table[i][j + 1], table[i + 1][j])
    return table[m][n]


def apply_hunks(hunks, a):
    """Replay a hunk script: equal/delete consume from a, equal/insert emit b."""
    out = []
    pos = 0
    for hunk in hunks:
        if hunk.op is DiffOp.EQUAL:
            assert list(hunk.lines) == a[pos : pos + len(hunk.lines)]
            out.extend(hunk.lines)
            pos += len(hunk.lines)
        elif hunk.op is DiffOp.DELETE:
            assert list(hunk.lines) == a[pos : pos + len(hunk.lines)]
            pos += len(hunk.lines)
        else:
            out.extend(hunk.lines)
    assert pos == len(a)
    return out


def edit_size(hunks):
    return sum(len(h.lines) for h in hunks if h.op is not DiffOp.EQUAL)


class TestExtract:
    def _record(self, start, end):
        return MethodRecord(
            sig=SIG, fingerprint="0" * 16,
            source=SourceSpan(path="A.java", start_line=start, end_line=end),
        )

    def test_inclusive_range(self, tmp_path):
        (tmp_path / "A.java").write_text(
            "\n".join(f"line {i}" for i in range(1, 21)) + "\n"
        )
        view = extract_method_source(tmp_path, self._record(10, 12))
        assert view.lines == ("line 10", "line 11", "line 12")
        assert len(view.lines) == view.origin.end_line - view.origin.start_line + 1

    def test_range_out_of_bounds(self, tmp_path):
        (tmp_path / "A.java").write_text("\n".join(f"l{i}" for i in range(20)))
        with pytest.raises(RangeOutOfBounds):
            extract_method_source(tmp_path, self._record(10, 50))

    def test_crlf_normalized(self, tmp_path):
        (tmp_path / "A.java").write_bytes(b"one\r\ntwo\r\nthree\r\n")
        view = extract_method_source(tmp_path, self._record(1, 3))
        assert view.lines == ("one", "two", "three")
        assert not any("\r" in line for line in view.lines)

    def test_no_source_location(self, tmp_path):
        rec = MethodRecord(sig=SIG, fingerprint="0" * 16)
        with pytest.raises(NoSourceLocation):
            extract_method_source(tmp_path, rec)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            extract_method_source(tmp_path, self._record(1, 1))


class TestLineDiff:
    def test_identity(self):
        x = ["a", "b"]
        assert line_diff(x, x) == [DiffHunk(op=DiffOp.EQUAL, lines=("a", "b"))]

    def test_empty_identity(self):
        assert line_diff([], []) == []

    def test_single_deletion(self):
        hunks = line_diff(["a", "b", "c"], ["a", "c"])
        assert hunks == [
            DiffHunk(op=DiffOp.EQUAL, lines=("a",)),
            DiffHunk(op=DiffOp.DELETE, lines=("b",)),
            DiffHunk(op=DiffOp.EQUAL, lines=("c",)),
        ]
        assert edit_size(hunks) == 1  # LCS oracle: 3 + 2 - 2*2

    def test_insert_into_empty(self):
        assert line_diff([], ["x"]) == [DiffHunk(op=DiffOp.INSERT, lines=("x",))]

    def test_delete_all(self):
        assert line_diff(["x", "y"], []) == [DiffHunk(op=DiffOp.DELETE, lines=("x", "y"))]

    def test_hunks_are_maximal_runs(self):
        rng = random.Random(5)
        vocab = ["a", "b", "c", "d"]
        for _ in range(100):
            a = [rng.choice(vocab) for _ in range(rng.randint(0, 20))]
            b = [rng.choice(vocab) for _ in range(rng.randint(0, 20))]
            hunks = line_diff(a, b)
            for hunk in hunks:
                assert hunk.lines
            for prev, nxt in zip(hunks, hunks[1:]):
                assert prev.op is not nxt.op

    @given(
        a=st.lists(st.sampled_from(["x", "y", "z", "w"]), max_size=40),
        b=st.lists(st.sampled_from(["x", "y", "z", "w"]), max_size=40),
    )
    def test_patch_correctness(self, a, b):
        assert apply_hunks(line_diff(a, b), a) == b

    def test_minimality_against_dp_oracle(self):
        rng = random.Random(17)
        vocab = [f"line{i}" for i in range(6)]
        for _ in range(150):
            a = [rng.choice(vocab) for _ in range(rng.randint(0, 30))]
            b = [rng.choice(vocab) for _ in range(rng.randint(0, 30))]
            hunks = line_diff(a, b)
            assert apply_hunks(hunks, a) == b
            assert edit_size(hunks) == len(a) + len(b) - 2 * lcs_length(a, b)


class TestFingerprint:
    def test_empty_input_is_offset_basis(self):
        assert method_fingerprint([]) == "cbf29ce484222325"

    def test_trailing_whitespace_ignored(self):
        assert method_fingerprint(["a"]) == method_fingerprint(["a  "])
        assert method_fingerprint(["a\t"]) == method_fingerprint(["a"])

    def test_distinct_content_distinct_digest(self):
        # direct computation: both digests differ and are well-formed
        fa, fb = method_fingerprint(["a"]), method_fingerprint(["b"])
        assert fa != fb
        assert len(fa) == len(fb) == 16
        assert set(fa) <= set("0123456789abcdef")

    def test_leading_whitespace_significant(self):
        assert method_fingerprint(["  a"]) != method_fingerprint(["a"])

    @given(st.lists(st.text(alphabet="ab \t", max_size=5), max_size=6))
    def test_normalized_equality_iff_equal_digest(self, lines):
        normalized = [line.rstrip() for line in lines]
        assert method_fingerprint(lines) == method_fingerprint(normalized)
