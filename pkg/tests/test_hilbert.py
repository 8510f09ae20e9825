"""ベクトル演算・裾の極限推定・列ファイルの読み書き。"""

import io

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.errors import DimensionMismatchError, InvalidParameterError, NonFiniteError, SequenceFormatError
from src.hilbert.algebra import as_vector, distance_matrix, distance_trace, inner, norm
from src.hilbert.io import parse_sequence, read_sequence, sequence_lines, write_sequence
from src.hilbert.tail import tail_limit_estimate
from src.models import LimitKind, SequencePrefix, Tolerance

DIM = 5
finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
vectors = arrays(np.float64, (DIM,), elements=finite)


@seed(11)
@settings(max_examples=200, deadline=None)
@given(a=vectors, b=vectors)
def test_cauchy_schwarz(a, b):
    assert abs(inner(a, b)) <= norm(a) * norm(b) * (1.0 + 1e-12) + 1e-9


@seed(12)
@settings(max_examples=200, deadline=None)
@given(a=vectors, b=vectors)
def test_parallelogram_identity(a, b):
    lhs = norm(a + b) ** 2 + norm(a - b) ** 2
    rhs = 2.0 * norm(a) ** 2 + 2.0 * norm(b) ** 2
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-6)


def test_as_vector_rejects_bad_input():
    with pytest.raises(NonFiniteError):
        as_vector([1.0, np.nan])
    with pytest.raises(DimensionMismatchError):
        as_vector([1.0, 2.0], dim=3)
    with pytest.raises(DimensionMismatchError):
        as_vector([[1.0, 2.0]])
    with pytest.raises(DimensionMismatchError):
        inner([1.0, 2.0], [1.0, 2.0, 3.0])


def test_distance_matrix_rows_are_distance_traces():
    seq = SequencePrefix(np.array([[0.0, 0.0], [3.0, 4.0], [1.0, 0.0]]), 1)
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    dist = distance_matrix(seq, pts)
    assert dist.shape == (2, 3)
    np.testing.assert_allclose(dist[0], [0.0, 5.0, 1.0])
    np.testing.assert_allclose(dist[1], distance_trace(seq, [1.0, 0.0]))


class TestSequencePrefix:
    def test_one_dimensional_values_become_a_column(self):
        seq = SequencePrefix([1.0, 2.0, 3.0], 1)
        assert seq.dim == 1 and seq.length == 3
        np.testing.assert_array_equal(seq.tail, [[2.0], [3.0]])

    def test_points_are_read_only(self):
        seq = SequencePrefix(np.zeros((3, 2)))
        with pytest.raises(ValueError):
            seq.points[0, 0] = 1.0

    @pytest.mark.parametrize("tail", [-1, 3])
    def test_tail_start_must_lie_inside(self, tail):
        with pytest.raises(InvalidParameterError):
            SequencePrefix(np.zeros((3, 2)), tail)

    def test_rejects_empty_and_non_finite(self):
        with pytest.raises(DimensionMismatchError):
            SequencePrefix(np.zeros((0, 2)))
        with pytest.raises(NonFiniteError):
            SequencePrefix([[0.0], [np.inf]])

    def test_subsequence_keeps_the_tail_position(self):
        seq = SequencePrefix(np.arange(10, dtype=float), 5)
        odd = seq.subsequence(2, 1)
        np.testing.assert_array_equal(odd.points[:, 0], [1, 3, 5, 7, 9])
        assert odd.points[odd.tail_start, 0] == 5.0
        with pytest.raises(InvalidParameterError):
            seq.subsequence(2, 2)


class TestTailLimit:
    def test_converges_reports_the_midpoint(self):
        est = tail_limit_estimate([5.0, 1.0, 1.0 + 1e-12, 1.0], 1, Tolerance())
        assert est.kind is LimitKind.CONVERGES
        assert est.limit == pytest.approx(1.0 + 0.5e-12)
        assert est.tail_length == 3

    def test_alternating_values_oscillate(self):
        est = tail_limit_estimate([1.0, 0.0] * 8, 8, Tolerance())
        assert est.kind is LimitKind.OSCILLATES
        assert (est.liminf, est.limsup) == (0.0, 1.0)
        assert est.limit is None

    def test_growth_beyond_the_bound_diverges(self):
        est = tail_limit_estimate([1.0, 1e13, 1e14], 1, Tolerance())
        assert est.kind is LimitKind.DIVERGES

    def test_empty_tail_is_an_error(self):
        with pytest.raises(InvalidParameterError):
            tail_limit_estimate([1.0, 2.0], 2, Tolerance())


class TestSequenceFiles:
    def test_write_then_read_is_bit_exact(self, tmp_path):
        rng = np.random.default_rng(3)
        seq = SequencePrefix(rng.normal(size=(17, 4)) / 3.0, 9)
        path = tmp_path / "nested" / "seq.jsonl"
        write_sequence(seq, path)
        back = read_sequence(path)
        assert back.tail_start == 9
        np.testing.assert_array_equal(back.points, seq.points)

    def test_stream_round_trip(self):
        seq = SequencePrefix([[0.1, 0.2], [0.3, 0.4]], 1)
        buf = io.StringIO()
        write_sequence(seq, buf)
        buf.seek(0)
        np.testing.assert_array_equal(read_sequence(buf).points, seq.points)

    def test_header_comes_first(self):
        lines = sequence_lines(SequencePrefix([[1.0]], 0))
        assert lines[0] == '{"dim": 1, "tail_start": 0}'
        assert lines[1] == '{"n": 0, "x": [1.0]}'

    @pytest.mark.parametrize(
        "lines, error",
        [
            ([], SequenceFormatError),
            (['{"dim": 1, "tail_start": 0}'], SequenceFormatError),
            (['{"n": 0, "x": [1]}'], SequenceFormatError),
            (['{"dim": 1, "tail_start": 0}', "not json"], SequenceFormatError),
            (['{"dim": 1, "tail_start": 0}', '{"n": 1, "x": [1]}', '{"n": 1, "x": [2]}'], SequenceFormatError),
            (['{"dim": 2, "tail_start": 0}', '{"n": 0, "x": [1]}'], DimensionMismatchError),
            (['{"dim": 1, "tail_start": 0}', '{"n": 0, "x": [NaN]}'], NonFiniteError),
        ],
    )
    def test_malformed_files_are_rejected(self, lines, error):
        with pytest.raises(error):
            parse_sequence(lines)

    def test_missing_file(self, tmp_path):
        with pytest.raises(SequenceFormatError):
            read_sequence(tmp_path / "absent.jsonl")
