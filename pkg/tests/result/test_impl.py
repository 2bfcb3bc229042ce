import typing as t
from unittest.mock import Mock

import pytest

from pytlsdecrypt.result import MissingOutError, Result


class TestResult:
    def test_get_should_return_wrapped_out(self) -> None:
        # given
        mock_out = Mock()
        result = Result.ok(mock_out)
        # when
        out = result.get()
        # then
        assert out == mock_out
        assert result.is_ok() is True
        assert result.is_error() is False
        assert result.is_skipped() is False
        assert result.reason is None
        assert result.exception is None

    def test_get_should_raise_if_result_is_skipped(self) -> None:
        # given
        result: Result[t.Any] = Result.skip("comment")
        # when
        with pytest.raises(MissingOutError):
            result.get()
        # then
        assert result.is_ok() is False
        assert result.is_error() is False
        assert result.is_skipped() is True
        assert result.reason == "comment"

    def test_get_should_raise_if_out_is_error(self) -> None:
        # given
        error = ValueError("bad hex")
        result: Result[t.Any] = Result.error(error)
        # when
        with pytest.raises(ValueError):
            result.get()
        # then
        assert result.is_ok() is False
        assert result.is_error() is True
        assert result.is_skipped() is False
        assert result.reason == "bad hex"
        assert result.exception is error

    def test_get_or_should_fall_back_unless_ok(self) -> None:
        # given
        ok: Result[int] = Result.ok(1)
        skipped: Result[int] = Result.skip("blank")
        failed: Result[int] = Result.error(ValueError())
        # when / then
        assert ok.get_or(0) == 1
        assert skipped.get_or(0) == 0
        assert failed.get_or(0) == 0

    def test_repr_should_return_out_repr(self) -> None:
        # given
        mock_out = Mock()
        result: Result[Mock] = Result(mock_out)
        # when
        _repr = result.__repr__()
        # then
        assert _repr == repr(mock_out)
