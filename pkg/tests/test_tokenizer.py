import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from textropy.dialects import BUILTIN_DIALECTS, builtin_table, load_dialect_table
from textropy.errors import DecodeError
from textropy.tokenizer import (
    UnterminatedBlockCommentWarning,
    UnterminatedStringWarning,
    read_text_file,
    strip_comments,
    tokenize_artificial,
    tokenize_natural,
)

from golden_tokens import ARTIFICIAL_CASES, NATURAL_CASES, STRIP_CASES


@pytest.mark.parametrize("text,expected", NATURAL_CASES, ids=lambda v: repr(v)[:40])
def test_natural_golden(text, expected):
    assert list(tokenize_natural(text).tokens) == expected


@pytest.mark.parametrize("source,dialect,expected", ARTIFICIAL_CASES, ids=lambda v: repr(v)[:40])
def test_artificial_golden(source, dialect, expected):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # the unterminated cases warn by design
        stream = tokenize_artificial(source, BUILTIN_DIALECTS[dialect])
    assert list(stream.tokens) == expected


def test_unterminated_cases_warn():
    with pytest.warns(UnterminatedBlockCommentWarning):
        tokenize_artificial("a /* oops", BUILTIN_DIALECTS["c"])
    with pytest.warns(UnterminatedStringWarning):
        tokenize_artificial('x = "oops', BUILTIN_DIALECTS["c"])


@pytest.mark.parametrize("source,dialect,expected", STRIP_CASES)
def test_strip_comments_golden(source, dialect, expected):
    assert strip_comments(source, BUILTIN_DIALECTS[dialect]) == expected


def test_strip_unterminated_block_warns():
    with pytest.warns(UnterminatedBlockCommentWarning):
        out = strip_comments("x /* never closed", BUILTIN_DIALECTS["c"])
    assert out == "x "


def test_token_stream_basics():
    stream = tokenize_natural("a b", source_name="t")
    assert len(stream) == 2
    assert list(stream) == ["a", "b"]
    assert stream.mode == "natural"
    assert stream.source_name == "t"


def test_bad_lang_rejected():
    with pytest.raises(ValueError):
        tokenize_natural("x", lang="german")


def test_decode_error_reports_offset(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_bytes(b"ok so far \xff\xfe nope")
    with pytest.raises(DecodeError) as err:
        read_text_file(bad)
    assert err.value.offset == 10
    assert "bad.txt" in str(err.value)


def test_dialect_table_json_roundtrip(tmp_path):
    path = tmp_path / "dialects.json"
    path.write_text(
        '{"default": "mylang", "extensions": {".my": "mylang"},'
        ' "dialects": {"mylang": {"line_comments": ["--"],'
        ' "string_delimiters": ["\\""]}}}',
        encoding="utf-8",
    )
    table = load_dialect_table(path)
    assert table.default == "mylang"
    assert table.for_path("prog.my").name == "mylang"
    assert strip_comments("a -- gone", table.get("mylang")) == "a "
    # built-ins still present
    assert table.for_path("prog.c").name == "c"


# -- properties ---------------------------------------------------------

_word = st.text(alphabet="abcdefghi", min_size=1, max_size=6)
_natural_text = st.lists(
    st.one_of(_word, st.sampled_from([".", ",", "!", "3.14", "Word", "The"])),
    max_size=30,
).map(" ".join)


@given(_natural_text)
@settings(max_examples=200)
def test_natural_tokens_never_contain_whitespace(text):
    for token in tokenize_natural(text).tokens:
        assert token
        assert not any(ch.isspace() for ch in token)


@given(_natural_text)
@settings(max_examples=200)
def test_natural_retokenization_is_stable(text):
    once = list(tokenize_natural(text).tokens)
    twice = list(tokenize_natural(" ".join(once)).tokens)
    assert once == twice


_code_text = st.lists(
    st.sampled_from(
        ["x", "y", "= 1;", "foo(", ")", "// c", "/* b */", '"s t"', "{", "}", "\n", "3.5", "+"]
    ),
    max_size=25,
).map(" ".join)


@given(_code_text)
@settings(max_examples=200)
def test_strip_comments_idempotent(code):
    dialect = BUILTIN_DIALECTS["c"]
    once = strip_comments(code, dialect)
    assert strip_comments(once, dialect) == once


@given(_code_text)
@settings(max_examples=200)
def test_artificial_tokens_never_contain_whitespace(code):
    for token in tokenize_artificial(code, BUILTIN_DIALECTS["c"]).tokens:
        assert token
        assert not any(ch.isspace() for ch in token)


def test_extension_lookup_defaults():
    table = builtin_table()
    assert table.for_path("prog.unknownext").name == table.default
    assert table.for_path("page.HTML").name == "html"
