"""Symbol extraction for natural-language text and source code.

Both modes produce a flat sequence of symbols: words, standalone punctuation
signs, and (in artificial mode) collapsed string literals.  The rules are
deliberately mechanical so that token sequences are exactly reproducible:

natural mode
    * whitespace delimits; every other non-word character is a standalone
      one-character sign token;
    * a period or comma directly between two digits stays inside the number
      token ("3.14" is one symbol, "3. 14" is three);
    * words are case sensitive, but a capitalized word at text start or
      directly after a period sign is lowercased unless the same capitalized
      form also occurs somewhere not after a period (then it is treated as a
      proper name and kept);
    * accented forms are distinct from unaccented forms; no normalisation.

artificial mode
    * comments are removed first (see :func:`strip_comments`);
    * each string literal becomes a single token: delimiters kept, internal
      whitespace deleted ("hello world" -> "helloworld");
    * the rest splits on whitespace; every punctuation/operator character is
      a standalone token; identifiers (including "_") and numeric literals
      stay whole; case is preserved.
"""

from __future__ import annotations

import unicodedata
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .dialects import CodeDialect
from .errors import DecodeError

NATURAL = "natural"
ARTIFICIAL = "artificial"
MODES = (NATURAL, ARTIFICIAL)
LANGS = ("english", "spanish", "other")


class UnterminatedBlockCommentWarning(UserWarning):
    """A block comment is still open at end of input; stripped to the end."""


class UnterminatedStringWarning(UserWarning):
    """A string literal is still open at end of input; taken to the end."""


@dataclass(frozen=True)
class TokenStream:
    """Ordered symbol sequence of one text."""

    tokens: tuple[str, ...]
    mode: str
    source_name: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)


def read_text_file(path: str | Path) -> str:
    """Read a UTF-8 file, reporting the byte offset of any bad sequence."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DecodeError(str(path), exc.start, exc.reason) from None


def _is_word_char(ch: str, extra: str = "") -> bool:
    # letters, combining marks and digits form words; everything else
    # (except whitespace) is a sign
    return unicodedata.category(ch)[0] in ("L", "M", "N") or ch in extra


def _split_signs(text: str, word_extra: str = "") -> list[str]:
    """Split text into word/number tokens and one-character sign tokens.

    A '.' or ',' with a digit on both sides is part of the number token.
    """
    tokens: list[str] = []
    current: list[str] = []
    n = len(text)
    for i, ch in enumerate(text):
        if ch.isspace():
            if current:
                tokens.append("".join(current))
                current = []
        elif _is_word_char(ch, word_extra):
            current.append(ch)
        elif ch in ".," and 0 < i < n - 1 and text[i - 1].isdigit() and text[i + 1].isdigit():
            current.append(ch)
        else:
            if current:
                tokens.append("".join(current))
                current = []
            tokens.append(ch)
    if current:
        tokens.append("".join(current))
    return tokens


def _apply_capital_rule(tokens: list[str]) -> list[str]:
    """Lowercase sentence-initial capitals that are not proper names.

    A position is sentence-initial when it is the first token or directly
    follows a standalone period token.  A capitalized form seen at least once
    elsewhere is kept (proper-name evidence).
    """
    sentence_initial = [i == 0 or tokens[i - 1] == "." for i in range(len(tokens))]
    proper = {
        tok
        for i, tok in enumerate(tokens)
        if not sentence_initial[i] and tok[0].isupper()
    }
    out = []
    for i, tok in enumerate(tokens):
        if sentence_initial[i] and tok[0].isupper() and tok not in proper:
            tok = tok[0].lower() + tok[1:]
        out.append(tok)
    return out


def tokenize_natural(text: str, lang: str = "other", source_name: str = "") -> TokenStream:
    """Tokenize natural-language text into its symbol sequence."""
    if lang not in LANGS:
        raise ValueError(f"lang must be one of {LANGS}, got {lang!r}")
    tokens = _apply_capital_rule(_split_signs(text))
    return TokenStream(tokens=tuple(tokens), mode=NATURAL, source_name=source_name)


def _open_string(code: str, i: int, dialect: CodeDialect) -> str | None:
    """Return the delimiter if position ``i`` opens a string literal."""
    ch = code[i]
    if ch not in dialect.string_delimiters:
        return None
    if ch == "'" and dialect.apostrophe_transpose and i > 0:
        prev = code[i - 1]
        if _is_word_char(prev, "_") or prev in ")]}'":
            return None  # transpose operator, not a string
    return ch


def _read_literal(code: str, start: int, delim: str, dialect: CodeDialect) -> tuple[int, str, bool]:
    """Consume a literal from its opening delimiter; -> (end, text, closed)."""
    i = start + 1
    n = len(code)
    esc = dialect.escape_char
    while i < n:
        ch = code[i]
        if esc is not None and ch == esc and i + 1 < n:
            i += 2
            continue
        if ch == delim:
            return i + 1, code[start : i + 1], True
        i += 1
    return n, code[start:], False


def strip_comments(source: str, dialect: CodeDialect) -> str:
    """Remove line and block comments; string literals are left intact.

    Comment markers inside string literals do not start comments.  An
    unterminated block comment is stripped to end of input and reported as a
    :class:`UnterminatedBlockCommentWarning`.  Non-comment text is preserved
    byte for byte.
    """
    out: list[str] = []
    i = 0
    n = len(source)
    while i < n:
        delim = _open_string(source, i, dialect)
        if delim is not None:
            i, literal, _closed = _read_literal(source, i, delim, dialect)
            out.append(literal)
            continue
        matched = False
        for open_, close in dialect.block_comments:
            if source.startswith(open_, i):
                end = source.find(close, i + len(open_))
                if end == -1:
                    warnings.warn(
                        f"unterminated block comment opened at offset {i}; stripped to end of input",
                        UnterminatedBlockCommentWarning,
                        stacklevel=2,
                    )
                    i = n
                else:
                    i = end + len(close)
                matched = True
                break
        if matched:
            continue
        for marker in dialect.line_comments:
            if source.startswith(marker, i):
                newline = source.find("\n", i)
                i = n if newline == -1 else newline  # the newline itself stays
                matched = True
                break
        if matched:
            continue
        out.append(source[i])
        i += 1
    return "".join(out)


def tokenize_artificial(source: str, dialect: CodeDialect, source_name: str = "") -> TokenStream:
    """Tokenize source code into its symbol sequence."""
    code = strip_comments(source, dialect)
    tokens: list[str] = []
    current: list[str] = []

    def flush():
        if current:
            tokens.append("".join(current))
            current.clear()

    i = 0
    n = len(code)
    while i < n:
        delim = _open_string(code, i, dialect)
        if delim is not None:
            flush()
            end, literal, closed = _read_literal(code, i, delim, dialect)
            if not closed:
                warnings.warn(
                    f"unterminated string literal opened at offset {i}; taken to end of input",
                    UnterminatedStringWarning,
                    stacklevel=2,
                )
            tokens.append("".join(c for c in literal if not c.isspace()))
            i = end
            continue
        ch = code[i]
        if ch.isspace():
            flush()
        elif _is_word_char(ch, "_"):
            current.append(ch)
        elif ch in ".," and 0 < i < n - 1 and code[i - 1].isdigit() and code[i + 1].isdigit():
            current.append(ch)
        else:
            flush()
            tokens.append(ch)
        i += 1
    flush()
    return TokenStream(tokens=tuple(tokens), mode=ARTIFICIAL, source_name=source_name)
