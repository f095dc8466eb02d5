"""Source-code dialect definitions used by the artificial-language tokenizer.

A dialect tells the tokenizer which character sequences open comments and
string literals.  A small built-in table covers the language families the
bundled corpus uses; a custom table can be loaded from JSON (see
:func:`load_dialect_table` for the schema).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CorpusError


@dataclass(frozen=True)
class CodeDialect:
    """Lexical conventions of one language family.

    ``line_comments`` are markers that comment to end-of-line;
    ``block_comments`` are (open, close) pairs.  ``escape_char`` (if any)
    escapes delimiters inside string literals.  ``apostrophe_transpose``
    makes a single quote behave as an operator when it directly follows an
    identifier, closing bracket or another quote (MATLAB transpose), instead
    of opening a string.
    """

    name: str
    line_comments: tuple[str, ...] = ()
    block_comments: tuple[tuple[str, str], ...] = ()
    string_delimiters: tuple[str, ...] = ()
    escape_char: str | None = None
    apostrophe_transpose: bool = False

    def __post_init__(self):
        for pair in self.block_comments:
            if len(pair) != 2 or not pair[0] or not pair[1]:
                raise ValueError(f"block comment markers must be non-empty (open, close) pairs: {pair!r}")
        for marker in self.line_comments:
            if not marker:
                raise ValueError("line comment marker must be non-empty")


_C_LIKE = dict(
    line_comments=("//",),
    block_comments=(("/*", "*/"),),
    string_delimiters=('"', "'"),
    escape_char="\\",
)

BUILTIN_DIALECTS: dict[str, CodeDialect] = {
    "c": CodeDialect(name="c", **_C_LIKE),
    "csharp": CodeDialect(name="csharp", **_C_LIKE),
    "java": CodeDialect(name="java", **_C_LIKE),
    "basic": CodeDialect(
        name="basic",
        line_comments=("'",),
        string_delimiters=('"',),
    ),
    "matlab": CodeDialect(
        name="matlab",
        line_comments=("%",),
        block_comments=(("%{", "%}"),),
        string_delimiters=("'", '"'),
        apostrophe_transpose=True,
    ),
    "html": CodeDialect(
        name="html",
        block_comments=(("<!--", "-->"),),
        string_delimiters=('"', "'"),
    ),
    "php": CodeDialect(
        name="php",
        line_comments=("//", "#"),
        block_comments=(("/*", "*/"),),
        string_delimiters=('"', "'"),
        escape_char="\\",
    ),
    "python": CodeDialect(
        name="python",
        line_comments=("#",),
        string_delimiters=('"', "'"),
        escape_char="\\",
    ),
    # no comments, no literals: whitespace/punctuation splitting only
    "plain": CodeDialect(name="plain"),
}

DEFAULT_DIALECT = "c"

BUILTIN_EXTENSIONS: dict[str, str] = {
    ".c": "c",
    ".h": "c",
    ".cpp": "c",
    ".hpp": "c",
    ".cs": "csharp",
    ".java": "java",
    ".js": "c",
    ".bas": "basic",
    ".vb": "basic",
    ".m": "matlab",
    ".html": "html",
    ".htm": "html",
    ".xml": "html",
    ".php": "php",
    ".py": "python",
    ".log": "plain",
}


@dataclass(frozen=True)
class DialectTable:
    """Dialect definitions plus the extension map that selects them."""

    dialects: dict[str, CodeDialect] = field(default_factory=lambda: dict(BUILTIN_DIALECTS))
    extensions: dict[str, str] = field(default_factory=lambda: dict(BUILTIN_EXTENSIONS))
    default: str = DEFAULT_DIALECT

    def get(self, name: str) -> CodeDialect:
        try:
            return self.dialects[name]
        except KeyError:
            raise CorpusError(f"unknown dialect {name!r}; known: {sorted(self.dialects)}") from None

    def for_path(self, path: str | Path) -> CodeDialect:
        ext = Path(path).suffix.lower()
        return self.get(self.extensions.get(ext, self.default))


def builtin_table() -> DialectTable:
    return DialectTable()


def load_dialect_table(path: str | Path) -> DialectTable:
    """Load a dialect table from JSON.

    Schema::

        {
          "default": "c",
          "extensions": {".c": "c", ...},
          "dialects": {
            "c": {"line_comments": ["//"],
                  "block_comments": [["/*", "*/"]],
                  "string_delimiters": ["\\"", "'"],
                  "escape_char": "\\\\",
                  "apostrophe_transpose": false},
            ...
          }
        }

    Entries extend the built-in table; same-name entries override it.
    """
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    dialects = dict(BUILTIN_DIALECTS)
    for name, spec in raw.get("dialects", {}).items():
        dialects[name] = CodeDialect(
            name=name,
            line_comments=tuple(spec.get("line_comments", ())),
            block_comments=tuple((o, c) for o, c in spec.get("block_comments", ())),
            string_delimiters=tuple(spec.get("string_delimiters", ())),
            escape_char=spec.get("escape_char"),
            apostrophe_transpose=bool(spec.get("apostrophe_transpose", False)),
        )
    extensions = dict(BUILTIN_EXTENSIONS)
    extensions.update({k.lower(): v for k, v in raw.get("extensions", {}).items()})
    default = raw.get("default", DEFAULT_DIALECT)
    table = DialectTable(dialects=dialects, extensions=extensions, default=default)
    table.get(default)  # validate
    for ext, name in extensions.items():
        table.get(name)
    return table
