"""Command-line front end.

The CLI is a thin client of the HTTP service: by default it mounts the
FastAPI app in-process (no server or network needed); ``--server URL``
targets a running instance instead.  Data goes to stdout (or ``-o`` files),
diagnostics to stderr.  Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from pathlib import Path

import httpx

from . import __version__
from .dialects import DialectTable, builtin_table, load_dialect_table
from .errors import TextropyError
from .service import create_app
from .tokenizer import read_text_file

USAGE_EXIT = 1
DATA_EXIT = 2

DIALECT_TABLE_ENV = "TEXTROPY_DIALECT_TABLE"


class Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


class Client:
    """Requests against a remote server or the in-process app."""

    def __init__(self, server: str | None, table: DialectTable):
        self.server = server
        self.table = table

    def request(self, method: str, path: str, payload: dict | None = None) -> httpx.Response:
        async def go():
            if self.server:
                transport = None
                base = self.server
            else:
                transport = httpx.ASGITransport(app=create_app(self.table))
                base = "http://textropy.local"
            async with httpx.AsyncClient(transport=transport, base_url=base, timeout=300.0) as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())

    def post(self, path: str, payload: dict) -> dict | str:
        response = self.request("POST", path, payload)
        if response.status_code >= 400:
            detail = response.text
            try:
                detail = response.json().get("detail", detail)
            except ValueError:
                pass
            raise TextropyError(detail)
        content_type = response.headers.get("content-type", "")
        if content_type.startswith("application/json"):
            return response.json()
        return response.text


def _fmt(value, precision: int = 4) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.{precision}f}"
    return str(value)


def _print_table(pairs, out):
    width = max(len(k) for k, _ in pairs)
    for key, value in pairs:
        out.write(f"{key.ljust(width)}  {_fmt(value)}\n")


def _load_text(path: str) -> str:
    if not Path(path).is_file():
        raise TextropyError(f"no such file: {path}")
    return read_text_file(path)


def _infer_mode(path: str, table: DialectTable, explicit: str | None) -> str:
    if explicit:
        return explicit
    ext = Path(path).suffix.lower()
    return "artificial" if ext in table.extensions else "natural"


def _library_payload(path: str) -> dict:
    if not Path(path).is_file():
        raise TextropyError(f"no such file: {path}")
    if path.lower().endswith(".csv"):
        from .corpus import library_from_records, load_records_csv

        return library_from_records(load_records_csv(path)).to_dict()
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise TextropyError(f"not a library JSON file: {path} ({exc})") from exc


def _out_stream(args):
    if getattr(args, "output", None):
        return open(args.output, "w", encoding="utf-8")
    return sys.stdout


def build_parser() -> Parser:
    parser = Parser(prog="textropy", description=__doc__)
    parser.add_argument("--version", action="version", version=f"textropy {__version__}")
    parser.add_argument("--server", help="URL of a running service (default: in-process app)")
    parser.add_argument(
        "--dialect-table",
        default=os.environ.get(DIALECT_TABLE_ENV),
        help=f"JSON dialect table path (or ${DIALECT_TABLE_ENV})",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    common_text = argparse.ArgumentParser(add_help=False)
    common_text.add_argument("file", help="input text file (UTF-8)")
    common_text.add_argument("--mode", choices=["natural", "artificial"], help="default: by file extension")
    common_text.add_argument("--lang", choices=["english", "spanish", "other"], default="other")
    common_text.add_argument("--dialect", help="dialect name for artificial mode (default: by extension)")

    p = sub.add_parser("tokenize", parents=[common_text], help="print the symbol sequence, one per line")

    p = sub.add_parser("analyze", parents=[common_text], help="measure one text into a record")
    p.add_argument("--name", default=None, help="record name (default: file name)")
    p.add_argument("--label", default=None, help="class label (default: from lang/mode)")
    p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("profile", help="ranked frequency profile of one text or a merged group")
    p.add_argument("file", help="text file, or a library when --merged is given")
    p.add_argument("--mode", choices=["natural", "artificial"])
    p.add_argument("--lang", choices=["english", "spanish", "other"], default="other")
    p.add_argument("--dialect")
    p.add_argument("--merged", metavar="LABEL", help="emit the merged profile of LABEL from a library")
    p.add_argument("--cdf", action="store_true", help="emit the CDF instead of raw frequencies")
    p.add_argument("--top", type=int, default=None, help="limit output to the first N ranks")
    p.add_argument("-o", "--output")

    p = sub.add_parser("corpus", help="analyze a directory tree into a library")
    p.add_argument("directory")
    p.add_argument("-o", "--output", help="library JSON destination (default: stdout)")
    p.add_argument("--records-csv", help="also export the record table as CSV")
    p.add_argument("--config", help="corpus config JSON")
    p.add_argument("--workers", type=int, default=0)
    p.add_argument("--no-fits", action="store_true", help="skip per-label model fits")

    p = sub.add_parser("fit", help="fit a group model from a library or records CSV")
    p.add_argument("kind", choices=["heaps", "alpha"])
    p.add_argument("library")
    p.add_argument("--label", required=True)
    p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("compare", help="group statistics and Welch t test between two labels")
    p.add_argument("library")
    p.add_argument("--groups", required=True, help="two labels, comma separated")
    p.add_argument("--column", choices=["J_1D", "J_thetaD"], default="J_1D")
    p.add_argument("--pooled", action="store_true", help="pooled-variance t test instead of Welch")
    p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("export", help="write the record table of a library")
    p.add_argument("library")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output")

    p = sub.add_parser("plot", help="emit (x, y, series) TSV data for a standard figure")
    p.add_argument("library")
    p.add_argument(
        "--figure",
        required=True,
        choices=["fig2", "fig3", "fig5", "fig6", "fig8", "fig9", "fig10", "fig11"],
    )
    p.add_argument("-o", "--output")

    p = sub.add_parser("classify", help="nearest entropy-model label for a (d, h) point")
    p.add_argument("library", help="library with fitted entropy models")
    p.add_argument("--diversity", type=float, required=True, metavar="D_OVER_L")
    p.add_argument("--entropy", type=float, required=True, metavar="H")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8757)

    return parser


def _cmd_tokenize(args, client: Client) -> int:
    text = _load_text(args.file)
    mode = _infer_mode(args.file, client.table, args.mode)
    result = client.post(
        "/tokenize",
        {
            "text": text,
            "mode": mode,
            "lang": args.lang,
            "dialect": args.dialect or (client.table.for_path(args.file).name if mode == "artificial" else None),
            "source_name": args.file,
        },
    )
    for token in result["tokens"]:
        sys.stdout.write(token + "\n")
    sys.stderr.write(f"{result['count']} symbols ({result['mode']} mode)\n")
    return 0


def _cmd_analyze(args, client: Client) -> int:
    text = _load_text(args.file)
    mode = _infer_mode(args.file, client.table, args.mode)
    record = client.post(
        "/analyze",
        {
            "text": text,
            "mode": mode,
            "lang": args.lang,
            "dialect": args.dialect or (client.table.for_path(args.file).name if mode == "artificial" else None),
            "name": args.name or Path(args.file).name,
            "class_label": args.label,
        },
    )
    if args.format == "json":
        json.dump(record, sys.stdout, ensure_ascii=False, indent=1)
        sys.stdout.write("\n")
    else:
        order = [
            "name", "class_label", "mode", "L", "D", "theta", "L_tail",
            "d", "h", "e", "s", "c", "g", "g_tail", "J_1D", "J_thetaD",
        ]
        _print_table([(k, record[k]) for k in order], sys.stdout)
    return 0


def _cmd_profile(args, client: Client) -> int:
    out = _out_stream(args)
    try:
        if args.merged:
            result = client.post(
                "/merged-profile",
                {"library": _library_payload(args.file), "label": args.merged},
            )
            out.write(f"# label={result['label']} L={result['L']} D={result['D']} theta={result['theta']}\n")
            out.write("rank,symbol,use_percent\n")
            rows = result["rows"][: args.top] if args.top else result["rows"]
            for row in rows:
                out.write(f"{row['rank']},{_csv_quote(row['symbol'])},{row['use_percent']!r}\n")
            return 0
        text = _load_text(args.file)
        mode = _infer_mode(args.file, client.table, args.mode)
        result = client.post(
            "/profile",
            {
                "text": text,
                "mode": mode,
                "lang": args.lang,
                "dialect": args.dialect or (client.table.for_path(args.file).name if mode == "artificial" else None),
                "include_cdf": args.cdf,
                "max_ranks": args.top,
            },
        )
        out.write(f"# L={result['L']} D={result['D']} theta={result['theta']}\n")
        if args.cdf:
            out.write("rank,cumulative\n")
            for point in result["cdf"]:
                out.write(f"{point['rank']},{point['cumulative']!r}\n")
        else:
            out.write("rank,symbol,frequency\n")
            for entry in result["entries"]:
                out.write(f"{entry['rank']},{_csv_quote(entry['symbol'])},{entry['frequency']}\n")
        return 0
    finally:
        if out is not sys.stdout:
            out.close()


def _csv_quote(value: str) -> str:
    if any(ch in value for ch in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def _cmd_corpus(args, client: Client) -> int:
    config = {"workers": args.workers}
    if args.config:
        if not Path(args.config).is_file():
            raise TextropyError(f"no such file: {args.config}")
        config.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
    if args.dialect_table and "dialect_table_path" not in config:
        config["dialect_table_path"] = args.dialect_table
    root = Path(args.directory)
    if not root.is_dir():
        raise TextropyError(f"no such directory: {args.directory}")
    result = client.post(
        "/corpus",
        {"root": str(root), "config": config, "fit_labels": not args.no_fits},
    )
    for warning in result["warnings"]:
        sys.stderr.write(f"warning: {warning}\n")
    sys.stderr.write(
        f"{result['n_records']} records; labels: "
        + ", ".join(f"{label}={n}" for label, n in sorted(result["labels"].items()))
        + "\n"
    )
    payload = json.dumps(result["library"], ensure_ascii=False, indent=1) + "\n"
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    if args.records_csv:
        from .corpus import Library, export_records

        export_records(Library.from_dict(result["library"]), "csv", args.records_csv)
    return 0


def _cmd_fit(args, client: Client) -> int:
    result = client.post(
        "/fit",
        {"library": _library_payload(args.library), "kind": args.kind, "label": args.label},
    )
    if args.format == "json":
        json.dump(result, sys.stdout, ensure_ascii=False, indent=1)
        sys.stdout.write("\n")
        return 0
    fit = result[args.kind]
    if args.kind == "heaps":
        pairs = [
            ("label", result["label"]),
            ("model", "D = k * L^beta"),
            ("k", fit["k"]),
            ("beta", fit["beta"]),
            ("rms_log_error", fit["rms_log_error"]),
            ("n_points", fit["n_points"]),
        ]
    else:
        pairs = [
            ("label", result["label"]),
            ("model", "h = d^q, q = (alpha-2)/(alpha-1)"),
            ("alpha", fit["alpha"]),
            ("q", fit["q"]),
            ("sse", fit["sse"]),
            ("n_points", fit["n_points"]),
        ]
    _print_table(pairs, sys.stdout)
    return 0


def _cmd_compare(args, client: Client) -> int:
    groups = [g.strip() for g in args.groups.split(",") if g.strip()]
    if len(groups) != 2:
        raise TextropyError(f"--groups needs exactly two labels, got {args.groups!r}")
    result = client.post(
        "/compare",
        {
            "library": _library_payload(args.library),
            "groups": groups,
            "column": args.column,
            "pooled": args.pooled,
        },
    )
    if args.format == "json":
        json.dump(result, sys.stdout, ensure_ascii=False, indent=1)
        sys.stdout.write("\n")
        return 0
    out = sys.stdout
    out.write(f"column: {result['column']}\n")
    for summary in result["groups"]:
        out.write(
            f"  {summary['label']}: n={summary['n']}"
            f" J1D mean={_fmt(summary['J1D_mean'])} std={_fmt(summary['J1D_std'])}"
            f" JtD mean={_fmt(summary['JthetaD_mean'])} std={_fmt(summary['JthetaD_std'])}"
            f" corr(J1D,L)={_fmt(summary['corr_J1D_L'])}"
            f" corr(JtD,{summary['tail_corr_basis']})={_fmt(summary['corr_JthetaD_Ltail'])}\n"
        )
    welch = result["welch"]
    kind = "pooled" if welch["pooled"] else "welch"
    out.write(
        f"{kind} t-test ({result['column']}): t={welch['t']:.4f} df={welch['df']:.2f}"
        f" p={welch['p']:.3E} (n1={welch['n1']}, n2={welch['n2']})\n"
    )
    return 0


def _cmd_export(args, client: Client) -> int:
    from .corpus import Library, export_records

    library = Library.from_dict(_library_payload(args.library))
    out = _out_stream(args)
    try:
        export_records(library, args.format, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_plot(args, client: Client) -> int:
    text = client.post(
        "/plot", {"library": _library_payload(args.library), "figure": args.figure}
    )
    out = _out_stream(args)
    try:
        out.write(text)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_classify(args, client: Client) -> int:
    result = client.post(
        "/classify",
        {"library": _library_payload(args.library), "d": args.diversity, "h": args.entropy},
    )
    sys.stdout.write(result["label"] + "\n")
    for label in sorted(result["residuals"]):
        sys.stderr.write(f"  residual {label}: {result['residuals'][label]:.6f}\n")
    return 0


def _cmd_serve(args, client: Client) -> int:
    import uvicorn

    uvicorn.run(create_app(client.table), host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "tokenize": _cmd_tokenize,
    "analyze": _cmd_analyze,
    "profile": _cmd_profile,
    "corpus": _cmd_corpus,
    "fit": _cmd_fit,
    "compare": _cmd_compare,
    "export": _cmd_export,
    "plot": _cmd_plot,
    "classify": _cmd_classify,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        table = load_dialect_table(args.dialect_table) if args.dialect_table else builtin_table()
        client = Client(args.server, table)
        return _COMMANDS[args.command](args, client)
    except TextropyError as exc:
        sys.stderr.write(f"textropy: error: {exc}\n")
        return DATA_EXIT
    except OSError as exc:
        sys.stderr.write(f"textropy: error: {exc}\n")
        return DATA_EXIT
    except httpx.HTTPError as exc:
        sys.stderr.write(f"textropy: transport error: {exc}\n")
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
