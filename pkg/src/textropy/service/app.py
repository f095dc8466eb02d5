"""FastAPI application wrapping the measurement pipeline.

The CLI talks to this app in-process by default; ``textropy serve`` runs it
as a standalone server.  Path-taking endpoints (``/corpus``) resolve paths on
the machine the app runs on.
"""

from __future__ import annotations

from dataclasses import asdict
from io import StringIO

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__
from ..corpus import (
    CorpusConfig,
    Library,
    analyze_text,
    group_summary,
    ingest_directory,
    merged_language_profile,
    plot_series,
    write_plot_tsv,
)
from ..dialects import DialectTable, builtin_table, load_dialect_table
from ..errors import CorpusError, TextropyError
from ..metrics import ComplexityMeasures
from ..models import classify_language, fit_alpha, fit_heaps
from ..profiles import build_profile, cdf
from ..stats import welch_t_test
from ..tokenizer import tokenize_artificial, tokenize_natural
from . import schemas


def _tokens_for(req, table: DialectTable):
    if req.mode == "natural":
        return tokenize_natural(req.text, lang=req.lang, source_name=getattr(req, "source_name", ""))
    dialect = table.get(req.dialect) if req.dialect else table.get(table.default)
    return tokenize_artificial(req.text, dialect, source_name=getattr(req, "source_name", ""))


def create_app(dialect_table: DialectTable | None = None) -> FastAPI:
    table = dialect_table or builtin_table()
    app = FastAPI(title="textropy", version=__version__)

    @app.exception_handler(TextropyError)
    async def _textropy_error(_request: Request, exc: TextropyError):
        status = 404 if isinstance(exc, CorpusError) and "no such" in str(exc) else 422
        return JSONResponse(
            status_code=status,
            content={"detail": str(exc), "error": type(exc).__name__},
        )

    @app.get("/healthz", response_model=schemas.HealthResponse)
    def healthz():
        return {"status": "ok", "version": __version__}

    @app.get("/dialects", response_model=schemas.DialectTableResponse)
    def dialects():
        return {
            "default": table.default,
            "extensions": table.extensions,
            "dialects": {
                name: {
                    "name": d.name,
                    "line_comments": list(d.line_comments),
                    "block_comments": [list(pair) for pair in d.block_comments],
                    "string_delimiters": list(d.string_delimiters),
                    "escape_char": d.escape_char,
                    "apostrophe_transpose": d.apostrophe_transpose,
                }
                for name, d in table.dialects.items()
            },
        }

    @app.post("/tokenize", response_model=schemas.TokenizeResponse)
    def tokenize(req: schemas.TokenizeRequest):
        stream = _tokens_for(req, table)
        return {
            "tokens": list(stream.tokens),
            "count": len(stream),
            "mode": stream.mode,
            "source_name": stream.source_name,
        }

    @app.post("/analyze", response_model=schemas.TextRecordModel)
    def analyze(req: schemas.AnalyzeRequest):
        dialect = table.get(req.dialect) if req.dialect else None
        record = analyze_text(
            req.text,
            req.mode,
            dialect=dialect,
            lang=req.lang,
            name=req.name,
            class_label=req.class_label,
        )
        return asdict(record)

    @app.post("/profile", response_model=schemas.ProfileResponse)
    def profile(req: schemas.ProfileRequest):
        stream = _tokens_for(req, table)
        prof = build_profile(stream)
        entries = prof.entries[: req.max_ranks] if req.max_ranks else prof.entries
        payload = {
            "L": prof.L,
            "D": prof.D,
            "theta": prof.theta,
            "entries": [e._asdict() for e in entries],
        }
        if req.include_cdf and prof.D >= 1:
            points = cdf(prof).points
            if req.max_ranks:
                points = points[: req.max_ranks]
            payload["cdf"] = [p._asdict() for p in points]
        return payload

    @app.post("/corpus", response_model=schemas.CorpusResponse)
    def corpus(req: schemas.CorpusRequest):
        cfg_model = req.config
        dtable = (
            load_dialect_table(cfg_model.dialect_table_path)
            if cfg_model.dialect_table_path
            else table
        )
        config = CorpusConfig(
            mode_overrides=dict(cfg_model.mode_overrides),
            natural_extensions=tuple(cfg_model.natural_extensions),
            default_mode=cfg_model.default_mode,
            dialect_table=dtable,
            label_from_subdir=cfg_model.label_from_subdir,
            default_label=cfg_model.default_label,
            workers=cfg_model.workers,
        )
        library, warnings_list = ingest_directory(req.root, config)
        if req.fit_labels:
            for label in library.labels():
                if len(library.records_for(label)) >= 2:
                    try:
                        library.fit_label(label)
                    except TextropyError as exc:
                        warnings_list.append(f"fit {label}: {exc}")
        counts = {
            label: len(library.records_for(label)) for label in library.labels()
        }
        return {
            "library": library.to_dict(),
            "n_records": len(library.records),
            "labels": counts,
            "warnings": warnings_list,
        }

    @app.post("/fit", response_model=schemas.FitResponse)
    def fit(req: schemas.FitRequest):
        library = Library.from_dict(req.library)
        group = library.records_for(req.label)
        if not group:
            raise CorpusError(
                f"no records labeled {req.label!r}; available: {library.labels()}"
            )
        if req.kind == "heaps":
            result = fit_heaps([(r.L, r.D) for r in group])
            return {"label": req.label, "kind": "heaps", "heaps": asdict(result)}
        result = fit_alpha([(r.d, r.h) for r in group])
        return {"label": req.label, "kind": "alpha", "alpha": asdict(result)}

    @app.post("/compare", response_model=schemas.CompareResponse)
    def compare(req: schemas.CompareRequest):
        library = Library.from_dict(req.library)
        summaries = [group_summary(library, label) for label in req.groups]
        samples = []
        for label in req.groups:
            values = [
                getattr(r, req.column)
                for r in library.records_for(label)
                if getattr(r, req.column) is not None
            ]
            samples.append(values)
        test = welch_t_test(samples[0], samples[1], pooled=req.pooled)
        return {
            "column": req.column,
            "groups": [asdict(s) for s in summaries],
            "welch": {**asdict(test), "pooled": req.pooled},
        }

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(req: schemas.ClassifyRequest):
        library = Library.from_dict(req.library)
        fits = library.alpha_fits()
        measures = ComplexityMeasures(
            d=req.d, h=req.h, e=req.h, s=1.0 - req.h, c=4.0 * req.h * (1.0 - req.h)
        )
        label, residuals = classify_language(measures, fits)
        return {"label": label, "residuals": residuals}

    @app.post("/merged-profile", response_model=schemas.MergedProfileResponse)
    def merged_profile(req: schemas.MergedProfileRequest):
        library = Library.from_dict(req.library)
        rows = merged_language_profile(library, req.label)
        prof = library.profiles[req.label]
        return {
            "label": req.label,
            "L": prof.L,
            "D": prof.D,
            "theta": prof.theta,
            "rows": [
                {"rank": rank, "symbol": symbol, "use_percent": pct}
                for rank, symbol, pct in rows
            ],
        }

    @app.post("/plot", response_class=PlainTextResponse)
    def plot(req: schemas.PlotRequest):
        library = Library.from_dict(req.library)
        try:
            rows = plot_series(library, req.figure)
        except ValueError as exc:
            return PlainTextResponse(str(exc), status_code=400)
        buffer = StringIO()
        write_plot_tsv(rows, buffer)
        return PlainTextResponse(buffer.getvalue(), media_type="text/tab-separated-values")

    return app
