"""Persistent library of analyzed text-objects.

A :class:`Library` accumulates one :class:`TextRecord` per text (the full
measurement vector), per-group regression fits, and merged per-group symbol
profiles.  Libraries round-trip through JSON; record tables round-trip
through CSV with a fixed column order.

Record tables can also be loaded from a reduced summary CSV (columns
name,class,L,D,d,h,g,J_1D,J_thetaD) such as the bundled reference table;
the entropy-derived fields are reconstructed and profile-dependent fields
stay empty.
"""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import zipf as _zipf
from .dialects import CodeDialect, DialectTable, builtin_table
from .errors import (
    DegenerateSampleError,
    CorpusError,
    EmptyTextError,
    FitError,
    InsufficientDataError,
    TextropyError,
)
from .metrics import complexity_measures
from .models import AlphaFit, HeapsFit, fit_alpha, fit_heaps
from .profiles import FrequencyProfile, build_profile, from_counts, merge_profiles, segment_count
from .stats import descriptive_stats, pearson_correlation
from .tokenizer import ARTIFICIAL, NATURAL, TokenStream, read_text_file, tokenize_artificial, tokenize_natural

CLASS_LABELS = ("english", "spanish", "artificial", "other")

RECORD_COLUMNS = (
    "name", "class", "L", "D", "theta", "d", "h", "e", "s", "c",
    "g", "g_tail", "J_1D", "J_thetaD",
)

REFERENCE_COLUMNS = ("name", "class", "L", "D", "d", "h", "g", "J_1D", "J_thetaD")


@dataclass(frozen=True)
class TextRecord:
    """Full measurement vector of one analyzed text."""

    name: str
    class_label: str
    mode: str
    L: int
    D: int
    theta: int | None
    d: float
    h: float
    e: float
    s: float
    c: float
    g: float | None
    g_tail: float | None
    J_1D: float | None
    J_thetaD: float | None
    L_tail: int | None = None
    source_path: str = ""
    content_digest: str = ""

    def __post_init__(self):
        if self.theta is not None and not 1 <= self.theta <= self.D:
            raise ValueError(f"theta must lie in [1, D], got {self.theta}")


@dataclass
class CorpusConfig:
    """How directory ingestion maps files onto modes, dialects and labels."""

    mode_overrides: dict[str, str] = field(default_factory=dict)  # ext -> mode|skip
    natural_extensions: tuple[str, ...] = (".txt", ".md")
    default_mode: str = "natural"  # for unknown extensions; "skip" to ignore
    dialect_table: DialectTable = field(default_factory=builtin_table)
    label_from_subdir: bool = True
    default_label: str = "other"
    lang_by_label: dict[str, str] = field(
        default_factory=lambda: {"english": "english", "spanish": "spanish"}
    )
    workers: int = 0

    def resolve_mode(self, path: Path) -> str:
        ext = path.suffix.lower()
        if ext in self.mode_overrides:
            return self.mode_overrides[ext]
        if ext in self.natural_extensions:
            return NATURAL
        if ext in self.dialect_table.extensions:
            return ARTIFICIAL
        return self.default_mode

    def to_dict(self) -> dict:
        return {
            "mode_overrides": dict(self.mode_overrides),
            "natural_extensions": list(self.natural_extensions),
            "default_mode": self.default_mode,
            "default_dialect": self.dialect_table.default,
            "label_from_subdir": self.label_from_subdir,
            "default_label": self.default_label,
            "lang_by_label": dict(self.lang_by_label),
            "workers": self.workers,
        }


@dataclass(frozen=True)
class GroupSummary:
    """Table-style summary of one label group."""

    label: str
    n: int
    J1D_mean: float | None
    J1D_std: float | None
    JthetaD_mean: float | None
    JthetaD_std: float | None
    corr_J1D_L: float | None
    corr_JthetaD_Ltail: float | None
    tail_corr_basis: str  # "L_tail" when every record carries one, else "L"


def _digest(tokens: TokenStream) -> str:
    hasher = hashlib.sha256()
    for tok in tokens:
        hasher.update(f"{len(tok)}:".encode("utf-8"))
        hasher.update(tok.encode("utf-8"))
    return hasher.hexdigest()


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch:
        moment = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        moment = _dt.datetime.now(tz=_dt.timezone.utc)
    return moment.replace(microsecond=0).isoformat()


def analyze_tokens(
    tokens: TokenStream,
    *,
    name: str = "",
    class_label: str | None = None,
    source_path: str = "",
) -> tuple[TextRecord, FrequencyProfile]:
    """Run the measurement pipeline on an already-tokenized text."""
    if len(tokens) == 0:
        raise EmptyTextError(f"no symbols after tokenization: {name or source_path or '<text>'}")
    profile = build_profile(tokens)
    m = complexity_measures(profile)
    if class_label is None:
        class_label = "artificial" if tokens.mode == ARTIFICIAL else "other"

    g = J_1D = g_tail = J_thetaD = None
    try:
        whole = _zipf.zipf_fit(profile)
        g, J_1D = whole.g, whole.J
    except FitError:
        pass
    try:
        tail = _zipf.tail_zipf_fit(profile)
        g_tail, J_thetaD = tail.g, tail.J
    except FitError:
        pass

    record = TextRecord(
        name=name or tokens.source_name,
        class_label=class_label,
        mode=tokens.mode,
        L=int(profile.L),
        D=profile.D,
        theta=profile.theta,
        d=m.d, h=m.h, e=m.e, s=m.s, c=m.c,
        g=g, g_tail=g_tail, J_1D=J_1D, J_thetaD=J_thetaD,
        L_tail=int(segment_count(profile, profile.theta, profile.D)),
        source_path=source_path,
        content_digest=_digest(tokens),
    )
    return record, profile


def analyze_text(
    source: str,
    mode: str,
    *,
    dialect: CodeDialect | None = None,
    lang: str = "other",
    name: str = "",
    class_label: str | None = None,
    source_path: str = "",
) -> TextRecord:
    """Tokenize -> profile -> measures -> Zipf fits, as one record."""
    if mode == NATURAL:
        tokens = tokenize_natural(source, lang=lang, source_name=name)
        if class_label is None and lang in ("english", "spanish"):
            class_label = lang
    elif mode == ARTIFICIAL:
        tokens = tokenize_artificial(source, dialect or builtin_table().get("c"), source_name=name)
    else:
        raise ValueError(f"mode must be 'natural' or 'artificial', got {mode!r}")
    record, _profile = analyze_tokens(
        tokens, name=name, class_label=class_label, source_path=source_path
    )
    return record


@dataclass
class Library:
    """Collection of text records with group fits and merged profiles."""

    records: list[TextRecord] = field(default_factory=list)
    fits: dict[str, dict[str, HeapsFit | AlphaFit]] = field(default_factory=dict)
    profiles: dict[str, FrequencyProfile] = field(default_factory=dict)
    created: str = field(default_factory=_timestamp)
    updated: str = field(default_factory=_timestamp)
    config: dict = field(default_factory=dict)

    def add_record(self, record: TextRecord) -> None:
        if any(r.name == record.name for r in self.records):
            raise CorpusError(f"duplicate record name {record.name!r}")
        self.records.append(record)
        self.updated = _timestamp()

    def labels(self) -> list[str]:
        return sorted({r.class_label for r in self.records})

    def records_for(self, label: str) -> list[TextRecord]:
        return [r for r in self.records if r.class_label == label]

    def fit_label(self, label: str) -> dict[str, HeapsFit | AlphaFit]:
        """Fit and store the Heaps and entropy models of one label group."""
        group = self.records_for(label)
        if not group:
            raise CorpusError(f"no records labeled {label!r}")
        fits: dict[str, HeapsFit | AlphaFit] = {
            "heaps": fit_heaps([(r.L, r.D) for r in group]),
            "alpha": fit_alpha([(r.d, r.h) for r in group]),
        }
        self.fits[label] = fits
        self.updated = _timestamp()
        return fits

    def alpha_fits(self) -> dict[str, AlphaFit]:
        return {
            label: kinds["alpha"]
            for label, kinds in self.fits.items()
            if "alpha" in kinds
        }

    def to_dict(self) -> dict:
        return {
            "records": [asdict(r) for r in self.records],
            "fits": {
                label: {kind: asdict(fit) for kind, fit in kinds.items()}
                for label, kinds in self.fits.items()
            },
            "profiles": {
                label: [[e.symbol, e.frequency] for e in profile.entries]
                for label, profile in self.profiles.items()
            },
            "created": self.created,
            "updated": self.updated,
            "config": self.config,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Library":
        records = [TextRecord(**r) for r in data.get("records", [])]
        fits: dict[str, dict[str, HeapsFit | AlphaFit]] = {}
        for label, kinds in data.get("fits", {}).items():
            fits[label] = {}
            if "heaps" in kinds:
                fits[label]["heaps"] = HeapsFit(**kinds["heaps"])
            if "alpha" in kinds:
                fits[label]["alpha"] = AlphaFit(**kinds["alpha"])
        profiles = {
            label: from_counts({sym: freq for sym, freq in pairs})
            for label, pairs in data.get("profiles", {}).items()
        }
        return cls(
            records=records,
            fits=fits,
            profiles=profiles,
            created=data.get("created", _timestamp()),
            updated=data.get("updated", _timestamp()),
            config=data.get("config", {}),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), ensure_ascii=False, indent=1) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "Library":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def ingest_directory(
    root: str | Path, config: CorpusConfig | None = None
) -> tuple[Library, list[str]]:
    """Analyze every file under ``root`` into a library.

    Files that cannot be decoded or measured are skipped with a warning
    message in the returned list.  Records are sorted by name, so the result
    is deterministic regardless of worker count.
    """
    config = config or CorpusConfig()
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"no such directory: {root}")

    files = sorted(p for p in root.rglob("*") if p.is_file())
    jobs = []
    for path in files:
        mode = config.resolve_mode(path)
        if mode == "skip":
            continue
        rel = path.relative_to(root)
        label = (
            rel.parts[0]
            if config.label_from_subdir and len(rel.parts) > 1
            else config.default_label
        )
        jobs.append((path, rel.as_posix(), mode, label))

    def run(job):
        path, name, mode, label = job
        source = read_text_file(path)
        if mode == NATURAL:
            tokens = tokenize_natural(
                source, lang=config.lang_by_label.get(label, "other"), source_name=name
            )
        else:
            tokens = tokenize_artificial(
                source, config.dialect_table.for_path(path), source_name=name
            )
        return analyze_tokens(
            tokens, name=name, class_label=label, source_path=str(path)
        )

    results: list[tuple[TextRecord, FrequencyProfile]] = []
    warnings_list: list[str] = []
    if config.workers and config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(lambda j: _guard(run, j), jobs))
    else:
        outcomes = [_guard(run, j) for j in jobs]
    for job, outcome in zip(jobs, outcomes):
        if isinstance(outcome, Exception):
            warnings_list.append(f"{job[0]}: {outcome}")
        else:
            results.append(outcome)

    results.sort(key=lambda pair: pair[0].name)
    library = Library(config=config.to_dict())
    merged: dict[str, FrequencyProfile] = {}
    for record, profile in results:
        library.add_record(record)
        if record.class_label in merged:
            merged[record.class_label] = merge_profiles(merged[record.class_label], profile)
        else:
            merged[record.class_label] = profile
    library.profiles = dict(sorted(merged.items()))
    return library, warnings_list


def _guard(fn, job):
    try:
        return fn(job)
    except TextropyError as exc:
        return exc


def group_summary(library: Library, label: str) -> GroupSummary:
    """Descriptive statistics and length correlations of one label group."""
    group = library.records_for(label)
    if len(group) < 2:
        raise InsufficientDataError(
            f"need at least 2 records labeled {label!r}, found {len(group)}"
        )
    j1 = [(r.J_1D, r.L) for r in group if r.J_1D is not None]
    jt = [(r.J_thetaD, r) for r in group if r.J_thetaD is not None]

    def corr_or_none(xs, ys):
        try:
            return pearson_correlation(xs, ys)
        except DegenerateSampleError:
            return None

    J1D_mean = J1D_std = corr_J1D_L = None
    if len(j1) >= 2:
        stats = descriptive_stats([v for v, _ in j1])
        J1D_mean, J1D_std = stats.mean, stats.stddev
        corr_J1D_L = corr_or_none([v for v, _ in j1], [L for _, L in j1])

    JthetaD_mean = JthetaD_std = corr_tail = None
    basis = "L_tail" if jt and all(r.L_tail is not None for _, r in jt) else "L"
    if len(jt) >= 2:
        stats = descriptive_stats([v for v, _ in jt])
        JthetaD_mean, JthetaD_std = stats.mean, stats.stddev
        lengths = [r.L_tail if basis == "L_tail" else r.L for _, r in jt]
        corr_tail = corr_or_none([v for v, _ in jt], lengths)

    return GroupSummary(
        label=label,
        n=len(group),
        J1D_mean=J1D_mean,
        J1D_std=J1D_std,
        JthetaD_mean=JthetaD_mean,
        JthetaD_std=JthetaD_std,
        corr_J1D_L=corr_J1D_L,
        corr_JthetaD_Ltail=corr_tail,
        tail_corr_basis=basis,
    )


def merged_language_profile(
    source: Library | Iterable[FrequencyProfile], label: str = ""
) -> list[tuple[int, str, float]]:
    """Ranked (rank, symbol, use-percent) table of a merged group profile."""
    if isinstance(source, Library):
        if label not in source.profiles:
            raise CorpusError(
                f"library has no merged profile for {label!r}; available: {sorted(source.profiles)}"
            )
        profile = source.profiles[label]
    else:
        profiles = list(source)
        if not profiles:
            raise CorpusError("no profiles to merge")
        profile = profiles[0]
        for p in profiles[1:]:
            profile = merge_profiles(profile, p)
    total = profile.L
    return [(e.rank, e.symbol, 100.0 * e.frequency / total) for e in profile.entries]


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def export_records(
    library: Library, fmt: str, dest: str | Path | io.TextIOBase
) -> None:
    """Write the record table as CSV (fixed column order) or JSON."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")

    def _write(fp):
        if fmt == "csv":
            writer = csv.writer(fp, lineterminator="\n")
            writer.writerow(RECORD_COLUMNS)
            for r in library.records:
                writer.writerow([
                    r.name, r.class_label, r.L, r.D, _format_cell(r.theta),
                    _format_cell(r.d), _format_cell(r.h), _format_cell(r.e),
                    _format_cell(r.s), _format_cell(r.c), _format_cell(r.g),
                    _format_cell(r.g_tail), _format_cell(r.J_1D),
                    _format_cell(r.J_thetaD),
                ])
        else:
            json.dump([asdict(r) for r in library.records], fp, ensure_ascii=False, indent=1)
            fp.write("\n")

    if isinstance(dest, (str, Path)):
        try:
            with open(dest, "w", encoding="utf-8", newline="") as fp:
                _write(fp)
        except OSError as exc:
            raise CorpusError(f"cannot write {dest}: {exc}") from exc
    else:
        _write(dest)


def _parse_optional_float(cell: str) -> float | None:
    return None if cell == "" else float(cell)


def load_records_csv(path: str | Path) -> list[TextRecord]:
    """Load records from a full export or from the reduced summary table."""
    with open(path, newline="", encoding="utf-8") as fp:
        reader = csv.reader(fp)
        header = tuple(next(reader))
        rows = list(reader)
    if header == RECORD_COLUMNS:
        records = []
        for row in rows:
            name, cls, L, D, theta, d, h, e, s, c, g, g_tail, j1, jt = row
            records.append(TextRecord(
                name=name, class_label=cls,
                mode=ARTIFICIAL if cls == "artificial" else NATURAL,
                L=int(L), D=int(D),
                theta=None if theta == "" else int(theta),
                d=float(d), h=float(h), e=float(e), s=float(s), c=float(c),
                g=_parse_optional_float(g),
                g_tail=_parse_optional_float(g_tail),
                J_1D=_parse_optional_float(j1),
                J_thetaD=_parse_optional_float(jt),
            ))
        return records
    if header == REFERENCE_COLUMNS:
        records = []
        for row in rows:
            name, cls, L, D, d, h, g, j1, jt = row
            h_val = float(h)
            records.append(TextRecord(
                name=name, class_label=cls,
                mode=ARTIFICIAL if cls == "artificial" else NATURAL,
                L=int(L), D=int(D), theta=None,
                d=float(d), h=h_val, e=h_val, s=1.0 - h_val,
                c=4.0 * h_val * (1.0 - h_val),
                g=_parse_optional_float(g), g_tail=None,
                J_1D=_parse_optional_float(j1),
                J_thetaD=_parse_optional_float(jt),
            ))
        return records
    raise CorpusError(f"unrecognized record table header: {header}")


def library_from_records(records: Sequence[TextRecord], config: dict | None = None) -> Library:
    library = Library(config=config or {})
    for record in records:
        library.add_record(record)
    return library


def load_library(path: str | Path) -> Library:
    """Load a library JSON, or build one from a records CSV."""
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"no such file: {path}")
    if path.suffix.lower() == ".csv":
        return library_from_records(load_records_csv(path))
    return Library.load(path)


PLOT_FIGURES = ("fig2", "fig3", "fig5", "fig6", "fig8", "fig9", "fig10", "fig11")


def plot_series(library: Library, figure: str) -> list[tuple[float, float, str]]:
    """(x, y, series) rows backing one of the standard corpus figures.

    fig2 diversity vs length; fig3 entropy vs diversity with fitted model
    curves; fig5/fig6 emergence, self-organization and complexity vs
    diversity / vs length; fig8 merged ranked profiles; fig9 merged profile
    CDFs; fig10 whole-profile Zipf deviation vs length; fig11 tail deviation
    vs tail length.
    """
    recs = library.records
    if figure == "fig2":
        return [(r.L, r.D, r.class_label) for r in recs]
    if figure == "fig3":
        rows = [(r.d, r.h, r.class_label) for r in recs]
        for label, fit in sorted(library.alpha_fits().items()):
            rows.extend(
                (i / 256.0, (i / 256.0) ** fit.q, f"model:{label}")
                for i in range(1, 257)
            )
        return rows
    if figure in ("fig5", "fig6"):
        rows = []
        for r in recs:
            x = r.d if figure == "fig5" else r.L
            rows.extend([
                (x, r.e, f"{r.class_label}:e"),
                (x, r.s, f"{r.class_label}:s"),
                (x, r.c, f"{r.class_label}:c"),
            ])
        return rows
    if figure == "fig8":
        return [
            (e.rank, e.frequency, label)
            for label, profile in sorted(library.profiles.items())
            for e in profile.entries
        ]
    if figure == "fig9":
        rows = []
        for label, profile in sorted(library.profiles.items()):
            running = 0.0
            for e in profile.entries:
                running += e.frequency
                rows.append((e.rank, running / profile.L, label))
        return rows
    if figure == "fig10":
        return [(r.L, r.J_1D, r.class_label) for r in recs if r.J_1D is not None]
    if figure == "fig11":
        return [
            (r.L_tail if r.L_tail is not None else r.L, r.J_thetaD, r.class_label)
            for r in recs
            if r.J_thetaD is not None
        ]
    raise ValueError(f"unknown figure {figure!r}; known: {', '.join(PLOT_FIGURES)}")


def write_plot_tsv(rows: Sequence[tuple[float, float, str]], dest: str | Path | io.TextIOBase) -> None:
    def _write(fp):
        fp.write("x\ty\tseries\n")
        for x, y, series in rows:
            fp.write(f"{_format_cell(x)}\t{_format_cell(y)}\t{series}\n")

    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as fp:
            _write(fp)
    else:
        _write(dest)
