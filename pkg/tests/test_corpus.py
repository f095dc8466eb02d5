import io
import json
import math

import pytest

from textropy.corpus import (
    CorpusConfig,
    Library,
    analyze_text,
    export_records,
    group_summary,
    ingest_directory,
    library_from_records,
    load_library,
    load_records_csv,
    merged_language_profile,
    plot_series,
    write_plot_tsv,
)
from textropy.dialects import BUILTIN_DIALECTS
from textropy.errors import CorpusError, EmptyTextError, InsufficientDataError
from textropy.profiles import from_counts
from textropy.stats import descriptive_stats, pearson_correlation
from textropy.tokenizer import read_text_file

from conftest import SAMPLES, group


def test_analyze_degenerate_text():
    record = analyze_text("a a a a", "natural")
    assert (record.L, record.D) == (4, 1)
    assert record.h == 0.0
    assert record.c == 0.0
    assert record.theta == 1
    assert record.g is None  # whole-profile fit needs D >= 2
    assert record.J_thetaD is None


def test_analyze_empty_text():
    with pytest.raises(EmptyTextError):
        analyze_text("   \n  ", "natural")


def test_analyze_hand_traced_record():
    record = analyze_text("the cat sat. the cat ran.", "natural", name="tiny")
    # tokens: the cat sat . the cat ran .  -> counts {the:2, cat:2, .:2, sat:1, ran:1}
    assert record.L == 8
    assert record.D == 5
    assert record.d == pytest.approx(5 / 8, abs=1e-12)
    assert record.theta == 1  # frequencies [2,2,2,1,1]: nothing unique
    assert record.L_tail == 8
    assert record.e == record.h
    assert record.s == pytest.approx(1 - record.h, abs=1e-15)
    assert record.c == pytest.approx(4 * record.h * (1 - record.h), abs=1e-12)
    assert record.class_label == "other"
    assert record.mode == "natural"
    assert len(record.content_digest) == 64


def test_analyze_fibonacci_sample_matches_reference_row():
    source = read_text_file(SAMPLES / "artificial" / "FibonacciNumbers.cs")
    record = analyze_text(
        source, "artificial", dialect=BUILTIN_DIALECTS["csharp"], name="FibonacciNumbers"
    )
    assert (record.L, record.D) == (62, 27)
    assert abs(record.d - 0.435) <= 0.0005
    # regression pins for the bundled sample itself
    assert record.h == pytest.approx(0.9164, abs=5e-4)
    assert record.g == pytest.approx(0.7968, abs=5e-4)
    assert record.J_1D == pytest.approx(0.4646, abs=5e-4)
    assert record.class_label == "artificial"


def test_analyze_language_class_from_lang():
    assert analyze_text("hola mundo", "natural", lang="spanish").class_label == "spanish"
    assert analyze_text("hello world", "natural", lang="english").class_label == "english"


def _write_corpus(tmp_path):
    (tmp_path / "english").mkdir()
    (tmp_path / "spanish").mkdir()
    (tmp_path / "artificial").mkdir()
    (tmp_path / "english" / "a.txt").write_text("the cat. the dog. a cat.", encoding="utf-8")
    (tmp_path / "english" / "b.txt").write_text("one two two three three three.", encoding="utf-8")
    (tmp_path / "spanish" / "c.txt").write_text("el niño corrió. el perro corrió.", encoding="utf-8")
    (tmp_path / "artificial" / "d.c").write_text("int x = 1; // init\nint y = x + 2;\n", encoding="utf-8")
    (tmp_path / "artificial" / "e.c").write_text('printf("a b"); return 0;\n', encoding="utf-8")
    return tmp_path


def test_ingest_empty_directory(tmp_path):
    library, warnings_list = ingest_directory(tmp_path)
    assert library.records == []
    assert warnings_list == []


def test_ingest_missing_root(tmp_path):
    with pytest.raises(CorpusError):
        ingest_directory(tmp_path / "nope")


def test_ingest_skips_bad_files(tmp_path):
    (tmp_path / "good.txt").write_text("hello world", encoding="utf-8")
    (tmp_path / "bad.txt").write_bytes(b"\xff\xfe broken")
    library, warnings_list = ingest_directory(tmp_path)
    assert [r.name for r in library.records] == ["good.txt"]
    assert len(warnings_list) == 1
    assert "bad.txt" in warnings_list[0]


def test_ingest_matches_individual_analysis(tmp_path):
    root = _write_corpus(tmp_path)
    library, warnings_list = ingest_directory(root)
    assert warnings_list == []
    assert len(library.records) == 5
    assert [r.name for r in library.records] == sorted(r.name for r in library.records)

    by_name = {r.name: r for r in library.records}
    source = read_text_file(root / "english" / "a.txt")
    solo = analyze_text(source, "natural", lang="english", name="english/a.txt",
                        class_label="english", source_path=str(root / "english" / "a.txt"))
    assert by_name["english/a.txt"] == solo

    assert by_name["artificial/d.c"].mode == "artificial"
    assert by_name["spanish/c.txt"].class_label == "spanish"


def test_ingest_deterministic_and_parallel(tmp_path):
    root = _write_corpus(tmp_path)
    lib1, _ = ingest_directory(root)
    lib2, _ = ingest_directory(root)
    lib3, _ = ingest_directory(root, CorpusConfig(workers=4))
    assert lib1.records == lib2.records == lib3.records
    assert lib1.profiles == lib2.profiles == lib3.profiles


def test_library_rejects_duplicate_names():
    record = analyze_text("a b c", "natural", name="dup")
    library = Library()
    library.add_record(record)
    with pytest.raises(CorpusError):
        library.add_record(record)


def test_library_json_roundtrip(tmp_path):
    root = _write_corpus(tmp_path)
    library, _ = ingest_directory(root)
    library.fit_label("english")
    path = tmp_path / "corpus.library.json"
    library.save(path)
    loaded = Library.load(path)
    assert loaded.records == library.records
    assert loaded.fits == library.fits
    assert loaded.profiles == library.profiles
    assert loaded.created == library.created


def test_group_summary_matches_direct_statistics(reference_library):
    summary = group_summary(reference_library, "english")
    records = group(reference_library.records, "english")
    j1 = [r.J_1D for r in records]
    stats = descriptive_stats(j1)
    assert summary.n == 156
    assert summary.J1D_mean == pytest.approx(stats.mean, abs=1e-15)
    assert summary.J1D_std == pytest.approx(stats.stddev, abs=1e-15)
    assert summary.corr_J1D_L == pytest.approx(
        pearson_correlation(j1, [r.L for r in records]), abs=1e-15
    )
    # reference rows carry no tail length: falls back to full length
    assert summary.tail_corr_basis == "L"

    with pytest.raises(InsufficientDataError):
        group_summary(reference_library, "klingon")


def test_group_summary_identical_records():
    # frequencies [3,2,1,1,1]: tail starts at rank 2, so J_thetaD is defined
    a = analyze_text("x x x y y z w v", "natural", name="r1")
    b = analyze_text("x x x y y z w v", "natural", name="r2")
    library = library_from_records([a, b])
    summary = group_summary(library, "other")
    assert summary.J1D_std == pytest.approx(0.0, abs=1e-15)
    assert summary.tail_corr_basis == "L_tail"


def test_merged_language_profile_example():
    p1 = from_counts({"a": 2, "b": 1})
    p2 = from_counts({"b": 3, "c": 1})
    rows = merged_language_profile([p1, p2])
    assert [(rank, sym) for rank, sym, _ in rows] == [(1, "b"), (2, "a"), (3, "c")]
    percents = [pct for _, _, pct in rows]
    assert percents[0] == pytest.approx(100 * 4 / 7, abs=1e-9)
    assert percents[1] == pytest.approx(100 * 2 / 7, abs=1e-9)
    assert percents[2] == pytest.approx(100 * 1 / 7, abs=1e-9)
    assert sum(percents) == pytest.approx(100.0, abs=1e-9)


def test_merged_language_profile_from_library(tmp_path):
    root = _write_corpus(tmp_path)
    library, _ = ingest_directory(root)
    rows = merged_language_profile(library, "english")
    assert sum(pct for _, _, pct in rows) == pytest.approx(100.0, abs=1e-9)
    merged_L = library.profiles["english"].L
    assert merged_L == sum(r.L for r in library.records_for("english"))
    with pytest.raises(CorpusError):
        merged_language_profile(library, "french")


def test_export_empty_library():
    buffer = io.StringIO()
    export_records(Library(), "csv", buffer)
    assert buffer.getvalue() == (
        "name,class,L,D,theta,d,h,e,s,c,g,g_tail,J_1D,J_thetaD\n"
    )


def test_export_roundtrip_byte_identical(tmp_path):
    root = _write_corpus(tmp_path)
    library, _ = ingest_directory(root)
    first = tmp_path / "records1.csv"
    second = tmp_path / "records2.csv"
    export_records(library, "csv", first)
    reloaded = library_from_records(load_records_csv(first))
    export_records(reloaded, "csv", second)
    assert first.read_bytes() == second.read_bytes()

    # JSON export parses and mirrors the record fields
    buffer = io.StringIO()
    export_records(library, "json", buffer)
    payload = json.loads(buffer.getvalue())
    assert len(payload) == len(library.records)
    assert payload[0]["name"] == library.records[0].name


def test_export_single_record_roundtrip(tmp_path):
    record = analyze_text("uno dos. dos tres.", "natural", name="solo")
    library = library_from_records([record])
    path = tmp_path / "one.csv"
    export_records(library, "csv", path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2
    loaded = load_records_csv(path)[0]
    for field in ("name", "L", "D", "theta", "d", "h", "g", "J_1D", "J_thetaD"):
        assert getattr(loaded, field) == getattr(record, field)


def test_load_reference_table(reference_records):
    assert len(reference_records) == 364
    counts = {
        label: len(group(reference_records, label))
        for label in ("english", "spanish", "artificial")
    }
    assert counts == {"english": 156, "spanish": 158, "artificial": 50}
    fib = next(r for r in reference_records if r.name == "FibonacciNumbers.CSharp")
    assert (fib.L, fib.D) == (62, 27)
    assert fib.e == fib.h
    assert fib.s == pytest.approx(1 - fib.h, abs=1e-15)


def test_load_library_accepts_csv(tmp_path):
    from conftest import REFERENCE_CSV

    library = load_library(REFERENCE_CSV)
    assert len(library.records) == 364
    with pytest.raises(CorpusError):
        load_library(tmp_path / "missing.json")


def test_plot_series_figures(reference_library, tmp_path):
    library = reference_library
    fig2 = plot_series(library, "fig2")
    assert len(fig2) == 364
    assert all(len(row) == 3 for row in fig2)

    for label in ("english", "spanish", "artificial"):
        library.fit_label(label)
    fig3 = plot_series(library, "fig3")
    assert any(series.startswith("model:") for _, _, series in fig3)
    assert len(fig3) == 364 + 3 * 256

    assert len(plot_series(library, "fig5")) == 3 * 364
    assert len(plot_series(library, "fig6")) == 3 * 364
    assert len(plot_series(library, "fig10")) == 364
    assert len(plot_series(library, "fig11")) == 364

    with pytest.raises(ValueError):
        plot_series(library, "fig42")

    dest = tmp_path / "fig10.tsv"
    write_plot_tsv(plot_series(library, "fig10"), dest)
    lines = dest.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x\ty\tseries"
    assert len(lines) == 365


def test_plot_profile_figures_need_profiles(tmp_path):
    root = _write_corpus(tmp_path)
    library, _ = ingest_directory(root)
    fig8 = plot_series(library, "fig8")
    fig9 = plot_series(library, "fig9")
    labels = {series for _, _, series in fig8}
    assert labels == {"english", "spanish", "artificial"}
    last_by_label = {}
    for rank, cumulative, label in fig9:
        last_by_label[label] = cumulative
    for value in last_by_label.values():
        assert value == pytest.approx(1.0, abs=1e-12)


def test_digest_depends_on_tokens():
    a = analyze_text("same text here", "natural", name="a")
    b = analyze_text("same  text\nhere", "natural", name="b")  # same tokens
    c = analyze_text("same text there", "natural", name="c")
    assert a.content_digest == b.content_digest
    assert a.content_digest != c.content_digest
