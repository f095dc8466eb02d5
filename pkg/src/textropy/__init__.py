"""Symbolic diversity, entropy, complexity and Zipf/Heaps statistics of texts.

The measurement pipeline is: tokenize a text (natural language or source
code) into symbols, rank the symbol frequencies, then derive scalar measures
(specific diversity, entropy, emergence, self-organization, complexity) and
Zipf exponents/deviations over whole profiles and their tails.  A corpus of
texts aggregates into a library with Heaps-law and entropy-model fits per
language group, group statistics, and merged language profiles.
"""

__version__ = "0.1.0"

from .corpus import (
    CorpusConfig,
    GroupSummary,
    Library,
    TextRecord,
    analyze_text,
    export_records,
    group_summary,
    ingest_directory,
    load_library,
    load_records_csv,
    merged_language_profile,
)
from .dialects import BUILTIN_DIALECTS, CodeDialect, DialectTable, builtin_table, load_dialect_table
from .errors import TextropyError
from .metrics import ComplexityMeasures, complexity_measures, entropy, specific_diversity
from .models import (
    AlphaFit,
    HeapsFit,
    classify_language,
    fit_alpha,
    fit_heaps,
    heaps_predict,
    model_entropy,
)
from .profiles import (
    CdfSeries,
    FrequencyProfile,
    build_profile,
    cdf,
    find_tail_start,
    merge_profiles,
    segment_count,
)
from .stats import Descriptive, TTestResult, descriptive_stats, pearson_correlation, welch_t_test
from .tokenizer import TokenStream, strip_comments, tokenize_artificial, tokenize_natural
from .zipf import ZipfFit, fit_zipf_exponent, tail_zipf_deviation, zipf_deviation, zipf_reference

__all__ = [
    "__version__",
    "AlphaFit",
    "BUILTIN_DIALECTS",
    "CdfSeries",
    "CodeDialect",
    "ComplexityMeasures",
    "CorpusConfig",
    "Descriptive",
    "DialectTable",
    "FrequencyProfile",
    "GroupSummary",
    "HeapsFit",
    "Library",
    "TTestResult",
    "TextRecord",
    "TextropyError",
    "TokenStream",
    "ZipfFit",
    "analyze_text",
    "build_profile",
    "builtin_table",
    "cdf",
    "classify_language",
    "complexity_measures",
    "entropy",
    "export_records",
    "find_tail_start",
    "fit_alpha",
    "fit_heaps",
    "fit_zipf_exponent",
    "group_summary",
    "heaps_predict",
    "ingest_directory",
    "load_dialect_table",
    "load_library",
    "load_records_csv",
    "merge_profiles",
    "merged_language_profile",
    "model_entropy",
    "pearson_correlation",
    "segment_count",
    "specific_diversity",
    "strip_comments",
    "tail_zipf_deviation",
    "tokenize_artificial",
    "tokenize_natural",
    "welch_t_test",
    "zipf_deviation",
    "zipf_reference",
]
