import csv
from pathlib import Path

import pytest

from textropy.corpus import library_from_records, load_records_csv

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA = REPO_ROOT / "data"
SAMPLES = REPO_ROOT / "samples"
REFERENCE_CSV = DATA / "reference_corpus.csv"


@pytest.fixture(scope="session")
def reference_records():
    return load_records_csv(REFERENCE_CSV)


@pytest.fixture(scope="session")
def reference_library(reference_records):
    return library_from_records(reference_records)


@pytest.fixture(scope="session")
def reference_rows():
    """Raw fixture rows with printed (string) values preserved."""
    with open(REFERENCE_CSV, newline="", encoding="utf-8") as fp:
        return list(csv.DictReader(fp))


def group(records, label):
    return [r for r in records if r.class_label == label]
