"""Ranked symbol-frequency profiles and operations on them.

A profile is the descending-frequency ranking of the distinct symbols of one
text.  Ties are broken by lexicographic symbol order so that ranking is
deterministic across runs and platforms.  ``theta`` marks the tail start: the
deepest rank whose frequency value is shared by no other rank (the tail is
the rank interval [theta, D], inclusive).  Frequencies are integer counts for
real texts; synthetic diagnostic profiles may carry real-valued frequencies.
"""

from __future__ import annotations

import csv
import io
import re
from collections import Counter
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import EmptyProfileError, SegmentBoundsError
from .tokenizer import TokenStream


class ProfileEntry(NamedTuple):
    rank: int
    symbol: str
    frequency: float  # integer count for real texts


class CdfPoint(NamedTuple):
    rank: int
    cumulative: float


@dataclass(frozen=True)
class FrequencyProfile:
    """Descending-frequency ranking of the distinct symbols of a text."""

    entries: tuple[ProfileEntry, ...]
    L: float
    D: int
    theta: int

    def __post_init__(self):
        prev = None
        for e in self.entries:
            if e.frequency <= 0:
                raise ValueError(f"frequency must be positive at rank {e.rank}")
            if prev is not None and e.frequency > prev:
                raise ValueError(f"frequencies must be non-increasing (rank {e.rank})")
            prev = e.frequency
        if self.D != len(self.entries):
            raise ValueError("D must equal the number of entries")
        if self.D >= 1 and not 1 <= self.theta <= self.D:
            raise ValueError(f"theta must lie in [1, D], got {self.theta}")

    @property
    def frequencies(self) -> tuple[float, ...]:
        return tuple(e.frequency for e in self.entries)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(e.symbol for e in self.entries)

    def counts(self) -> dict[str, float]:
        return {e.symbol: e.frequency for e in self.entries}


@dataclass(frozen=True)
class CdfSeries:
    """Cumulative token fraction by rank; the last point is exactly 1."""

    points: tuple[CdfPoint, ...]


def from_counts(counts: Mapping[str, float]) -> FrequencyProfile:
    """Build a profile from a symbol -> count mapping (rank ties by symbol)."""
    entries = tuple(
        ProfileEntry(rank=i + 1, symbol=sym, frequency=freq)
        for i, (sym, freq) in enumerate(
            sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        )
    )
    L = sum(e.frequency for e in entries)
    D = len(entries)
    theta = _tail_start(tuple(e.frequency for e in entries)) if D else 0
    return FrequencyProfile(entries=entries, L=L, D=D, theta=theta)


def build_profile(tokens: TokenStream | Iterable[str]) -> FrequencyProfile:
    """Count tokens into a ranked profile; an empty stream gives L=0, D=0."""
    return from_counts(Counter(iter(tokens)))


def from_frequencies(freqs: Sequence[float]) -> FrequencyProfile:
    """Profile with synthetic symbols s0001.. for a frequency sequence."""
    width = max(4, len(str(len(freqs))))
    return from_counts({f"s{i:0{width}d}": f for i, f in enumerate(freqs)})


def _tail_start(freqs: tuple[float, ...]) -> int:
    multiplicity = Counter(freqs)
    for rank in range(len(freqs), 0, -1):
        if multiplicity[freqs[rank - 1]] == 1:
            return rank
    return 1  # no frequency value is unique: the whole profile is tail


def find_tail_start(profile: FrequencyProfile) -> int:
    """Deepest rank holding a frequency value no other rank has (else 1)."""
    if profile.D < 1:
        raise EmptyProfileError("tail start is undefined for an empty profile")
    return _tail_start(profile.frequencies)


def segment_count(profile: FrequencyProfile, a: int, b: int) -> float:
    """Total number of symbol appearances over the rank segment [a, b]."""
    if not 1 <= a <= b <= profile.D:
        raise SegmentBoundsError(
            f"segment [{a}, {b}] outside ranks [1, {profile.D}]"
        )
    return sum(e.frequency for e in profile.entries[a - 1 : b])


def merge_profiles(p1: FrequencyProfile, p2: FrequencyProfile) -> FrequencyProfile:
    """Symbol-wise sum of two profiles, re-ranked."""
    counts = Counter(p1.counts())
    counts.update(p2.counts())
    return from_counts(counts)


def cdf(profile: FrequencyProfile) -> CdfSeries:
    """Cumulative fraction of tokens covered by the top-k ranks."""
    if profile.D < 1:
        raise EmptyProfileError("CDF is undefined for an empty profile")
    running = accumulate(e.frequency for e in profile.entries)
    return CdfSeries(
        points=tuple(
            CdfPoint(rank=i + 1, cumulative=c / profile.L)
            for i, c in enumerate(running)
        )
    )


def write_profile_csv(profile: FrequencyProfile, dest: str | Path | io.TextIOBase) -> None:
    """Serialize as rank,symbol,frequency with a summary comment line."""

    def _write(fp):
        fp.write(f"# L={profile.L} D={profile.D} theta={profile.theta}\n")
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(["rank", "symbol", "frequency"])
        for e in profile.entries:
            writer.writerow([e.rank, e.symbol, e.frequency])

    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as fp:
            _write(fp)
    else:
        _write(dest)


def read_profile_csv(src: str | Path | io.TextIOBase) -> FrequencyProfile:
    """Inverse of :func:`write_profile_csv`."""
    if isinstance(src, (str, Path)):
        text = Path(src).read_text(encoding="utf-8")
    else:
        text = src.read()
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("profile CSV must start with a '# L=.. D=.. theta=..' line")
    header = dict(re.findall(r"(\w+)=([^\s]+)", lines[0]))
    reader = csv.reader(lines[1:])
    rows = list(reader)
    if rows and rows[0] == ["rank", "symbol", "frequency"]:
        rows = rows[1:]
    counts: dict[str, float] = {}
    for rank, symbol, freq in rows:
        value = float(freq)
        counts[symbol] = int(value) if value.is_integer() else value
    profile = from_counts(counts)
    declared = int(header.get("D", profile.D))
    if declared != profile.D:
        raise ValueError(f"header D={declared} does not match {profile.D} rows")
    return profile
