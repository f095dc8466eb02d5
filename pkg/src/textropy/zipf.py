"""Zipf exponent fitting, Zipf references and deviations.

The exponent ``g`` of a rank segment [a, b] comes from an unweighted
least-squares line through (log(r - a + 1), log f_r), reported positive.
The Zipf reference Z is the token total the segment would have if it decayed
exactly like f_a / (r - a + 1)^g from its anchor frequency f_a; the deviation
J = (actual - Z) / Z measures the relative excess over that ideal.  The
re-based rank keeps the anchor term finite and equals the plain 1/r^g form
when a = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FitError, UndefinedTailError
from .profiles import FrequencyProfile, segment_count


@dataclass(frozen=True)
class ZipfFit:
    """Fitted exponent and deviation of one rank segment."""

    a: int
    b: int
    g: float
    f_a: float
    Z: float
    J: float
    rms_log_error: float


def fit_zipf_exponent(profile: FrequencyProfile, a: int, b: int) -> float:
    """Least-squares decay exponent of f_r over ranks [a, b], reported >= 0."""
    g, _rms = _fit_exponent(profile, a, b)
    return g


def _fit_exponent(profile: FrequencyProfile, a: int, b: int) -> tuple[float, float]:
    if not 1 <= a <= b <= profile.D:
        raise FitError(f"segment [{a}, {b}] outside ranks [1, {profile.D}]")
    if b - a < 1:
        raise FitError("need at least 2 ranks to fit an exponent")
    xs = [math.log(r - a + 1) for r in range(a, b + 1)]
    ys = [math.log(f) for f in profile.frequencies[a - 1 : b]]
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    rms = math.sqrt(
        math.fsum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys)) / n
    )
    return -slope, rms


def zipf_reference(f_a: float, a: int, b: int, g: float) -> float:
    """Token total of segment [a, b] under exact Zipf decay from anchor f_a."""
    if a < 1 or b < a:
        raise ValueError(f"invalid segment [{a}, {b}]")
    if f_a <= 0:
        raise ValueError("anchor frequency must be positive")
    return f_a * math.fsum(j ** -g for j in range(1, b - a + 2))


def fit_segment(profile: FrequencyProfile, a: int, b: int) -> ZipfFit:
    """Fit g over [a, b] and evaluate Z and J for that segment."""
    g, rms = _fit_exponent(profile, a, b)
    f_a = profile.frequencies[a - 1]
    Z = zipf_reference(f_a, a, b, g)
    actual = segment_count(profile, a, b)
    return ZipfFit(a=a, b=b, g=g, f_a=f_a, Z=Z, J=(actual - Z) / Z, rms_log_error=rms)


def zipf_fit(profile: FrequencyProfile) -> ZipfFit:
    """Whole-profile fit over ranks [1, D]."""
    if profile.D < 2:
        raise FitError("whole-profile Zipf fit needs D >= 2")
    return fit_segment(profile, 1, profile.D)


def tail_zipf_fit(profile: FrequencyProfile) -> ZipfFit:
    """Tail fit over ranks [theta, D]; undefined for a single-rank tail."""
    if profile.D < 2:
        raise FitError("tail Zipf fit needs D >= 2")
    if profile.theta >= profile.D:
        raise UndefinedTailError(
            f"tail [{profile.theta}, {profile.D}] has a single rank"
        )
    return fit_segment(profile, profile.theta, profile.D)


def zipf_deviation(profile: FrequencyProfile) -> float:
    """Relative excess of L over the whole-profile Zipf reference."""
    return zipf_fit(profile).J


def tail_zipf_deviation(profile: FrequencyProfile) -> float:
    """Relative excess of the tail token count over the tail Zipf reference."""
    return tail_zipf_fit(profile).J
