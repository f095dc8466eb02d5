"""Per-text scalar measures over a frequency profile.

All measures live in [0, 1]:

* ``d``  specific diversity, distinct symbols per token (D/L);
* ``h``  Shannon entropy of the symbol distribution with logarithm base D,
  so one symbol gives 0 and a uniform all-distinct text gives 1;
* ``e``  emergence, identical to ``h``;
* ``s``  self-organization, 1 - h;
* ``c``  complexity, 4*e*s, maximal when chaos and order balance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyProfileError
from .profiles import FrequencyProfile


@dataclass(frozen=True)
class ComplexityMeasures:
    d: float
    h: float
    e: float
    s: float
    c: float


def _require_tokens(profile: FrequencyProfile) -> None:
    if profile.D < 1 or profile.L <= 0:
        raise EmptyProfileError("measure is undefined for an empty profile")


def specific_diversity(profile: FrequencyProfile) -> float:
    """Distinct symbols per token: D/L in (0, 1]."""
    _require_tokens(profile)
    return profile.D / profile.L


def entropy(profile: FrequencyProfile) -> float:
    """Base-D Shannon entropy of the symbol distribution, in [0, 1].

    With a single distinct symbol the base-D logarithm is undefined; the
    limit value 0 is returned.
    """
    _require_tokens(profile)
    if profile.D == 1:
        return 0.0
    L = profile.L
    log_d = math.log(profile.D)
    h = -math.fsum(
        (f / L) * (math.log(f / L) / log_d) for f in profile.frequencies
    )
    # guard against floating rounding just outside [0, 1]
    return min(1.0, max(0.0, h))


def complexity_measures(profile: FrequencyProfile) -> ComplexityMeasures:
    """The full (d, h, e, s, c) vector of one profile."""
    _require_tokens(profile)
    h = entropy(profile)
    return ComplexityMeasures(
        d=specific_diversity(profile),
        h=h,
        e=h,
        s=1.0 - h,
        c=4.0 * h * (1.0 - h),
    )
