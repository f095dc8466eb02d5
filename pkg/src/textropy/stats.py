"""Descriptive statistics, Pearson correlation and two-sample t tests.

The t-distribution tail probability is computed from the regularized
incomplete beta function (continued-fraction evaluation), so no external
statistics package is needed at runtime.  Group variances in the bundled
corpus differ by factors of 2-5x, so the unequal-variance (Welch) test is
the default; a pooled-variance mode is available for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateSampleError, DomainError, InsufficientDataError

_CF_EPS = 3e-16
_CF_FPMIN = 1e-300
_CF_MAXIT = 500


@dataclass(frozen=True)
class Descriptive:
    n: int
    mean: float
    stddev: float  # sample standard deviation (n - 1 denominator)


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: float
    p: float  # two-tailed
    n1: int
    n2: int


def _mean_var(xs: Sequence[float]) -> tuple[float, float]:
    n = len(xs)
    mean = math.fsum(xs) / n
    var = math.fsum((x - mean) ** 2 for x in xs) / (n - 1)
    return mean, var


def descriptive_stats(xs: Sequence[float]) -> Descriptive:
    """Sample mean and sample standard deviation."""
    if len(xs) < 2:
        raise InsufficientDataError("need at least 2 observations")
    mean, var = _mean_var(xs)
    return Descriptive(n=len(xs), mean=mean, stddev=math.sqrt(var))


def _betacf(a: float, b: float, x: float) -> float:
    # Lentz continued fraction for the incomplete beta function
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_FPMIN:
        d = _CF_FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise DomainError("shape parameters must be positive")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_two_tailed_p(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with df degrees of freedom."""
    if df <= 0:
        raise DomainError("degrees of freedom must be positive")
    if t == 0.0:
        return 1.0
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))


def welch_t_test(
    xs: Sequence[float], ys: Sequence[float], pooled: bool = False
) -> TTestResult:
    """Two-sample t test; Welch by default, pooled-variance on request."""
    n1, n2 = len(xs), len(ys)
    if n1 < 2 or n2 < 2:
        raise InsufficientDataError("each sample needs at least 2 observations")
    m1, v1 = _mean_var(xs)
    m2, v2 = _mean_var(ys)
    if v1 == 0.0 and v2 == 0.0:
        raise DegenerateSampleError("both samples have zero variance")
    if pooled:
        sp2 = ((n1 - 1) * v1 + (n2 - 1) * v2) / (n1 + n2 - 2)
        se = math.sqrt(sp2 * (1.0 / n1 + 1.0 / n2))
        df = float(n1 + n2 - 2)
    else:
        se2 = v1 / n1 + v2 / n2
        se = math.sqrt(se2)
        df = se2 ** 2 / (
            (v1 / n1) ** 2 / (n1 - 1) + (v2 / n2) ** 2 / (n2 - 1)
        )
    t = (m1 - m2) / se
    return TTestResult(t=t, df=df, p=student_t_two_tailed_p(t, df), n1=n1, n2=n2)


def pearson_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson r in [-1, 1]."""
    if len(xs) != len(ys):
        raise InsufficientDataError("samples must have equal length")
    n = len(xs)
    if n < 2:
        raise InsufficientDataError("need at least 2 observations")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    syy = math.fsum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateSampleError("correlation undefined: zero variance")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))
