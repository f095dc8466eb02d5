"""Corpus-level regression models.

Two one-parameter families describe a language group:

* Heaps growth ``D = k * L^beta``, fitted by ordinary least squares on
  (log L, log D);
* the entropy model ``h = d^q`` with ``q = (alpha - 2)/(alpha - 1)``, fitted
  by minimising the squared entropy residual over q in [0, 1).

The classifier assigns a measurement to the fitted group whose entropy curve
passes closest to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DomainError, FitError
from .metrics import ComplexityMeasures

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_Q_MAX = 1.0 - 1e-9


@dataclass(frozen=True)
class HeapsFit:
    """Power-law vocabulary growth D = k * L^beta."""

    k: float
    beta: float
    rms_log_error: float
    n_points: int


@dataclass(frozen=True)
class AlphaFit:
    """Entropy model h = d^q with q = (alpha - 2)/(alpha - 1)."""

    alpha: float
    q: float
    sse: float
    n_points: int


def q_from_alpha(alpha: float) -> float:
    if alpha == 1.0:
        raise DomainError("alpha = 1 is the singular point of the exponent map")
    return (alpha - 2.0) / (alpha - 1.0)


def alpha_from_q(q: float) -> float:
    if q == 1.0:
        raise DomainError("q = 1 has no finite alpha")
    return (2.0 - q) / (1.0 - q)


def fit_heaps(points: Sequence[tuple[float, float]]) -> HeapsFit:
    """Least-squares fit of log D = log k + beta * log L."""
    if any(L < 1 or D < 1 for L, D in points):
        raise FitError("Heaps fit needs L >= 1 and D >= 1 for every point")
    xs = [math.log(L) for L, _ in points]
    ys = [math.log(D) for _, D in points]
    if len(set(xs)) < 2:
        raise FitError("Heaps fit needs at least 2 points with distinct L")
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    beta = sxy / sxx
    logk = my - beta * mx
    rms = math.sqrt(
        math.fsum((y - (logk + beta * x)) ** 2 for x, y in zip(xs, ys)) / n
    )
    return HeapsFit(k=math.exp(logk), beta=beta, rms_log_error=rms, n_points=n)


def heaps_predict(fit: HeapsFit, L: float) -> float:
    """Expected diversity at length L under the fitted growth law."""
    if L < 1:
        raise DomainError("length must be >= 1")
    return fit.k * L ** fit.beta


def model_entropy(d: float, alpha: float) -> float:
    """Model entropy d^((alpha-2)/(alpha-1)) at specific diversity d."""
    if not 0.0 < d <= 1.0:
        raise DomainError(f"specific diversity must lie in (0, 1], got {d}")
    return d ** q_from_alpha(alpha)


def _sse(points: Sequence[tuple[float, float]], q: float) -> float:
    return math.fsum((h - d ** q) ** 2 for d, h in points)


def fit_alpha(points: Sequence[tuple[float, float]]) -> AlphaFit:
    """Fit alpha by least squares on the entropy residuals h - d^q.

    The objective is scanned on a dense q grid over [0, 1) and the winning
    cell is refined by golden-section search, so no unimodality assumption is
    needed.  Points at d = 1 carry no information about q.
    """
    for d, _h in points:
        if not 0.0 < d <= 1.0:
            raise FitError(f"specific diversity must lie in (0, 1], got {d}")
    if not any(d < 1.0 for d, _h in points):
        raise FitError("q is unidentifiable: every point has d = 1")

    grid = [i * _Q_MAX / 4096 for i in range(4097)]
    best = min(range(len(grid)), key=lambda i: _sse(points, grid[i]))
    lo = grid[max(0, best - 1)]
    hi = grid[min(len(grid) - 1, best + 1)]

    # golden-section refinement of the bracketing cell
    c = hi - _GOLDEN * (hi - lo)
    d_ = lo + _GOLDEN * (hi - lo)
    fc, fd = _sse(points, c), _sse(points, d_)
    while hi - lo > 1e-12:
        if fc < fd:
            hi, d_, fd = d_, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = _sse(points, c)
        else:
            lo, c, fc = c, d_, fd
            d_ = lo + _GOLDEN * (hi - lo)
            fd = _sse(points, d_)
    q = (lo + hi) / 2.0
    return AlphaFit(alpha=alpha_from_q(q), q=q, sse=_sse(points, q), n_points=len(points))


def classify_language(
    measures: ComplexityMeasures, fits: Mapping[str, AlphaFit]
) -> tuple[str, dict[str, float]]:
    """Label of the entropy curve nearest to (d, h), with all residuals.

    Ties go to the lexicographically first label.
    """
    if not fits:
        raise FitError("no fitted models to classify against")
    if not 0.0 < measures.d <= 1.0:
        raise DomainError(f"specific diversity must lie in (0, 1], got {measures.d}")
    residuals = {
        label: abs(measures.h - measures.d ** fit.q) for label, fit in fits.items()
    }
    label = min(sorted(residuals), key=residuals.__getitem__)
    return label, residuals
