import math
import random

import numpy as np
import pytest

from textropy.errors import DomainError, FitError
from textropy.metrics import ComplexityMeasures
from textropy.models import (
    alpha_from_q,
    classify_language,
    fit_alpha,
    fit_heaps,
    heaps_predict,
    model_entropy,
    q_from_alpha,
)


def measures(d, h):
    return ComplexityMeasures(d=d, h=h, e=h, s=1 - h, c=4 * h * (1 - h))


def grid_oracle_q(points, step=1e-6):
    """Dense-grid SSE minimiser, evaluated in chunks."""
    d = np.array([p[0] for p in points])
    h = np.array([p[1] for p in points])
    best_q, best_sse = 0.0, float("inf")
    qs = np.arange(0.0, 1.0, step)
    for start in range(0, len(qs), 20000):
        chunk = qs[start : start + 20000]
        sse = ((h[None, :] - d[None, :] ** chunk[:, None]) ** 2).sum(axis=1)
        i = int(np.argmin(sse))
        if sse[i] < best_sse:
            best_sse, best_q = float(sse[i]), float(chunk[i])
    return best_q


def test_fit_heaps_exact_power_law():
    points = [(L, 2.0 * L**0.7) for L in (10, 50, 100, 500, 2500, 12000)]
    fit = fit_heaps(points)
    assert fit.k == pytest.approx(2.0, abs=1e-9)
    assert fit.beta == pytest.approx(0.7, abs=1e-9)
    assert fit.rms_log_error < 1e-12
    assert fit.n_points == 6


def test_fit_heaps_underdetermined():
    with pytest.raises(FitError):
        fit_heaps([(100, 30)])
    with pytest.raises(FitError):
        fit_heaps([(100, 30), (100, 40)])  # no distinct lengths
    with pytest.raises(FitError):
        fit_heaps([(0, 3), (10, 5)])


def test_fit_heaps_matches_numpy_oracle():
    rng = random.Random(5)
    points = [
        (L, max(1.0, 3.0 * L**0.68 * rng.uniform(0.8, 1.2)))
        for L in rng.sample(range(50, 30000), 40)
    ]
    fit = fit_heaps(points)
    beta, logk = np.polyfit(
        np.log([p[0] for p in points]), np.log([p[1] for p in points]), 1
    )
    assert fit.beta == pytest.approx(float(beta), abs=1e-9)
    assert fit.k == pytest.approx(float(math.exp(logk)), rel=1e-9)


def test_fit_heaps_order_invariant():
    points = [(10, 8), (100, 40), (1000, 170), (5000, 600)]
    shuffled = list(points)
    random.Random(0).shuffle(shuffled)
    assert fit_heaps(points) == fit_heaps(shuffled)


def test_heaps_predict():
    from textropy.models import HeapsFit

    assert heaps_predict(HeapsFit(2.0, 0.7, 0.0, 2), 1) == pytest.approx(2.0)
    assert heaps_predict(HeapsFit(1.0, 1.0, 0.0, 2), 50) == pytest.approx(50.0)
    fit = HeapsFit(3.766, 0.67, 0.0, 2)
    assert heaps_predict(fit, 10000) == pytest.approx(3.766 * 10000**0.67, rel=1e-12)
    with pytest.raises(DomainError):
        heaps_predict(fit, 0)


def test_model_entropy_examples():
    assert model_entropy(1.0, 3.7) == pytest.approx(1.0, abs=1e-12)
    assert model_entropy(0.123, 2.0) == pytest.approx(1.0, abs=1e-12)
    assert model_entropy(0.435, 2.1) == pytest.approx(0.435 ** (0.1 / 1.1), rel=1e-12)
    assert model_entropy(0.435, 2.1) == pytest.approx(0.927, abs=5e-4)
    with pytest.raises(DomainError):
        model_entropy(0.0, 2.1)
    with pytest.raises(DomainError):
        model_entropy(0.5, 1.0)


def test_q_alpha_bijection():
    for i in range(100):
        q = i / 100.0
        back = q_from_alpha(alpha_from_q(q))
        assert back == pytest.approx(q, abs=1e-12)


def test_fit_alpha_exact_curve():
    # 0.09091 is the rounded print of 0.1/1.1, the exponent of alpha = 2.1
    q_exact = 0.1 / 1.1
    points = [(d / 20.0, (d / 20.0) ** q_exact) for d in range(1, 20)]
    fit = fit_alpha(points)
    assert fit.alpha == pytest.approx(2.1, abs=1e-6)
    assert fit.q == pytest.approx(q_exact, abs=1e-7)
    assert fit.sse <= 1e-20

    rounded = [(d / 20.0, (d / 20.0) ** 0.09091) for d in range(1, 20)]
    assert fit_alpha(rounded).q == pytest.approx(0.09091, abs=1e-7)


def test_fit_alpha_flat_entropy():
    points = [(0.1, 1.0), (0.4, 1.0), (0.9, 1.0)]
    assert fit_alpha(points).alpha == pytest.approx(2.0, abs=1e-6)


def test_fit_alpha_rejects_uninformative():
    with pytest.raises(FitError):
        fit_alpha([(1.0, 0.9), (1.0, 0.7)])
    with pytest.raises(FitError):
        fit_alpha([(1.2, 0.9)])


def test_fit_alpha_matches_grid_oracle():
    rng = random.Random(17)
    points = [
        (d, max(0.05, min(1.0, d**0.14 + rng.gauss(0.0, 0.02))))
        for d in (rng.uniform(0.02, 0.95) for _ in range(100))
    ]
    fit = fit_alpha(points)
    assert fit.q == pytest.approx(grid_oracle_q(points), abs=1e-5)


def test_fit_alpha_order_invariant_and_local_minimum():
    rng = random.Random(23)
    points = [(rng.uniform(0.05, 0.9), rng.uniform(0.5, 1.0)) for _ in range(60)]
    fit = fit_alpha(points)
    shuffled = list(points)
    rng.shuffle(shuffled)
    assert fit_alpha(shuffled).q == pytest.approx(fit.q, abs=1e-12)

    def sse(q):
        return math.fsum((h - d**q) ** 2 for d, h in points)

    for dq in (-1e-3, 1e-3):
        q2 = fit.q + dq
        if 0.0 <= q2 < 1.0:
            assert sse(fit.q) <= sse(q2) + 1e-15


def test_classify_language():
    fits = {
        "english": fit_alpha([(d / 10, (d / 10) ** 0.1511) for d in range(1, 10)]),
        "artificial": fit_alpha([(d / 10, (d / 10) ** 0.09091) for d in range(1, 10)]),
    }
    d = 0.3
    label, residuals = classify_language(measures(d, d**0.1511), fits)
    assert label == "english"
    assert residuals["english"] == pytest.approx(0.0, abs=1e-9)
    assert residuals["artificial"] > 0

    # equidistant point: lexicographically first label wins
    h_mid = (d**fits["english"].q + d**fits["artificial"].q) / 2.0
    label_mid, _ = classify_language(measures(d, h_mid), fits)
    assert label_mid == "artificial"

    with pytest.raises(FitError):
        classify_language(measures(0.5, 0.9), {})
    with pytest.raises(DomainError):
        classify_language(measures(0.0, 0.9), fits)
