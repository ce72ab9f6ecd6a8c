"""Estimating a coherent amplitude from dual-homodyne data or from clones.

Measurement records are simulated from the same phase-space circuit as the
cloner: X+ is read from clone 0 and X- from clone 1. At ``G = 1`` this is
plain dual-homodyne (heterodyne) detection.

Mean-squared errors are reported per real component, ``|alpha' - alpha|^2 / 2``,
so for the Bayes estimator they compare directly with the posterior
variance ``sigma^2 / (2 sigma^2 + 1)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import numerics
from .ensembles import EnsembleAverage, GaussianEnsemble, _chunk_sizes, _draw
from .errors import DomainError
from .phase_space import CoherentAmplitude
from .symmetric_cloner import ClonerConfig, clone_state, optimal_gain

ESTIMATORS = ("bayes", "naive", "clone")


@dataclass(frozen=True)
class DualHomodyneOutcome:
    """Measured X+ (from one output arm) and X- (from the other)."""

    x_plus: np.ndarray | float
    x_minus: np.ndarray | float


def _measurement_model(G: float) -> tuple[np.ndarray, np.ndarray]:
    """Gains ``(g+, g-)`` and 2x2 covariance of the measured ``(X+_0, X-_1)``."""
    config = ClonerConfig(G)
    zero = clone_state(CoherentAmplitude(), config)
    probe = clone_state(CoherentAmplitude(0.5, 0.5), config)
    idx = [0, 3]
    gains = probe.mean[idx]
    cov = zero.cov[np.ix_(idx, idx)]
    return gains, cov


def simulate_measurement(
    alpha: CoherentAmplitude, G: float, rng: np.random.Generator
) -> DualHomodyneOutcome:
    """One (X+, X-) record per amplitude in ``alpha`` after a cloner of gain ``G``."""
    gains, cov = _measurement_model(G)
    ax, ay = np.broadcast_arrays(np.asarray(alpha.re, float), np.asarray(alpha.im, float))
    n = ax.size
    z = rng.standard_normal((n, 2)) @ np.linalg.cholesky(cov).T
    x_plus = 2.0 * gains[0] * ax.reshape(-1) + z[:, 0]
    x_minus = 2.0 * gains[1] * ay.reshape(-1) + z[:, 1]
    if ax.ndim == 0:
        return DualHomodyneOutcome(float(x_plus[0]), float(x_minus[0]))
    return DualHomodyneOutcome(x_plus.reshape(ax.shape), x_minus.reshape(ax.shape))


def simulate_dual_homodyne(alpha: CoherentAmplitude, seed: int) -> DualHomodyneOutcome:
    """Dual-homodyne record(s) for ``alpha``; deterministic for a given seed.

    Each quadrature has mean ``sqrt(2) * alpha`` component and unit variance.
    """
    return simulate_measurement(alpha, 1.0, numerics.seeded_stream(seed))


def shrinkage_factor(sigma: float) -> float:
    s = float(sigma) ** 2
    return 2.0 * s / (2.0 * s + 1.0)


def bayes_estimate(outcome: DualHomodyneOutcome, sigma: float) -> CoherentAmplitude:
    """Posterior-mean estimate ``(1/sqrt 2) (2 s / (2 s + 1)) (X+ + i X-)``, ``s = sigma^2``."""
    c = shrinkage_factor(sigma) / np.sqrt(2.0)
    return CoherentAmplitude(c * np.asarray(outcome.x_plus), c * np.asarray(outcome.x_minus))


def naive_estimate(outcome: DualHomodyneOutcome) -> CoherentAmplitude:
    """Unshrunk dual-homodyne estimate ``(X+ + i X-) / sqrt(2)``."""
    c = 1.0 / np.sqrt(2.0)
    return CoherentAmplitude(c * np.asarray(outcome.x_plus), c * np.asarray(outcome.x_minus))


def clone_based_estimate(x_plus_clone1, x_minus_clone2) -> CoherentAmplitude:
    """``(X+ + i X-) / 2`` from X+ of one optimal clone and X- of the other."""
    return CoherentAmplitude(0.5 * np.asarray(x_plus_clone1), 0.5 * np.asarray(x_minus_clone2))


def _errors(sigma, n, rng, G, coefficient):
    ensemble = GaussianEnsemble.symmetric(sigma)
    if ensemble.is_delta:
        alpha = CoherentAmplitude(np.zeros(n), np.zeros(n))
    else:
        alpha = _draw(ensemble, n, rng)
    outcome = simulate_measurement(alpha, G, rng)
    ex = coefficient * outcome.x_plus - alpha.re
    ey = coefficient * outcome.x_minus - alpha.im
    return 0.5 * (ex**2 + ey**2)


def linear_estimator_mse(
    sigma: float,
    coefficient: float,
    G: float,
    n: int,
    seed: int,
    workers: int = 1,
) -> EnsembleAverage:
    """Monte Carlo per-component MSE of ``alpha' = c (X+ + i X-)`` after a gain-``G`` cloner."""
    if n < 2:
        raise DomainError("need at least two trials")
    if workers == 1:
        errors = _errors(sigma, n, numerics.seeded_stream(seed), G, coefficient)
    else:
        streams = numerics.spawn_streams(seed, workers)
        jobs = zip(streams, _chunk_sizes(n, workers))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(lambda job: _errors(sigma, job[1], job[0], G, coefficient), jobs)
            errors = np.concatenate(list(parts))
    return EnsembleAverage(
        float(errors.mean()), "monte_carlo", float(errors.std(ddof=1) / np.sqrt(n)), n
    )


def estimator_mse(
    sigma: float,
    n: int,
    seed: int,
    estimator: str = "bayes",
    workers: int = 1,
) -> EnsembleAverage:
    """Monte Carlo per-component MSE of one of the named estimators.

    ``"bayes"`` and ``"naive"`` act on dual-homodyne data (``G = 1``);
    ``"clone"`` measures optimal clones (``G = optimal_gain(sigma)``) and
    applies the factor 1/2. The draw for a given seed is the same for every
    estimator that shares a gain, so ``bayes`` and ``naive`` see identical
    data.
    """
    if n < 1000:
        raise DomainError("estimator_mse needs n >= 1000")
    if estimator == "bayes":
        G, c = 1.0, shrinkage_factor(sigma) / np.sqrt(2.0)
    elif estimator == "naive":
        G, c = 1.0, 1.0 / np.sqrt(2.0)
    elif estimator == "clone":
        G, c = optimal_gain(sigma), 0.5
    else:
        raise DomainError(f"estimator must be one of {ESTIMATORS}, got {estimator!r}")
    return linear_estimator_mse(sigma, c, G, n, seed, workers)


def bayes_mse_theory(sigma):
    """Per-component posterior variance ``s / (2 s + 1)`` with ``s = sigma^2``."""
    s = np.asarray(sigma, dtype=float) ** 2
    return s / (2.0 * s + 1.0)
