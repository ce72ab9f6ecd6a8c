"""Amplifier + 50:50 beam splitter cloner for two-quadrature coherent states.

The input passes a phase-insensitive amplifier of intensity gain ``G`` and is
then split with vacuum. Each clone has amplitude gain ``g = sqrt(G/2)`` and
variance ``G`` on both quadratures. Averaged over a symmetric Gaussian prior
of width ``sigma`` the clone fidelity is

    Fbar(G, sigma) = 2 / [(1 + G) + 4 sigma^2 (1 - sqrt(G/2))^2],

obtained by integrating the coherent-state fidelity against the prior (both
are Gaussians in ``alpha``). It is maximal at ``G = max(1, 8 s^2 / (2 s + 1)^2)``
with ``s = sigma^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import ensembles, numerics
from .ensembles import EnsembleAverage, GaussianEnsemble
from .errors import DomainError, UnsupportedStateError
from .phase_space import (
    CoherentAmplitude,
    GaussianState,
    apply_beam_splitter,
    apply_phase_insensitive_amp,
    coherent_state,
    fidelity_vs_coherent,
    gaussian_coherent_fidelity,
    tensor,
    vacuum,
)

# sigma^2 at which the optimal amplifier gain reaches 1
JUNCTION_VARIANCE = 0.5 + 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class ClonerConfig:
    G: float

    def __post_init__(self):
        if not self.G >= 1:
            raise DomainError(f"amplifier gain must satisfy G >= 1, got {self.G}")

    @property
    def amplitude_gain(self) -> float:
        return float(np.sqrt(self.G / 2.0))


@dataclass(frozen=True)
class CloneReport:
    clone_mean: tuple[float, float]
    v_plus: float
    v_minus: float
    g: float
    fidelity: float
    snr_transfer: float


def clone_state(alpha: CoherentAmplitude, config: ClonerConfig) -> GaussianState:
    """Joint two-mode state of both clones (mode 0 and mode 1)."""
    state = tensor(coherent_state(alpha), vacuum())
    state = apply_phase_insensitive_amp(state, 0, config.G)
    return apply_beam_splitter(state, 0, 1, 0.5)


@lru_cache(maxsize=256)
def _channel(G: float) -> tuple[float, float, float, float]:
    """Per-clone ``(gain+, gain-, V+, V-)`` read off the composed circuit."""
    config = ClonerConfig(G)
    probe = clone_state(CoherentAmplitude(0.5, 0.5), config)
    gain_plus, gain_minus = probe.mode_mean(0)
    v_plus, v_minus = probe.variances(0)
    return float(gain_plus), float(gain_minus), v_plus, v_minus


def _snr_ratio(gain: float, v_in: float, v_out: float) -> float:
    return gain**2 * v_in / v_out


def clone(alpha: CoherentAmplitude, config: ClonerConfig, arm: int = 0) -> CloneReport:
    """Statistics of one clone (``arm`` 0 or 1) for input ``|alpha>``."""
    if arm not in (0, 1):
        raise DomainError("arm must be 0 or 1")
    state = clone_state(alpha, config)
    v_plus, v_minus = state.variances(arm)
    gain_plus, _, _, _ = _channel(config.G)
    mean = state.mode_mean(arm)
    return CloneReport(
        clone_mean=(float(mean[0]), float(mean[1])),
        v_plus=v_plus,
        v_minus=v_minus,
        g=gain_plus,
        fidelity=fidelity_vs_coherent(alpha, state, arm),
        snr_transfer=_snr_ratio(gain_plus, 1.0, v_plus),
    )


def snr_transfer(config: ClonerConfig) -> float:
    """Output/input signal-to-noise ratio of either quadrature of either clone.

    Signal power scales by ``G/2`` while the noise is ``(G + (G - 1) + 1) / 2``,
    so the ratio is 1/2 whatever the gain.
    """
    gain_plus, gain_minus, v_plus, v_minus = _channel(config.G)
    t_plus = _snr_ratio(gain_plus, 1.0, v_plus)
    t_minus = _snr_ratio(gain_minus, 1.0, v_minus)
    if abs(t_plus - t_minus) > 1e-12:
        raise AssertionError("quadrature SNR transfers differ for a phase-insensitive cloner")
    return t_plus


def average_fidelity_closed(G, sigma):
    """Closed-form prior-averaged clone fidelity; broadcasts over arrays."""
    G = np.asarray(G, dtype=float)
    s = np.asarray(sigma, dtype=float) ** 2
    return 2.0 / ((1.0 + G) + 4.0 * s * (1.0 - np.sqrt(G / 2.0)) ** 2)


def clone_fidelity_function(config: ClonerConfig):
    """Vectorized ``alpha -> F`` for clone 0, built from the circuit's moments."""
    gain_plus, gain_minus, v_plus, v_minus = _channel(config.G)

    def fidelity(alpha: CoherentAmplitude):
        return gaussian_coherent_fidelity(
            alpha.re,
            alpha.im,
            2.0 * gain_plus * np.asarray(alpha.re),
            2.0 * gain_minus * np.asarray(alpha.im),
            v_plus,
            v_minus,
        )

    return fidelity


def average_fidelity(
    config: ClonerConfig,
    sigma: float | GaussianEnsemble,
    method: str = "closed",
    budget: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> EnsembleAverage:
    """Clone fidelity averaged over a symmetric Gaussian prior.

    ``method="closed"`` evaluates the analytic formula; ``"quadrature"`` and
    ``"monte_carlo"`` integrate the circuit-derived fidelity numerically via
    :func:`gaussclone.ensembles.average`.
    """
    ensemble = sigma if isinstance(sigma, GaussianEnsemble) else GaussianEnsemble.symmetric(sigma)
    if not ensemble.is_symmetric or ensemble.mean_x or ensemble.mean_y:
        raise UnsupportedStateError(
            "the two-quadrature cloner is analysed for zero-mean symmetric priors only"
        )
    if method == "closed":
        return EnsembleAverage(float(average_fidelity_closed(config.G, ensemble.sigma_x)), "closed")
    return ensembles.average(
        clone_fidelity_function(config), ensemble, method, budget=budget, seed=seed, workers=workers
    )


def optimal_gain(sigma):
    """Amplifier gain maximizing the average fidelity for prior width ``sigma``."""
    s = np.asarray(sigma, dtype=float) ** 2
    g = np.maximum(1.0, 8.0 * s**2 / (2.0 * s + 1.0) ** 2)
    return float(g) if g.ndim == 0 else g


def max_average_fidelity(sigma):
    """Average fidelity at the optimal gain, as the two-piece closed form."""
    s = np.asarray(sigma, dtype=float) ** 2
    upper = (4.0 * s + 2.0) / (6.0 * s + 1.0)
    lower = 1.0 / ((3.0 - 2.0 * np.sqrt(2.0)) * s + 1.0)
    f = np.where(s >= JUNCTION_VARIANCE, upper, lower)
    return float(f) if f.ndim == 0 else f


def gain_bracket(sigma: float) -> tuple[float, float]:
    return 1.0, max(6.0, 4.0 * sigma**2)


def numeric_optimal_gain(
    sigma: float,
    method: str = "quadrature",
    budget: int | None = None,
    tol: float = 1e-10,
    bracket: tuple[float, float] | None = None,
) -> numerics.OptimizationResult:
    """Golden-section maximization of the average fidelity over ``G``.

    A coarse scan of the bracket picks the sub-interval that holds the
    largest sampled value before the golden-section search runs, so a
    spurious comparison far from the peak cannot discard it.
    """
    lo, hi = bracket if bracket is not None else gain_bracket(sigma)

    def fbar(G: float) -> float:
        return average_fidelity(ClonerConfig(G), sigma, method, budget=budget).value

    grid = np.linspace(lo, hi, 41)
    values = [fbar(G) for G in grid]
    k = int(np.argmax(values))
    sub_lo, sub_hi = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    result = numerics.maximize_scalar(fbar, sub_lo, sub_hi, tol=tol)
    return numerics.OptimizationResult(
        result.argmax, result.value, result.iterations + grid.size, result.tolerance_achieved
    )


def clone_quadrature_covariance(config: ClonerConfig) -> np.ndarray:
    """4x4 covariance of ``(X+_1, X-_1, X+_2, X-_2)`` for the two clones."""
    return np.array(clone_state(CoherentAmplitude(), config).cov)
