"""Cloner for coherent states on a line: OPO followed by a squeezed-port beam splitter.

The input is amplified in X+ by an OPO of gain ``H`` and split on a 50:50
beam splitter whose dark port carries squeezed vacuum with
``cov = diag(v_plus, 1 / v_plus)``. Unity gain on X+ needs ``H = 9/8``. At
unity gain the clone fidelity no longer depends on the amplitude and reads

    F(v) = 2 / sqrt((5/4 + 1/(2 v)) (2 + v/2)),

maximal at ``v = sqrt(8/5)`` with ``F = (4/9)(sqrt(10) - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import ensembles, numerics
from .ensembles import EnsembleAverage, GaussianEnsemble
from .errors import DomainError
from .phase_space import (
    CoherentAmplitude,
    GaussianState,
    apply_beam_splitter,
    apply_opo,
    apply_quadrature_scaling,
    coherent_state,
    fidelity_vs_coherent,
    gaussian_coherent_fidelity,
    opo_factors,
    squeezed_vacuum,
    tensor,
    vacuum,
)

UNITY_GAIN_H = 9.0 / 8.0
OPTIMAL_V_PLUS = float(np.sqrt(8.0 / 5.0))
MAX_LINE_FIDELITY = float(4.0 / 9.0 * (np.sqrt(10.0) - 1.0))

# default line ensemble for parameter sweeps: broad along X+, none along X-
SWEEP_SIGMA_X = 1e3
SWEEP_SIGMA_Y = 0.0


@dataclass(frozen=True)
class LineClonerConfig:
    H: float = UNITY_GAIN_H
    v_plus: float = OPTIMAL_V_PLUS

    def __post_init__(self):
        if not self.H >= 1:
            raise DomainError(f"OPO gain must satisfy H >= 1, got {self.H}")
        if not self.v_plus > 0:
            raise DomainError(f"injected variance must be positive, got {self.v_plus}")


@dataclass(frozen=True, eq=False)
class TwoCloneCovariance:
    """Joint moments of ``(X+_1, X-_1, X+_2, X-_2)`` for both clones."""

    mean: np.ndarray
    cov: np.ndarray

    @classmethod
    def from_state(cls, state: GaussianState) -> "TwoCloneCovariance":
        if state.n_modes != 2:
            raise DomainError("expected a two-mode state")
        return cls(np.array(state.mean), np.array(state.cov))

    def to_state(self) -> GaussianState:
        return GaussianState(self.mean, self.cov)

    def clone_variances(self, clone: int) -> tuple[float, float]:
        i = 2 * clone
        return float(self.cov[i, i]), float(self.cov[i + 1, i + 1])


def unity_gain_H() -> float:
    """OPO gain for which each clone's X+ gain after the 50:50 split is 1."""
    return UNITY_GAIN_H


def unity_gain_H_bisect(tol: float = 1e-14) -> float:
    return numerics.find_root(lambda H: opo_factors(H)[0] / np.sqrt(2.0) - 1.0, 1.0, 2.0, tol=tol)


def clone_line_state(alpha_x: float, config: LineClonerConfig) -> GaussianState:
    state = tensor(coherent_state(CoherentAmplitude(alpha_x, 0.0)), squeezed_vacuum(config.v_plus))
    state = apply_opo(state, 0, config.H)
    return apply_beam_splitter(state, 0, 1, 0.5)


def clone_line_two_opo_state(alpha_x: float, config: LineClonerConfig) -> GaussianState:
    """Equivalent machine: vacuum at the splitter, one OPO per output arm.

    The input OPO amplifies X+ by ``(sqrt H + sqrt(H-1)) / sqrt(v)`` and each
    arm then rescales X+ by ``sqrt(v)``; an OPO pumped with the opposite
    phase stands in whenever a factor drops below 1, so each element is
    applied directly by its scale factor.
    """
    k_total = opo_factors(config.H)[0]
    k_in = k_total / np.sqrt(config.v_plus)
    k_arm = np.sqrt(config.v_plus)

    state = tensor(coherent_state(CoherentAmplitude(alpha_x, 0.0)), vacuum())
    state = apply_quadrature_scaling(state, 0, k_in)
    state = apply_beam_splitter(state, 0, 1, 0.5)
    state = apply_quadrature_scaling(state, 0, k_arm)
    return apply_quadrature_scaling(state, 1, k_arm)


def clone_line(
    alpha_x: float, config: LineClonerConfig, construction: str = "squeezed_port"
) -> TwoCloneCovariance:
    """Joint clone moments for real input amplitude ``alpha_x``."""
    if construction == "squeezed_port":
        state = clone_line_state(alpha_x, config)
    elif construction == "two_opo":
        state = clone_line_two_opo_state(alpha_x, config)
    else:
        raise DomainError(f"unknown construction {construction!r}")
    return TwoCloneCovariance.from_state(state)


def clone_variance_formula(H: float, v_plus: float) -> tuple[float, float]:
    """Per-clone ``(V+, V-)`` written directly in terms of ``H`` and the injected variance."""
    a, b = np.sqrt(H), np.sqrt(H - 1.0)
    return 0.5 * (b + a) ** 2 + 0.5 * v_plus, 0.5 * (b - a) ** 2 + 0.5 / v_plus


def fidelity_line(v_plus):
    """Unity-gain clone fidelity as a function of the injected X+ variance."""
    v = np.asarray(v_plus, dtype=float)
    if np.any(v <= 0):
        raise DomainError("injected variance must be positive")
    f = 2.0 / np.sqrt((1.25 + 0.5 / v) * (2.0 + 0.5 * v))
    return float(f) if f.ndim == 0 else f


def fidelity_line_circuit(alpha_x: float, config: LineClonerConfig, clone: int = 0) -> float:
    """Fidelity of one clone with ``|alpha_x>`` from the composed circuit."""
    state = clone_line_state(alpha_x, config)
    return fidelity_vs_coherent(CoherentAmplitude(alpha_x, 0.0), state, clone)


def optimal_vsqz() -> tuple[float, float]:
    """Closed-form optimum ``(v_plus, F_max)``."""
    return OPTIMAL_V_PLUS, MAX_LINE_FIDELITY


def optimal_vsqz_numeric(lo: float = 1e-6, hi: float = 10.0, tol: float = 1e-12) -> numerics.OptimizationResult:
    return numerics.maximize_scalar(fidelity_line, lo, hi, tol=tol)


def snr_plus(v_plus):
    """X+ signal-to-noise transfer of a single unity-gain clone, ``2 / (2 + v)``."""
    v = np.asarray(v_plus, dtype=float)
    if np.any(v <= 0):
        raise DomainError("injected variance must be positive")
    out = 2.0 / (2.0 + v)
    return float(out) if out.ndim == 0 else out


def _signal_gains(config: LineClonerConfig) -> np.ndarray:
    # input X+ mean is 2 alpha_x, so alpha_x = 0.5 gives the gain vector directly
    return clone_line(0.5, config).mean


def snr_plus_circuit(config: LineClonerConfig) -> float:
    gains = _signal_gains(config)
    v_plus, _ = clone_line(0.0, config).clone_variances(0)
    return float(gains[0] ** 2 / v_plus)


def sum_snr_transfer(config: LineClonerConfig) -> float:
    """SNR transfer of ``X+_1 + X+_2`` relative to the input X+."""
    gains = _signal_gains(config)
    cov = clone_line(0.0, config).cov
    w = np.array([1.0, 0.0, 1.0, 0.0])
    return float((w @ gains) ** 2 / (w @ cov @ w))


def duan_value(cov) -> float:
    """``V((X+_1 - X+_2)/sqrt 2) + V((X-_1 + X-_2)/sqrt 2)``; below 2 witnesses entanglement.

    Accepts a :class:`TwoCloneCovariance`, a two-mode :class:`GaussianState`
    or a bare 4x4 array.
    """
    c = np.asarray(getattr(cov, "cov", cov), dtype=float)
    if c.shape != (4, 4):
        raise DomainError("duan_value needs a 4x4 two-mode covariance")
    u = np.array([1.0, 0.0, -1.0, 0.0]) / np.sqrt(2.0)
    v = np.array([0.0, 1.0, 0.0, 1.0]) / np.sqrt(2.0)
    return float(u @ c @ u + v @ c @ v)


def line_average_fidelity(
    config: LineClonerConfig,
    ensemble: GaussianEnsemble | None = None,
    method: str = "closed",
    budget: int | None = None,
    seed: int = 0,
) -> EnsembleAverage:
    """Clone fidelity averaged over a line ensemble of coherent states.

    The clone's means are linear in ``alpha`` and its covariance is diagonal,
    so each axis contributes a factor
    ``1 / sqrt(1 + 4 (g - 1)^2 sigma^2 / (1 + V))`` to the Gaussian average.
    Gains and variances are read off the circuit. ``"quadrature"`` and
    ``"monte_carlo"`` integrate the same circuit fidelity numerically.
    """
    if ensemble is None:
        ensemble = GaussianEnsemble(SWEEP_SIGMA_X, SWEEP_SIGMA_Y)
    if ensemble.mean_x or ensemble.mean_y:
        raise DomainError("line ensembles are taken to be centred on the vacuum")

    state0 = clone_line_state(0.0, config)
    v_plus, v_minus = state0.variances(0)
    probe = clone_state_probe(config)
    g_plus, g_minus = probe

    if method == "closed":
        peak = 2.0 / np.sqrt((1.0 + v_plus) * (1.0 + v_minus))
        fx = 1.0 + 4.0 * (g_plus - 1.0) ** 2 * ensemble.sigma_x**2 / (1.0 + v_plus)
        fy = 1.0 + 4.0 * (g_minus - 1.0) ** 2 * ensemble.sigma_y**2 / (1.0 + v_minus)
        return EnsembleAverage(float(peak / np.sqrt(fx * fy)), "closed")

    def fidelity(alpha: CoherentAmplitude):
        ax, ay = np.asarray(alpha.re), np.asarray(alpha.im)
        return gaussian_coherent_fidelity(ax, ay, 2 * g_plus * ax, 2 * g_minus * ay, v_plus, v_minus)

    return ensembles.average(fidelity, ensemble, method, budget=budget, seed=seed)


def clone_state_probe(config: LineClonerConfig) -> tuple[float, float]:
    """Amplitude gains ``(g+, g-)`` of clone 0 on X+ and X-.

    The machine only ever sees real inputs in :func:`clone_line`, so the X-
    gain is probed with an imaginary amplitude here.
    """
    state = tensor(coherent_state(CoherentAmplitude(0.5, 0.5)), squeezed_vacuum(config.v_plus))
    state = apply_opo(state, 0, config.H)
    state = apply_beam_splitter(state, 0, 1, 0.5)
    g_plus, g_minus = state.mode_mean(0)
    return float(g_plus), float(g_minus)


class SweepResult(NamedTuple):
    H: float
    v_plus: float
    fidelity: float
    grid_best: float
    n_evaluations: int


def parameter_sweep(
    H_range: tuple[float, float] = (1.0, 4.0),
    v_range: tuple[float, float] = (1e-3, 10.0),
    n_H: int = 61,
    n_v: int = 61,
    ensemble: GaussianEnsemble | None = None,
    fixed_H: float | None = None,
    fixed_v: float | None = None,
    n_starts: int = 5,
    rounds: int = 30,
) -> SweepResult:
    """Grid search plus local refinement of the line-averaged fidelity over ``(H, v_plus)``.

    The ``v_plus`` grid is logarithmic. The best ``n_starts`` grid cells are
    refined by alternating golden-section searches: ``H`` within the
    neighbouring grid cells, ``log v_plus`` over the whole range (away from
    ``H = 9/8`` the fidelity keeps growing with ``v_plus``, so a local
    ``v_plus`` bracket would pin the search to the ridge's wrong side).
    Pass ``fixed_H`` or ``fixed_v`` to restrict the search to one axis.
    """
    if ensemble is None:
        ensemble = GaussianEnsemble(SWEEP_SIGMA_X, SWEEP_SIGMA_Y)
    count = 0

    def fid(H, v):
        nonlocal count
        count += 1
        return line_average_fidelity(LineClonerConfig(H, v), ensemble).value

    Hs = np.array([fixed_H]) if fixed_H is not None else np.linspace(*H_range, n_H)
    vs = (
        np.array([fixed_v])
        if fixed_v is not None
        else np.geomspace(v_range[0], v_range[1], n_v)
    )
    table = np.array([[fid(H, v) for v in vs] for H in Hs])
    grid_best = float(table.max())
    log_lo, log_hi = np.log(vs[0]), np.log(vs[-1])

    order = np.argsort(table, axis=None)[::-1][:n_starts]
    best = (-np.inf, None, None)
    for flat in order:
        i, j = np.unravel_index(flat, table.shape)
        H, v = Hs[i], vs[j]
        H_lo, H_hi = Hs[max(i - 1, 0)], Hs[min(i + 1, Hs.size - 1)]
        f = table[i, j]
        for _ in range(rounds):
            f_old = f
            if H_hi > H_lo:
                H = numerics.maximize_scalar(lambda h: fid(h, v), H_lo, H_hi, tol=1e-12).argmax
            if log_hi > log_lo:
                r = numerics.maximize_scalar(lambda t: fid(H, np.exp(t)), log_lo, log_hi, tol=1e-12)
                v = float(np.exp(r.argmax))
            f = fid(H, v)
            if abs(f - f_old) < 1e-15:
                break
        if f > best[0]:
            best = (f, H, v)

    f, H, v = best
    return SweepResult(float(H), float(v), float(f), grid_best, count)
