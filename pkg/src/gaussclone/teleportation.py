"""Teleportation fidelity of finite coherent-state ensembles vs the no-cloning bound.

The teleporter uses a two-mode squeezed vacuum with parameter ``lam`` in
[0, 1). Its prior-averaged fidelity for a symmetric Gaussian ensemble of
width ``sigma`` is taken as given:

    Fbar_tele = (1 - 2 (lam^2 - 1) s) / (1 - 4 (lam - 1) s),   s = sigma^2.

The no-cloning threshold is the optimal cloner's average fidelity
(:func:`gaussclone.symmetric_cloner.max_average_fidelity`). Equating the two
gives the entanglement needed to beat cloning. On the broad-prior piece the
condition is the quadratic

    2 s (6 s + 1) lam^2 - 8 s (2 s + 1) lam + (2 s + 1)^2 = 0,

whose smaller root tends to 1/3 for large ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .numerics import find_root
from .symmetric_cloner import JUNCTION_VARIANCE, max_average_fidelity

LAMBDA_MAX = 1.0 - 1e-12
# below this width the bisection residual is rescaled by 1/sigma^2
SMALL_SIGMA = 0.1


@dataclass(frozen=True)
class TeleportationParams:
    lam: float
    sigma: float

    def __post_init__(self):
        _check_lambda(self.lam)
        if not self.sigma >= 0:
            raise DomainError(f"sigma must be >= 0, got {self.sigma}")

    def fidelity(self) -> float:
        return tele_fidelity(self.lam, self.sigma)


def _check_lambda(lam):
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < 0) or np.any(lam >= 1):
        raise DomainError("squeezing parameter must lie in [0, 1)")


def tele_fidelity(lam, sigma):
    """Average teleportation fidelity; broadcasts over ``lam`` and ``sigma``."""
    _check_lambda(lam)
    lam = np.asarray(lam, dtype=float)
    s = np.asarray(sigma, dtype=float) ** 2
    f = (1.0 - 2.0 * (lam**2 - 1.0) * s) / (1.0 - 4.0 * (lam - 1.0) * s)
    return float(f) if f.ndim == 0 else f


def _lambda_upper(s: float) -> float:
    # smaller root of the quadratic above, written out
    num = 8.0 * s + 16.0 * s**2 - 2.0 * np.sqrt(2.0) * np.sqrt(s * (2.0 * s - 1.0)) * (2.0 * s + 1.0)
    return num / (4.0 * s + 24.0 * s**2)


def _lambda_lower(s: float) -> float:
    k = 6.0 + 4.0 * np.sqrt(2.0)
    return (k - np.sqrt(2.0) * np.sqrt(3.0 + 2.0 * np.sqrt(2.0) + s + 2.0 * s**2)) / (k + 2.0 * s)


def nocloning_lambda(sigma: float) -> float:
    """Squeezing parameter at which teleportation exactly matches optimal cloning."""
    if not sigma >= 0:
        raise DomainError(f"sigma must be >= 0, got {sigma}")
    s = float(sigma) ** 2
    if s >= JUNCTION_VARIANCE:
        return float(_lambda_upper(s))
    return float(_lambda_lower(s))


def nocloning_lambda_bisect(sigma: float, tol: float = 1e-14) -> float:
    """Same threshold by bisection on ``tele_fidelity(lam) - max_average_fidelity``.

    Both fidelities tend to 1 as ``sigma -> 0``, so their difference is
    ``O(sigma^2)`` and vanishes identically at ``sigma = 0``. Below
    ``SMALL_SIGMA`` the residual is therefore divided by ``s = sigma^2`` and
    written out term by term, which also gives the ``sigma = 0`` limit.
    """
    if not sigma >= 0:
        raise DomainError(f"sigma must be >= 0, got {sigma}")
    if sigma >= SMALL_SIGMA:
        target = max_average_fidelity(sigma)
        residual = lambda lam: tele_fidelity(lam, sigma) - target  # noqa: E731
    else:
        residual = lambda lam: _scaled_residual_narrow(lam, float(sigma) ** 2)  # noqa: E731
    return find_root(residual, 0.0, LAMBDA_MAX, tol=tol)


def _scaled_residual_narrow(lam: float, s: float) -> float:
    # [(1 + 2(1-lam^2) s)(1 + k s) - (1 + 4(1-lam) s)] / s with k = 3 - 2 sqrt 2,
    # a positive multiple of tele - clone on the narrow-prior piece
    k = 3.0 - 2.0 * np.sqrt(2.0)
    return 2.0 * (1.0 - lam**2) * (1.0 + k * s) + k - 4.0 * (1.0 - lam)


def squeezing_db(lam):
    """Noise reduction ``S = (1 - lam)^2 / (1 - lam^2)`` in dB."""
    _check_lambda(lam)
    lam = np.asarray(lam, dtype=float)
    out = 10.0 * np.log10((1.0 - lam) ** 2 / (1.0 - lam**2))
    return float(out) if out.ndim == 0 else out


def variance_db(sigma):
    """Prior variance ``sigma^2`` in dB."""
    sigma = np.asarray(sigma, dtype=float)
    if np.any(sigma <= 0):
        raise DomainError("variance in dB needs sigma > 0")
    out = 10.0 * np.log10(sigma**2)
    return float(out) if out.ndim == 0 else out


class CrossingPoint(NamedTuple):
    sigma: float
    tele_F: float
    noclone_F: float
    above: bool


def crossing_scan(lam: float, sigma_grid) -> list[CrossingPoint]:
    """Compare teleportation and no-cloning fidelities along a sorted sigma grid.

    ``above`` is true when teleportation is at least as good as the best clone.
    """
    grid = np.asarray(sigma_grid, dtype=float)
    if grid.size == 0 or np.any(np.diff(grid) < 0):
        raise DomainError("sigma grid must be non-empty and sorted ascending")
    tele = np.atleast_1d(tele_fidelity(lam, grid))
    clone = np.atleast_1d(max_average_fidelity(grid))
    return [
        CrossingPoint(float(s), float(t), float(c), bool(t >= c))
        for s, t, c in zip(grid, tele, clone)
    ]
