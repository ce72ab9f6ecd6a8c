"""Gaussian states as quadrature means and covariances.

Convention used everywhere in the package: the vacuum has quadrature
variance 1 and a coherent state ``|alpha>`` has means ``(2 Re alpha, 2 Im alpha)``.
Quadratures are ordered ``(X+_1, X-_1, X+_2, X-_2, ...)``.

Every optical element is an affine Gaussian channel
``mean -> T mean``, ``cov -> T cov T^T + N``. Ancilla modes introduced by
amplifiers or beam splitters are already traced out in ``N``, so callers only
ever see the modes they created.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, InvalidStateError, UnsupportedStateError

ArrayLike = Union[float, np.ndarray]

SYMMETRY_RTOL = 1e-12
PSD_TOL = 1e-12


@dataclass(frozen=True)
class CoherentAmplitude:
    """Complex coherent amplitude ``alpha = re + i im``.

    ``re`` and ``im`` may be numpy arrays of matching shape, in which case the
    object stands for a batch of amplitudes. The vectorized helpers in this
    package broadcast over such batches.
    """

    re: ArrayLike = 0.0
    im: ArrayLike = 0.0

    def __post_init__(self):
        if not (np.all(np.isfinite(self.re)) and np.all(np.isfinite(self.im))):
            raise DomainError("coherent amplitude must be finite")

    @classmethod
    def from_complex(cls, z: complex) -> "CoherentAmplitude":
        z = complex(z)
        return cls(z.real, z.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    @property
    def quadrature_means(self) -> np.ndarray:
        """Quadrature means ``(2 re, 2 im)`` of the corresponding coherent state."""
        return np.array([2.0 * self.re, 2.0 * self.im])


def symplectic_form(n_modes: int) -> np.ndarray:
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True, eq=False)
class GaussianState:
    """An ``n_modes`` Gaussian state given by its first and second moments.

    The constructor checks that ``cov`` is symmetric and satisfies
    ``cov + i Omega >= 0``; pass ``validate=False`` to skip that for
    intermediate objects that are known to be physical.
    """

    mean: np.ndarray
    cov: np.ndarray
    validate: bool = True

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float).reshape(-1)
        cov = np.array(self.cov, dtype=float)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        mean.setflags(write=False)
        cov.setflags(write=False)

        if mean.size % 2 or mean.size == 0:
            raise InvalidStateError(f"mean must have even positive length, got {mean.size}")
        if cov.shape != (mean.size, mean.size):
            raise InvalidStateError(f"cov shape {cov.shape} does not match mean length {mean.size}")
        if self.validate:
            self.check_physical()

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    def check_physical(self) -> None:
        cov = self.cov
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > SYMMETRY_RTOL * scale:
            raise InvalidStateError("covariance matrix is not symmetric")
        eig = np.linalg.eigvalsh(cov + 1j * symplectic_form(self.n_modes))
        if eig.min() < -PSD_TOL * scale:
            raise InvalidStateError(
                f"covariance violates the uncertainty relation (min eigenvalue {eig.min():.3e})"
            )

    def block(self, mode: int) -> np.ndarray:
        """The 2x2 covariance block of one mode."""
        _check_mode(self, mode)
        i = 2 * mode
        return self.cov[i : i + 2, i : i + 2]

    def mode_mean(self, mode: int) -> np.ndarray:
        _check_mode(self, mode)
        return self.mean[2 * mode : 2 * mode + 2]

    def variances(self, mode: int) -> tuple[float, float]:
        """``(V+, V-)`` of one mode."""
        b = self.block(mode)
        return float(b[0, 0]), float(b[1, 1])

    def reduced(self, modes) -> "GaussianState":
        """Marginal state on the listed modes, in the order given."""
        idx = []
        for m in modes:
            _check_mode(self, m)
            idx += [2 * m, 2 * m + 1]
        return GaussianState(self.mean[idx], self.cov[np.ix_(idx, idx)], validate=False)

    def allclose(self, other: "GaussianState", atol: float = 1e-12) -> bool:
        return (
            self.n_modes == other.n_modes
            and np.allclose(self.mean, other.mean, rtol=0, atol=atol)
            and np.allclose(self.cov, other.cov, rtol=0, atol=atol)
        )


def _check_mode(state: GaussianState, mode: int) -> None:
    if not 0 <= mode < state.n_modes:
        raise DomainError(f"mode {mode} out of range for a {state.n_modes}-mode state")


def vacuum(n_modes: int = 1) -> GaussianState:
    return GaussianState(np.zeros(2 * n_modes), np.eye(2 * n_modes))


def coherent_state(alpha: CoherentAmplitude) -> GaussianState:
    """Single-mode coherent state with means ``(2 re, 2 im)`` and unit covariance."""
    return GaussianState(alpha.quadrature_means, np.eye(2))


def squeezed_vacuum(v_plus: float) -> GaussianState:
    """Minimum-uncertainty vacuum with covariance ``diag(v_plus, 1 / v_plus)``."""
    if not v_plus > 0:
        raise DomainError(f"squeezed-vacuum variance must be positive, got {v_plus}")
    return GaussianState(np.zeros(2), np.diag([v_plus, 1.0 / v_plus]))


def tensor(*states: GaussianState) -> GaussianState:
    """Product state, modes appended in argument order."""
    mean = np.concatenate([s.mean for s in states])
    n = mean.size
    cov = np.zeros((n, n))
    i = 0
    for s in states:
        k = s.mean.size
        cov[i : i + k, i : i + k] = s.cov
        i += k
    return GaussianState(mean, cov, validate=False)


def _apply_channel(
    state: GaussianState,
    idx: list[int],
    transfer: np.ndarray,
    noise: np.ndarray | None = None,
) -> GaussianState:
    """Apply ``transfer`` (and additive ``noise``) to the quadratures ``idx``."""
    t = np.eye(state.mean.size)
    t[np.ix_(idx, idx)] = transfer
    cov = t @ state.cov @ t.T
    if noise is not None:
        cov[np.ix_(idx, idx)] += noise
    cov = 0.5 * (cov + cov.T)
    return GaussianState(t @ state.mean, cov, validate=False)


def apply_phase_insensitive_amp(state: GaussianState, mode: int, G: float) -> GaussianState:
    """Linear amplifier ``a -> sqrt(G) a + sqrt(G-1) v^dagger`` with the ancilla in vacuum.

    Both quadrature means scale by ``sqrt(G)`` and each variance maps to
    ``G V + (G - 1)``.
    """
    if not G >= 1:
        raise DomainError(f"phase-insensitive amplification needs G >= 1, got {G}")
    _check_mode(state, mode)
    idx = [2 * mode, 2 * mode + 1]
    return _apply_channel(state, idx, np.sqrt(G) * np.eye(2), (G - 1.0) * np.eye(2))


def opo_factors(H: float) -> tuple[float, float]:
    """Quadrature scale factors ``(sqrt(H) + sqrt(H-1), sqrt(H) - sqrt(H-1))``."""
    if not H >= 1:
        raise DomainError(f"OPO gain must satisfy H >= 1, got {H}")
    a, b = np.sqrt(H), np.sqrt(H - 1.0)
    return float(a + b), float(1.0 / (a + b))


def opo_gain_for_factor(k: float) -> float:
    """OPO gain ``H`` whose amplified quadrature scales by ``k >= 1``."""
    if not k >= 1:
        raise DomainError(f"amplification factor must be >= 1, got {k}")
    return float((0.5 * (k + 1.0 / k)) ** 2)


def apply_opo(state: GaussianState, mode: int, H: float, axis: str = "plus") -> GaussianState:
    """Noiseless phase-sensitive amplifier ``a -> sqrt(H) a + sqrt(H-1) a^dagger``.

    With ``axis="plus"`` X+ is amplified by ``sqrt(H) + sqrt(H-1)`` and X- is
    deamplified by the reciprocal factor. ``axis="minus"`` swaps the roles,
    i.e. the pump phase is rotated by pi.
    """
    up, down = opo_factors(H)
    if axis == "plus":
        return apply_quadrature_scaling(state, mode, up)
    if axis == "minus":
        return apply_quadrature_scaling(state, mode, down)
    raise DomainError(f"axis must be 'plus' or 'minus', got {axis!r}")


def apply_quadrature_scaling(state: GaussianState, mode: int, k: float) -> GaussianState:
    """Scale X+ by ``k`` and X- by ``1/k``: an OPO specified by its factor.

    Going through :func:`opo_gain_for_factor` and back loses precision when
    ``k`` is close to 1, since ``sqrt(H - 1)`` then cancels.
    """
    _check_mode(state, mode)
    if not (np.isfinite(k) and k > 0):
        raise DomainError(f"scale factor must be positive, got {k}")
    return _apply_channel(state, [2 * mode, 2 * mode + 1], np.diag([k, 1.0 / k]))


def apply_beam_splitter(
    state: GaussianState, mode_a: int, mode_b: int, transmissivity: float = 0.5
) -> GaussianState:
    """Beam splitter mixing ``mode_a`` and ``mode_b``.

    Outputs are ``a' = sqrt(t) a - sqrt(1-t) b`` and ``b' = sqrt(1-t) a + sqrt(t) b``,
    so ``t = 1`` is the identity and at ``t = 1/2`` an input on ``mode_a`` lands
    with amplitude ``1/sqrt(2)`` in both outputs.
    """
    if not 0.0 <= transmissivity <= 1.0:
        raise DomainError(f"transmissivity must lie in [0, 1], got {transmissivity}")
    _check_mode(state, mode_a)
    _check_mode(state, mode_b)
    if mode_a == mode_b:
        raise DomainError("beam splitter needs two distinct modes")
    tt, rr = np.sqrt(transmissivity), np.sqrt(1.0 - transmissivity)
    transfer = np.kron(np.array([[tt, -rr], [rr, tt]]), np.eye(2))
    idx = [2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1]
    return _apply_channel(state, idx, transfer)


def gaussian_coherent_fidelity(
    alpha_x: ArrayLike,
    alpha_y: ArrayLike,
    mean_plus: ArrayLike,
    mean_minus: ArrayLike,
    v_plus: ArrayLike,
    v_minus: ArrayLike,
) -> ArrayLike:
    """Overlap of ``|alpha>`` with a Gaussian mode of diagonal covariance ``(V+, V-)``.

    Vectorized over all arguments. Reduces to the usual
    ``2 / (1 + V) exp(-2 (1-g)^2 |alpha|^2 / (1 + V))`` when ``V+ = V- = V``
    and the means are ``g`` times the coherent means.
    """
    sp, sm = 1.0 + np.asarray(v_plus), 1.0 + np.asarray(v_minus)
    dp = np.asarray(mean_plus) - 2.0 * np.asarray(alpha_x)
    dm = np.asarray(mean_minus) - 2.0 * np.asarray(alpha_y)
    return 2.0 / np.sqrt(sp * sm) * np.exp(-dp**2 / (2.0 * sp) - dm**2 / (2.0 * sm))


def fidelity_vs_coherent(alpha: CoherentAmplitude, state: GaussianState, mode: int = 0) -> float:
    """Fidelity between the coherent state ``|alpha>`` and one mode of ``state``."""
    b = state.block(mode)
    if abs(b[0, 1]) > SYMMETRY_RTOL * max(1.0, float(np.max(np.abs(b)))):
        raise UnsupportedStateError(
            "fidelity is only implemented for modes with a diagonal covariance block"
        )
    m = state.mode_mean(mode)
    return float(gaussian_coherent_fidelity(alpha.re, alpha.im, m[0], m[1], b[0, 0], b[1, 1]))


def sample_quadratures(
    state: GaussianState, quadratures, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Draw ``size`` joint samples of the listed quadrature indices.

    Returns an array of shape ``(size, len(quadratures))``. Sampling uses a
    Cholesky factor of the marginal covariance so it is deterministic for a
    given generator state.
    """
    idx = list(quadratures)
    mean = state.mean[idx]
    chol = np.linalg.cholesky(state.cov[np.ix_(idx, idx)])
    z = rng.standard_normal((size, len(idx)))
    return mean + z @ chol.T
