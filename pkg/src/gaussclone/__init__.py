"""Optimal cloning of coherent states drawn from finite Gaussian ensembles.

Submodules:

- ``phase_space``: Gaussian states, linear-optics channels, coherent fidelity
- ``ensembles``: Gaussian priors, quadrature and Monte Carlo averages
- ``symmetric_cloner``: amplifier + beam splitter cloner and its optimal gain
- ``estimation``: dual-homodyne and clone-based amplitude estimation
- ``teleportation``: teleportation fidelity and the no-cloning threshold
- ``single_quad_cloner``: OPO cloner for coherent states on a line
- ``numerics``: quadrature, scalar optimization, root finding, RNG streams
"""

from .errors import DomainError, InvalidStateError, UnsupportedStateError
from .phase_space import CoherentAmplitude, GaussianState

__version__ = "0.1.0"

__all__ = [
    "CoherentAmplitude",
    "DomainError",
    "GaussianState",
    "InvalidStateError",
    "UnsupportedStateError",
]
