"""Truncated Fock-space states, energy-conserving subspace projection,
Wigner functions, and cat-state fidelities for quantum-optical harmonic
generation."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
