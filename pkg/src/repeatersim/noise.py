"""Error model: noisy gates and measurements, Pauli channels, memory decoherence."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .states import NORM_TOL, GraphDiagonalState


@dataclass(frozen=True)
class NoiseModel:
    """Local error parameters.

    Attributes
    ----------
    p : float
        Reliability of a two-qubit gate; with probability ``1 - p`` the two
        qubits are replaced by white noise.
    eta : float
        Measurement reliability; the POVM reports the wrong bit with
        probability ``1 - eta``.
    kappa : float
        Inverse memory coherence time in 1/s.
    """

    p: float = 1.0
    eta: float = 1.0
    kappa: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"gate reliability p={self.p} outside [0, 1]")
        if not 0.0 <= self.eta <= 1.0:
            raise DomainError(f"measurement reliability eta={self.eta} outside [0, 1]")
        if not self.kappa >= 0.0:
            raise DomainError(f"kappa={self.kappa} must be non-negative")

    @classmethod
    def from_error_rate(cls, error, coherence_time=math.inf):
        """``p = eta = 1 - error`` and ``kappa = 1 / coherence_time``."""
        kappa = 0.0 if math.isinf(coherence_time) else 1.0 / coherence_time
        return cls(p=1.0 - error, eta=1.0 - error, kappa=kappa)

    @property
    def coherence_time(self):
        return math.inf if self.kappa == 0 else 1.0 / self.kappa


PERFECT_OPS = NoiseModel()


@dataclass(frozen=True, eq=False)
class PauliChannel:
    """Single-qubit channel ``rho -> sum_i probs[i] s_i rho s_i`` (s_0 = identity)."""

    probs: np.ndarray

    def __post_init__(self):
        pr = np.array(self.probs, dtype=float).reshape(-1)
        if pr.shape != (4,) or np.any(pr < -NORM_TOL) or abs(pr.sum() - 1) > NORM_TOL:
            raise DomainError(f"invalid Pauli channel probabilities {self.probs!r}")
        pr = np.clip(pr, 0.0, None)
        pr /= pr.sum()
        pr.setflags(write=False)
        object.__setattr__(self, "probs", pr)


def transmit_half(c):
    """State produced by sending one half of ``|00>_G`` through ``c``.

    The channel acts on the x-frame qubit, so sigma_x maps ``|00>`` to
    ``|10>``, sigma_z to ``|01>`` and sigma_y to ``|11>``.
    """
    p0, p1, p2, p3 = c.probs
    return GraphDiagonalState((p0, p3, p1, p2))


def memory_factor(t, kappa, halves=2):
    """Surviving weight ``q(t)**halves`` with ``q(t) = exp(-kappa t)``."""
    if t < 0:
        raise DomainError(f"waiting time must be non-negative, got {t}")
    return math.exp(-halves * kappa * t)


def memory_decohere(s, t, m, halves=2):
    """Let a stored pair depolarise for ``t`` seconds.

    Each coefficient becomes ``f * l + (1 - f) / 4`` with ``f = q(t)**2``
    when both halves sit in memory.  Pass ``halves=1`` when only one half is
    stored.

    Raises
    ------
    DomainError
        If ``t`` is negative.
    """
    if halves not in (1, 2):
        raise DomainError(f"halves must be 1 or 2, got {halves}")
    f = memory_factor(t, m.kappa, halves)
    if f == 1.0:
        return s
    return GraphDiagonalState(f * s.coeffs + (1.0 - f) / 4.0, s.shift)
