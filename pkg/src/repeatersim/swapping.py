"""Entanglement swapping (connection) of graph-diagonal pairs."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DomainError
from .noise import PERFECT_OPS
from .states import GraphDiagonalState, shift_permutation

# _XOR[d][i] = i ^ d on flat indices
_XOR = np.array([shift_permutation(d >> 1, d & 1) for d in range(4)])


@dataclass(frozen=True)
class ConnectResult:
    state: GraphDiagonalState

    @property
    def new_shift(self):
        return self.state.shift

    @property
    def fidelity(self):
        return self.state.fidelity


def _xor_convolve(lam, mu):
    # out[i] = sum_k lam[k ^ i] mu[k]
    return (lam[_XOR] * mu[None, :]).sum(axis=1)


def _shift(a, b, outcomes):
    z1, z2 = outcomes
    if z1 not in (0, 1) or z2 not in (0, 1):
        raise DomainError(f"Bell measurement outcomes must be bits, got {outcomes!r}")
    (m1, m2), (n1, n2) = a.shift, b.shift
    return (m1 ^ n1 ^ z1, m2 ^ n2 ^ z2)


def connect_perfect(a, b, outcomes=(0, 0)):
    """Swap entanglement with a perfect Bell measurement.

    The coefficients do not depend on the outcomes; the outcomes only move
    the tracked shift to ``(m1^n1^z1, m2^n2^z2)``.
    """
    return ConnectResult(GraphDiagonalState(_xor_convolve(a.coeffs, b.coeffs), _shift(a, b, outcomes)))


def connect_noisy(a, b, outcomes=(0, 0), m=PERFECT_OPS):
    """Swap entanglement with a noisy two-qubit gate and noisy readout.

    Parameters
    ----------
    a, b : GraphDiagonalState
    outcomes : tuple of two bits
        Bell-measurement result ``(z1, z2)``.
    m : NoiseModel

    Notes
    -----
    A wrong readout of bit ``j`` shows up as a flip of output index ``j``,
    so the perfect result is mixed with its index-flipped versions with
    weights ``eta**2``, ``eta*(1-eta)`` (each single flip) and
    ``(1-eta)**2``.  The gate noise adds ``(1-p)/4`` uniformly.
    """
    t = _xor_convolve(a.coeffs, b.coeffs)
    e = m.eta
    w = np.array([e * e, e * (1 - e), e * (1 - e), (1 - e) ** 2])
    mixed = (w[:, None] * t[_XOR]).sum(axis=0)
    raw = (1.0 - m.p) / 4.0 + m.p * mixed
    return ConnectResult(GraphDiagonalState(raw, _shift(a, b, outcomes)))


def connect_chain(pairs, m=PERFECT_OPS):
    """Connect ``L >= 2`` adjacent pairs left to right with outcomes ``(0, 0)``."""
    pairs = list(pairs)
    if len(pairs) < 2:
        raise DomainError(f"need at least two pairs to connect, got {len(pairs)}")
    return ConnectResult(reduce(lambda acc, nxt: connect_noisy(acc, nxt, (0, 0), m).state, pairs))
