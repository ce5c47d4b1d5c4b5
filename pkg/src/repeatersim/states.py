"""Graph-diagonal two-qubit states with a tracked basis shift.

A pair state is stored as four weights ``(l00, l01, l10, l11)`` on the graph
Bell basis plus a shift ``(m1, m2)``.  The density matrix is

    rho = sum_k coeffs[k1, k2] |k1 ^ m1, k2 ^ m2><k1 ^ m1, k2 ^ m2|

so the shift is a known relabelling of the basis that the protocol keeps
track of classically instead of correcting it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

NORM_TOL = 1e-12

# flat index of (k1, k2) is 2*k1 + k2 everywhere in the package
INDEX = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}


def _check_bit(b):
    if b not in (0, 1):
        raise DomainError(f"shift bits must be 0 or 1, got {b!r}")
    return int(b)


def _as_coeffs(coeffs):
    c = np.array(coeffs, dtype=float).reshape(-1)
    if c.shape != (4,):
        raise DomainError(f"expected 4 coefficients, got shape {c.shape}")
    if not np.all(np.isfinite(c)):
        raise DomainError("coefficients must be finite")
    # round-off from the maps may leave tiny negatives
    if np.any(c < -NORM_TOL) or np.any(c > 1 + NORM_TOL):
        raise DomainError(f"coefficients must lie in [0, 1], got {c}")
    total = c.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise DomainError(f"coefficients must sum to 1, got sum {total!r}")
    c = np.clip(c, 0.0, 1.0)
    c /= c.sum()
    c.setflags(write=False)
    return c


@dataclass(frozen=True, eq=False)
class GraphDiagonalState:
    """Pair state diagonal in the graph Bell basis.

    Parameters
    ----------
    coeffs : array_like of shape (4,)
        Weights ``(l00, l01, l10, l11)``.  Must be non-negative and sum to
        one within ``1e-12``; small deviations are renormalised away.
    shift : tuple of two ints
        Basis shift ``(m1, m2)``.
    """

    coeffs: np.ndarray
    shift: tuple = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))
        m1, m2 = self.shift
        object.__setattr__(self, "shift", (_check_bit(m1), _check_bit(m2)))

    @property
    def fidelity(self):
        return float(self.coeffs[0])

    def matrix(self):
        """Coefficients as a 2x2 array indexed ``[k1, k2]``."""
        return self.coeffs.reshape(2, 2)

    def __eq__(self, other):
        if not isinstance(other, GraphDiagonalState):
            return NotImplemented
        return self.shift == other.shift and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.coeffs.tobytes(), self.shift))

    def __repr__(self):
        c = ", ".join(f"{x:.6g}" for x in self.coeffs)
        return f"GraphDiagonalState(({c}), shift={self.shift})"


@dataclass(frozen=True)
class WernerParams:
    """Werner state described by either its mixing parameter or its fidelity.

    ``F = (3x + 1) / 4``.  Use :meth:`from_fidelity` or :meth:`from_x`.
    """

    x: float

    def __post_init__(self):
        if not -1.0 / 3.0 - NORM_TOL <= self.x <= 1.0 + NORM_TOL:
            raise DomainError(f"Werner parameter x={self.x} outside [-1/3, 1]")

    @classmethod
    def from_fidelity(cls, F):
        return cls(x=(4.0 * F - 1.0) / 3.0)

    @classmethod
    def from_x(cls, x):
        return cls(x=x)

    @property
    def F(self):
        return (3.0 * self.x + 1.0) / 4.0

    def state(self):
        return make_werner(self.F)


def make_werner(F):
    """Werner state ``F |00><00| + (1-F)/3 (rest)`` with zero shift.

    Raises
    ------
    DomainError
        If ``F`` is not in ``(1/4, 1]``.
    """
    F = float(F)
    if not 0.25 < F <= 1.0:
        raise DomainError(f"Werner fidelity must be in (1/4, 1], got {F}")
    e = (1.0 - F) / 3.0
    return GraphDiagonalState((F, e, e, e))


def werner_from_x(x):
    return make_werner((3.0 * x + 1.0) / 4.0)


def werner_x(s):
    """Mixing parameter of the Werner state with the same fidelity as ``s``."""
    return (4.0 * fidelity(s) - 1.0) / 3.0


def fidelity(s):
    """Weight of ``|00>_G`` in the tracked (shifted) basis, i.e. ``l00``."""
    return float(s.coeffs[0])


def apply_shift(s, d):
    """XOR the bit pair ``d`` into the tracked shift; coefficients are untouched."""
    d1, d2 = _check_bit(d[0]), _check_bit(d[1])
    return GraphDiagonalState(s.coeffs, (s.shift[0] ^ d1, s.shift[1] ^ d2))


def shift_permutation(d1, d2):
    """Index array ``perm`` with ``perm[2*k1 + k2] = 2*(k1^d1) + (k2^d2)``."""
    return np.array([2 * (k1 ^ d1) + (k2 ^ d2) for k1 in (0, 1) for k2 in (0, 1)])


def coeffs_in_unshifted_basis(s):
    """Weights of the plain basis vectors ``|k1, k2>_G``.

    Entry ``(k1, k2)`` of the result is ``coeffs[k1 ^ m1, k2 ^ m2]``.
    """
    return s.coeffs[shift_permutation(*s.shift)].copy()


def from_unshifted(weights, shift=(0, 0)):
    """Inverse of :func:`coeffs_in_unshifted_basis` for a given shift."""
    w = np.asarray(weights, dtype=float)
    return GraphDiagonalState(w[shift_permutation(*shift)], shift)


def maximally_mixed(shift=(0, 0)):
    return GraphDiagonalState(np.full(4, 0.25), shift)


PERFECT = GraphDiagonalState((1.0, 0.0, 0.0, 0.0))
