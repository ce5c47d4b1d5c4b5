"""Purification ranges of the noisy DEJMPS map at a given repeater level.

One iteration is one purification round followed by the wait for its
success signal, during which the kept pair decoheres.  Fresh input pairs
(the initial Werner pair, the elementary pair used for pumping) enter the
map directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceError
from .noise import memory_decohere
from .purification import dejmps_noisy
from .states import PERFECT, make_werner
from .timing import TimeModel

TOL = 1e-12
MAX_ITER = 100_000
BRACKET = (0.26, 0.99)
RESOLUTION = 1e-4


@dataclass(frozen=True)
class RegimeReport:
    """Purification range at one level; ``None`` marks an empty regime."""

    level: int
    min_fidelity: Optional[float]
    max_fidelity: Optional[float]
    max_fidelity_pumping: Optional[float]
    wait: float

    @property
    def empty(self):
        return self.max_fidelity is None


def purification_round(s, partner, wait, m):
    """``partner=None`` purifies ``s`` with an identical copy of itself."""
    r = dejmps_noisy(s, s if partner is None else partner, m)
    return memory_decohere(r.state, wait, m)


def iterate_to_fixed_point(initial, elementary, wait, m, tol=TOL, max_iter=MAX_ITER):
    """Iterate purification rounds until the coefficients stop moving.

    Parameters
    ----------
    initial : GraphDiagonalState
        Starting pair.
    elementary : GraphDiagonalState or None
        Fresh pair used in every round (pumping); ``None`` for regular
        purification of two identical copies.
    wait : float
        Signal wait after each round, in seconds.
    m : NoiseModel

    Raises
    ------
    ConvergenceError
        If the max-norm change is still ``>= tol`` after ``max_iter`` rounds;
        the last iterate is attached as ``.last``.
    """
    s = initial
    for _ in range(max_iter):
        nxt = purification_round(s, elementary, wait, m)
        if np.max(np.abs(nxt.coeffs - s.coeffs)) < tol:
            return nxt
        s = nxt
    raise ConvergenceError(f"no fixed point after {max_iter} rounds", last=s)


def is_purifiable(F, wait, m):
    """Whether regular purification of Werner pairs with fidelity ``F`` reaches an entangled fixed point.

    The lower attractor of the map is at or below ``F = 1/2`` (no distillable
    entanglement), the upper one above it.
    """
    if F <= 0.5:
        return False
    return iterate_to_fixed_point(make_werner(F), None, wait, m).fidelity > 0.5


def minimal_fidelity(wait, m, bracket=BRACKET, resolution=RESOLUTION):
    """Smallest purifiable Werner fidelity by bisection, or ``None`` if none in ``bracket``."""
    lo, hi = bracket
    if not is_purifiable(hi, wait, m):
        return None
    if is_purifiable(lo, wait, m):
        return lo
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if is_purifiable(mid, wait, m):
            hi = mid
        else:
            lo = mid
    return hi


def maximal_fidelity(wait, m):
    """Upper fixed point of regular purification (``None`` if only the trivial one survives)."""
    F = iterate_to_fixed_point(PERFECT, None, wait, m).fidelity
    return F if F > 0.5 else None


def maximal_fidelity_pumping(elementary, wait, m):
    """Fixed point of pumping with ``elementary``; ``None`` if it does not beat the elementary pair."""
    F = iterate_to_fixed_point(elementary, elementary, wait, m).fidelity
    return F if F > elementary.fidelity else None


def purification_regime(level, tm, m, elementary_F=0.8):
    """Purification range at ``level`` with signal wait ``2**(level-1) * t0`` per round.

    Examples
    --------
    >>> from repeatersim.noise import NoiseModel
    >>> r = purification_regime(1, TimeModel(), NoiseModel(0.99, 0.99, 1.0))
    >>> round(r.max_fidelity, 4), r.min_fidelity is not None
    (0.9859, True)
    """
    tm = tm or TimeModel()
    wait = tm.signal_time(level) + tm.gate_time
    F_max = maximal_fidelity(wait, m)
    if F_max is None:
        return RegimeReport(level, None, None, None, wait)
    F_min = minimal_fidelity(wait, m)
    F_pump = None
    if elementary_F is not None:
        F_pump = maximal_fidelity_pumping(make_werner(elementary_F), wait, m)
    return RegimeReport(level, F_min, F_max, F_pump, wait)
