"""Two-way recurrence purification (DEJMPS) on graph-diagonal pairs.

Pair ``a`` (coefficients ``l``, shift ``(m1, m2)``) is purified with pair
``b`` (coefficients ``u``, shift ``(n1, n2)``).  For output index
``(i1, i2)`` and measurement-flip bit ``f``::

    T_f[i1, i2] = sum_k l[k, k^i2] * u[k^i1, k^i1^i2^f]

With perfect operations the kept pair is ``T_0 / N``.  Gate noise ``p``
mixes in ``(1 - p**2) / 8`` per entry (one noisy CNOT on each side) and
measurement noise ``eta`` mixes ``T_1`` into the accepted outcome class.
The output keeps its coefficients in the order of ``(i1, i2)`` and carries
the shift ``(m1 ^ n1, m1 ^ m2)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DomainError
from .noise import PERFECT_OPS, memory_decohere
from .states import GraphDiagonalState

DEGENERATE_N = 1e-15


def _tables():
    lam_idx = np.empty((4, 2), dtype=int)
    mu_idx = np.empty((2, 4, 2), dtype=int)
    for i1 in (0, 1):
        for i2 in (0, 1):
            i = 2 * i1 + i2
            for k in (0, 1):
                lam_idx[i, k] = 2 * k + (k ^ i2)
                for f in (0, 1):
                    mu_idx[f, i, k] = 2 * (k ^ i1) + (k ^ i1 ^ i2 ^ f)
    return lam_idx, mu_idx


_LAM_IDX, _MU_IDX = _tables()


def _overlap_terms(lam, mu):
    """``(T_0, T_1)`` as flat length-4 arrays."""
    L = lam[_LAM_IDX]
    return (L * mu[_MU_IDX[0]]).sum(axis=1), (L * mu[_MU_IDX[1]]).sum(axis=1)


@dataclass(frozen=True)
class PurifyStepResult:
    state: GraphDiagonalState
    success_prob: float

    @property
    def new_shift(self):
        return self.state.shift

    @property
    def fidelity(self):
        return self.state.fidelity


def outcome_class_weights(a, b, m, accepted=True):
    """Unnormalised output of one outcome class.

    ``accepted=True`` gives the class the protocol keeps (measurement parity
    equal to ``m1^m2^n1^n2``); ``False`` gives the discarded class.  The two
    arrays together sum to one.
    """
    t0, t1 = _overlap_terms(a.coeffs, b.coeffs)
    agree = m.eta**2 + (1.0 - m.eta) ** 2
    flip = 2.0 * m.eta * (1.0 - m.eta)
    if not accepted:
        agree, flip = flip, agree
    p2 = m.p**2
    return (1.0 - p2) / 8.0 + p2 * (agree * t0 + flip * t1)


def _output_shift(a, b):
    (m1, m2), (n1, _) = a.shift, b.shift
    return (m1 ^ n1, m1 ^ m2)


def _finish(raw, a, b):
    n = float(raw.sum())
    if not n >= DEGENERATE_N:
        raise DegenerateInputError(f"success probability {n!r} below {DEGENERATE_N}")
    return PurifyStepResult(GraphDiagonalState(raw / n, _output_shift(a, b)), n)


def dejmps_perfect(a, b):
    """One purification step with perfect gates and measurements.

    Returns
    -------
    PurifyStepResult
        Post-selected pair and the probability ``N`` of the accepted outcome
        class, ``N = (l00+l11)(u00+u11) + (l01+l10)(u01+u10)``.
    """
    t0, _ = _overlap_terms(a.coeffs, b.coeffs)
    return _finish(t0, a, b)


def dejmps_noisy(a, b, m):
    """One purification step with noisy CNOTs and noisy measurements.

    Parameters
    ----------
    a, b : GraphDiagonalState
        Kept pair and sacrificed pair.
    m : NoiseModel
        Only ``p`` and ``eta`` are used here; memory noise is applied by the
        callers around the step.
    """
    return _finish(outcome_class_weights(a, b, m), a, b)


def pump(stored, elementary, steps, wait_per_step, m, decohere_elementary=False):
    """Entanglement pumping: purify ``stored`` repeatedly with copies of ``elementary``.

    Every step is followed by a wait of ``wait_per_step`` seconds for the
    success signal, during which the kept pair decoheres.  The elementary
    pair is consumed on arrival unless ``decohere_elementary`` is set, in
    which case it also sits in memory for one wait before use.

    Returns
    -------
    list of PurifyStepResult
        One entry per step; ``state`` is the pair after its signal wait.
    """
    if steps < 1:
        raise DomainError(f"pump needs at least one step, got {steps}")
    partner = memory_decohere(elementary, wait_per_step, m) if decohere_elementary else elementary
    out = []
    for _ in range(steps):
        r = dejmps_noisy(stored, partner, m)
        stored = memory_decohere(r.state, wait_per_step, m)
        out.append(PurifyStepResult(stored, r.success_prob))
    return out


def regular_round(ensemble_state, wait, m=PERFECT_OPS):
    """Purify two identical copies, then hold the survivor for ``wait`` seconds."""
    r = dejmps_noisy(ensemble_state, ensemble_state, m)
    return PurifyStepResult(memory_decohere(r.state, wait, m), r.success_prob)
