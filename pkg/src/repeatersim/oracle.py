"""Dense density-matrix simulation of the purification and swapping circuits.

This is deliberately independent of the closed-form maps: states are full
4x4 / 16x16 matrices, gates are explicit unitaries, noise is applied as
written in the error model, and graph-diagonal weights are only read off at
the end.  Qubit order for one pair is ``(A, B)`` where ``A`` lives in the z
frame and ``B`` in the x frame of the graph basis.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import DegenerateInputError, DomainError
from .noise import PERFECT_OPS

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SX, SY, SZ)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)

Z_BASIS = (np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex))
X_BASIS = (
    np.array([1, 1], dtype=complex) / np.sqrt(2),
    np.array([1, -1], dtype=complex) / np.sqrt(2),
)

# basis change before the bilateral CNOTs:
# A: |0>_z -> (|0>_z - i|1>_z)/sqrt2, |1>_z -> (|1>_z - i|0>_z)/sqrt2
# B: |0>_x -> (|0>_x + i|1>_x)/sqrt2, |1>_x -> (|1>_x + i|0>_x)/sqrt2
U_A = (I2 - 1j * SX) / np.sqrt(2)
U_B = sum(
    np.outer(X_BASIS[j] + 1j * X_BASIS[1 - j], X_BASIS[j].conj()) for j in (0, 1)
) / np.sqrt(2)


def graph_basis():
    """Columns are ``|k1 k2>_G`` in the computational basis, column ``2*k1 + k2``."""
    cols = []
    for k1, k2 in itertools.product((0, 1), repeat=2):
        v = np.kron(Z_BASIS[0], X_BASIS[k2]) + (-1) ** k1 * np.kron(Z_BASIS[1], X_BASIS[1 - k2])
        cols.append(v / np.sqrt(2))
    return np.array(cols).T


_G = graph_basis()


def dense_from_graph_diagonal(s):
    """4x4 density matrix of a :class:`GraphDiagonalState`, shift included."""
    m1, m2 = s.shift
    rho = np.zeros((4, 4), dtype=complex)
    for k1, k2 in itertools.product((0, 1), repeat=2):
        v = _G[:, 2 * (k1 ^ m1) + (k2 ^ m2)]
        rho += s.coeffs[2 * k1 + k2] * np.outer(v, v.conj())
    return rho


def graph_diagonal(rho):
    """Diagonal of ``rho`` in the (unshifted) graph basis, real part."""
    return np.real(np.einsum("ia,ij,ja->a", _G.conj(), rho, _G))


def check_dense_state(rho, tol=1e-12):
    rho = np.asarray(rho)
    if rho.shape not in ((4, 4), (16, 16)):
        raise DomainError(f"dense states must be 4x4 or 16x16, got {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=tol):
        raise DomainError("state is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise DomainError(f"trace {np.trace(rho)} != 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise DomainError("state is not positive semidefinite")
    return rho


# --- tensor helpers; a density matrix on n qubits is held as shape (2,)*2n ---

def _to_tensor(rho, n):
    return rho.reshape((2,) * (2 * n))


def _to_matrix(t, n):
    return t.reshape(2**n, 2**n)


def apply_unitary(rho, U, qubits, n):
    """``U rho U^dag`` with ``U`` acting on ``qubits`` (in that order)."""
    k = len(qubits)
    t = _to_tensor(rho, n)
    Ut = U.reshape((2,) * (2 * k))
    # left multiply on row axes
    t = np.tensordot(Ut, t, axes=(list(range(k, 2 * k)), list(qubits)))
    t = np.moveaxis(t, list(range(k)), list(qubits))
    # right multiply by U^dag on column axes
    cols = [n + q for q in qubits]
    t = np.tensordot(t, Ut.conj(), axes=(cols, list(range(k, 2 * k))))
    t = np.moveaxis(t, list(range(2 * n - k, 2 * n)), cols)
    return _to_matrix(t, n)


def white_noise(rho, qubits, n):
    """Replace ``qubits`` by the maximally mixed state: ``1/4^k * I (x) tr_qubits(rho)``."""
    k = len(qubits)
    t = _to_tensor(rho, n)
    for q in sorted(qubits, reverse=True):
        t = np.trace(t, axis1=q, axis2=q + t.ndim // 2)
    rest = [q for q in range(n) if q not in qubits]
    full = np.multiply.outer(t, np.eye(2**k).reshape((2,) * (2 * k)) / 2**k)
    # axes now: rest rows, rest cols, noisy rows, noisy cols
    r = len(rest)
    order = rest + list(qubits)
    src_rows = list(range(r)) + list(range(2 * r, 2 * r + k))
    src_cols = list(range(r, 2 * r)) + list(range(2 * r + k, 2 * r + 2 * k))
    perm = [0] * (2 * n)
    for pos, q in enumerate(order):
        perm[q] = src_rows[pos]
        perm[n + q] = src_cols[pos]
    return _to_matrix(np.transpose(full, perm), n)


def noisy_gate(rho, U, qubits, n, p):
    """Two-qubit gate that works with probability ``p`` and otherwise outputs white noise."""
    ideal = apply_unitary(rho, U, qubits, n)
    if p == 1.0:
        return ideal
    return p * ideal + (1.0 - p) * white_noise(rho, qubits, n)


def povm_effect(basis, outcome, eta):
    good, bad = basis[outcome], basis[1 - outcome]
    return eta * np.outer(good, good.conj()) + (1 - eta) * np.outer(bad, bad.conj())


def measure_and_discard(rho, effects, n):
    """``tr_measured(E rho)`` for product effects ``{qubit: E}``; returns the unnormalised rest."""
    t = _to_tensor(rho, n)
    for q, E in effects.items():
        t = np.moveaxis(np.tensordot(E, t, axes=([1], [q])), 0, q)
    for q in sorted(effects, reverse=True):
        t = np.trace(t, axis1=q, axis2=q + t.ndim // 2)
    m = n - len(effects)
    return _to_matrix(t, m)


def _finish(red, what):
    prob = float(np.real(np.trace(red)))
    if prob < 1e-15:
        raise DegenerateInputError(f"{what}: outcome probability {prob!r} below 1e-15")
    return red / prob, prob


def dm_dejmps_step(a, b, m=PERFECT_OPS, outcome=(0, 0)):
    """Run one purification round on dense pairs and condition on ``outcome``.

    Circuit on qubits ``(A1, B1, A2, B2)``: local basis change on all four
    qubits, noisy CNOT ``A1 -> A2``, noisy CNOT ``B2 -> B1``, noisy readout of
    ``A2`` in the z basis (bit ``zeta``) and ``B2`` in the x basis (bit
    ``xi``).

    Returns
    -------
    (ndarray, float)
        Normalised 4x4 state of ``A1 B1`` and the probability of ``outcome``.
    """
    red = _dejmps_unnormalised(check_dense_state(a), check_dense_state(b), m, outcome)
    return _finish(red, "dm_dejmps_step")


def _dejmps_unnormalised(a, b, m, outcome):
    rho = np.kron(a, b)
    for q, U in zip(range(4), (U_A, U_B, U_A, U_B)):
        rho = apply_unitary(rho, U, [q], 4)
    rho = noisy_gate(rho, CNOT, [0, 2], 4, m.p)
    rho = noisy_gate(rho, CNOT, [3, 1], 4, m.p)
    zeta, xi = outcome
    effects = {2: povm_effect(Z_BASIS, zeta, m.eta), 3: povm_effect(X_BASIS, xi, m.eta)}
    return measure_and_discard(rho, effects, 4)


def dm_connect(a, b, m=PERFECT_OPS, outcome=(0, 0)):
    """Bell measurement on the middle qubits of ``A1 B1`` and ``B2 C1``.

    ``B1`` is an x-frame qubit, so it is first rotated to the z frame by a
    Hadamard; together with ``CNOT B1 -> B2`` this forms the noisy two-qubit
    gate.  ``B1`` is then read out in the x basis and ``B2`` in the z basis.

    Returns
    -------
    (ndarray, float)
        Normalised state of ``A1 C1`` and the probability of ``outcome``.
    """
    red = _connect_unnormalised(check_dense_state(a), check_dense_state(b), m, outcome)
    return _finish(red, "dm_connect")


def _connect_unnormalised(a, b, m, outcome):
    rho = np.kron(a, b)
    gate = CNOT @ np.kron(HADAMARD, I2)
    rho = noisy_gate(rho, gate, [1, 2], 4, m.p)
    z1, z2 = outcome
    effects = {1: povm_effect(X_BASIS, z1, m.eta), 2: povm_effect(Z_BASIS, z2, m.eta)}
    return measure_and_discard(rho, effects, 4)


STABILIZERS = (np.kron(I2, I2), np.kron(SX, SZ), np.kron(SZ, SX), np.kron(SX, SZ) @ np.kron(SZ, SX))


def dm_twirl(rho):
    """Average over the graph stabilizer group ``{I, K1, K2, K1 K2}``."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise DomainError(f"twirl acts on 4x4 states, got {rho.shape}")
    return sum(K @ rho @ K.conj().T for K in STABILIZERS) / 4.0


def dm_memory(rho, t, kappa):
    """Single-qubit depolarising channel ``q rho + (1-q)/4 sum_i s_i rho s_i`` on both qubits."""
    q = np.exp(-kappa * t)
    for qubit in (0, 1):
        mixed = sum(apply_unitary(rho, P, [qubit], 2) for P in PAULIS) / 4.0
        rho = q * rho + (1 - q) * mixed
    return rho


def success_class(shift_a, shift_b):
    """Readout pairs ``(zeta, xi)`` the protocol keeps for the given input shifts."""
    parity = shift_a[0] ^ shift_a[1] ^ shift_b[0] ^ shift_b[1]
    return [(z, x) for z in (0, 1) for x in (0, 1) if z ^ x == parity]


def dm_dejmps_class(a, b, m=PERFECT_OPS, accepted=True):
    """Summed unnormalised output of the accepted (or rejected) outcome class.

    ``a`` and ``b`` are :class:`GraphDiagonalState` here, since the class is
    defined through their shifts.  Returns ``(rho, probability)`` with
    ``rho`` normalised.
    """
    keep = success_class(a.shift, b.shift)
    outs = keep if accepted else [o for o in itertools.product((0, 1), repeat=2) if o not in keep]
    da, db = dense_from_graph_diagonal(a), dense_from_graph_diagonal(b)
    total = sum(_dejmps_unnormalised(da, db, m, o) for o in outs)
    return _finish(total, "dm_dejmps_class")


def dm_connect_summed(a, b, m=PERFECT_OPS):
    """Output of the swap averaged over outcomes after undoing each outcome's relabelling.

    Returns a list of ``(outcome, rho, probability)`` for the four readouts,
    with ``rho`` normalised.  Pure bookkeeping around :func:`dm_connect`.
    """
    da, db = dense_from_graph_diagonal(a), dense_from_graph_diagonal(b)
    return [(o, *dm_connect(da, db, m, o)) for o in itertools.product((0, 1), repeat=2)]
