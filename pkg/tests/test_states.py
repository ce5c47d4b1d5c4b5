import numpy as np
import pytest

from repeatersim import oracle
from repeatersim.errors import DomainError
from repeatersim.states import (
    GraphDiagonalState,
    WernerParams,
    apply_shift,
    coeffs_in_unshifted_basis,
    from_unshifted,
    make_werner,
    werner_from_x,
    werner_x,
)


def test_werner_coefficients():
    s = make_werner(0.8)
    assert np.allclose(s.coeffs, [0.8, 0.2 / 3, 0.2 / 3, 0.2 / 3], atol=1e-15)
    assert s.shift == (0, 0)
    assert s.fidelity == 0.8


def test_perfect_pair():
    assert np.array_equal(make_werner(1.0).coeffs, [1, 0, 0, 0])


@pytest.mark.parametrize("F", [0.25, 0.1, 1.2, -0.5])
def test_werner_domain(F):
    with pytest.raises(DomainError):
        make_werner(F)


def test_werner_parameter_roundtrip():
    for F in np.linspace(0.3, 1.0, 15):
        assert abs(werner_x(make_werner(F)) - (4 * F - 1) / 3) < 1e-15
        assert abs(WernerParams.from_fidelity(F).F - F) < 1e-15
    assert werner_from_x(1.0).fidelity == 1.0


def test_rejects_bad_coefficients():
    with pytest.raises(DomainError):
        GraphDiagonalState((0.5, 0.5, 0.1, 0.0))
    with pytest.raises(DomainError):
        GraphDiagonalState((1.2, -0.2, 0, 0))
    with pytest.raises(DomainError):
        GraphDiagonalState((1, 0, 0))
    with pytest.raises(DomainError):
        GraphDiagonalState((1, 0, 0, 0), shift=(2, 0))


def test_tiny_roundoff_is_renormalised():
    s = GraphDiagonalState((1.0 + 5e-13, -5e-13, 0.0, 0.0))
    assert s.coeffs.min() >= 0 and abs(s.coeffs.sum() - 1) < 1e-15


def test_shift_relabels_without_touching_weights():
    s = GraphDiagonalState((0.7, 0.1, 0.15, 0.05))
    t = apply_shift(s, (1, 0))
    assert np.array_equal(t.coeffs, s.coeffs) and t.shift == (1, 0)
    assert apply_shift(t, (1, 0)) == s
    # weight 0.7 now sits on the physical vector |10>_G
    assert coeffs_in_unshifted_basis(t)[2] == 0.7
    assert from_unshifted(coeffs_in_unshifted_basis(t), t.shift) == t


def test_graph_basis_is_orthonormal():
    G = oracle.graph_basis()
    assert np.allclose(G.conj().T @ G, np.eye(4), atol=1e-14)


def test_dense_embedding_has_the_right_diagonal():
    s = GraphDiagonalState((0.6, 0.2, 0.15, 0.05), (0, 1))
    rho = oracle.dense_from_graph_diagonal(s)
    oracle.check_dense_state(rho)
    assert np.allclose(oracle.graph_diagonal(rho), coeffs_in_unshifted_basis(s), atol=1e-15)
