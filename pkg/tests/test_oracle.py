import itertools

import numpy as np
import pytest

from repeatersim import oracle
from repeatersim.errors import DegenerateInputError, DomainError
from repeatersim.noise import NoiseModel
from repeatersim.purification import dejmps_noisy
from repeatersim.states import GraphDiagonalState, make_werner, werner_from_x
from repeatersim.swapping import connect_noisy
from repeatersim.validation import equivalence_report


def random_dense(rng, dim=4):
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = A @ A.conj().T
    return rho / np.trace(rho)


def test_perfect_pairs_through_the_circuit():
    rho = oracle.dense_from_graph_diagonal(make_werner(1))
    total = 0.0
    for o in oracle.success_class((0, 0), (0, 0)):
        out, p = oracle.dm_dejmps_step(rho, rho, NoiseModel(), o)
        total += p
        assert abs(oracle.graph_diagonal(out)[0] - 1) < 1e-12
    assert abs(total - 1) < 1e-12


def test_dense_connect_multiplies_werner_parameters():
    x, y = 0.7, 0.4
    a = oracle.dense_from_graph_diagonal(werner_from_x(x))
    b = oracle.dense_from_graph_diagonal(werner_from_x(y))
    out, p = oracle.dm_connect(a, b, NoiseModel(), (0, 0))
    assert abs(p - 0.25) < 1e-12
    assert np.allclose(oracle.graph_diagonal(out), werner_from_x(x * y).coeffs, atol=1e-12)


def test_one_hand_checked_instance():
    a = GraphDiagonalState((0.7, 0.1, 0.15, 0.05), (0, 1))
    b = GraphDiagonalState((0.6, 0.2, 0.1, 0.1), (1, 1))
    m = NoiseModel(0.99, 0.99)
    rho, N = oracle.dm_dejmps_class(a, b, m)
    r = dejmps_noisy(a, b, m)
    assert abs(N - r.success_prob) < 1e-12
    assert np.allclose(oracle.graph_diagonal(rho),
                       oracle.graph_diagonal(oracle.dense_from_graph_diagonal(r.state)), atol=1e-12)


def test_every_connect_outcome_matches():
    rng = np.random.default_rng(11)
    m = NoiseModel(0.9, 0.9)
    a = GraphDiagonalState(rng.dirichlet(np.ones(4)), (1, 0))
    b = GraphDiagonalState(rng.dirichlet(np.ones(4)), (1, 1))
    probs = 0
    for o, rho, p in oracle.dm_connect_summed(a, b, m):
        probs += p
        closed = oracle.dense_from_graph_diagonal(connect_noisy(a, b, o, m).state)
        assert np.allclose(oracle.graph_diagonal(rho), oracle.graph_diagonal(closed), atol=1e-12)
    assert abs(probs - 1) < 1e-12


def test_seeded_grid_agrees():
    for check in equivalence_report(seed=7, cases=90):
        assert check.cases == 90
        assert check.max_deviation < 1e-12, check


def test_twirl_projects_onto_the_diagonal():
    rng = np.random.default_rng(5)
    G = oracle.graph_basis()
    for _ in range(10):
        rho = random_dense(rng)
        tw = oracle.dm_twirl(rho)
        assert np.allclose(oracle.graph_diagonal(tw), oracle.graph_diagonal(rho), atol=1e-12)
        in_graph = G.conj().T @ tw @ G
        assert np.allclose(in_graph, np.diag(np.diag(in_graph)), atol=1e-12)
        assert np.allclose(oracle.dm_twirl(tw), tw, atol=1e-12)


def test_twirl_leaves_graph_diagonal_states_alone():
    rho = oracle.dense_from_graph_diagonal(GraphDiagonalState((0.5, 0.2, 0.2, 0.1), (1, 0)))
    assert np.allclose(oracle.dm_twirl(rho), rho, atol=1e-12)


def test_dense_state_checks():
    with pytest.raises(DomainError):
        oracle.check_dense_state(np.eye(3) / 3)
    with pytest.raises(DomainError):
        oracle.check_dense_state(np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(DomainError):
        oracle.dm_twirl(np.eye(16) / 16)


def test_impossible_outcome_is_degenerate():
    rho = oracle.dense_from_graph_diagonal(make_werner(1))
    bad = [o for o in itertools.product((0, 1), repeat=2) if o not in oracle.success_class((0, 0), (0, 0))]
    with pytest.raises(DegenerateInputError):
        oracle.dm_dejmps_step(rho, rho, NoiseModel(), bad[0])
