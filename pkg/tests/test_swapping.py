import numpy as np
import pytest

from repeatersim.errors import DomainError
from repeatersim.noise import NoiseModel
from repeatersim.states import GraphDiagonalState, make_werner, werner_from_x, werner_x
from repeatersim.swapping import connect_chain, connect_noisy, connect_perfect


def test_werner_parameters_multiply():
    for x in np.linspace(0.05, 1, 7):
        for y in np.linspace(0.05, 1, 7):
            out = connect_perfect(werner_from_x(x), werner_from_x(y)).state
            assert np.allclose(out.coeffs, werner_from_x(x * y).coeffs, atol=1e-12)


def test_perfect_pairs_connect_to_perfect_pair():
    assert connect_perfect(make_werner(1), make_werner(1)).fidelity == 1.0


def test_outcomes_only_move_the_shift():
    a = GraphDiagonalState((0.8, 0.1, 0.06, 0.04), (1, 0))
    b = GraphDiagonalState((0.7, 0.1, 0.1, 0.1), (0, 1))
    base = connect_noisy(a, b, (0, 0), NoiseModel(0.99, 0.99))
    for z in [(0, 1), (1, 0), (1, 1)]:
        r = connect_noisy(a, b, z, NoiseModel(0.99, 0.99))
        assert np.array_equal(r.state.coeffs, base.state.coeffs)
        assert r.new_shift == (1 ^ z[0], 1 ^ z[1])


def test_gate_noise_mixes_white_noise():
    r = connect_noisy(make_werner(1), make_werner(1), m=NoiseModel(p=0.9))
    assert np.allclose(r.state.coeffs, [0.9 + 0.025, 0.025, 0.025, 0.025], atol=1e-15)


def test_chain_of_five():
    x = 0.8
    out = connect_chain([werner_from_x(x)] * 5).state
    assert abs(werner_x(out) - x**5) < 1e-12
    with pytest.raises(DomainError):
        connect_chain([make_werner(0.9)])
    with pytest.raises(DomainError):
        connect_perfect(make_werner(0.9), make_werner(0.9), (2, 0))
