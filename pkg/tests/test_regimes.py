import pytest

from repeatersim.errors import ConvergenceError
from repeatersim.noise import NoiseModel
from repeatersim.regimes import (
    is_purifiable,
    iterate_to_fixed_point,
    minimal_fidelity,
    purification_regime,
)
from repeatersim.states import make_werner
from repeatersim.timing import TimeModel

NOISY = NoiseModel(0.99, 0.99, 1.0)
T0 = 0.333e-4


def test_ideal_purification_reaches_a_perfect_pair():
    s = iterate_to_fixed_point(make_werner(0.6), None, 0.0, NoiseModel())
    assert abs(s.fidelity - 1) < 1e-12


def test_level_one_fixed_points():
    assert abs(iterate_to_fixed_point(make_werner(0.8), None, T0, NOISY).fidelity - 0.985870) < 1e-5
    e = make_werner(0.8)
    assert abs(iterate_to_fixed_point(e, e, T0, NOISY).fidelity - 0.882761) < 1e-5


def test_non_convergence_carries_the_last_iterate():
    with pytest.raises(ConvergenceError) as info:
        iterate_to_fixed_point(make_werner(0.8), None, T0, NOISY, max_iter=3)
    assert info.value.last is not None and info.value.last.fidelity > 0.8


def test_regime_rows():
    tm = TimeModel()
    r1 = purification_regime(1, tm, NOISY)
    assert abs(r1.min_fidelity - 0.5276) < 5e-4 and abs(r1.max_fidelity - 0.985870) < 2e-3
    assert r1.wait == T0
    r11 = purification_regime(11, tm, NOISY)
    assert abs(r11.min_fidelity - 0.5965) < 5e-4 and abs(r11.max_fidelity - 0.880294) < 2e-3
    r12 = purification_regime(12, tm, NOISY)
    assert r12.empty and r12.min_fidelity is None and r12.max_fidelity_pumping is None


def test_threshold_is_sharp():
    F = minimal_fidelity(T0, NOISY)
    assert is_purifiable(F, T0, NOISY)
    assert not is_purifiable(F - 2e-4, T0, NOISY)
    assert not is_purifiable(0.5, T0, NOISY)


def test_levels_are_monotone():
    tm = TimeModel()
    rows = [purification_regime(l, tm, NOISY) for l in range(1, 12)]
    for lo, hi in zip(rows, rows[1:]):
        assert hi.max_fidelity <= lo.max_fidelity
        assert hi.min_fidelity >= lo.min_fidelity
    assert all(r.min_fidelity <= r.max_fidelity for r in rows)


def test_no_memory_error_means_no_level_dependence():
    m = NoiseModel(0.99, 0.99, 0.0)
    a, b = purification_regime(1, TimeModel(), m), purification_regime(10, TimeModel(), m)
    assert abs(a.min_fidelity - b.min_fidelity) < 1e-9
    assert abs(a.max_fidelity - b.max_fidelity) < 1e-9
    assert abs(a.max_fidelity_pumping - b.max_fidelity_pumping) < 1e-9


def test_bisection_is_stable_under_bracket_changes():
    ref = minimal_fidelity(T0, NOISY)
    for bracket in [(0.27, 0.98), (0.3, 0.95), (0.26, 0.9)]:
        assert abs(minimal_fidelity(T0, NOISY, bracket) - ref) < 2e-4
