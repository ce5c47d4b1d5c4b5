import math

import numpy as np
import pytest

from repeatersim.errors import DomainError
from repeatersim.noise import NoiseModel
from repeatersim.protocols import (
    ProtocolSpec,
    blind_overhead,
    optimize_strategy,
    run_blind_topped,
    run_innsbruck,
    run_standard,
)
from repeatersim.states import WernerParams, make_werner
from repeatersim.swapping import connect_chain, connect_noisy
from repeatersim.timing import TimeModel

NOISY = NoiseModel(0.99, 0.99, 1.0)


def test_spec_validation():
    with pytest.raises(DomainError):
        ProtocolSpec("standard", 2, (3,))
    with pytest.raises(DomainError):
        ProtocolSpec("nope", 1, (3,))
    with pytest.raises(DomainError):
        ProtocolSpec("standard", 1, (-1,))
    with pytest.raises(DomainError):
        ProtocolSpec("blind_topped", 2, (3, 3), blind_levels=3)
    with pytest.raises(DomainError):
        TimeModel(t0=0)


def test_standard_first_and_last_level():
    reps = run_standard(ProtocolSpec.uniform("standard", 11, 3), None, NOISY)
    assert abs(reps[0].fidelity - 0.956246) < 1e-6
    assert abs(reps[-1].fidelity - 0.873666) < 3e-3
    assert all(r.resources >= 1 for r in reps)
    assert reps[-1].elapsed == pytest.approx(3 * (2**11 - 1) * 0.333e-4)


def test_resources_follow_the_closed_form():
    reps = run_standard(ProtocolSpec.uniform("standard", 11, 3), None, NOISY)
    for r in reps:
        probs = np.concatenate([x.step_success_probs for x in reps[: r.level]])
        closed = 2.0 ** (3 * r.level) / np.prod(probs)
        assert abs(r.resources / closed - 1) < 1e-9


def test_no_purification_no_noise():
    reps = run_standard(ProtocolSpec.uniform("standard", 4, 0, F0=1.0), None, NoiseModel())
    assert all(r.fidelity == 1.0 and r.resources == 1.0 for r in reps)


def test_innsbruck_without_purification_is_a_chain():
    spec = ProtocolSpec.uniform("innsbruck", 3, 0, F0=0.95)
    reps = run_innsbruck(spec, None, NOISY)
    chain = connect_chain([make_werner(0.95)] * 4, NOISY).state
    assert np.allclose(reps[-1].coeffs, chain.coeffs, atol=1e-12)


def test_no_memory_error_makes_waiting_irrelevant():
    m = NoiseModel(0.99, 0.99, 0.0)
    steps = (1, 1, 1, 1)
    a = run_standard(ProtocolSpec("standard", 4, steps), None, m)
    # pumping with a copy of the fresh pair at one round per level is regular purification
    b = run_innsbruck(ProtocolSpec("innsbruck", 4, steps), None, m)
    for x, y in zip(a, b):
        assert abs(x.fidelity - y.fidelity) < 1e-9


def test_innsbruck_times_grow_with_level():
    reps = run_innsbruck(ProtocolSpec.uniform("innsbruck", 4, 2), None, NOISY)
    assert all(b.elapsed > a.elapsed for a, b in zip(reps, reps[1:]))


def test_optimizer_reference_points():
    s1 = optimize_strategy(None, NoiseModel.from_error_rate(0.01, 1.0))
    s2 = optimize_strategy(None, NoiseModel.from_error_rate(0.01, 0.1))
    assert abs(s1.max_level - 5) <= 1 and abs(s2.max_level - 3) <= 1
    for s in (s1, s2):
        assert all(b <= a for a, b in zip(s.steps, s.steps[1:]))
        assert len(s.steps) == s.max_level


def test_optimizer_with_ideal_devices_hits_the_cap():
    assert optimize_strategy(None, NoiseModel(), level_cap=12).max_level == 12


def test_optimizer_gives_up_below_threshold():
    assert optimize_strategy(None, NoiseModel.from_error_rate(0.1, 1.0)).max_level == 0


def test_fidelity_floor_is_respected():
    s = optimize_strategy(None, NOISY, WernerParams.from_fidelity(0.9), min_fidelity=0.9)
    assert s.max_level >= 1
    assert all(f >= 0.9 - 1e-9 for f in s.fidelities)


def test_blind_overhead_values():
    assert blind_overhead(3, 2, 1, 0.95)[0] == pytest.approx(0.95**-3)
    overhead, gain = blind_overhead(2, 3, 3, 0.95)
    assert abs(overhead - 40) / 40 < 0.05 and gain == 27
    assert blind_overhead(3, 2, 4, 1.0)[0] == 1.0
    with pytest.raises(DomainError):
        blind_overhead(0, 2, 1, 0.9)
    with pytest.raises(DomainError):
        blind_overhead(3, 2, 1, 0.0)


def test_blind_overhead_is_monotone():
    base = blind_overhead(3, 2, 2, 0.9)[0]
    assert blind_overhead(4, 2, 2, 0.9)[0] > base
    assert blind_overhead(3, 3, 2, 0.9)[0] > base
    assert blind_overhead(3, 2, 3, 0.9)[0] > base
    assert blind_overhead(3, 2, 2, 0.95)[0] < base


def test_blind_top_without_blind_levels_is_the_base_run():
    spec = ProtocolSpec("blind_topped", 3, (2, 2, 2), blind_levels=0, base="standard")
    reps, overhead = run_blind_topped(spec, None, NOISY)
    ref = run_standard(ProtocolSpec("standard", 3, (2, 2, 2)), None, NOISY)
    assert overhead == 1.0
    assert [r.fidelity for r in reps] == [r.fidelity for r in ref]


def test_blind_top_level_beats_waiting():
    for base in ("standard", "innsbruck"):
        spec = ProtocolSpec("blind_topped", 4, (3, 3, 3, 3), blind_levels=1, base=base)
        blind, overhead = run_blind_topped(spec, None, NOISY)
        runner = run_standard if base == "standard" else run_innsbruck
        waiting = runner(ProtocolSpec(base, 4, (3, 3, 3, 3)), None, NOISY)
        assert blind[-1].fidelity >= waiting[-1].fidelity
        probs = blind[-1].step_success_probs
        assert overhead == pytest.approx(1 / math.prod(probs))


def test_blind_overhead_with_uniform_probabilities_matches_closed_form():
    # equal per-round probabilities: the runner's overhead is the closed form
    spec = ProtocolSpec("blind_topped", 2, (3, 3), WernerParams.from_fidelity(1.0), blind_levels=2, base="standard")
    reps, overhead = run_blind_topped(spec, None, NoiseModel())
    assert overhead == pytest.approx(blind_overhead(3, 2, 2, 1.0)[0])
