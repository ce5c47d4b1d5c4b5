"""
How far can purification go when memories decohere?
===================================================

Every purification round has to wait for a classical signal before the
next one can start.  On level ``l`` of a repeater that wait is
``2**(l-1) * t0``, so higher levels lose more to memory noise between
rounds.  Iterating the noisy map until it stops moving gives the range of
fidelities that can still be purified on each level.
"""

from repeatersim import NoiseModel, TimeModel, make_werner, iterate_to_fixed_point, purification_regime

# one percent gate and measurement error, one second of memory coherence
noise = NoiseModel(p=0.99, eta=0.99, kappa=1.0)
tm = TimeModel(t0=0.333e-4)

# On level 1 two Werner pairs of fidelity 0.8 purify towards a limit well
# above the input, whereas pumping with fresh 0.8 pairs saturates lower.
pair = make_werner(0.8)
wait = tm.signal_time(1)
print("regular purification limit:", round(iterate_to_fixed_point(pair, None, wait, noise).fidelity, 6))
print("pumping limit:             ", round(iterate_to_fixed_point(pair, pair, wait, noise).fidelity, 6))

# The whole table: the window between the threshold and the limit shrinks
# with every level until it closes.
print(f"\n{'level':>5} {'wait [s]':>10} {'threshold':>10} {'limit':>10} {'pumping':>10}")
for level in range(1, 13):
    r = purification_regime(level, tm, noise, elementary_F=0.8)
    if r.empty:
        print(f"{level:>5} {r.wait:>10.3g}      (no purification possible)")
        break
    pump = "-" if r.max_fidelity_pumping is None else f"{r.max_fidelity_pumping:.6f}"
    print(f"{level:>5} {r.wait:>10.3g} {r.min_fidelity:>10.4f} {r.max_fidelity:>10.6f} {pump:>10}")

# Without memory noise the level does not matter at all.
quiet = NoiseModel(0.99, 0.99, 0.0)
print("\nno memory noise, level 1 vs 11:",
      round(purification_regime(1, tm, quiet).max_fidelity, 6),
      round(purification_regime(11, tm, quiet).max_fidelity, 6))
