"""
Standard repeater versus entanglement pumping
=============================================

The standard protocol keeps every pair it will ever need and purifies them
in parallel: fast, but the pair count explodes.  The pumping protocol keeps
only a couple of pairs per station and rebuilds partners from the levels
below, so its stored pairs sit in memory far longer.
"""

from repeatersim import NoiseModel, ProtocolSpec, TimeModel, optimize_strategy, run_innsbruck, run_standard

noise = NoiseModel(0.99, 0.99, 1.0)
tm = TimeModel()

# Three regular rounds on each of eleven levels, starting from Werner 0.8.
spec = ProtocolSpec.uniform("standard", levels=11, steps=3, F0=0.8)
print(f"{'level':>5} {'km':>7} {'pairs':>11} {'fidelity':>9}")
for r in run_standard(spec, tm, noise):
    print(f"{r.level:>5} {tm.distance_km(r.level):>7.0f} {r.resources:>11.3g} {r.fidelity:>9.6f}")

# Pumping: search the number of rounds per level that reaches furthest.
for coherence in (1.0, 0.1):
    best = optimize_strategy(tm, NoiseModel.from_error_rate(0.01, coherence))
    print(f"\n1/kappa = {coherence} s: level {best.max_level} "
          f"({tm.distance_km(best.max_level):.0f} km), rounds per level {best.steps}, F = {best.fidelity:.4f}")

# The same strategy run level by level shows where the time goes.
steps = optimize_strategy(tm, noise).steps
print(f"\n{'level':>5} {'fidelity':>9} {'time per pair [s]':>18}")
for r in run_innsbruck(ProtocolSpec("innsbruck", len(steps), steps), tm, noise):
    print(f"{r.level:>5} {r.fidelity:>9.4f} {r.elapsed:>18.4g}")

# Lowering the error rate helps until memory noise takes over.
print("\nerror rate -> maximal level (1/kappa = 1 s)")
for e in (0.03, 0.02, 0.01, 0.005, 0.003, 0.001):
    print(f"  {e:<6} {optimize_strategy(tm, NoiseModel.from_error_rate(e, 1.0)).max_level}")
