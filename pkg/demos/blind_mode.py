"""
Running the top levels blind
============================

On the top levels one can skip waiting for the purification signals and
sort the outcomes out afterwards.  Nothing decoheres while waiting, but
every round on those levels must have succeeded, so the number of parallel
set-ups grows very quickly with the number of blind levels.
"""

from repeatersim import NoiseModel, ProtocolSpec, blind_overhead, run_blind_topped, run_standard

print("extra set-ups needed, three rounds per level, pairs connected two at a time")
print(f"{'m':>3} {'p=0.95':>12} {'p=0.9':>12} {'distance x':>11}")
for m in range(1, 5):
    a, gain = blind_overhead(3, 2, m, 0.95)
    b, _ = blind_overhead(3, 2, m, 0.9)
    print(f"{m:>3} {a:>12.4g} {b:>12.4g} {gain:>11}")

# Fewer rounds and wider connections keep the cost moderate.
overhead, gain = blind_overhead(M=2, L=3, m=3, p_suc=0.95)
print(f"\nM=2, L=3, m=3: overhead {overhead:.1f} for a distance gain of {gain}")

# With the actual round success probabilities of a noisy run:
noise = NoiseModel(0.99, 0.99, 1.0)
spec = ProtocolSpec("blind_topped", 8, (3,) * 8, blind_levels=2, base="standard")
reports, overhead = run_blind_topped(spec, None, noise)
waiting = run_standard(ProtocolSpec.uniform("standard", 8, 3), None, noise)
print(f"\ntop two of eight levels blind: F = {reports[-1].fidelity:.6f} "
      f"(waiting: {waiting[-1].fidelity:.6f}), overhead {overhead:.3g}")
