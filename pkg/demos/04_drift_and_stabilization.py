#!/usr/bin/env python3
"""Phase drift ruins the null; the between-block lock restores it.

Fiber interferometers drift with temperature.  Left alone, the phase
error random-walks and the dark port starts leaking light, which turns
into erroneous identifications.  The stabilizer probes the dark port at
two dither offsets before each measurement block and servos the phase
back -- the same dither-and-lock idea used on the bench.
"""

import math

import numpy as np

from udiscrim import (
    DetectorModel,
    DriftModel,
    ExperimentConfig,
    InterferenceModel,
    ProbeModel,
    SplitterPlan,
    StabilizerConfig,
    from_intensity_phase,
    fringe_visibility_equivalent,
    run_experiment,
    simulate_drift_paths,
)

SIGMA = 0.05  # radians of drift per sqrt(block)

# Pure phase trajectories first: 100 loops left free vs 100 locked.
free = simulate_drift_paths(SIGMA, blocks=100, paths=100, seed=11)
probe = ProbeModel(coupling=1 / 3, program_intensity=1.33, visibility=0.98,
                   detector=DetectorModel(0.53, 4e-7))
locked = simulate_drift_paths(SIGMA, blocks=100, paths=100, seed=11,
                              stabilizer=StabilizerConfig(), probe=probe)

print(f"after 100 blocks at sigma={SIGMA} rad/sqrt(block):")
print(f"  free walk median |phi|:   {np.median(np.abs(free[:, -1])):.3f} rad")
print(f"  locked loop median |phi|: {np.median(np.abs(locked[:, -1])):.3f} rad")

vis_free = np.vectorize(fringe_visibility_equivalent)(free).mean(axis=1)
vis_locked = np.vectorize(fringe_visibility_equivalent)(locked).mean(axis=1)
print(f"  time-averaged fringe contrast: free {np.median(vis_free):.3f},"
      f" locked {np.median(vis_locked):.4f}\n")

# Now the same comparison inside a full experiment: drifting phases leak
# light into the dark ports and show up as erroneous counts.
alpha1 = from_intensity_phase(1.0, 0.0)
alpha2 = from_intensity_phase(1.0, math.pi)
base = dict(
    programs=(alpha1, alpha2),
    plan=SplitterPlan(0.5),
    detectors=(DetectorModel(0.53, 4e-7),),
    interference=(InterferenceModel(1.0),),
    trials_per_block=50_000,
    blocks=40,
    seed=8,
    drift=DriftModel(SIGMA),
)
drifting = run_experiment(ExperimentConfig(**base))
stabilized = run_experiment(ExperimentConfig(**base, stabilizer=StabilizerConfig()))

for name, res in (("drifting", drifting), ("stabilized", stabilized)):
    errors = sum(res.counts.c_minus)
    worst_phase = np.max(np.abs(res.phase_history))
    print(f"{name:>10}: erroneous {errors:6d} of {res.counts.c_tot} pulses,"
          f" worst block phase error {worst_phase:.3f} rad")
print(f"\n(the stabilized run spent {stabilized.probe_pulses} extra probe pulses,"
      " none of which entered the measurement statistics)")
