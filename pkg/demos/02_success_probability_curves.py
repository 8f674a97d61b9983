#!/usr/bin/env python3
"""Chart the analytic success probabilities of the discriminator.

Success is limited by two things only: how far apart the program states
are in phase space and how efficient the detectors are.  This script
draws the three standard views -- success vs phase difference, vs pulse
intensity, and vs intensity ratio -- using nothing but the closed-form
click law, and writes them as standalone SVG charts.
"""

import math
from pathlib import Path

from udiscrim import Table, analytic_p1, from_intensity_phase, write_svg

OUT = Path("demo_output")
OUT.mkdir(exist_ok=True)

ETA = 0.53  # measured avalanche-photodiode efficiency this simulator defaults to


def curve(rows, columns, name):
    return Table(name, tuple(columns), tuple(rows))


# Success vs phase difference for a few pulse intensities.
rows = []
for deg in range(0, 361, 5):
    a1 = from_intensity_phase(1.0, 0.0)
    row = [float(deg)]
    for n in (0.25, 0.5, 1.0):
        a1 = from_intensity_phase(n, 0.0)
        a2 = from_intensity_phase(n, math.radians(deg))
        row.append(analytic_p1(a1, a2, 0.5, ETA))
    rows.append(tuple(row))
table = curve(rows, ("x", "analytic_I0.25", "analytic_I0.5", "analytic_I1.0"), "phase_curves")
path = write_svg(table, OUT / "phase_curves.svg", title="success vs phase difference",
                 x_label="phase difference (deg)")
print(f"wrote {path}: zero at 0/360 deg where the states coincide, peak at 180 deg")

# Success vs intensity at 180 degrees, for measured and ideal detectors.
rows = []
for i in range(61):
    n = 3.0 * i / 60
    a1 = from_intensity_phase(n, 0.0)
    a2 = from_intensity_phase(n, math.pi)
    rows.append((n, analytic_p1(a1, a2, 0.5, ETA), analytic_p1(a1, a2, 0.5, 1.0)))
table = curve(rows, ("x", "analytic_eta0.53", "analytic_ideal"), "intensity_curves")
path = write_svg(table, OUT / "intensity_curves.svg", title="success vs pulse intensity",
                 x_label="mean photons per pulse")
print(f"wrote {path}: ideal detectors set the upper curve, eta=53% costs the rest")

# Success vs intensity ratio with the first state fixed at 1.33 photons.
rows = []
for i in range(81):
    r = 4.0 * i / 80
    a1 = from_intensity_phase(1.33, 0.0)
    opposite = from_intensity_phase(1.33 * r, math.pi)
    in_phase = from_intensity_phase(1.33 * r, 0.0)
    rows.append((r, analytic_p1(a1, opposite, 0.5, ETA), analytic_p1(a1, in_phase, 0.5, ETA)))
table = curve(rows, ("x", "analytic_opposite", "analytic_in_phase"), "ratio_curves")
path = write_svg(table, OUT / "ratio_curves.svg", title="success vs intensity ratio",
                 x_label="|alpha2|^2 / |alpha1|^2")
print(f"wrote {path}: the in-phase curve dies at r=1 (identical states),")
print("the opposite-phase curve only grows; both meet at r=0 where state 2 is vacuum")
