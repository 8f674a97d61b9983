"""The discriminator network: splitting plans, detector-port amplitudes
and the click-pattern classifier.

Layout for two program states: the unknown amplitude is divided on an
input splitter; its transmitted share meets program state 1 on a second
splitter, its reflected share meets program state 2 on a third.  Fixed
phase trims inside the network make every detector port carry a pure
difference

    d_j = const * (alpha_j - alpha_?)

so the port is exactly dark whenever the unknown equals program j.  The
same difference form holds in the n-state extension, where the unknown is
split equally into n arms and every arm meets its program state on a
splitter of transmittance n/(n+1).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .optics import (
    BeamSplitter,
    ComplexAmplitude,
    apply_phase,
    bs_transform,
)

# Exact quarter-turn trim applied to the unknown's arm in front of the
# program splitters; multiplication by -1j is exact in floating point,
# unlike apply_phase(-pi/2).
_TRIM = -1j


@dataclass(frozen=True)
class SplitterPlan:
    """Transmittances of the three splitters for two program states.

    Only the input transmittance ``t0`` is free; ``t1`` and ``t2`` are
    always derived from it so the difference form at both detector ports
    holds for any choice of ``t0``.
    """

    t0: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.t0 <= 1.0) or math.isnan(self.t0):
            raise ValueError(f"t0 must lie in [0, 1], got {self.t0}")
        if self.t0 in (0.0, 1.0):
            warnings.warn(
                f"t0={self.t0} leaves one detector port without signal",
                stacklevel=2,
            )

    @property
    def t1(self) -> float:
        return 1.0 / (1.0 + self.t0)

    @property
    def t2(self) -> float:
        return (1.0 - self.t0) / (2.0 - self.t0)

    @property
    def n_ports(self) -> int:
        return 2


@dataclass(frozen=True)
class NStatePlan:
    """Splitting plan for n >= 2 program states.

    The input splitter divides the unknown equally over n arms and each
    arm meets its program state on a splitter of transmittance n/(n+1).
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need at least 2 program states, got n={self.n}")

    @property
    def stage_transmittance(self) -> float:
        return self.n / (self.n + 1)

    @property
    def stage_reflectance(self) -> float:
        return 1.0 / (self.n + 1)

    @property
    def n_ports(self) -> int:
        return self.n


Plan = SplitterPlan | NStatePlan


@dataclass(frozen=True)
class PortAmplitudes:
    """Field amplitudes incident on the detectors, one per program state."""

    d: tuple[ComplexAmplitude, ...]

    def intensities(self) -> tuple[float, ...]:
        return tuple(a.real * a.real + a.imag * a.imag for a in self.d)


def derive_plan(t0: float) -> SplitterPlan:
    """Build the two-state plan from the input splitter transmittance."""
    return SplitterPlan(t0)


def port_contributions(
    alpha_unknown: ComplexAmplitude,
    alpha_1: ComplexAmplitude,
    alpha_2: ComplexAmplitude,
    plan: SplitterPlan,
    phase_errors: tuple[float, float] = (0.0, 0.0),
) -> list[tuple[ComplexAmplitude, ComplexAmplitude]]:
    """Propagate the three inputs through the two-state network.

    Returns per detector port a pair (unknown part, program part); the
    port amplitude is their sum, and the pair is what an incoherent-sum
    visibility model needs.  ``phase_errors`` are extra phases picked up
    on the unknown's arm of each interferometer loop (drift).
    """
    bs0 = BeamSplitter(plan.t0)
    u_to_1, u_to_2 = bs_transform(alpha_unknown, 0j, bs0)
    u_to_1 *= _TRIM
    if phase_errors[0] != 0.0:
        u_to_1 = apply_phase(u_to_1, phase_errors[0])
    if phase_errors[1] != 0.0:
        u_to_2 = apply_phase(u_to_2, phase_errors[1])

    bs1 = BeamSplitter(plan.t1)
    bs2 = BeamSplitter(plan.t2)
    # Loop 1: unknown transmitted into D1, program 1 reflected into D1.
    d1_u, _ = bs_transform(u_to_1, 0j, bs1)
    d1_p, _ = bs_transform(0j, alpha_1, bs1)
    # Loop 2: program 2 transmitted into D2, unknown reflected into D2.
    d2_p, _ = bs_transform(alpha_2, 0j, bs2)
    d2_u, _ = bs_transform(0j, u_to_2, bs2)
    return [(d1_u, d1_p), (d2_u, d2_p)]


def detector_amplitudes(
    alpha_unknown: ComplexAmplitude,
    alpha_1: ComplexAmplitude,
    alpha_2: ComplexAmplitude,
    plan: SplitterPlan,
    phase_errors: tuple[float, float] = (0.0, 0.0),
) -> PortAmplitudes:
    """Amplitudes at the two detector ports.

    Up to a global phase per port these equal

        d1 = sqrt(t0 / (1 + t0)) * (alpha_1 - alpha_?)
        d2 = sqrt((1 - t0) / (2 - t0)) * (alpha_2 - alpha_?)

    so port j is dark exactly when the unknown equals program j.
    """
    parts = port_contributions(alpha_unknown, alpha_1, alpha_2, plan, phase_errors)
    return PortAmplitudes(tuple(u + p for u, p in parts))


def _equal_split_arms(alpha: ComplexAmplitude, n: int) -> list[ComplexAmplitude]:
    """Split ``alpha`` into n arms of equal intensity via a tap chain.

    A cascade of n-1 two-port splitters peels off 1/n of the original
    intensity at each stage; exact phase trims afterwards give every arm
    the same coefficient -i/sqrt(n).
    """
    arms: list[ComplexAmplitude] = []
    carry = alpha + 0j
    for k in range(n - 1):
        stage = BeamSplitter((n - k - 1) / (n - k))
        carry, tapped = bs_transform(carry, 0j, stage)
        arms.append(tapped * -1.0)
    arms.append(carry * _TRIM)
    return arms


def nstate_port_contributions(
    alpha_unknown: ComplexAmplitude,
    programs: list[ComplexAmplitude] | tuple[ComplexAmplitude, ...],
    plan: NStatePlan,
    phase_errors: tuple[float, ...] | None = None,
) -> list[tuple[ComplexAmplitude, ComplexAmplitude]]:
    """Per-port (unknown part, program part) pairs for the n-state network."""
    n = plan.n
    if len(programs) != n:
        raise ValueError(f"expected {n} program states, got {len(programs)}")
    if phase_errors is not None and len(phase_errors) != n:
        raise ValueError(f"expected {n} phase errors, got {len(phase_errors)}")
    arms = _equal_split_arms(alpha_unknown, n)
    stage = BeamSplitter(plan.stage_transmittance)
    out: list[tuple[ComplexAmplitude, ComplexAmplitude]] = []
    for j in range(n):
        arm = arms[j]
        if phase_errors is not None and phase_errors[j] != 0.0:
            arm = apply_phase(arm, phase_errors[j])
        d_u, _ = bs_transform(arm, 0j, stage)
        d_p, _ = bs_transform(0j, programs[j], stage)
        out.append((d_u, d_p))
    return out


def nstate_amplitudes(
    alpha_unknown: ComplexAmplitude,
    programs: list[ComplexAmplitude] | tuple[ComplexAmplitude, ...],
    plan: NStatePlan,
    phase_errors: tuple[float, ...] | None = None,
) -> PortAmplitudes:
    """Detector-port amplitudes of the n-state network.

    |d_j|^2 = |alpha_j - alpha_?|^2 / (n + 1); port j is dark exactly when
    the unknown equals program j.  For n = 2 the intensities coincide with
    the two-state plan at t0 = 1/2.
    """
    parts = nstate_port_contributions(alpha_unknown, programs, plan, phase_errors)
    return PortAmplitudes(tuple(u + p for u, p in parts))


class OutcomeKind(Enum):
    CORRECT = "correct"
    ERRONEOUS = "erroneous"
    NO_CLICK = "no_click"
    MULTI_CLICK = "multi_click"

    @property
    def conclusive(self) -> bool:
        return self in (OutcomeKind.CORRECT, OutcomeKind.ERRONEOUS)


@dataclass(frozen=True)
class TrialOutcome:
    """Result of one pulse: what was reported against what was sent.

    ``reported`` is None unless the trial was conclusive.
    """

    kind: OutcomeKind
    true_index: int
    reported: int | None = None


def classify(clicks: list[bool] | tuple[bool, ...]) -> tuple[int, ...]:
    """Surviving hypothesis indices after exclusion by clicks.

    A click at detector j rules out hypothesis j.  The trial is conclusive
    exactly when one hypothesis survives; for two program states this is
    the single-click rule (a click at D1 identifies state 2 and vice
    versa, no click or a double click is inconclusive).
    """
    return tuple(j for j, c in enumerate(clicks) if not c)


def outcome_from_clicks(
    clicks: list[bool] | tuple[bool, ...],
    true_index: int,
) -> TrialOutcome:
    """Label a click pattern given the hypothesis that was actually sent."""
    survivors = classify(clicks)
    if len(survivors) == len(clicks):
        return TrialOutcome(OutcomeKind.NO_CLICK, true_index)
    if len(survivors) == 1:
        reported = survivors[0]
        kind = OutcomeKind.CORRECT if reported == true_index else OutcomeKind.ERRONEOUS
        return TrialOutcome(kind, true_index, reported)
    return TrialOutcome(OutcomeKind.MULTI_CLICK, true_index)
