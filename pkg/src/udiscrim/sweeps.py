"""Scenario sweeps: tables of measured fractions against analytic curves.

Each sweep point is measured the way the hardware experiment would do it:
one run with the unknown state set equal to program state 1 and one with
it set equal to program state 2 (one run per phase setting for the
intensity-ratio sweep).  Measured fractions are therefore directly
comparable with the analytic success probabilities in the neighbouring
columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .detection import (
    DetectorModel,
    InterferenceModel,
    analytic_nstate_success,
    analytic_p1,
    analytic_p2,
)
from .drift import DriftModel, StabilizerConfig
from .montecarlo import ExperimentConfig, ExperimentResult, run_experiment
from .network import NStatePlan, SplitterPlan
from .optics import ComplexAmplitude, from_intensity_phase

SWEEP_VARIABLES = ("phase_difference", "intensity", "intensity_ratio", "n_states")

RESULT_COLUMNS = (
    "x",
    "p_plus_1",
    "p_minus_1",
    "p_plus_2",
    "p_minus_2",
    "p_inconclusive",
    "analytic_p1",
    "analytic_p2",
    "analytic_p1_ideal",
    "analytic_p2_ideal",
    "se_p_plus_1",
    "se_p_minus_1",
    "se_p_plus_2",
    "se_p_minus_2",
    "se_p_inconclusive",
)

NSTATE_COLUMNS = (
    "k",
    "analytic_success",
    "p_plus",
    "p_minus",
    "p_inconclusive",
    "se_p_plus",
    "se_p_minus",
    "se_p_inconclusive",
)


@dataclass(frozen=True)
class SweepSpec:
    """Which variable to sweep and over what grid."""

    variable: str
    start: float
    stop: float
    points: int

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if self.points < 2:
            raise ValueError(f"need at least 2 points, got {self.points}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("sweep range must be finite")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class ScenarioParams:
    """Fixed experiment parameters shared by every point of a sweep."""

    t0: float = 0.5
    eta1: float = 0.53
    eta2: float = 0.53
    dark: float = 4e-7
    vis1: float = 0.98
    vis2: float = 0.98
    intensity1: float = 1.0
    phase1_deg: float = 0.0
    intensity2: float = 1.0
    phase2_deg: float = 180.0
    trials: int = 100_000
    blocks: int = 10
    seed: int = 1
    drift_sigma: float = 0.0
    stabilize: bool = False


@dataclass(frozen=True)
class Table:
    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]


def _subseed(seed: int, *tags: int) -> int:
    return int(np.random.SeedSequence((seed, *tags)).generate_state(1, np.uint64)[0])


def _two_state_config(
    params: ScenarioParams,
    alpha1: ComplexAmplitude,
    alpha2: ComplexAmplitude,
    priors: tuple[float, float],
    seed: int,
) -> ExperimentConfig:
    return ExperimentConfig(
        programs=(alpha1, alpha2),
        plan=SplitterPlan(params.t0),
        detectors=(
            DetectorModel(params.eta1, params.dark),
            DetectorModel(params.eta2, params.dark),
        ),
        interference=(
            InterferenceModel(params.vis1),
            InterferenceModel(params.vis2),
        ),
        priors=priors,
        trials_per_block=params.trials,
        blocks=params.blocks,
        seed=seed,
        drift=DriftModel(params.drift_sigma) if params.drift_sigma > 0.0 else None,
        stabilizer=StabilizerConfig() if params.stabilize else None,
    )


def _pooled_inconclusive(results: list[ExperimentResult]) -> tuple[float, float]:
    inc = sum(r.counts.inconclusive for r in results)
    tot = sum(r.counts.c_tot for r in results)
    block_fracs = np.array(
        [c.inconclusive / c.c_tot for r in results for c in r.block_counts]
    )
    if len(block_fracs) >= 2:
        se = float(block_fracs.std(ddof=1) / math.sqrt(len(block_fracs)))
    else:
        se = math.sqrt(inc / tot * (1.0 - inc / tot) / tot)
    return inc / tot, se


def _truth_conditioned_row(
    params: ScenarioParams,
    x: float,
    alpha1: ComplexAmplitude,
    alpha2: ComplexAmplitude,
    point: int,
    workers: int,
) -> tuple[float, ...]:
    """One sweep row: a truth-1 run feeds the j=1 columns, a truth-2 run
    the j=2 columns, and both pool into the inconclusive column."""
    r1 = run_experiment(
        _two_state_config(params, alpha1, alpha2, (1.0, 0.0), _subseed(params.seed, point, 1)),
        workers,
    )
    r2 = run_experiment(
        _two_state_config(params, alpha1, alpha2, (0.0, 1.0), _subseed(params.seed, point, 2)),
        workers,
    )
    p_inc, se_inc = _pooled_inconclusive([r1, r2])
    return (
        x,
        float(r1.fractions.p_plus[0]),
        float(r1.fractions.p_minus[0]),
        float(r2.fractions.p_plus[1]),
        float(r2.fractions.p_minus[1]),
        p_inc,
        analytic_p1(alpha1, alpha2, params.t0, params.eta2),
        analytic_p2(alpha1, alpha2, params.t0, params.eta1),
        analytic_p1(alpha1, alpha2, params.t0, 1.0),
        analytic_p2(alpha1, alpha2, params.t0, 1.0),
        float(r1.fractions.se_p_plus[0]),
        float(r1.fractions.se_p_minus[0]),
        float(r2.fractions.se_p_plus[1]),
        float(r2.fractions.se_p_minus[1]),
        se_inc,
    )


def sweep_phase(spec: SweepSpec, params: ScenarioParams, workers: int = 1) -> Table:
    """Fractions against the phase difference (degrees) between the two
    program states, at fixed intensities."""
    rows = []
    for i, x in enumerate(spec.grid()):
        alpha1 = from_intensity_phase(params.intensity1, math.radians(params.phase1_deg))
        alpha2 = from_intensity_phase(
            params.intensity2, math.radians(params.phase1_deg + x)
        )
        rows.append(_truth_conditioned_row(params, float(x), alpha1, alpha2, i, workers))
    return Table("phase_sweep", RESULT_COLUMNS, tuple(rows))


def sweep_intensity(spec: SweepSpec, params: ScenarioParams, workers: int = 1) -> Table:
    """Fractions against the common mean photon number of both program
    states, at the phase difference fixed by ``params`` (180 degrees by
    default, where the states are farthest apart)."""
    rows = []
    dphi = math.radians(params.phase2_deg - params.phase1_deg)
    for i, x in enumerate(spec.grid()):
        alpha1 = from_intensity_phase(float(x), math.radians(params.phase1_deg))
        alpha2 = from_intensity_phase(float(x), math.radians(params.phase1_deg) + dphi)
        rows.append(_truth_conditioned_row(params, float(x), alpha1, alpha2, i, workers))
    return Table("intensity_sweep", RESULT_COLUMNS, tuple(rows))


def sweep_ratio(spec: SweepSpec, params: ScenarioParams, workers: int = 1) -> Table:
    """Fractions against the intensity ratio |alpha_2|^2 / |alpha_1|^2.

    Each ratio is measured twice with the unknown equal to state 1: once
    with the states 180 degrees apart (j=1 columns, minimal overlap) and
    once in phase (j=2 columns, maximal overlap).  The analytic columns
    carry the matching pair of curves; both pairs coincide at r=0 where
    state 2 is vacuum and the phase is meaningless.
    """
    rows = []
    phi1 = math.radians(params.phase1_deg)
    for i, x in enumerate(spec.grid()):
        r = float(x)
        alpha1 = from_intensity_phase(params.intensity1, phi1)
        alpha2_opp = from_intensity_phase(r * params.intensity1, phi1 + math.pi)
        alpha2_same = from_intensity_phase(r * params.intensity1, phi1)
        res_opp = run_experiment(
            _two_state_config(params, alpha1, alpha2_opp, (1.0, 0.0), _subseed(params.seed, i, 1)),
            workers,
        )
        res_same = run_experiment(
            _two_state_config(params, alpha1, alpha2_same, (1.0, 0.0), _subseed(params.seed, i, 2)),
            workers,
        )
        p_inc, se_inc = _pooled_inconclusive([res_opp, res_same])
        rows.append(
            (
                r,
                float(res_opp.fractions.p_plus[0]),
                float(res_opp.fractions.p_minus[0]),
                float(res_same.fractions.p_plus[0]),
                float(res_same.fractions.p_minus[0]),
                p_inc,
                analytic_p1(alpha1, alpha2_opp, params.t0, params.eta2),
                analytic_p1(alpha1, alpha2_same, params.t0, params.eta2),
                analytic_p1(alpha1, alpha2_opp, params.t0, 1.0),
                analytic_p1(alpha1, alpha2_same, params.t0, 1.0),
                float(res_opp.fractions.se_p_plus[0]),
                float(res_opp.fractions.se_p_minus[0]),
                float(res_same.fractions.se_p_plus[0]),
                float(res_same.fractions.se_p_minus[0]),
                se_inc,
            )
        )
    return Table("ratio_sweep", RESULT_COLUMNS, tuple(rows))


def ring_programs(n: int, intensity: float, phase_deg: float = 0.0) -> tuple[ComplexAmplitude, ...]:
    """n program states of equal intensity spread evenly in phase."""
    base = math.radians(phase_deg)
    return tuple(
        from_intensity_phase(intensity, base + 2.0 * math.pi * k / n) for k in range(n)
    )


def nstate_report(
    n: int,
    params: ScenarioParams,
    workers: int = 1,
    programs: tuple[ComplexAmplitude, ...] | None = None,
) -> Table:
    """Per-hypothesis success of the n-state scheme: analytic (dark counts
    off) beside measured fractions from one truth-k run per hypothesis.

    Defaults to program states of intensity ``params.intensity1`` spread
    evenly in phase; detector 1's efficiency and loop 1's visibility apply
    to every port.  The k column is the 1-based hypothesis label.
    """
    plan = NStatePlan(n)
    if programs is None:
        programs = ring_programs(n, params.intensity1, params.phase1_deg)
    if len(programs) != n:
        raise ValueError(f"expected {n} program states, got {len(programs)}")
    det = DetectorModel(params.eta1, params.dark)
    ideal_det = DetectorModel(params.eta1, 0.0)
    rows = []
    for k in range(n):
        priors = tuple(1.0 if j == k else 0.0 for j in range(n))
        cfg = ExperimentConfig(
            programs=programs,
            plan=plan,
            detectors=(det,),
            interference=(InterferenceModel(params.vis1),),
            priors=priors,
            trials_per_block=params.trials,
            blocks=params.blocks,
            seed=_subseed(params.seed, k, 0),
            drift=DriftModel(params.drift_sigma) if params.drift_sigma > 0.0 else None,
            stabilizer=StabilizerConfig() if params.stabilize else None,
        )
        res = run_experiment(cfg, workers)
        rows.append(
            (
                k + 1,
                analytic_nstate_success(programs, k, plan, ideal_det),
                float(res.fractions.p_plus[k]),
                float(res.fractions.p_minus[k]),
                res.counts.inconclusive / res.counts.c_tot,
                float(res.fractions.se_p_plus[k]),
                float(res.fractions.se_p_minus[k]),
                float(res.fractions.se_p_inconclusive),
            )
        )
    return Table(f"nstate_report_n{n}", NSTATE_COLUMNS, tuple(rows))
