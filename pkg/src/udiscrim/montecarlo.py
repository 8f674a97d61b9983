"""Per-pulse Monte Carlo engine.

Every trial is one triggered laser pulse: a true hypothesis is drawn from
the priors, the detector-port mean photon numbers follow from the network
(with the current block's phase errors), independent clicks are sampled
and the exclusion classifier labels the outcome.  Trials are grouped into
blocks; drift and stabilization act between blocks.

Randomness is counter based: trial ``i`` owns a fixed window of a Philox
stream keyed by the experiment seed, so the outcome of a trial depends
only on (config, seed, trial index).  Sharding the trial range over any
number of workers cannot change a single result, and a one-worker mode
reproduces the parallel output exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .detection import DetectorModel, InterferenceModel, click_probability, port_mean_photons
from .drift import DriftModel, ProbeModel, StabilizerConfig, evolve, stabilize
from .network import (
    Plan,
    SplitterPlan,
    TrialOutcome,
    nstate_port_contributions,
    outcome_from_clicks,
    port_contributions,
)
from .optics import ComplexAmplitude, intensity

_CHUNK = 1 << 16
# Philox advances its counter in blocks of four 64-bit draws.
_DRAWS_PER_COUNTER_STEP = 4


class InvariantViolation(RuntimeError):
    """A runtime bookkeeping invariant failed; results cannot be trusted."""


def binomial_stderr(p: float, n: int) -> float:
    """Standard error of a fraction ``p`` estimated from ``n`` trials."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"fraction must lie in [0, 1], got {p}")
    if n < 1:
        raise ValueError(f"need n >= 1 trials, got {n}")
    return math.sqrt(p * (1.0 - p) / n)


@dataclass(frozen=True)
class Counts:
    """Outcome tallies; every trial lands in exactly one bucket.

    ``double_clicks`` counts every click pattern that leaves more than one
    hypothesis alive (for two program states those are exactly the double
    clicks).
    """

    c_plus: tuple[int, ...]
    c_minus: tuple[int, ...]
    double_clicks: int
    no_clicks: int
    c_tot: int

    def __add__(self, other: "Counts") -> "Counts":
        return Counts(
            tuple(a + b for a, b in zip(self.c_plus, other.c_plus, strict=True)),
            tuple(a + b for a, b in zip(self.c_minus, other.c_minus, strict=True)),
            self.double_clicks + other.double_clicks,
            self.no_clicks + other.no_clicks,
            self.c_tot + other.c_tot,
        )

    @classmethod
    def zero(cls, n: int) -> "Counts":
        return cls((0,) * n, (0,) * n, 0, 0, 0)

    @property
    def conclusive(self) -> int:
        return sum(self.c_plus) + sum(self.c_minus)

    @property
    def inconclusive(self) -> int:
        return self.double_clicks + self.no_clicks

    def check(self) -> None:
        if self.conclusive + self.inconclusive != self.c_tot:
            raise InvariantViolation(
                f"outcome buckets sum to {self.conclusive + self.inconclusive}, expected {self.c_tot}"
            )


@dataclass(frozen=True)
class Fractions:
    """Measured fractions P_j^+ = C_j^+/C_tot etc., with block standard errors."""

    p_plus: np.ndarray
    p_minus: np.ndarray
    p_inconclusive: float
    se_p_plus: np.ndarray
    se_p_minus: np.ndarray
    se_p_inconclusive: float


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one simulated experiment needs.

    ``detectors`` and ``interference`` accept either one entry per program
    state or a single entry that applies to all of them.  Priors default
    to uniform.  Ten blocks of 1e5 trials mirror the ten-measurement
    averaging the block statistics are designed for.
    """

    programs: tuple[ComplexAmplitude, ...]
    plan: Plan
    detectors: tuple[DetectorModel, ...]
    interference: tuple[InterferenceModel, ...]
    priors: tuple[float, ...] | None = None
    trials_per_block: int = 100_000
    blocks: int = 10
    seed: int = 0
    drift: DriftModel | None = None
    stabilizer: StabilizerConfig | None = None

    def __post_init__(self) -> None:
        n = len(self.programs)
        if n < 2:
            raise ValueError("need at least two program states")
        if self.plan.n_ports != n:
            raise ValueError(f"plan serves {self.plan.n_ports} states, got {n} programs")
        object.__setattr__(self, "detectors", _broadcast(self.detectors, n, "detectors"))
        object.__setattr__(self, "interference", _broadcast(self.interference, n, "interference"))
        if self.priors is None:
            object.__setattr__(self, "priors", (1.0 / n,) * n)
        else:
            if len(self.priors) != n:
                raise ValueError(f"expected {n} priors, got {len(self.priors)}")
            if min(self.priors) < 0.0 or abs(sum(self.priors) - 1.0) > 1e-9:
                raise ValueError("priors must be nonnegative and sum to 1")
        if self.trials_per_block < 1 or self.blocks < 1:
            raise ValueError("need at least one block of at least one trial")

    @property
    def n_states(self) -> int:
        return len(self.programs)

    @property
    def total_trials(self) -> int:
        return self.trials_per_block * self.blocks


def _broadcast(items, n: int, what: str) -> tuple:
    items = tuple(items) if isinstance(items, (list, tuple)) else (items,)
    if len(items) == 1:
        return items * n
    if len(items) != n:
        raise ValueError(f"expected 1 or {n} {what}, got {len(items)}")
    return items


@dataclass(frozen=True)
class ExperimentResult:
    counts: Counts
    block_counts: tuple[Counts, ...]
    fractions: Fractions
    phase_history: np.ndarray  # (blocks, n_states) phase error during each block
    probe_pulses: int = 0


def _contribution_pairs(cfg: ExperimentConfig, true_index: int, phases) -> list:
    alpha = cfg.programs[true_index]
    if isinstance(cfg.plan, SplitterPlan):
        return port_contributions(
            alpha, cfg.programs[0], cfg.programs[1], cfg.plan, (phases[0], phases[1])
        )
    return nstate_port_contributions(alpha, cfg.programs, cfg.plan, tuple(phases))


def click_matrix(cfg: ExperimentConfig, phases) -> np.ndarray:
    """Click probabilities P[k, j]: detector j firing when state k was sent."""
    n = cfg.n_states
    out = np.empty((n, n), dtype=float)
    for k in range(n):
        pairs = _contribution_pairs(cfg, k, phases)
        for j, (u, p) in enumerate(pairs):
            mean = port_mean_photons(u + p, intensity(u) + intensity(p), cfg.interference[j])
            out[k, j] = click_probability(mean, cfg.detectors[j])
    return out


def _stride(n_states: int) -> int:
    draws = 1 + n_states  # one for the hypothesis, one per detector
    steps = -(-draws // _DRAWS_PER_COUNTER_STEP)
    return steps * _DRAWS_PER_COUNTER_STEP


def _prior_cdf(priors: tuple[float, ...]) -> np.ndarray:
    cdf = np.cumsum(np.asarray(priors, dtype=float))
    cdf[-1] = 1.0
    return cdf


def _measurement_stream(seed: int) -> np.random.SeedSequence:
    meas, _, _ = np.random.SeedSequence(seed).spawn(3)
    return meas


def _chunk_counts(
    bounds: tuple[int, int],
    meas_ss: np.random.SeedSequence,
    matrix: np.ndarray,
    cdf: np.ndarray,
    stride: int,
) -> Counts:
    start, stop = bounds
    n = matrix.shape[0]
    bg = np.random.Philox(meas_ss)
    bg.advance(start * (stride // _DRAWS_PER_COUNTER_STEP))
    u = np.random.Generator(bg).random((stop - start) * stride).reshape(-1, stride)
    truth = np.searchsorted(cdf, u[:, 0], side="right")
    clicks = u[:, 1 : 1 + n] < matrix[truth, :]
    n_clicks = clicks.sum(axis=1)
    no_click = n_clicks == 0
    conclusive = n_clicks == n - 1
    survivor = (n * (n - 1)) // 2 - clicks @ np.arange(n)
    correct = conclusive & (survivor == truth)
    erroneous = conclusive & (survivor != truth)
    c_plus = np.bincount(truth[correct], minlength=n)
    c_minus = np.bincount(truth[erroneous], minlength=n)
    ambiguous = int(len(truth) - no_click.sum() - conclusive.sum())
    return Counts(
        tuple(int(x) for x in c_plus),
        tuple(int(x) for x in c_minus),
        ambiguous,
        int(no_click.sum()),
        stop - start,
    )


def run_trial(
    cfg: ExperimentConfig,
    trial_index: int,
    phase_errors=None,
) -> TrialOutcome:
    """Outcome of a single pulse, reproducing exactly what the vectorized
    engine does for the same (seed, trial index, phase errors)."""
    n = cfg.n_states
    phases = np.zeros(n) if phase_errors is None else np.asarray(phase_errors, dtype=float)
    matrix = click_matrix(cfg, phases)
    stride = _stride(n)
    bg = np.random.Philox(_measurement_stream(cfg.seed))
    bg.advance(trial_index * (stride // _DRAWS_PER_COUNTER_STEP))
    u = np.random.Generator(bg).random(stride)
    truth = int(np.searchsorted(_prior_cdf(cfg.priors), u[0], side="right"))
    clicks = tuple(bool(u[1 + j] < matrix[truth, j]) for j in range(n))
    return outcome_from_clicks(clicks, truth)


def _probe_models(cfg: ExperimentConfig) -> list[ProbeModel]:
    if isinstance(cfg.plan, SplitterPlan):
        couplings = [cfg.plan.t0 * cfg.plan.t1, (1.0 - cfg.plan.t0) * (1.0 - cfg.plan.t2)]
    else:
        couplings = [cfg.plan.stage_reflectance] * cfg.plan.n
    return [
        ProbeModel(
            coupling=c,
            program_intensity=intensity(cfg.programs[j]),
            visibility=cfg.interference[j].visibility,
            detector=cfg.detectors[j],
        )
        for j, c in enumerate(couplings)
    ]


def _run_block(
    cfg: ExperimentConfig,
    block_index: int,
    phases,
    workers: int,
    pool: ThreadPoolExecutor | None,
) -> Counts:
    matrix = click_matrix(cfg, phases)
    cdf = _prior_cdf(cfg.priors)
    stride = _stride(cfg.n_states)
    base = block_index * cfg.trials_per_block
    bounds = [
        (base + lo, base + min(lo + _CHUNK, cfg.trials_per_block))
        for lo in range(0, cfg.trials_per_block, _CHUNK)
    ]
    work = partial(
        _chunk_counts,
        meas_ss=_measurement_stream(cfg.seed),
        matrix=matrix,
        cdf=cdf,
        stride=stride,
    )
    if pool is None:
        parts = map(work, bounds)
    else:
        parts = pool.map(work, bounds)
    total = Counts.zero(cfg.n_states)
    for part in parts:
        total = total + part
    total.check()
    if total.c_tot != cfg.trials_per_block:
        raise InvariantViolation(
            f"block ran {total.c_tot} trials, expected {cfg.trials_per_block}"
        )
    return total


def fractions_from_blocks(block_counts: tuple[Counts, ...]) -> Fractions:
    """Pooled fractions with standard errors from the block-to-block spread.

    With a single block the spread is undefined and the binomial standard
    error of the pooled fraction is used instead.
    """
    pooled = block_counts[0]
    for c in block_counts[1:]:
        pooled = pooled + c
    n = len(pooled.c_plus)
    p_plus = np.array([c / pooled.c_tot for c in pooled.c_plus])
    p_minus = np.array([c / pooled.c_tot for c in pooled.c_minus])
    p_inc = pooled.inconclusive / pooled.c_tot
    nb = len(block_counts)
    if nb >= 2:
        f_plus = np.array([[c.c_plus[j] / c.c_tot for j in range(n)] for c in block_counts])
        f_minus = np.array([[c.c_minus[j] / c.c_tot for j in range(n)] for c in block_counts])
        f_inc = np.array([c.inconclusive / c.c_tot for c in block_counts])
        se_plus = f_plus.std(axis=0, ddof=1) / math.sqrt(nb)
        se_minus = f_minus.std(axis=0, ddof=1) / math.sqrt(nb)
        se_inc = float(f_inc.std(ddof=1) / math.sqrt(nb))
    else:
        se_plus = np.array([binomial_stderr(p, pooled.c_tot) for p in p_plus])
        se_minus = np.array([binomial_stderr(p, pooled.c_tot) for p in p_minus])
        se_inc = binomial_stderr(p_inc, pooled.c_tot)
    return Fractions(p_plus, p_minus, p_inc, se_plus, se_minus, se_inc)


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> ExperimentResult:
    """Run all blocks of one experiment.

    ``workers`` only shards each block's trial range over threads; the
    counts are identical for every worker count.
    """
    if workers < 1:
        raise ValueError(f"need workers >= 1, got {workers}")
    n = cfg.n_states
    root = np.random.SeedSequence(cfg.seed)
    _, drift_ss, stab_ss = root.spawn(3)
    drift_rng = np.random.Generator(np.random.Philox(drift_ss))
    stab_rng = np.random.Generator(np.random.Philox(stab_ss))
    probes = _probe_models(cfg) if cfg.stabilizer is not None and cfg.stabilizer.enabled else None

    phases = np.zeros(n)
    history = np.empty((cfg.blocks, n), dtype=float)
    block_counts: list[Counts] = []
    probe_pulses = 0
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for b in range(cfg.blocks):
            if cfg.drift is not None:
                phases = evolve(phases, cfg.drift, drift_rng)
            if probes is not None:
                phases, used = stabilize(phases, cfg.stabilizer, probes, stab_rng)
                probe_pulses += used
            history[b] = phases
            block_counts.append(_run_block(cfg, b, phases, workers, pool))
    finally:
        if pool is not None:
            pool.shutdown()
    pooled = Counts.zero(n)
    for c in block_counts:
        pooled = pooled + c
    pooled.check()
    return ExperimentResult(
        counts=pooled,
        block_counts=tuple(block_counts),
        fractions=fractions_from_blocks(tuple(block_counts)),
        phase_history=history,
        probe_pulses=probe_pulses,
    )
