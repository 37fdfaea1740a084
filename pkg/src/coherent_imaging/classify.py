"""Projection-noise measurements, the l-repeat threshold classifier and its bounds."""
from dataclasses import dataclass
import enum
import math

import numpy as np

__all__ = [
    "ClassifierConfig",
    "NoiseModel",
    "Decision",
    "MeasurementRecord",
    "sample_measurement",
    "depolarizing_gamma",
    "noisy_prob",
    "classify",
    "hoeffding_bound",
    "required_repeats",
    "repeats_for_noise",
]


@dataclass(frozen=True)
class ClassifierConfig:
    delta_b_sq: float
    delta_m_sq: float
    l_repeats: int
    p_bar: float = None

    def __post_init__(self):
        if not 0.0 <= self.delta_b_sq < self.delta_m_sq <= 1.0:
            raise ValueError("need 0 <= delta_b_sq < delta_m_sq <= 1")
        if int(self.l_repeats) != self.l_repeats or self.l_repeats < 1:
            raise ValueError("l_repeats must be a positive integer")
        if self.p_bar is None:
            object.__setattr__(self, "p_bar", 0.5 * (self.delta_m_sq + self.delta_b_sq))

    @property
    def delta_b(self):
        return math.sqrt(self.delta_b_sq)

    @property
    def delta_m(self):
        return math.sqrt(self.delta_m_sq)

    @property
    def gap(self):
        return self.delta_m_sq - self.delta_b_sq


@dataclass(frozen=True)
class NoiseModel:
    kind: str = "none"
    tau_c: float = math.inf

    def __post_init__(self):
        if self.kind not in ("none", "depolarizing"):
            raise ValueError(f"unknown noise model {self.kind!r}")
        if self.kind == "depolarizing" and not self.tau_c > 0:
            raise ValueError("depolarizing noise needs tau_c > 0")

    @classmethod
    def depolarizing(cls, tau_c):
        return cls("depolarizing", float(tau_c))


class Decision(enum.Enum):
    INSIDE_PEAK = "InsidePeak"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class MeasurementRecord:
    successes_k: int
    trials_l: int
    decision: Decision
    pulse_cost: int = 0
    time_cost: float = 0.0


def sample_measurement(p, rng):
    """One projective measurement: 1 with probability p, one uniform draw consumed."""
    return int(rng.random() < p)


def depolarizing_gamma(sequence_pulses, tau, noise):
    """Trace distance 0.5 * (1 - exp(-tau L / tau_c)) after one sequence."""
    if noise.kind == "none" or math.isinf(noise.tau_c):
        return 0.0
    return 0.5 * (1.0 - math.exp(-tau * sequence_pulses / noise.tau_c))


def noisy_prob(p_ideal, sequence_pulses, tau, noise):
    gamma = depolarizing_gamma(sequence_pulses, tau, noise)
    # the channel shrinks toward the maximally mixed state: p -> (1-2g) p + g
    return (1.0 - 2.0 * gamma) * p_ideal + gamma


def classify(true_p, config, rng, l_repeats=None, pulses=0, tau=1.0):
    """Threshold test over l repeats; k/l >= p_bar decides InsidePeak.

    ``true_p`` is the probability actually realized (noise already applied).
    ``pulses`` is the sequence length, used only for cost bookkeeping.
    """
    l = config.l_repeats if l_repeats is None else int(l_repeats)
    k = int(np.count_nonzero(rng.random(l) < true_p))
    decision = Decision.INSIDE_PEAK if k >= config.p_bar * l else Decision.OUTSIDE
    return MeasurementRecord(k, l, decision, l * pulses, l * pulses * tau)


def hoeffding_bound(config, gamma=0.0, l_repeats=None):
    """exp(-l (gap - 2 gamma)^2 / 2); 1 when the gap has closed."""
    l = config.l_repeats if l_repeats is None else l_repeats
    g = config.gap - 2.0 * gamma
    if g <= 0.0:
        return 1.0
    return min(1.0, math.exp(-l * g * g / 2.0))


def required_repeats(delta_m_sq, delta_b_sq, gamma, target_P):
    gap = delta_m_sq - delta_b_sq - 2.0 * gamma
    if gap <= 0.0:
        raise ValueError("no repeat count works once the noisy gap is non-positive")
    if target_P >= 1.0:
        return 0
    return math.ceil(2.0 * math.log(1.0 / target_P) / gap**2)


def repeats_for_noise(config, gamma):
    """Repeat count keeping the per-classification bound at its noiseless value."""
    g = config.gap - 2.0 * gamma
    if g <= 0.0:
        raise ValueError("noise has closed the classification gap")
    return max(config.l_repeats, math.ceil(config.l_repeats * (config.gap / g) ** 2 - 1e-9))
