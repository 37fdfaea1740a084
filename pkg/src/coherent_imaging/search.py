"""Logarithmic search for an emitter position.

Iteration n splits the current confinement interval I_{n-1} into D query
centers, classifies each with the narrowband sequence of length
L_n = L_0 * K**n, and narrows to I_n = Delta^b around the first positive
center.  A scan with no positive means the previous narrowing was wrong and
the previous iteration is repeated.
"""
from dataclasses import dataclass, field, replace
import functools
import math

import numpy as np

from .beam import (
    GaussianBeam,
    SpatialInterval,
    place_beam_for_query,
    theta_of_x,
    theta_prime_max,
)
from .chebyshev import ProfileParams, arcsech, p_narrow, peak_widths
from .classify import (
    ClassifierConfig,
    Decision,
    NoiseModel,
    classify,
    depolarizing_gamma,
    noisy_prob,
    repeats_for_noise,
)
from .su2 import compose, transition_prob
from .synthesis import synth_for_length

__all__ = [
    "SearchConfig",
    "RuntimeLedger",
    "SearchState",
    "LocalizationResult",
    "RuntimeEstimate",
    "ScalingRow",
    "MultiSearchResult",
    "PriorViolation",
    "IterationRecord",
    "saturated_prior",
    "init_L0",
    "subdivide",
    "widths_for",
    "start_state",
    "run_iteration",
    "backtrack",
    "run_search",
    "runtime_formula",
    "scaling_diagnostic",
    "fit_loglog_slope",
    "trial_rng",
    "multi_object_search",
    "search_3d",
]


class PriorViolation(ValueError):
    """The true position lies outside the prior interval I_0."""


@dataclass(frozen=True)
class SearchConfig:
    classifier: ClassifierConfig
    I0: SpatialInterval
    M: int = 4
    K: int = 3
    noise: NoiseModel = NoiseModel()
    beam: GaussianBeam = GaussianBeam()
    trials: int = 1
    seed: int = 0
    scan_order: str = "left"
    adapt_repeats: bool = True
    use_unitary: bool = False
    max_steps: int = 10_000

    def __post_init__(self):
        if self.K != 3:
            raise ValueError("only K = 3 is supported: sequences exist for L = 3**n only")
        if self.M < 0:
            raise ValueError("M must be non-negative")
        if self.scan_order not in ("left", "center"):
            raise ValueError("scan_order must be 'left' or 'center'")


@dataclass
class RuntimeLedger:
    total_pulses: int = 0
    total_time: float = 0.0
    sequence_applications: int = 0
    state_preparations: int = 0
    backtracks: int = 0

    def charge(self, l, L, tau):
        self.total_pulses += l * L
        self.total_time += l * L * tau
        self.sequence_applications += l
        self.state_preparations += l

    def merged(self, other):
        return RuntimeLedger(
            self.total_pulses + other.total_pulses,
            self.total_time + other.total_time,
            self.sequence_applications + other.sequence_applications,
            self.state_preparations + other.state_preparations,
            self.backtracks + other.backtracks,
        )


@dataclass(frozen=True)
class IterationRecord:
    n: int
    L_n: int
    D: int
    scanned: int
    decision_d: object  # subinterval index, or None for a failed scan
    interval_center: float
    interval_width: float
    cumulative_time: float
    backtracks: int


@dataclass
class SearchState:
    iteration_n: int
    interval_In: SpatialInterval
    L_n: int
    L0: int
    ledger: RuntimeLedger
    # I_0, I_1, ..., I_n; the parents needed for backtracking
    stack: list
    history: list = field(default_factory=list)


@dataclass(frozen=True)
class LocalizationResult:
    estimate_xe: float
    final_interval: SpatialInterval
    sigma_predicted: float
    ledger: RuntimeLedger
    L0: int = 1
    history: tuple = ()


@functools.lru_cache(maxsize=None)
def _widths(L, delta_b, delta_m):
    return peak_widths(ProfileParams(L, delta_b), delta_m)


def widths_for(L, classifier):
    return _widths(L, classifier.delta_b, classifier.delta_m)


@functools.lru_cache(maxsize=64)
def _sequence(L, delta_b):
    return synth_for_length(L, delta_b)


def saturated_prior(classifier, beam=GaussianBeam(), L0=3, center=0.0, fill=0.999):
    """Prior interval just inside the initialization bound 2 theta_b(L_0) / theta'.

    With a saturated prior the bookkeeping widths |I_0| / K**n track the
    accept intervals Delta^b at every level.
    """
    width = fill * 2.0 * widths_for(L0, classifier).theta_b / theta_prime_max(beam)
    return SpatialInterval(center, width)


def init_L0(I0, beam, classifier, K=3):
    """Largest L_0 in {1, K, K**2, ...} with |I_0| < 2 theta_b(L_0) / theta'."""
    tp = theta_prime_max(beam)
    if not I0.width < 2.0 * widths_for(1, classifier).theta_b / tp:
        raise ValueError("prior interval is wider than the single-pulse peak")
    L = 1
    while I0.width < 2.0 * widths_for(L * K, classifier).theta_b / tp:
        L *= K
    return L


def subdivide(interval, widths, K=3):
    """D = ceil(K R) equally spaced query centers spanning ``interval``."""
    D = max(1, math.ceil(K * widths.ratio_R - 1e-12))
    pitch = interval.width / D
    return [interval.lo + (d + 0.5) * pitch for d in range(D)]


def _scan_indices(D, order):
    if order == "left":
        return list(range(D))
    mid = (D - 1) / 2.0
    return sorted(range(D), key=lambda d: (abs(d - mid), d))


def _probability(config, L, query_center, true_position):
    beam = place_beam_for_query(config.beam, query_center)
    theta = theta_of_x(beam, true_position)
    if config.use_unitary:
        p = float(transition_prob(compose(_sequence(L, config.classifier.delta_b), theta)))
    else:
        p = float(p_narrow(theta, ProfileParams(L, config.classifier.delta_b)))
    return noisy_prob(p, L, config.beam.tau, config.noise)


def _repeats(config, L):
    if not config.adapt_repeats or config.noise.kind == "none":
        return config.classifier.l_repeats
    gamma = depolarizing_gamma(L, config.beam.tau, config.noise)
    return repeats_for_noise(config.classifier, gamma)


def start_state(config):
    L0 = init_L0(config.I0, config.beam, config.classifier, config.K)
    return SearchState(0, config.I0, L0, L0, RuntimeLedger(), [config.I0])


def backtrack(state, record=None):
    """Discard the latest narrowing so that the previous iteration is repeated."""
    stack = list(state.stack)
    if len(stack) > 1:
        stack.pop()
    n = len(stack) - 1
    state.ledger.backtracks += 1
    history = state.history + [record] if record is not None else state.history
    return SearchState(n, stack[-1], state.L0 * 3**n, state.L0, state.ledger, stack, history)


def run_iteration(state, config, true_position, rng, force_wrong=False):
    """One split / classify / update step.

    ``force_wrong`` is a test hook: it accepts a subinterval whose I_n excludes
    ``true_position`` without spending any measurements.
    """
    n = state.iteration_n + 1
    L = state.L0 * config.K**n
    widths = widths_for(L, config.classifier)
    parent = state.interval_In
    centers = subdivide(parent, widths, config.K)
    child_width = parent.width / config.K

    D = len(centers)

    if force_wrong:
        far = [d for d, c in enumerate(centers) if abs(c - true_position) > child_width / 2.0]
        if far:
            d = max(far, key=lambda d: abs(centers[d] - true_position))
            return _advance(state, centers[d], child_width, L, n, d, D, 0)

    l = _repeats(config, L)
    scanned = 0
    for d in _scan_indices(D, config.scan_order):
        p = _probability(config, L, centers[d], true_position)
        rec = classify(p, config.classifier, rng, l_repeats=l, pulses=L, tau=config.beam.tau)
        state.ledger.charge(l, L, config.beam.tau)
        scanned += 1
        if rec.decision is Decision.INSIDE_PEAK:
            return _advance(state, centers[d], child_width, L, n, d, D, scanned)
    failed = IterationRecord(
        n, L, D, scanned, None, parent.center, parent.width,
        state.ledger.total_time, state.ledger.backtracks + 1,
    )
    return backtrack(state, failed)


def _advance(state, center, width, L, n, d, D, scanned):
    new = SpatialInterval(center, width)
    rec = IterationRecord(
        n, L, D, scanned, d, center, width, state.ledger.total_time, state.ledger.backtracks
    )
    return SearchState(
        n, new, L, state.L0, state.ledger, state.stack + [new], state.history + [rec]
    )


def run_search(config, true_position, rng, inject_at=()):
    """Run until M successful narrowings; ``inject_at`` lists iterations to corrupt."""
    if not config.I0.contains(true_position):
        raise PriorViolation(f"position {true_position} outside prior {config.I0}")
    state = start_state(config)
    pending = set(inject_at)
    steps = 0
    while state.iteration_n < config.M:
        steps += 1
        if steps > config.max_steps:
            raise RuntimeError("search did not converge; classification is unreliable")
        n_next = state.iteration_n + 1
        forced = n_next in pending
        if forced:
            pending.discard(n_next)
        state = run_iteration(state, config, true_position, rng, force_wrong=forced)
    final = state.interval_In
    return LocalizationResult(
        final.center,
        final,
        final.width / math.sqrt(12.0),
        state.ledger,
        state.L0,
        tuple(state.history),
    )


def trial_rng(seed, index):
    """Independent, reproducible stream for trial ``index`` under ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


@dataclass(frozen=True)
class RuntimeEstimate:
    E: float
    D: int
    exact: float
    linearized: float
    asymptotic: float
    final: float
    sigma: float
    omega_prime: float

    @property
    def heisenberg_constant(self):
        """t * Omega' * sigma from the last step of the approximation chain."""
        return self.final * self.omega_prime * self.sigma


def runtime_formula(config, M=None):
    """Expected runtime, exactly and through the successive approximations.

    ``exact`` is E * sum_n tau L_n.  The next three use the geometric
    closed form, |I_0| ~ 2 theta_b(L_0)/theta' with K**M - 1 ~ K**M, and
    sigma ~ |I_M|/sqrt(12); they all share E = D l / 2.
    """
    M = config.M if M is None else M
    K = config.K
    tau = config.beam.tau
    L0 = init_L0(config.I0, config.beam, config.classifier, K)
    D = len(subdivide(config.I0, widths_for(L0 * K, config.classifier), K))
    E = D * config.classifier.l_repeats / 2.0
    tp = theta_prime_max(config.beam)
    omega_prime = tp / tau
    I0 = config.I0.width
    IM = I0 / K**M
    sigma = IM / math.sqrt(12.0)
    exact = E * sum(tau * L0 * K**n for n in range(1, M + 1))
    linearized = E * I0 * tp * L0 * K / (K - 1) * (K**M - 1) / K**M / (IM * omega_prime)
    ab = float(arcsech(config.classifier.delta_b))
    asymptotic = 4.0 * E * K * ab / (K - 1) / (IM * omega_prime)
    final = 2.0 * E * K * ab / (math.sqrt(3.0) * (K - 1)) / (sigma * omega_prime)
    return RuntimeEstimate(E, D, exact, linearized, asymptotic, final, sigma, omega_prime)


@dataclass(frozen=True)
class ScalingRow:
    M: int
    sigma_empirical: float
    sigma_predicted: float
    t_mean: float
    t_formula: float
    slope_local: float
    backtracks_mean: float
    success_rate: float


def _uniform_in(interval, rng):
    return interval.lo + interval.width * rng.random()


def scaling_diagnostic(config, M_values, trials=None):
    """Monte Carlo sigma and runtime for each M, plus local log-log slopes.

    Trial i uses ``trial_rng(seed, i)`` for every M, so the
    sequence of true positions is shared across rows.
    """
    if not M_values:
        raise ValueError("M_values must be nonempty")
    trials = config.trials if trials is None else trials
    rows = []
    prev = None
    for M in M_values:
        cfg = replace(config, M=M)
        errs = np.empty(trials)
        times = np.empty(trials)
        backs = np.empty(trials)
        hits = 0
        for i in range(trials):
            rng = trial_rng(config.seed, i)
            x = _uniform_in(cfg.I0, rng)
            res = run_search(cfg, x, rng)
            errs[i] = res.estimate_xe - x
            times[i] = res.ledger.total_time
            backs[i] = res.ledger.backtracks
            hits += res.final_interval.contains(x)
        sigma = float(np.std(errs))
        t_mean = float(np.mean(times))
        slope = math.nan
        if prev is not None and sigma > 0 and prev[0] > 0:
            slope = math.log(t_mean / prev[1]) / math.log(prev[0] / sigma)
        rows.append(
            ScalingRow(
                M,
                sigma,
                cfg.I0.width / cfg.K**M / math.sqrt(12.0),
                t_mean,
                runtime_formula(cfg, M).exact,
                slope,
                float(np.mean(backs)),
                hits / trials,
            )
        )
        prev = (sigma, t_mean)
    return rows


def fit_loglog_slope(rows):
    """Least-squares slope of log t_mean against log(1 / sigma_empirical)."""
    pts = [(r.sigma_empirical, r.t_mean) for r in rows if r.t_mean > 0 and r.sigma_empirical > 0]
    if len(pts) < 2:
        return math.nan
    s, t = np.array(pts).T
    return float(np.polyfit(np.log(1.0 / s), np.log(t), 1)[0])


@dataclass(frozen=True)
class MultiSearchResult:
    results: list
    ledger: RuntimeLedger
    delta_b_sq_used: float


def _crosstalk_classifier(classifier, Q):
    return replace(classifier, delta_b_sq=classifier.delta_b_sq / Q, p_bar=None)


def _cluster(positives, pitch):
    """Group positives whose centers sit on neighbouring grid points."""
    positives = sorted(positives, key=lambda p: p[0])
    groups = [[positives[0]]]
    for item in positives[1:]:
        if item[0] - groups[-1][-1][0] <= pitch * (1.0 + 1e-9):
            groups[-1].append(item)
        else:
            groups.append([item])
    return groups


def _representative(group):
    mean = sum(c for c, _ in group) / len(group)
    return max(group, key=lambda p: (p[1], -abs(p[0] - mean)))[0]


def multi_object_search(config, positions, rng, Q=None):
    """Breadth-first search for several objects.

    Every active interval is scanned in full.  Positives that land on
    neighbouring grid points are one detection; the member with the largest
    count k becomes the next active interval.  An active interval with no
    positive is rescanned once, then dropped; if every interval is dropped
    the previous level is repeated.
    """
    Q = len(positions) if Q is None else Q
    if Q != len(positions) or Q < 1:
        raise ValueError("Q must equal the number of positions")
    for x in positions:
        if not config.I0.contains(x):
            raise PriorViolation(f"position {x} outside prior {config.I0}")
    classifier = _crosstalk_classifier(config.classifier, Q)
    cfg = replace(config, classifier=classifier)
    K = cfg.K
    L0 = init_L0(cfg.I0, cfg.beam, classifier, K)
    ledger = RuntimeLedger()
    levels = [[cfg.I0]]
    steps = 0
    while len(levels) - 1 < cfg.M:
        steps += 1
        if steps > cfg.max_steps:
            raise RuntimeError("multi-object search did not converge")
        n = len(levels)
        L = L0 * K**n
        widths = widths_for(L, classifier)
        l = _repeats(cfg, L)
        positives = []
        pitch = None
        for parent in levels[-1]:
            for attempt in range(2):
                centers = subdivide(parent, widths, K)
                pitch = parent.width / len(centers)
                found = []
                for c in centers:
                    # an excitation of any emitter registers as a click
                    p = 1.0 - math.prod(1.0 - _probability(cfg, L, c, x) for x in positions)
                    rec = classify(p, classifier, rng, l_repeats=l, pulses=L, tau=cfg.beam.tau)
                    ledger.charge(l, L, cfg.beam.tau)
                    if rec.decision is Decision.INSIDE_PEAK:
                        found.append((c, rec.successes_k))
                if found:
                    positives.extend(found)
                    break
        if not positives:
            ledger.backtracks += 1
            if len(levels) > 1:
                levels.pop()
            continue
        child_width = levels[-1][0].width / K
        levels.append(
            [SpatialInterval(_representative(g), child_width) for g in _cluster(positives, pitch)]
        )
    results = [
        LocalizationResult(iv.center, iv, iv.width / math.sqrt(12.0), ledger, L0)
        for iv in levels[-1]
    ]
    return MultiSearchResult(results, ledger, classifier.delta_b_sq)


def search_3d(configs, true_position, rng):
    """Three independent 1D searches with cylindrical beams along x, y and z."""
    if len(configs) != 3 or len(true_position) != 3:
        raise ValueError("search_3d needs three configs and a 3-vector")
    return [run_search(cfg, float(s), rng) for cfg, s in zip(configs, true_position)]
