"""Four-experiment estimate of the depolarizing parameter of a twirled channel.

With preparation noise ``E1`` and measurement noise ``E0`` the experiments are

    q0 = <0| E0 o T o E1(|0><0|) |0>      q2 = <0| E0 o E1(|0><0|) |0>
    q1 = <0| E0 o T o E1(|1><1|) |0>      q3 = <0| E0 o E1(|1><1|) |0>

where ``T`` is the supermap twirl of the channel under test. Because the
twirl scales every traceless operator by ``eta``, ``(q0 - q1) / (q2 - q3)``
equals ``eta`` whatever the SPAM channels are, as long as ``q2 != q3``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np

from .channels import Channel, apply, identity_channel, ptm
from .errors import DegenerateSpamError, DimensionError, InvalidChannelError, ParameterError
from .linalg import projector
from .supermap import apply_supermap, build_W, simulate_circuit

EXACT_SPAM_TOL = 1e-9
REPORT_ALPHA = 0.95

# coefficient vector of |0><0| in the (I, X, Z, XZ) basis and the readout row for <0|.|0>
_KET0_VEC = np.array([0.5, 0, 0.5, 0], dtype=np.complex128)
_READ0_ROW = np.array([1, 0, 1, 0], dtype=np.complex128)


class PlanMode(str, Enum):
    PAPER_LITERAL = "paper_literal"
    RIGOROUS = "rigorous"


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    target: Channel
    spam_prep: Channel = field(default_factory=identity_channel)
    spam_meas: Channel = field(default_factory=identity_channel)
    shots_per_experiment: int = 0
    seed: int = 0

    def __post_init__(self):
        for ch in (self.target, self.spam_prep, self.spam_meas):
            if ch.dim != 2:
                raise DimensionError("the estimator works on qubit channels only")
            if not ch.is_cptp():
                raise InvalidChannelError("experiment channels must be CPTP")
        if self.shots_per_experiment < 0:
            raise ParameterError("shots_per_experiment must be nonnegative")


@dataclass(frozen=True)
class SamplePlan:
    epsilon: float
    alpha: float
    mode: str
    n_per_experiment: int
    n_total: int


@dataclass(frozen=True)
class EstimationReport:
    q: tuple[float, float, float, float]
    eta_hat: float
    fidelity_hat: float
    shots: int
    epsilon: float
    confidence_note: str
    seed: int
    q_exact: tuple[float, float, float, float] | None = None
    eta_stderr: float = 0.0

    @property
    def mode(self) -> str:
        return "exact" if self.shots == 0 else "sampled"

    def to_json(self) -> dict:
        plan = None
        if self.shots:
            plan = {
                "epsilon": self.epsilon,
                "alpha": REPORT_ALPHA,
                "mode": PlanMode.RIGOROUS.value,
                "n_per_experiment": self.shots,
                "n_total": 4 * self.shots,
            }
        return {
            "q": list(self.q),
            "eta": self.eta_hat,
            "fidelity": self.fidelity_hat,
            "shots": self.shots,
            "mode": self.mode,
            "seed": self.seed,
            "plan": plan,
            "eta_stderr": self.eta_stderr,
            "note": self.confidence_note,
        }


def exact_probabilities(cfg: ExperimentConfig) -> tuple[float, float, float, float]:
    q0 = simulate_circuit(cfg.target, False, cfg.spam_meas, cfg.spam_prep)
    q1 = simulate_circuit(cfg.target, True, cfg.spam_meas, cfg.spam_prep)
    q2, q3 = (
        float(apply(cfg.spam_meas, apply(cfg.spam_prep, projector(b, 2)))[0, 0].real)
        for b in (0, 1)
    )
    return q0, q1, q2, q3


def ptm_probabilities(cfg: ExperimentConfig) -> tuple[float, float, float, float]:
    """Same four numbers from transfer-matrix algebra alone (independent route)."""
    g0, g1 = ptm(cfg.spam_meas), ptm(cfg.spam_prep)
    twirl = ptm(apply_supermap(build_W(), cfg.target))
    ket1 = _KET0_VEC * np.array([1, 1, -1, 1])
    out = []
    for mid in (twirl, np.eye(4)):
        for vec in (_KET0_VEC, ket1):
            out.append(float((_READ0_ROW @ g0 @ mid @ g1 @ vec).real))
    return tuple(out)


def estimate_eta(q, tol: float = EXACT_SPAM_TOL) -> float:
    q0, q1, q2, q3 = q
    den = q2 - q3
    if abs(den) < tol:
        raise DegenerateSpamError(f"|q2 - q3| = {abs(den):.3e} is below {tol:.1e}")
    return (q0 - q1) / den


def fidelity_from_eta(eta: float) -> float:
    """Average gate fidelity ``(1 + eta) / 2`` of a qubit depolarizing channel."""
    if not -1 / 3 - 1e-12 <= eta <= 1 + 1e-12:
        raise ParameterError(f"eta = {eta} is outside the physical range [-1/3, 1]")
    return (1 + eta) / 2


def hoeffding_epsilon(n: int, alpha: float = REPORT_ALPHA) -> float:
    """Two-sided Hoeffding half-width for ``n`` Bernoulli shots at confidence ``alpha``."""
    return math.sqrt(math.log(2 / (1 - alpha)) / (2 * n))


def sample_probabilities(q, shots: int, seed: int) -> tuple[float, ...]:
    """Empirical means of ``shots`` Bernoulli draws for each exact probability in ``q``.

    Experiment ``i`` draws from its own stream keyed by ``(seed, i, 0)``, so
    results do not depend on the order experiments are evaluated in.
    """
    if shots < 1:
        raise ParameterError("shots must be at least 1")
    out = []
    for i, p in enumerate(q):
        rng = np.random.default_rng([seed, i, 0])
        out.append(rng.binomial(shots, min(max(p, 0.0), 1.0)) / shots)
    return tuple(out)


def _eta_stderr(q, shots: int) -> float:
    # first-order delta method on (q0 - q1) / (q2 - q3) with binomial variances
    q0, q1, q2, q3 = q
    num, den = q0 - q1, q2 - q3
    var = [p * (1 - p) / shots for p in q]
    d_num = 1 / den
    d_den = -num / den**2
    return math.sqrt(d_num**2 * (var[0] + var[1]) + d_den**2 * (var[2] + var[3]))


def run_exact(cfg: ExperimentConfig) -> EstimationReport:
    q = exact_probabilities(cfg)
    eta = estimate_eta(q)
    return EstimationReport(
        q=q,
        eta_hat=eta,
        fidelity_hat=(1 + eta) / 2,
        shots=0,
        epsilon=0.0,
        confidence_note="exact probabilities, no shot noise",
        seed=cfg.seed,
        q_exact=q,
    )


def run_sampled(cfg: ExperimentConfig) -> EstimationReport:
    shots = cfg.shots_per_experiment
    if shots < 1:
        raise ParameterError("run_sampled needs shots_per_experiment >= 1")
    exact = exact_probabilities(cfg)
    q = sample_probabilities(exact, shots, cfg.seed)
    eta = estimate_eta(q, tol=10 / math.sqrt(shots))
    eps = hoeffding_epsilon(shots)
    note = f"each q_i within {eps:.3g} of its mean with probability >= {REPORT_ALPHA} (Hoeffding)"
    if not -1 / 3 <= eta <= 1:
        note += "; eta estimate lies outside the physical range [-1/3, 1]"
    return EstimationReport(
        q=q,
        eta_hat=eta,
        fidelity_hat=(1 + eta) / 2,
        shots=shots,
        epsilon=eps,
        confidence_note=note,
        seed=cfg.seed,
        q_exact=exact,
        eta_stderr=_eta_stderr(q, shots),
    )


def estimate(cfg: ExperimentConfig) -> EstimationReport:
    return run_exact(cfg) if cfg.shots_per_experiment == 0 else run_sampled(cfg)


def plan_samples(epsilon: float, alpha: float, mode: PlanMode | str = PlanMode.RIGOROUS) -> SamplePlan:
    """Shots per experiment from Hoeffding's inequality ``N >= ln(2/delta) / (2 eps^2)``.

    ``rigorous`` takes ``alpha`` as a confidence level, uses ``delta = 1 - alpha``
    and rounds up. ``paper_literal`` substitutes ``alpha`` itself for ``delta``
    and rounds to the nearest integer, which reproduces the published count of
    372220 for ``epsilon = 1e-3, alpha = 0.95``. That count is not a valid
    Hoeffding guarantee; use it only to check the arithmetic.
    """
    mode = PlanMode(mode)
    if not epsilon > 0:
        raise ParameterError("epsilon must be positive")
    if not 0 < alpha < 1:
        raise ParameterError("alpha must lie in (0, 1)")
    if mode is PlanMode.PAPER_LITERAL:
        n = int(round(math.log(2 / alpha) / (2 * epsilon**2)))
    else:
        n = math.ceil(math.log(2 / (1 - alpha)) / (2 * epsilon**2))
    return SamplePlan(float(epsilon), float(alpha), mode.value, n, 4 * n)


def rb_decay_curve(e: Channel, m_max: int) -> list[float]:
    """``P(m) = <0| E o T^m (|0><0|) |0>`` for ``m = 1 .. m_max``, by transfer-matrix powers."""
    if m_max < 1:
        raise ParameterError("m_max must be at least 1")
    g = ptm(e)
    twirl = ptm(apply_supermap(build_W(), e))
    vec = _KET0_VEC.copy()
    out = []
    for _ in range(m_max):
        vec = twirl @ vec
        out.append(float((_READ0_ROW @ g @ vec).real))
    return out


def rb_asymptote(e: Channel) -> float:
    """``<0| E(I/2) |0>``, the limit of the decay curve."""
    return float(apply(e, np.eye(2) / 2)[0, 0].real)


def plan_to_json(plan: SamplePlan) -> dict:
    return asdict(plan)
