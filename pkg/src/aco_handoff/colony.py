"""Ant colony iteration over the star decision graph.

Every ant tour is a single edge from the user to one channel. One iteration
computes transition probabilities, lets each ant pick an edge, evaporates all
edges with their own rate and then adds the ants' deposits.

Randomness comes exclusively from ``numpy.random.Generator(PCG64(seed))``.
Each ant consumes one ``Generator.random()`` double, mapped to an edge by
inverse-CDF lookup, so golden traces only depend on the PCG64 stream.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field, replace
from typing import Sequence

import numpy as np

from .criteria import (
    CriteriaConfig,
    ScoreVector,
    derive_evaporation,
    derive_visibility,
    normalize_criteria,
    composite_score,
)
from .errors import NoFeasibleChannel, ValidationError
from .model import DecisionGraph

TAU_MIN = 1e-6


@dataclass(frozen=True)
class AcoParams:
    alpha: float = 1.0
    beta: float = 1.0
    q: float = 1.0
    tau0: float = 1.0
    tau_min: float = TAU_MIN
    ant_count: int = 6
    max_iterations: int = 10_000
    convergence_threshold: float = 0.95
    convergence_window: int = 5
    seed: int = 1

    def __post_init__(self):
        checks = [
            ("alpha", self.alpha >= 0, "must be >= 0"),
            ("beta", self.beta >= 0, "must be >= 0"),
            ("q", self.q > 0, "must be > 0"),
            ("tau0", self.tau0 > 0, "must be > 0"),
            ("tau_min", 0 < self.tau_min <= self.tau0, "must satisfy 0 < tau_min <= tau0"),
            ("ant_count", _is_int(self.ant_count) and self.ant_count >= 1, "must be an integer >= 1"),
            ("max_iterations", _is_int(self.max_iterations) and self.max_iterations >= 1,
             "must be an integer >= 1"),
            ("convergence_threshold", 0.5 < self.convergence_threshold <= 1, "must lie in (0.5, 1]"),
            ("convergence_window", _is_int(self.convergence_window) and self.convergence_window >= 1,
             "must be an integer >= 1"),
            ("seed", _is_int(self.seed) and 0 <= self.seed < 2**64, "must be an unsigned 64-bit integer"),
        ]
        for name, ok, message in checks:
            if not ok:
                raise ValidationError(f"aco.{name}", message)


def _is_int(value) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


@dataclass(frozen=True)
class PheromoneState:
    tau: np.ndarray
    rho: np.ndarray
    eta: np.ndarray
    iteration: int = 0

    def __post_init__(self):
        if not (len(self.tau) == len(self.rho) == len(self.eta)):
            raise ValueError("tau, rho and eta must have one entry per edge")

    @classmethod
    def initial(cls, n_edges: int, rho, eta, tau0: float = 1.0) -> "PheromoneState":
        return cls(np.full(n_edges, float(tau0)), np.asarray(rho, dtype=float), np.asarray(eta, dtype=float))


@dataclass(frozen=True)
class IterationTrace:
    iteration: int
    tau: np.ndarray
    probabilities: np.ndarray
    choices: np.ndarray
    elapsed: float  # seconds since run start


@dataclass
class ConvergenceReport:
    channel_ids: tuple[str, ...]
    winner: str | None
    converged_at: int | None
    wall_time: float  # seconds
    trace: list[IterationTrace] = field(repr=False)
    params: AcoParams
    rho: np.ndarray = field(repr=False, default=None)
    eta: np.ndarray = field(repr=False, default=None)

    @property
    def converged(self) -> bool:
        return self.winner is not None

    def to_dict(self, include_trace: bool = True) -> dict:
        out = {
            "channel_ids": list(self.channel_ids),
            "winner": self.winner,
            "converged_at": self.converged_at,
            "wall_time_ms": self.wall_time * 1e3,
            "params": asdict(self.params),
            "rho": None if self.rho is None else self.rho.tolist(),
            "eta": None if self.eta is None else self.eta.tolist(),
        }
        if include_trace:
            out["trace"] = [
                {"iteration": t.iteration, "tau": t.tau.tolist(), "probabilities": t.probabilities.tolist(),
                 "choices": t.choices.tolist()}
                for t in self.trace
            ]
        return out


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def transition_probabilities(state: PheromoneState, params: AcoParams) -> np.ndarray:
    feasible = state.eta > 0
    if not feasible.any():
        raise NoFeasibleChannel("every channel has zero visibility")
    weight = np.zeros_like(state.tau)
    weight[feasible] = state.tau[feasible] ** params.alpha * state.eta[feasible] ** params.beta
    return weight / weight.sum()


def sample_edges(probabilities: np.ndarray, ant_count: int, rng: np.random.Generator) -> np.ndarray:
    """One independent categorical draw per ant; zero-probability edges are never drawn."""
    p = np.asarray(probabilities, dtype=float)
    cdf = np.cumsum(p)
    cdf /= cdf[-1]
    draws = rng.random(ant_count)
    idx = np.searchsorted(cdf, draws, side="right")
    # guard against rounding at the top of the CDF
    last = int(np.flatnonzero(p > 0)[-1])
    return np.minimum(idx, last)


def compute_deposit(choices: Sequence[int], scores: ScoreVector | np.ndarray, params: AcoParams) -> np.ndarray:
    """Pheromone each edge receives; an ant on edge e lays ``q / L`` with ``L = 1 / u_e``."""
    s = np.asarray(scores.scores if isinstance(scores, ScoreVector) else scores, dtype=float)
    u = s / s.max()
    counts = np.bincount(np.asarray(choices, dtype=np.intp), minlength=len(s))
    return counts * (params.q * u)


def apply_deposits(state: PheromoneState, deposits: np.ndarray) -> PheromoneState:
    return replace(state, tau=state.tau + deposits)


def evaporate(state: PheromoneState, tau_min: float = TAU_MIN) -> PheromoneState:
    return replace(state, tau=np.maximum(tau_min, (1.0 - state.rho) * state.tau))


def step(state: PheromoneState, scores: ScoreVector, params: AcoParams, rng: np.random.Generator,
         started: float | None = None) -> tuple[PheromoneState, IterationTrace]:
    started = time.perf_counter() if started is None else started
    probs = transition_probabilities(state, params)
    choices = sample_edges(probs, params.ant_count, rng)
    deposits = compute_deposit(choices, scores, params)
    state = apply_deposits(evaporate(state, params.tau_min), deposits)
    state = replace(state, iteration=state.iteration + 1)
    row = IterationTrace(
        iteration=state.iteration,
        tau=state.tau,
        probabilities=transition_probabilities(state, params),
        choices=choices,
        elapsed=time.perf_counter() - started,
    )
    return state, row


def detect_convergence(window: Sequence[IterationTrace], threshold: float = 0.95,
                       size: int = 5) -> int | None:
    """Index of the edge whose probability stayed >= ``threshold`` over the last ``size`` rows."""
    if len(window) < size:
        return None
    recent = np.array([row.probabilities for row in window[-size:]])
    hits = np.flatnonzero((recent >= threshold).all(axis=0))
    return int(hits[0]) if hits.size else None


def run_until_convergence(graph: DecisionGraph, config: CriteriaConfig | None = None,
                          params: AcoParams | None = None) -> ConvergenceReport:
    """Iterate the colony from uniform pheromone until one channel dominates.

    Evaporation rates and visibilities are derived once from the graph's
    criteria. Deterministic for a given ``params.seed`` apart from the
    recorded wall-clock times.
    """
    config = config or CriteriaConfig()
    params = params or AcoParams()
    scores = composite_score(normalize_criteria(graph.edges, config))
    rho = derive_evaporation(scores, config.rho_min, config.rho_max)
    eta = derive_visibility(graph.edges)
    if not (eta > 0).any():
        raise NoFeasibleChannel("every channel is unavailable")

    rng = make_rng(params.seed)
    state = PheromoneState.initial(len(graph), rho, eta, params.tau0)
    trace: list[IterationTrace] = []
    winner = converged_at = None
    started = time.perf_counter()
    for _ in range(params.max_iterations):
        state, row = step(state, scores, params, rng, started)
        trace.append(row)
        hit = detect_convergence(trace, params.convergence_threshold, params.convergence_window)
        if hit is not None:
            winner, converged_at = graph.channel_nodes[hit], state.iteration
            break
    wall = time.perf_counter() - started
    return ConvergenceReport(graph.channel_nodes, winner, converged_at, wall, trace, params, rho, eta)
