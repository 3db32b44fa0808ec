"""Criteria normalization, composite scoring and per-edge evaporation rates.

Every criterion is max-normalized across the edges so units cancel, then the
composite score of an edge is the weighted product of its benefit criteria
divided by the weighted product of its cost criteria. Evaporation rates are an
affine, antitone image of the score on ``[rho_min, rho_max]``: the best edge
evaporates slowest and therefore accumulates the most pheromone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import EmptyEdgeSet, InvalidRhoBounds, ValidationError
from .model import CRITERIA, DEFAULT_AFFINITY, AffinityTable, EdgeCriteria

EPSILON = 1e-6
RHO_MIN = 0.02
RHO_MAX = 0.5

BENEFIT = frozenset({"tt", "s", "d", "hc", "th", "prio", "bw"})
COST = frozenset({"td", "l", "pl", "pd", "od", "c"})

# Direction and out-of-order delivery take no part in the default score.
DEFAULT_WEIGHTS: dict[str, float] = {name: 1.0 for name in CRITERIA}
DEFAULT_WEIGHTS.update(d=0.0, od=0.0)


@dataclass(frozen=True)
class CriteriaConfig:
    weights: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    affinity: AffinityTable = field(default_factory=lambda: {k: dict(v) for k, v in DEFAULT_AFFINITY.items()})
    rho_min: float = RHO_MIN
    rho_max: float = RHO_MAX
    invert_td: bool = False

    def __post_init__(self):
        for name, w in self.weights.items():
            if name not in CRITERIA:
                raise ValidationError("criteria.weights", f"unknown criterion {name!r}")
            if not (isinstance(w, (int, float)) and np.isfinite(w) and w >= 0):
                raise ValidationError(f"criteria.weights.{name}", "must be finite and >= 0")
        check_rho_bounds(self.rho_min, self.rho_max)

    def weight(self, criterion: str) -> float:
        return float(self.weights.get(criterion, DEFAULT_WEIGHTS[criterion]))

    def is_benefit(self, criterion: str) -> bool:
        if criterion == "td":
            return self.invert_td
        return criterion in BENEFIT


@dataclass(frozen=True)
class NormalizedCriteria:
    """Scale values in ``[EPSILON, 1]`` for every in-scope criterion.

    ``values[i, k]`` belongs to edge ``i`` and criterion ``criteria[k]``.
    """

    channel_ids: tuple[str, ...]
    criteria: tuple[str, ...]
    values: np.ndarray
    weights: np.ndarray
    benefit: np.ndarray  # bool mask over criteria

    def column(self, criterion: str) -> np.ndarray:
        return self.values[:, self.criteria.index(criterion)]


@dataclass(frozen=True)
class ScoreVector:
    channel_ids: tuple[str, ...]
    scores: np.ndarray
    benefit_product: np.ndarray
    cost_product: np.ndarray

    def normalized(self) -> np.ndarray:
        """Scores divided by the best score, each in ``(0, 1]``."""
        return self.scores / self.scores.max()


@dataclass(frozen=True)
class RankEntry:
    channel_id: str
    score: float
    available: bool


def check_rho_bounds(rho_min: float, rho_max: float) -> None:
    if not (0 < rho_min < rho_max < 1):
        raise InvalidRhoBounds(f"need 0 < rho_min < rho_max < 1, got rho_min={rho_min}, rho_max={rho_max}")


def normalize_criteria(edges: Sequence[EdgeCriteria], config: CriteriaConfig | None = None) -> NormalizedCriteria:
    if not edges:
        raise EmptyEdgeSet("no edges to normalize")
    config = config or CriteriaConfig()
    names = tuple(c for c in CRITERIA if config.weight(c) != 0)
    raw = np.array([[e.value(c) for c in names] for e in edges], dtype=float).reshape(len(edges), len(names))
    top = raw.max(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(top > 0, raw / np.where(top > 0, top, 1.0), EPSILON)
    scaled = np.maximum(scaled, EPSILON)
    return NormalizedCriteria(
        channel_ids=tuple(e.channel_id for e in edges),
        criteria=names,
        values=scaled,
        weights=np.array([config.weight(c) for c in names], dtype=float),
        benefit=np.array([config.is_benefit(c) for c in names], dtype=bool),
    )


def composite_score(norm: NormalizedCriteria) -> ScoreVector:
    powered = norm.values ** norm.weights
    benefit = np.prod(powered[:, norm.benefit], axis=1)
    cost = np.prod(powered[:, ~norm.benefit], axis=1)
    return ScoreVector(norm.channel_ids, benefit / cost, benefit, cost)


def derive_evaporation(scores: ScoreVector | np.ndarray, rho_min: float = RHO_MIN,
                       rho_max: float = RHO_MAX) -> np.ndarray:
    """Per-edge evaporation rates; the top-scoring edge gets exactly ``rho_min``."""
    check_rho_bounds(rho_min, rho_max)
    s = np.asarray(scores.scores if isinstance(scores, ScoreVector) else scores, dtype=float)
    u = s / s.max()
    rho = rho_max - (rho_max - rho_min) * u
    rho[u == 1.0] = rho_min
    return np.clip(rho, rho_min, rho_max)


def derive_visibility(edges: Sequence[EdgeCriteria]) -> np.ndarray:
    """Visibility per edge equals availability, so an unavailable channel has zero visibility."""
    if not edges:
        raise EmptyEdgeSet("no edges")
    return np.array([e.avl for e in edges], dtype=float)


def score_edges(edges: Sequence[EdgeCriteria], config: CriteriaConfig | None = None) -> ScoreVector:
    return composite_score(normalize_criteria(edges, config))


def oracle_rank(edges: Sequence[EdgeCriteria], config: CriteriaConfig | None = None) -> list[RankEntry]:
    """Deterministic ranking by composite score.

    Available channels come first by descending score, unavailable ones after
    them. Ties keep input order.
    """
    sv = score_edges(edges, config)
    entries = [RankEntry(e.channel_id, float(s), e.avl > 0) for e, s in zip(edges, sv.scores)]
    # sorted() is stable, which gives the input-order tie-break
    return sorted(entries, key=lambda r: (not r.available, -r.score))
