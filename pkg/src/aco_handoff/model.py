"""Domain types for a handoff decision and the star graph built from them.

The user node ``v0`` is joined by exactly one edge to every candidate
channel. Each edge carries an :class:`EdgeCriteria` vector that merges the
user-side call criteria with the channel-side signal criteria.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, fields
from typing import Mapping, Sequence

from .errors import DuplicateChannelId, EmptyChannelSet, ValidationError

KNOWN_CLASSES = ("CDMA", "WiFi", "WiMAX")
OTHER_CLASS = "Other"


class TrafficType(enum.Enum):
    THROUGHPUT_SENSITIVE = "throughput_sensitive"
    DELAY_SENSITIVE = "delay_sensitive"


# Traffic/technology affinity used as the scalar traffic-type criterion.
# Configuration, not ground truth; scenarios may override any cell.
DEFAULT_AFFINITY: dict[TrafficType, dict[str, float]] = {
    TrafficType.THROUGHPUT_SENSITIVE: {"WiMAX": 1.0, "WiFi": 0.8, "CDMA": 0.4, "Other": 0.6},
    TrafficType.DELAY_SENSITIVE: {"CDMA": 1.0, "WiFi": 0.7, "WiMAX": 0.6, "Other": 0.6},
}

AffinityTable = Mapping[TrafficType, Mapping[str, float]]


def class_key(channel_class: str) -> str:
    """Affinity-table column for a channel class; unknown technologies map to ``"Other"``."""
    return channel_class if channel_class in KNOWN_CLASSES else OTHER_CLASS


def _require(cond: bool, name: str, message: str) -> None:
    if not cond:
        raise ValidationError(name, message)


def _finite(value: float) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


@dataclass(frozen=True)
class CallContext:
    """User-side criteria of the active call."""

    traffic_type: TrafficType
    speed: float = 0.0  # m/s
    direction: float = 0.0  # degrees
    priority: float = 1.0
    handoff_count: int = 0

    def __post_init__(self):
        _require(isinstance(self.traffic_type, TrafficType), "traffic_type", "must be a TrafficType")
        _require(_finite(self.speed) and self.speed >= 0, "speed", "must be finite and >= 0")
        _require(_finite(self.direction) and 0 <= self.direction < 360, "direction", "must lie in [0, 360)")
        _require(_finite(self.priority) and 0 < self.priority <= 1, "priority", "must lie in (0, 1]")
        _require(
            isinstance(self.handoff_count, int) and not isinstance(self.handoff_count, bool)
            and self.handoff_count >= 0,
            "handoff_count", "must be a nonnegative integer",
        )


_FRACTIONS = ("packet_loss_rate", "packet_drop_prob", "out_of_order_rate", "availability")
_POSITIVE = ("time_to_drop", "latency", "throughput", "cost", "bandwidth")


@dataclass(frozen=True)
class ChannelProfile:
    """Measured or offered criteria of one candidate channel.

    ``handoff_count`` is normally ``None``, in which case the call's handoff
    count is replicated onto this channel's edge.
    """

    id: str
    channel_class: str
    time_to_drop: float  # s
    packet_loss_rate: float
    latency: float  # ms
    throughput: float  # Mbit/s
    packet_drop_prob: float
    out_of_order_rate: float
    cost: float  # currency units per MB
    bandwidth: float  # Mbit/s
    availability: float = 1.0
    handoff_count: int | None = None

    def __post_init__(self):
        _require(isinstance(self.id, str) and self.id != "", "id", "must be a non-empty string")
        _require(isinstance(self.channel_class, str) and self.channel_class != "",
                 "class", "must be a non-empty string")
        for name in _FRACTIONS:
            value = getattr(self, name)
            _require(_finite(value) and 0 <= value <= 1, name, f"must lie in [0, 1], got {value!r}")
        for name in _POSITIVE:
            value = getattr(self, name)
            _require(_finite(value) and value > 0, name, f"must be finite and > 0, got {value!r}")
        if self.handoff_count is not None:
            _require(
                isinstance(self.handoff_count, int) and not isinstance(self.handoff_count, bool)
                and self.handoff_count >= 0,
                "handoff_count", "must be a nonnegative integer",
            )


@dataclass(frozen=True)
class EdgeCriteria:
    """Merged criteria vector on the edge from the user to one channel.

    Short names follow the criterion symbols: ``tt`` traffic affinity,
    ``s`` speed, ``d`` direction, ``td`` time to drop, ``hc`` handoff count,
    ``pl`` packet loss, ``l`` latency, ``th`` throughput, ``pd`` drop
    probability, ``od`` out-of-order rate, ``prio`` priority, ``c`` cost,
    ``bw`` bandwidth and ``avl`` availability.
    """

    channel_id: str
    tt: float
    s: float
    d: float
    td: float
    hc: float
    pl: float
    l: float  # noqa: E741
    th: float
    pd: float
    od: float
    prio: float
    c: float
    bw: float
    avl: float

    def value(self, criterion: str) -> float:
        return getattr(self, criterion)


CRITERIA = tuple(f.name for f in fields(EdgeCriteria) if f.name not in ("channel_id", "avl"))


@dataclass(frozen=True)
class DecisionGraph:
    user_node: str
    channel_nodes: tuple[str, ...]
    edges: tuple[EdgeCriteria, ...] = field(repr=False)

    def __post_init__(self):
        if not self.channel_nodes:
            raise EmptyChannelSet("decision graph needs at least one channel")
        if len(self.edges) != len(self.channel_nodes):
            raise ValueError("star graph needs exactly one edge per channel")

    def __len__(self) -> int:
        return len(self.channel_nodes)


def affinity(traffic_type: TrafficType, channel_class: str, table: AffinityTable | None = None) -> float:
    table = DEFAULT_AFFINITY if table is None else table
    return float(table[traffic_type][class_key(channel_class)])


def merge_criteria(context: CallContext, channel: ChannelProfile,
                   affinity_table: AffinityTable | None = None) -> EdgeCriteria:
    hc = context.handoff_count if channel.handoff_count is None else channel.handoff_count
    return EdgeCriteria(
        channel_id=channel.id,
        tt=affinity(context.traffic_type, channel.channel_class, affinity_table),
        s=float(context.speed),
        d=float(context.direction),
        td=float(channel.time_to_drop),
        hc=float(hc),
        pl=float(channel.packet_loss_rate),
        l=float(channel.latency),
        th=float(channel.throughput),
        pd=float(channel.packet_drop_prob),
        od=float(channel.out_of_order_rate),
        prio=float(context.priority),
        c=float(channel.cost),
        bw=float(channel.bandwidth),
        avl=float(channel.availability),
    )


def build_decision_graph(context: CallContext, channels: Sequence[ChannelProfile],
                         affinity_table: AffinityTable | None = None,
                         user_node: str = "v0") -> DecisionGraph:
    if not channels:
        raise EmptyChannelSet("no candidate channels")
    seen: set[str] = set()
    for ch in channels:
        if ch.id in seen:
            raise DuplicateChannelId(f"channel id {ch.id!r} appears more than once")
        seen.add(ch.id)
    edges = tuple(merge_criteria(context, ch, affinity_table) for ch in channels)
    return DecisionGraph(user_node, tuple(ch.id for ch in channels), edges)
