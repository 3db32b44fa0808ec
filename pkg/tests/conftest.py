import math
from pathlib import Path

import pytest

from aco_handoff import CallContext, ChannelProfile, TrafficType, baseline_scenario

GOLDEN = Path(__file__).parent / "golden"

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    """Record one pass/fail line per acceptance criterion."""

    def record(criterion: str, ok: bool, detail: str) -> None:
        _ACCEPTANCE_LINES.append(f"{criterion} {'PASS' if ok else 'FAIL'}  {detail}")
        print(_ACCEPTANCE_LINES[-1])

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def make_channel(id="ch", channel_class="WiFi", **overrides) -> ChannelProfile:
    values = dict(time_to_drop=60.0, packet_loss_rate=0.01, latency=30.0, throughput=10.0,
                  packet_drop_prob=0.01, out_of_order_rate=0.0, cost=0.02, bandwidth=20.0, availability=1.0)
    values.update(overrides)
    return ChannelProfile(id=id, channel_class=channel_class, **values)


@pytest.fixture
def context():
    return CallContext(TrafficType.DELAY_SENSITIVE, speed=5.0, direction=10.0, priority=0.5, handoff_count=1)


@pytest.fixture
def baseline():
    return baseline_scenario()


BENEFIT_NAMES = ("tt", "s", "d", "hc", "th", "prio", "bw")
COST_NAMES = ("td", "l", "pl", "pd", "od", "c")


def reference_scores(edges, weights, invert_td=False, eps=1e-6):
    """Plain-Python product quotient over max-normalized criteria; test oracle only."""
    scores = []
    for e in edges:
        num = den = 1.0
        for name, w in weights.items():
            if w == 0:
                continue
            top = max(getattr(x, name) for x in edges)
            scale = eps if top <= 0 else max(eps, getattr(e, name) / top)
            benefit = name in BENEFIT_NAMES or (name == "td" and invert_td)
            if benefit:
                num *= scale ** w
            else:
                den *= scale ** w
        scores.append(num / den)
    return scores


def reference_rank(edges, weights, invert_td=False):
    scores = reference_scores(edges, weights, invert_td)
    order = list(range(len(edges)))
    order.sort(key=lambda i: (edges[i].avl <= 0, -scores[i], i))
    return [edges[i].channel_id for i in order]


def isclose_all(a, b, rel=1e-12):
    return all(math.isclose(x, y, rel_tol=rel) for x, y in zip(a, b))
