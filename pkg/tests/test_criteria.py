import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aco_handoff import (
    CallContext,
    CriteriaConfig,
    EmptyEdgeSet,
    InvalidRhoBounds,
    TrafficType,
    ValidationError,
    build_decision_graph,
    composite_score,
    derive_evaporation,
    derive_visibility,
    normalize_criteria,
    oracle_rank,
    score_edges,
)
from aco_handoff.criteria import DEFAULT_WEIGHTS, EPSILON, NormalizedCriteria

from conftest import make_channel, reference_rank, reference_scores


def edges_for(*channels, traffic=TrafficType.DELAY_SENSITIVE):
    ctx = CallContext(traffic, speed=5.0, priority=0.5, handoff_count=1)
    return build_decision_graph(ctx, channels).edges


def test_normalize_throughputs():
    edges = edges_for(make_channel("a", throughput=1), make_channel("b", throughput=2),
                      make_channel("c", throughput=4))
    np.testing.assert_allclose(normalize_criteria(edges).column("th"), [0.25, 0.5, 1.0])


def test_identical_edges_normalize_to_one():
    edges = edges_for(make_channel("a"), make_channel("b"))
    np.testing.assert_array_equal(normalize_criteria(edges).values, 1.0)


def test_all_zero_criterion_floors_to_epsilon():
    edges = edges_for(make_channel("a", packet_loss_rate=0.0), make_channel("b", packet_loss_rate=0.0))
    np.testing.assert_array_equal(normalize_criteria(edges).column("pl"), [EPSILON, EPSILON])


def test_zero_weight_criteria_are_out_of_scope():
    norm = normalize_criteria(edges_for(make_channel("a")))
    assert "d" not in norm.criteria and "od" not in norm.criteria
    assert len(norm.criteria) == 11


def test_normalize_empty():
    with pytest.raises(EmptyEdgeSet):
        normalize_criteria([])


def _norm(benefit, cost):
    names = ("tt", "s", "hc", "th", "prio", "bw", "td", "l", "pl", "pd", "c")
    return NormalizedCriteria(
        channel_ids=("x",), criteria=names, values=np.array([list(benefit) + list(cost)], dtype=float),
        weights=np.ones(11), benefit=np.array([True] * 6 + [False] * 5),
    )


def test_composite_hand_value():
    sv = composite_score(_norm([1] * 6, [0.5, 1, 1, 1, 1]))
    assert sv.scores[0] == 2.0
    assert sv.scores[0] == sv.benefit_product[0] / sv.cost_product[0]


def test_composite_dominance():
    a = make_channel("a", throughput=20, bandwidth=40, latency=10, cost=0.01)
    b = make_channel("b", throughput=10, bandwidth=20, latency=20, cost=0.02)
    s = score_edges(edges_for(a, b)).scores
    assert s[0] > s[1]


def test_composite_symmetry():
    s = score_edges(edges_for(make_channel("a"), make_channel("b"))).scores
    assert s[0] == s[1]


def test_evaporation_hand_values():
    np.testing.assert_allclose(derive_evaporation(np.array([2.0, 1.0]), 0.02, 0.5), [0.02, 0.26], rtol=1e-15)


def test_evaporation_single_and_equal():
    assert derive_evaporation(np.array([3.7])).tolist() == [0.02]
    assert derive_evaporation(np.array([1.5, 1.5, 1.5]), 0.1, 0.3).tolist() == [0.1, 0.1, 0.1]


@pytest.mark.parametrize("lo,hi", [(0, 0.5), (0.5, 0.5), (0.6, 0.5), (0.1, 1.0)])
def test_invalid_rho_bounds(lo, hi):
    with pytest.raises(InvalidRhoBounds):
        derive_evaporation(np.array([1.0]), lo, hi)


@pytest.mark.parametrize("avl", [0.0, 1.0, 0.5])
def test_visibility_is_availability(avl):
    assert derive_visibility(edges_for(make_channel(availability=avl))).tolist() == [avl]


def test_rank_single_available():
    edges = edges_for(make_channel("a", availability=0.0, throughput=99), make_channel("b", availability=0.7),
                      make_channel("c", availability=0.0))
    ranking = oracle_rank(edges)
    assert [r.channel_id for r in ranking] == ["b", "a", "c"]
    assert [r.available for r in ranking] == [True, False, False]


def test_rank_ties_keep_input_order():
    assert [r.channel_id for r in oracle_rank(edges_for(make_channel("y"), make_channel("x")))] == ["y", "x"]


def test_rank_three_hand_built_edges():
    # normalized: th a=1 b=.4 c=1; c a=.5 b=.25 c=1; l a=1 b=.5 c=1
    # scores: a = 1/.5 = 2, b = .4/(.25*.5) = 3.2, c = 1
    edges = edges_for(
        make_channel("a", throughput=10, cost=1.0, latency=20),
        make_channel("b", throughput=4, cost=0.5, latency=10),
        make_channel("c", throughput=10, cost=2.0, latency=20),
    )
    ranking = oracle_rank(edges)
    assert [r.channel_id for r in ranking] == ["b", "a", "c"]
    np.testing.assert_allclose([r.score for r in ranking], [3.2, 2.0, 1.0], rtol=1e-12)


def test_invert_td_flips_direction():
    edges = edges_for(make_channel("short", time_to_drop=10), make_channel("long", time_to_drop=100))
    assert oracle_rank(edges)[0].channel_id == "short"
    assert oracle_rank(edges, CriteriaConfig(invert_td=True))[0].channel_id == "long"


def test_weights_apply_as_exponents():
    edges = edges_for(make_channel("a", throughput=1), make_channel("b", throughput=4))
    base = score_edges(edges).scores
    heavy = score_edges(edges, CriteriaConfig(weights={**DEFAULT_WEIGHTS, "th": 2.0})).scores
    np.testing.assert_allclose(heavy, base * np.array([0.25, 1.0]), rtol=1e-12)


def test_opt_in_out_of_order():
    edges = edges_for(make_channel("a", out_of_order_rate=0.5), make_channel("b", out_of_order_rate=0.05))
    assert oracle_rank(edges)[0].channel_id == "a"  # tie, input order
    cfg = CriteriaConfig(weights={**DEFAULT_WEIGHTS, "od": 1.0})
    assert oracle_rank(edges, cfg)[0].channel_id == "b"


def test_unknown_weight_rejected():
    with pytest.raises(ValidationError):
        CriteriaConfig(weights={"nope": 1.0})


# -- properties -------------------------------------------------------------

pos = st.floats(min_value=1e-2, max_value=1e3)
frac = st.floats(min_value=0.0, max_value=1.0)


@st.composite
def edge_lists(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    ctx = CallContext(draw(st.sampled_from(list(TrafficType))), speed=draw(st.floats(0, 40)),
                      priority=draw(st.floats(0.05, 1.0)), handoff_count=draw(st.integers(0, 5)))
    chans = [
        make_channel(
            f"c{i}", draw(st.sampled_from(["CDMA", "WiFi", "WiMAX", "LTE"])),
            time_to_drop=draw(pos), packet_loss_rate=draw(frac), latency=draw(pos), throughput=draw(pos),
            packet_drop_prob=draw(frac), cost=draw(pos), bandwidth=draw(pos), availability=draw(frac),
        )
        for i in range(n)
    ]
    return build_decision_graph(ctx, chans).edges


@given(edge_lists(), st.booleans())
def test_scores_match_reference(edges, invert_td):
    cfg = CriteriaConfig(invert_td=invert_td)
    got = score_edges(edges, cfg).scores
    want = reference_scores(edges, DEFAULT_WEIGHTS, invert_td)
    np.testing.assert_allclose(got, want, rtol=1e-9)


@given(edge_lists())
def test_normalized_values_in_range_and_max_attained(edges):
    norm = normalize_criteria(edges)
    assert (norm.values >= EPSILON).all() and (norm.values <= 1).all()
    for k in range(len(norm.criteria)):
        col = norm.values[:, k]
        assert col.max() == 1.0 or (col == EPSILON).all()


@given(edge_lists(min_size=2))
def test_rank_matches_reference_and_gates_availability(edges):
    ranking = oracle_rank(edges)
    scores = reference_scores(edges, DEFAULT_WEIGHTS)
    # order agreement up to floating near-ties
    ref = reference_rank(edges, DEFAULT_WEIGHTS)
    got = [r.channel_id for r in ranking]
    if got != ref:
        by_id = {e.channel_id: s for e, s in zip(edges, scores)}
        for g, r in zip(got, ref):
            assert np.isclose(by_id[g], by_id[r], rtol=1e-9)
    seen_unavailable = False
    for r in ranking:
        seen_unavailable |= not r.available
        assert not (seen_unavailable and r.available)


@given(edge_lists(min_size=2), st.sampled_from(["th", "bw", "l", "c", "td", "pl", "pd", "tt"]),
       st.floats(min_value=0.01, max_value=1e4))
@settings(max_examples=60)
def test_scale_invariance(edges, criterion, factor):
    scaled = [dataclasses.replace(e, **{criterion: getattr(e, criterion) * factor}) for e in edges]
    a, b = score_edges(edges).scores, score_edges(scaled).scores
    np.testing.assert_allclose(a, b, rtol=1e-9)
    np.testing.assert_allclose(derive_evaporation(a), derive_evaporation(b), rtol=1e-9)


@given(st.lists(st.floats(min_value=1e-6, max_value=1e6), min_size=1, max_size=10),
       st.floats(0.001, 0.4), st.floats(0.5, 0.99))
def test_evaporation_antitone(scores, lo, hi):
    s = np.array(scores)
    rho = derive_evaporation(s, lo, hi)
    assert ((rho >= lo) & (rho <= hi)).all()
    assert rho[int(np.argmax(s))] == lo
    for i in range(len(s)):
        for j in range(len(s)):
            if s[i] >= s[j]:
                assert rho[i] <= rho[j]


@given(edge_lists(min_size=2), st.data())
def test_monotone_in_benefit_and_cost(edges, data):
    i = data.draw(st.integers(0, len(edges) - 1))
    benefit = data.draw(st.sampled_from(["th", "bw", "prio", "s", "tt", "hc"]))
    cost = data.draw(st.sampled_from(["l", "c", "pl", "pd", "td"]))
    cid = edges[i].channel_id

    def position(es):
        return [r.channel_id for r in oracle_rank(es)].index(cid)

    before = position(edges)
    up = list(edges)
    up[i] = dataclasses.replace(edges[i], **{benefit: getattr(edges[i], benefit) * 1.5 + 0.1})
    assert position(up) <= before
    down = list(edges)
    down[i] = dataclasses.replace(edges[i], **{cost: getattr(edges[i], cost) * 1.5 + 0.1})
    assert position(down) >= before
