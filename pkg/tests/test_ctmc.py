"""Exact backend: exploration, generator structure, steady state, rewards."""

import numpy as np
import pytest

from sanavail import catalog
from sanavail.core import (Activity, Case, InputArc, OutputArc, Place,
                           RewardVariable, SanModel)
from sanavail.ctmc import (SolverError, StateCapExceeded, expected_reward,
                           explore, steady_state)

LL_RATES = [1.0e-5, 1.0e-6, 1.0e-7, 1.0e-8, 1.0e-9]


def test_link_two_states(defaults):
    model, params = defaults["link"]
    space, _ = explore(model, params)
    assert len(space) == 2


def test_ll_six_states(defaults):
    # by hand: all-up, L1 down, L2 down, both down, GEO down, PHY down;
    # the GEO/PHY gates only fire from the all-up marking
    model, params = defaults["ll"]
    space, _ = explore(model, params)
    assert len(space) == 6


def test_controller_state_count_regression(defaults):
    model, params = defaults["controller"]
    space, _ = explore(model, params)
    assert len(space) == 99


def test_link_closed_form_across_rates():
    params = dict(catalog.default_params("link"))
    for lam in LL_RATES:
        params["link_fail_rate"] = lam
        model = catalog.build("link", params)
        space, gen = explore(model, params)
        u = expected_reward(steady_state(gen), space,
                            catalog.reward("link"), params)
        expect = lam / (lam + params["link_rcv_rate"])
        assert abs(u - expect) / expect < 1e-12


def test_symmetric_two_state_chain():
    model = SanModel("flip", [Place("Up", 1), Place("Down")], [
        Activity("fail", "r", (InputArc("Up"),),
                 cases=(Case(1.0, (OutputArc("Down"),)),)),
        Activity("repair", "r", (InputArc("Down"),),
                 cases=(Case(1.0, (OutputArc("Up"),)),)),
    ], params=("r",))
    space, gen = explore(model, {"r": 0.37})
    ss = steady_state(gen)
    assert ss.pi == pytest.approx([0.5, 0.5], abs=1e-12)


def test_ll_without_correlations_is_product_of_links():
    params = dict(catalog.default_params("ll"))
    params["geo_fail_rate"] = 0.0
    params["phy_fail_rate"] = 0.0
    model = catalog.build("ll", params)
    space, gen = explore(model, params)
    assert len(space) == 4  # zero-rate transitions are not explored
    u = expected_reward(steady_state(gen), space, catalog.reward("ll"), params)
    lam, mu = params["link_fail_rate"], params["link_rcv_rate"]
    assert u == pytest.approx((lam / (lam + mu)) ** 2, rel=1e-12)


def test_generator_structure(defaults):
    for mid, (model, params) in defaults.items():
        _, gen = explore(model, params)
        Q = gen.Q
        rows = np.asarray(Q.sum(axis=1)).ravel()
        assert np.max(np.abs(rows)) <= 1e-12, mid
        off = Q.copy()
        off.setdiag(0)
        assert off.nnz == 0 or off.data.min() >= 0.0, mid


def test_exploration_order_independent(defaults):
    model, params = defaults["ll"]
    shuffled = SanModel(model.name, model.places,
                        tuple(reversed(model.activities)), model.params)
    s1, g1 = explore(model, params)
    s2, g2 = explore(shuffled, params)
    assert set(s1.markings) == set(s2.markings)
    pi1 = steady_state(g1).pi
    pi2 = steady_state(g2).pi
    by_marking1 = {m: pi1[i] for i, m in enumerate(s1.markings)}
    by_marking2 = {m: pi2[i] for i, m in enumerate(s2.markings)}
    for m, v in by_marking1.items():
        assert by_marking2[m] == pytest.approx(v, abs=1e-13)


def test_state_cap(defaults):
    model, params = defaults["controller"]
    with pytest.raises(StateCapExceeded):
        explore(model, params, state_cap=5)


def test_expected_reward_edge_cases(defaults):
    model, params = defaults["link"]
    space, gen = explore(model, params)
    ss = steady_state(gen)
    assert expected_reward(ss, space, RewardVariable("never", "False"),
                           params) == 0.0
    lam, mu = params["link_fail_rate"], params["link_rcv_rate"]
    assert expected_reward(ss, space, RewardVariable("down", "Failed_L == 1"),
                           params) == pytest.approx(lam / (lam + mu), rel=1e-12)


def test_multiple_recurrent_classes_detected():
    model = SanModel("split", [Place("A", 1), Place("B"), Place("C")], [
        Activity("toB", 1.0, (InputArc("A"),),
                 cases=(Case(1.0, (OutputArc("B"),)),)),
        Activity("toC", 1.0, (InputArc("A"),),
                 cases=(Case(1.0, (OutputArc("C"),)),)),
    ])
    _, gen = explore(model, {})
    with pytest.raises(SolverError):
        steady_state(gen)


def test_absorbing_chain_supported():
    model = SanModel("sink", [Place("A", 1), Place("B")], [
        Activity("toB", 1.0, (InputArc("A"),),
                 cases=(Case(1.0, (OutputArc("B"),)),)),
    ])
    space, gen = explore(model, {})
    ss = steady_state(gen)
    down = expected_reward(ss, space, RewardVariable("inB", "B == 1"), {})
    assert down == pytest.approx(1.0, abs=1e-12)
