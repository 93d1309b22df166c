"""SAN semantics: enabledness, firing order, case distributions, validation."""

import pytest

from sanavail import catalog
from sanavail.core import (Activity, Case, CaseNormalizationError, InputArc,
                           InputGate, MarkingError, OutputArc, OutputGate,
                           Place, SanModel, SemanticsError, case_probs,
                           enabled, fire, validate_model)


def test_validate_link_model_clean():
    params = catalog.default_params("link")
    model = catalog.build("link", params)
    assert validate_model(model) == []


def test_validate_reports_unknown_arc_place():
    model = SanModel("bad", [Place("Working_L", 1), Place("Failed_L")], [
        Activity("L_F", "link_fail_rate",
                 input_arcs=(InputArc("Wrking_L"),),
                 cases=(Case(1.0, (OutputArc("Failed_L"),)),)),
    ], params=("link_fail_rate",))
    diags = validate_model(model)
    assert len(diags) == 1
    assert "Wrking_L" in diags[0]


def test_validate_whole_catalog(defaults):
    for mid, (model, _) in defaults.items():
        assert validate_model(model) == [], mid


def test_enabled_ll_initial(defaults):
    model, params = defaults["ll"]
    marking = model.initial_marking()
    assert enabled(model, marking, params) == {"L_F1", "L_F2", "GEO_F", "PHY_F"}


def test_enabled_ll_one_link_down(defaults):
    model, params = defaults["ll"]
    marking = model.initial_marking()
    marking["Working_L1"] = 0
    marking["Failed_L1"] = 1
    acts = enabled(model, marking, params)
    assert "GEO_F" not in acts and "PHY_F" not in acts
    assert "L_R1" in acts and "L_F2" in acts


def test_enabled_controller_hw_f2_needs_failed_sw(defaults):
    model, params = defaults["controller"]
    marking = model.initial_marking()
    assert marking["failed_SW"] == 0
    assert "HW_F2" not in enabled(model, marking, params)
    marking["failed_SW"] = 1
    marking["Active_proc"] = 9
    assert "HW_F2" in enabled(model, marking, params)


def test_enabled_rejects_foreign_marking(defaults):
    model, params = defaults["link"]
    with pytest.raises(MarkingError):
        enabled(model, {"Working_L": 1, "Failed_L": 0, "Bogus": 0}, params)


def test_fire_ll_geo(defaults):
    model, params = defaults["ll"]
    after = fire(model, model.initial_marking(), "GEO_F", 0, params)
    assert after["GEO"] == 1
    assert after["Working_L1"] == 0 and after["Working_L2"] == 0
    assert after["Failed_L1"] == 0 and after["Failed_L2"] == 0


def test_fire_controller_covered_sw(defaults):
    model, params = defaults["controller"]
    marking = model.initial_marking()
    assert marking["Active_proc"] == 10
    # case 0 is the uncovered branch, case 1 the covered one
    after = fire(model, marking, "SW_F", 1, params)
    assert after["Active_proc"] == 9
    assert after["failed_SW"] == 1
    assert after["sw_sys_down"] == 0


def test_fire_round_trip(defaults):
    model, params = defaults["link"]
    start = model.initial_marking()
    down = fire(model, start, "L_F", 0, params)
    assert down["Failed_L"] == 1
    assert fire(model, down, "L_R", 0, params) == start


def test_fire_disabled_raises(defaults):
    model, params = defaults["link"]
    with pytest.raises(SemanticsError):
        fire(model, model.initial_marking(), "L_R", 0, params)
    with pytest.raises(SemanticsError):
        fire(model, model.initial_marking(), "L_F", 3, params)


def test_fire_is_deterministic_and_enabled_pure(defaults):
    model, params = defaults["rr"]
    marking = model.initial_marking()
    assert enabled(model, marking, params) == enabled(model, marking, params)
    a = fire(model, marking, "CHW_F_S1", 1, params)
    b = fire(model, marking, "CHW_F_S1", 1, params)
    assert a == b
    # input marking untouched
    assert marking == model.initial_marking()


def test_case_probs_cc_at_threshold(defaults):
    model, params = defaults["cc"]
    hw_cvg, tmi = params["hw_cvg"], params["tmi_cvg"]
    marking = model.initial_marking()
    # controller 1 exactly at the K_th threshold, controller 2 healthy
    marking["Active_proc_C1"] = 8
    marking["failed_HW_C1"] = 2
    probs = case_probs(model, marking, "HW_F1_C1", params)
    assert probs == pytest.approx([1 - hw_cvg, hw_cvg * tmi,
                                   hw_cvg * (1 - tmi)], abs=1e-15)


def test_case_probs_cc_above_threshold(defaults):
    model, params = defaults["cc"]
    hw_cvg = params["hw_cvg"]
    probs = case_probs(model, model.initial_marking(), "HW_F1_C1", params)
    assert probs == pytest.approx([1 - hw_cvg, hw_cvg, 0.0], abs=1e-15)


def test_case_probs_single_case(defaults):
    model, params = defaults["link"]
    assert case_probs(model, model.initial_marking(), "L_F", params) == [1.0]


def test_case_probs_normalization_error():
    model = SanModel("broken", [Place("A", 1)], [
        Activity("X", 1.0, input_arcs=(InputArc("A"),), cases=(
            Case(0.5), Case(0.2),
        )),
    ])
    with pytest.raises(CaseNormalizationError):
        case_probs(model, {"A": 1}, "X", {})


def test_negative_tokens_name_the_gate():
    model = SanModel("neg", [Place("A"), Place("B", 1)], [
        Activity("X", 1.0, input_arcs=(InputArc("B"),), cases=(
            Case(1.0, gates=(OutputGate("OG_BAD", "A -= 1"),)),
        )),
    ])
    with pytest.raises(SemanticsError) as err:
        fire(model, {"A": 0, "B": 1}, "X", 0, {})
    assert "OG_BAD" in str(err.value)


def test_input_gate_function_applies_before_outputs():
    # firing order: input arcs, input gate functions, output arcs, output gates
    model = SanModel("order", [Place("A", 2), Place("B")], [
        Activity("X", 1.0,
                 input_arcs=(InputArc("A"),),
                 input_gates=(InputGate("IG", "A >= 1", "A = 0"),),
                 cases=(Case(1.0, (OutputArc("B"),),
                             (OutputGate("OG", "B = B + A"),)),)),
    ])
    after = fire(model, {"A": 2, "B": 0}, "X", 0, {})
    assert after == {"A": 0, "B": 1}
