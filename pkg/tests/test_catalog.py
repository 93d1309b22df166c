"""Catalog fidelity: structure, default parameters, rewards, studies."""

import pytest

from sanavail import catalog
from sanavail.core import ParamError, SanError, bind_reward, validate_model
from sanavail.ctmc import _recurrent_classes, explore

EXPECTED_GRID_SIZES = {
    "CC_study": 25, "CSL_study": 25, "CSS_study": 25, "C_study": 1,
    "LL_study": 25, "RLL_study": 25, "RRL_study": 15, "RRR_study": 3,
    "RR_study": 125, "SLL_study": 25, "SSL_study": 15, "SSS_study": 3,
    "SS_study": 125,
}


def test_grid_sizes():
    for name, size in EXPECTED_GRID_SIZES.items():
        assert catalog.study(name).grid_size() == size, name


def test_every_study_points_at_a_model():
    for name in catalog.study_names():
        st = catalog.study(name)
        assert st.model in catalog.model_ids()
        assert catalog.reward(st.model).id == st.reward


def test_default_params_cc():
    p = catalog.default_params("cc")
    assert p["hw_fail_rate"] == 1.0e-8
    assert p["hw_rcv_rate"] == 2.0e-5
    assert p["sw_cvg"] == 0.9
    assert p["mis_fail_rate"] == 5.0e-6     # first Manual value
    assert p["tmi_cvg"] == 0.9
    assert p["K_th"] == 8 and p["N_proc"] == 10


def test_default_params_ss_and_switch():
    assert catalog.default_params("ss")["tmi_cvg"] == 0.9
    assert catalog.default_params("switch")["sw_fail_rate"] == 2.0e-20


def test_default_params_unknown_study():
    with pytest.raises(SanError):
        catalog.default_params("ll", "NO_study")


def test_build_errors():
    with pytest.raises(SanError):
        catalog.build("nope", {})
    with pytest.raises(ParamError):
        catalog.build("link", {"link_fail_rate": 1e-6})


def test_alias_rl_builds_rrl():
    params = catalog.default_params("rrl")
    assert catalog.build("rl", params).name == "rrl"


def test_validates_at_every_grid_point():
    for name in catalog.study_names():
        st = catalog.study(name)
        for _, params in st.grid():
            model = catalog.build(st.model, params)
            assert validate_model(model) == [], (name, params)


def test_initial_marking_is_available(defaults):
    for mid, (model, params) in defaults.items():
        pred = bind_reward(catalog.reward(mid), model.compiled.place_names,
                           params)
        assert not pred(model.compiled.initial), mid


def test_reward_rr_examples(defaults):
    model, params = defaults["rr"]
    pred = bind_reward(catalog.reward("rr"), model.compiled.place_names, params)
    up = model.initial_marking()
    assert not pred(model.compiled.pack_marking(up))
    down = dict(up, Working_S1=0, Working_S2=0,
                failed_FHW_S1=1, failed_FHW_S2=1)
    assert down["spare_CHW_S1"] == 0 and down["spare_CHW_S2"] == 0
    assert pred(model.compiled.pack_marking(down))


def test_reward_cc_mis_alone(defaults):
    model, params = defaults["cc"]
    pred = bind_reward(catalog.reward("cc"), model.compiled.place_names, params)
    marking = dict(model.initial_marking(), MIS=1)
    assert pred(model.compiled.pack_marking(marking))


def test_single_recurrent_class_everywhere(defaults):
    for mid, (model, params) in defaults.items():
        _, gen = explore(model, params)
        assert _recurrent_classes(gen.Q) == 1, mid


def _unavailability(mid, params):
    from sanavail.ctmc import expected_reward, steady_state
    model = catalog.build(mid, params)
    space, gen = explore(model, params)
    return expected_reward(steady_state(gen), space, catalog.reward(mid),
                           params)


def test_css_reduces_to_independent_product():
    # no compatibility or location coupling: controller and switches are
    # independent, so the joint unavailability factorizes
    params = dict(catalog.default_params("css"),
                  cis_fail_rate=0.0, geo_fail_rate=0.0)
    u_css = _unavailability("css", params)
    sw_params = {k: params[k] for k in catalog.schema("switch")}
    u_sw = _unavailability("switch", sw_params)
    ctrl_params = {k: params[k] for k in catalog.schema("controller")
                   if k in params}
    ctrl_params["sw_fail_rate"] = params["csw_fail_rate"]
    ctrl_params["sw_rcv_rate"] = params["csw_rcv_rate"]
    u_c = _unavailability("controller", ctrl_params)
    assert abs(u_css - u_sw * u_sw * u_c) < 1e-10


def test_csl_reduces_to_independent_product():
    params = dict(catalog.default_params("csl"),
                  cis_fail_rate=0.0, geo_fail_rate=0.0)
    u_csl = _unavailability("csl", params)
    u_sw = _unavailability("switch",
                           {k: params[k] for k in catalog.schema("switch")})
    u_link = _unavailability("link",
                             {k: params[k] for k in catalog.schema("link")})
    ctrl_params = {k: params[k] for k in catalog.schema("controller")
                   if k in params}
    ctrl_params["sw_fail_rate"] = params["csw_fail_rate"]
    ctrl_params["sw_rcv_rate"] = params["csw_rcv_rate"]
    u_c = _unavailability("controller", ctrl_params)
    assert abs(u_csl - u_sw * u_link * u_c) < 1e-10


# ---------------------------------------------------------------------------
# Listing spot checks

def test_controller_structure(defaults):
    model, _ = defaults["controller"]
    assert {p.name for p in model.places} == {
        "Active_proc", "failed_HW", "failed_MAN", "failed_SW",
        "sw_sys_down", "sys_down"}
    assert dict((p.name, p.initial) for p in model.places)["Active_proc"] == 10
    acts = {a.name: a for a in model.activities}
    assert set(acts) == {"HW_F1", "HW_F2", "HW_R", "MAN_F", "MAN_R",
                         "SW_F", "SW_R", "UHW_R", "USW_R"}
    assert len(acts["HW_F1"].cases) == 2
    assert len(acts["SW_F"].cases) == 2
    gate_names = {g.name for a in model.activities for g in a.input_gates}
    gate_names |= {g.name for a in model.activities
                   for c in a.cases for g in c.gates}
    assert {"IG_MAN", "IG_SW", "OG_MAN", "OG_SD", "OG_SSD"} <= gate_names


def test_cc_structure(defaults):
    model, _ = defaults["cc"]
    assert len(model.places) == 13
    acts = {a.name: a for a in model.activities}
    assert len(acts["HW_F1_C1"].cases) == 3
    assert len(acts["HW_F1_C2"].cases) == 3
    assert len(acts["SW_F_C1"].cases) == 3
    assert len(acts["MAN_F_C1"].cases) == 2
    gates = {g.name for a in model.activities for c in a.cases for g in c.gates}
    assert {"OG_TM", "OG_TH_C1", "OG_TH_C2", "OG_TS_C1", "OG_TS_C2"} <= gates


def test_link_structure(defaults):
    model, _ = defaults["link"]
    assert len(model.places) == 2
    assert {a.name for a in model.activities} == {"L_F", "L_R"}
    assert {a.name: a.rate for a in model.activities} == {
        "L_F": "link_fail_rate", "L_R": "link_rcv_rate"}


def test_chw_recovery_rate_anomaly_and_correction():
    params = catalog.default_params("rr")
    verbatim = catalog.build("rr", params)
    rates = {a.name: a.rate for a in verbatim.activities}
    assert rates["CHW_R_S1"] == "chw_fail_rate"
    assert rates["CHW_R2_S1"] == "chw_rcv_rate"
    fixed = catalog.build("rr", params, corrected=True)
    rates = {a.name: a.rate for a in fixed.activities}
    assert rates["CHW_R_S1"] == "chw_rcv_rate"
    # the standalone element uses the repair rate either way
    rp = catalog.default_params("router")
    router = catalog.build("router", rp)
    assert {a.name: a.rate for a in router.activities}["CHW_R"] == "chw_rcv_rate"


def test_rrl_og_man_writes_failed_sw(defaults):
    # the correlated O&M failure of the router pair records failed_SW
    # tokens, as listed
    model, _ = defaults["rrl"]
    man_f = model.activity("MAN_F_S1")
    common = man_f.cases[0]
    assert common.gates and common.gates[0].name == "OG_MAN"
    assert "failed_SW_S1 = 1" in common.gates[0].function
    assert "failed_MAN" not in common.gates[0].function


def test_rr_chw_f2_case_order(defaults):
    # the spare-exhaustion activity lists the single-router branch first
    model, params = defaults["rr"]
    chw_f2 = model.activity("CHW_F2_S1")
    assert len(chw_f2.cases) == 2
    assert "tmi_cvg" in chw_f2.cases[0].probability
    assert chw_f2.cases[0].arcs and chw_f2.cases[0].arcs[0].place == "failed_CHW_S1"
    assert chw_f2.cases[1].gates[0].name == "OG_CHW"


def test_study_text_round_trip():
    st = catalog.study("RRL_study")
    text = catalog.format_study(st)
    back = catalog.parse_study(text)
    assert back == st


def test_parse_study_diagnostics():
    with pytest.raises(SanError) as err:
        catalog.parse_study("study X\nmodel ll\nreward U_ll\nfixed a int\n",
                            "f.study")
    assert "f.study:4" in str(err.value)
