"""Minimal-cut-set models: element compositions with correlated failures.

Twelve models cover the principal cut sets of the traditional network
(rr, rrl, rrr, rll), the forwarding part of the SDN (ss, ssl, sss, sll,
ll) and its control part (cc, css, csl).  Correlation enters as:

* added places/activities for geographically or physically co-located
  elements (GEO, PHY), shared operation and management (COM), shared
  configuration (MIS) and compatibility issues (CIS);
* modified case distributions for traffic migration (tmi_cvg) and
  homogeneous equipment (heq_cvg), where one element's failure can take
  the others down with the complement of the coverage.

The definitions follow the published listings verbatim, including the
chw_fail_rate rating of the CHW_R recoveries (pass corrected=True to the
builders to substitute chw_rcv_rate) and the OG_MAN gates of rrl/rrr that
record a correlated O&M failure in the failed_SW places.  Deviations are
limited to repairing transcription damage: identifier typos, case
branches whose probabilities cannot sum to one, guards truncated relative
to their siblings, and the traffic-migration takeover gates of cc, which
set the victim controller's down flag without touching its processor
count (see build_cc).
"""

from __future__ import annotations

from ..core import SanModel
from .builders import (ModelBuilder, add_controller, add_link, add_router,
                       add_switch, case, common_first, ig, normal_first, og)

LL_PARAMS = ("geo_fail_rate", "geo_rcv_rate", "link_fail_rate",
             "link_rcv_rate", "phy_fail_rate", "phy_rcv_rate")

RR_PARAMS = ("chw_cvg", "chw_fail_rate", "chw_rcv_rate", "fhw_fail_rate",
             "fhw_rcv_rate", "fhwt_fail_rate", "fhwt_rcv_rate",
             "geo_fail_rate", "geo_rcv_rate", "man_fail_rate",
             "man_rcv_rate", "sw_fail_rate", "sw_rcv_rate", "tmi_cvg",
             "uchw_rcv_rate")

RRL_PARAMS = ("chw_cvg", "chw_fail_rate", "chw_rcv_rate", "fhw_fail_rate",
              "fhw_rcv_rate", "fhwt_fail_rate", "fhwt_rcv_rate",
              "geo_fail_rate", "geo_rcv_rate", "heq_cvg", "link_fail_rate",
              "link_rcv_rate", "man_fail_rate", "man_rcv_rate",
              "sw_fail_rate", "sw_rcv_rate", "uchw_rcv_rate")

RRR_PARAMS = ("chw_cvg", "chw_fail_rate", "chw_rcv_rate", "fhw_fail_rate",
              "fhw_rcv_rate", "fhwt_fail_rate", "fhwt_rcv_rate", "heq_cvg",
              "man_fail_rate", "man_rcv_rate", "sw_fail_rate",
              "sw_rcv_rate", "uchw_rcv_rate")

RLL_PARAMS = ("chw_cvg", "chw_fail_rate", "chw_rcv_rate", "fhw_fail_rate",
              "fhw_rcv_rate", "fhwt_fail_rate", "fhwt_rcv_rate",
              "geo_fail_rate", "geo_rcv_rate", "link_fail_rate",
              "link_rcv_rate", "man_fail_rate", "man_rcv_rate",
              "phy_fail_rate", "phy_rcv_rate", "sw_fail_rate",
              "sw_rcv_rate", "uchw_rcv_rate")

SS_PARAMS = ("fhw_fail_rate", "fhw_rcv_rate", "fhwt_fail_rate",
             "fhwt_rcv_rate", "geo_fail_rate", "geo_rcv_rate",
             "mis_fail_rate", "mis_rcv_rate", "sw_fail_rate",
             "sw_rcv_rate", "tmi_cvg")

SSL_PARAMS = ("fhw_fail_rate", "fhw_rcv_rate", "fhwt_fail_rate",
              "fhwt_rcv_rate", "geo_fail_rate", "geo_rcv_rate", "heq_cvg",
              "link_fail_rate", "link_rcv_rate", "sw_fail_rate",
              "sw_rcv_rate")

SSS_PARAMS = ("fhw_fail_rate", "fhw_rcv_rate", "fhwt_fail_rate",
              "fhwt_rcv_rate", "heq_cvg", "sw_fail_rate", "sw_rcv_rate")

SLL_PARAMS = ("fhw_fail_rate", "fhw_rcv_rate", "fhwt_fail_rate",
              "fhwt_rcv_rate", "geo_fail_rate", "geo_rcv_rate",
              "link_fail_rate", "link_rcv_rate", "phy_fail_rate",
              "phy_rcv_rate", "sw_fail_rate", "sw_rcv_rate")

CC_PARAMS = ("K_th", "N_proc", "hw_cvg", "hw_fail_rate", "hw_rcv_rate",
             "man_fail_rate", "man_rcv_rate", "mis_fail_rate",
             "mis_rcv_rate", "sw_cvg", "sw_fail_rate", "sw_rcv_rate",
             "tmi_cvg", "uhw_rcv_rate", "usw_rcv_rate")

CSL_PARAMS = ("K_th", "N_proc", "cis_fail_rate", "cis_rcv_rate",
              "csw_fail_rate", "csw_rcv_rate", "fhw_fail_rate",
              "fhw_rcv_rate", "fhwt_fail_rate", "fhwt_rcv_rate",
              "geo_fail_rate", "geo_rcv_rate", "hw_cvg", "hw_fail_rate",
              "hw_rcv_rate", "link_fail_rate", "link_rcv_rate",
              "man_fail_rate", "man_rcv_rate", "sw_cvg", "sw_fail_rate",
              "sw_rcv_rate", "uhw_rcv_rate", "usw_rcv_rate")

CSS_PARAMS = ("K_th", "N_proc", "cis_fail_rate", "cis_rcv_rate",
              "csw_fail_rate", "csw_rcv_rate", "fhw_fail_rate",
              "fhw_rcv_rate", "fhwt_fail_rate", "fhwt_rcv_rate",
              "geo_fail_rate", "geo_rcv_rate", "hw_cvg", "hw_fail_rate",
              "hw_rcv_rate", "man_fail_rate", "man_rcv_rate", "sw_cvg",
              "sw_fail_rate", "sw_rcv_rate", "uhw_rcv_rate",
              "usw_rcv_rate")


# ---------------------------------------------------------------------------
# {l,l}: two links sharing location and conduit

def build_ll(params, corrected=False) -> SanModel:
    b = ModelBuilder("ll", LL_PARAMS, params)
    add_link(b, "1")
    add_link(b, "2")
    b.place("GEO")
    b.place("PHY")
    both = "Working_L1 == 1 and Working_L2 == 1"
    zero = "Working_L1 = 0; Working_L2 = 0"
    restore = "Working_L1 = 1; Working_L2 = 1"
    b.act("GEO_F", "geo_fail_rate", igs=[ig("IG_GF", both, zero)], outs=["GEO"])
    b.act("GEO_R", "geo_rcv_rate", ins=["GEO"], ogs=[og("OG_GR", restore)])
    b.act("PHY_F", "phy_fail_rate", igs=[ig("IG_PF", both, zero)], outs=["PHY"])
    b.act("PHY_R", "phy_rcv_rate", ins=["PHY"], ogs=[og("OG_PR", restore)])
    return b.build()


# ---------------------------------------------------------------------------
# {n,n} in TN: two routers, shared O&M, same city, mutual traffic takeover

def build_rr(params, corrected=False) -> SanModel:
    b = ModelBuilder("rr", RR_PARAMS, params)
    b.place("Working_S1", 1)
    b.place("Working_S2", 1)
    b.place("Failed_MAN")
    b.place("GEO")
    both = "Working_S1 == 1 and Working_S2 == 1"
    og_chw = og("OG_CHW", "Working_S1 = 0; Working_S2 = 0; "
                          "failed_CHW_S1 = 1; failed_CHW_S2 = 1")
    og_sw = og("OG_SW", "Working_S1 = 0; Working_S2 = 0; "
                        "failed_SW_S1 = 1; failed_SW_S2 = 1")
    og_fhw = og("OG_FHW", "Working_S1 = 0; Working_S2 = 0; "
                          "failed_FHW_S1 = 1; failed_FHW_S2 = 1")
    og_fhwt = og("OG_FHWt", "Working_S1 = 0; Working_S2 = 0; "
                            "failed_FHWt_S1 = 1; failed_FHWt_S2 = 1")
    for me, other in (("1", "2"), ("2", "1")):
        sfx = f"_S{me}"
        w_other = f"Working_S{other} == 1"
        add_router(
            b, working=f"Working_S{me}", sfx=sfx, man=False,
            corrected=corrected,
            chwf2_cases=normal_first(w_other, "tmi_cvg",
                                     f"failed_CHW{sfx}", case(0, ogs=[og_chw])),
            swf_cases=common_first(both, "tmi_cvg",
                                   case(0, ogs=[og_sw]), f"failed_SW{sfx}"),
            fhwf_cases=common_first(both, "tmi_cvg",
                                    case(0, ogs=[og_fhw]), f"failed_FHW{sfx}"),
            fhwtf_cases=common_first(both, "tmi_cvg",
                                     case(0, ogs=[og_fhwt]), f"failed_FHWt{sfx}"))
    zero = "Working_S1 = 0; Working_S2 = 0"
    restore = "Working_S1 = 1; Working_S2 = 1"
    b.act("MAN_F", "man_fail_rate", igs=[ig("IG_MF", both, zero)],
          outs=["Failed_MAN"])
    b.act("MAN_R", "man_rcv_rate", ins=["Failed_MAN"],
          ogs=[og("OG_MR", restore)])
    b.act("GEO_F", "geo_fail_rate", igs=[ig("IG_GF", both, zero)],
          outs=["GEO"])
    b.act("GEO_R", "geo_rcv_rate", ins=["GEO"], ogs=[og("OG_GR", restore)])
    return b.build()


# ---------------------------------------------------------------------------
# {n,n,l} in TN (listing name "rl"): two routers with homogeneous
# equipment plus a link co-located with router S2

def build_rrl(params, corrected=False) -> SanModel:
    b = ModelBuilder("rrl", RRL_PARAMS, params)
    b.place("Working_S1", 1)
    b.place("Working_S2", 1)
    b.place("GEO")
    both = "Working_S1 == 1 and Working_S2 == 1"
    og_chw = og("OG_CHW", "Working_S1 = 0; Working_S2 = 0; "
                          "failed_CHW_S1 = 1; failed_CHW_S2 = 1")
    og_sw = og("OG_SW", "Working_S1 = 0; Working_S2 = 0; "
                        "failed_SW_S1 = 1; failed_SW_S2 = 1")
    og_fhw = og("OG_FHW", "Working_S1 = 0; Working_S2 = 0; "
                          "failed_FHW_S1 = 1; failed_FHW_S2 = 1")
    og_fhwt = og("OG_FHWt", "Working_S1 = 0; Working_S2 = 0; "
                            "failed_FHWt_S1 = 1; failed_FHWt_S2 = 1")
    # correlated O&M failure is recorded in failed_SW_*, as listed
    og_man = og("OG_MAN", "Working_S1 = 0; Working_S2 = 0; "
                          "failed_SW_S1 = 1; failed_SW_S2 = 1")
    for me, other in (("1", "2"), ("2", "1")):
        sfx = f"_S{me}"
        w_other = f"Working_S{other} == 1"
        add_router(
            b, working=f"Working_S{me}", sfx=sfx, man=True,
            corrected=corrected,
            manf_cases=common_first(both, "heq_cvg",
                                    case(0, ogs=[og_man]), f"failed_MAN{sfx}"),
            chwf2_cases=normal_first(w_other, "heq_cvg",
                                     f"failed_CHW{sfx}", case(0, ogs=[og_chw])),
            swf_cases=common_first(both, "heq_cvg",
                                   case(0, ogs=[og_sw]), f"failed_SW{sfx}"),
            fhwf_cases=common_first(both, "heq_cvg",
                                    case(0, ogs=[og_fhw]), f"failed_FHW{sfx}"),
            fhwtf_cases=common_first(both, "heq_cvg",
                                     case(0, ogs=[og_fhwt]), f"failed_FHWt{sfx}"))
    add_link(b)
    b.act("GEO_F", "geo_fail_rate",
          igs=[ig("IG_GF", "Working_L == 1 and Working_S2 == 1",
                  "Working_L = 0; Working_S2 = 0")],
          outs=["GEO"])
    b.act("GEO_R", "geo_rcv_rate", ins=["GEO"],
          ogs=[og("OG_GR", "Working_L = 1; Working_S2 = 1")])
    return b.build()


# ---------------------------------------------------------------------------
# {n,n,n} in TN: three routers with homogeneous equipment

def build_rrr(params, corrected=False) -> SanModel:
    b = ModelBuilder("rrr", RRR_PARAMS, params)
    for i in "123":
        b.place(f"Working_S{i}", 1)
    all3 = "Working_S1 == 1 and Working_S2 == 1 and Working_S3 == 1"
    zero3 = "Working_S1 = 0; Working_S2 = 0; Working_S3 = 0; "
    og_chw = og("OG_CHW", zero3 + "failed_CHW_S1 = 1; failed_CHW_S2 = 1; "
                                  "failed_CHW_S3 = 1")
    og_sw = og("OG_SW", zero3 + "failed_SW_S1 = 1; failed_SW_S2 = 1; "
                                "failed_SW_S3 = 1")
    og_fhw = og("OG_FHW", zero3 + "failed_FHW_S1 = 1; failed_FHW_S2 = 1; "
                                  "failed_FHW_S3 = 1")
    og_fhwt = og("OG_FHWt", zero3 + "failed_FHWt_S1 = 1; failed_FHWt_S2 = 1; "
                                    "failed_FHWt_S3 = 1")
    og_man = og("OG_MAN", zero3 + "failed_SW_S1 = 1; failed_SW_S2 = 1; "
                                  "failed_SW_S3 = 1")
    for me, oth1, oth2 in (("1", "2", "3"), ("2", "1", "3"), ("3", "1", "2")):
        sfx = f"_S{me}"
        others = f"Working_S{oth1} == 1 and Working_S{oth2} == 1"
        add_router(
            b, working=f"Working_S{me}", sfx=sfx, man=True,
            corrected=corrected,
            manf_cases=common_first(all3, "heq_cvg",
                                    case(0, ogs=[og_man]), f"failed_MAN{sfx}"),
            chwf2_cases=normal_first(others, "heq_cvg",
                                     f"failed_CHW{sfx}", case(0, ogs=[og_chw])),
            swf_cases=common_first(all3, "heq_cvg",
                                   case(0, ogs=[og_sw]), f"failed_SW{sfx}"),
            fhwf_cases=common_first(all3, "heq_cvg",
                                    case(0, ogs=[og_fhw]), f"failed_FHW{sfx}"),
            fhwtf_cases=common_first(all3, "heq_cvg",
                                     case(0, ogs=[og_fhwt]), f"failed_FHWt{sfx}"))
    return b.build()


# ---------------------------------------------------------------------------
# {n,l,l} in TN: one router and its two co-located links

def build_rll(params, corrected=False) -> SanModel:
    b = ModelBuilder("rll", RLL_PARAMS, params)
    b.place("Working_R", 1)
    add_router(b, working="Working_R", man=True, corrected=corrected)
    add_link(b, "1")
    add_link(b, "2")
    b.place("GEO")
    b.place("PHY")
    b.act("GEO_F", "geo_fail_rate",
          igs=[ig("IG_GF",
                  "Working_L1 == 1 and Working_L2 == 1 and Working_R == 1",
                  "Working_L1 = 0; Working_L2 = 0; Working_R = 0")],
          outs=["GEO"])
    b.act("GEO_R", "geo_rcv_rate", ins=["GEO"],
          ogs=[og("OG_GR", "Working_L1 = 1; Working_L2 = 1; Working_R = 1")])
    b.act("PHY_F", "phy_fail_rate",
          igs=[ig("IG_PF", "Working_L1 == 1 and Working_L2 == 1",
                  "Working_L1 = 0; Working_L2 = 0")],
          outs=["PHY"])
    b.act("PHY_R", "phy_rcv_rate", ins=["PHY"],
          ogs=[og("OG_PR", "Working_L1 = 1; Working_L2 = 1")])
    return b.build()


# ---------------------------------------------------------------------------
# {n,n} in F-SDN: two switches, same city, shared configuration,
# mutual traffic takeover

def build_ss(params, corrected=False) -> SanModel:
    b = ModelBuilder("ss", SS_PARAMS, params)
    b.place("Working_S1", 1)
    b.place("Working_S2", 1)
    b.place("GEO")
    b.place("MIS")
    both = "Working_S1 == 1 and Working_S2 == 1"
    og_sw = og("OG_SW", "Working_S1 = 0; Working_S2 = 0; "
                        "failed_SW_S1 = 1; failed_SW_S2 = 1")
    og_fhw = og("OG_FHW", "Working_S1 = 0; Working_S2 = 0; "
                          "failed_FHW_S1 = 1; failed_FHW_S2 = 1")
    og_fhwt = og("OG_FHWt", "Working_S1 = 0; Working_S2 = 0; "
                            "failed_FHWt_S1 = 1; failed_FHWt_S2 = 1")
    for i in "12":
        sfx = f"_S{i}"
        add_switch(
            b, working=f"Working_S{i}", place_sfx=sfx, act_sfx=sfx,
            swf_cases=common_first(both, "tmi_cvg",
                                   case(0, ogs=[og_sw]), f"failed_SW{sfx}"),
            fhwf_cases=common_first(both, "tmi_cvg",
                                    case(0, ogs=[og_fhw]), f"failed_FHW{sfx}"),
            fhwtf_cases=common_first(both, "tmi_cvg",
                                     case(0, ogs=[og_fhwt]), f"failed_FHWt{sfx}"))
    zero = "Working_S1 = 0; Working_S2 = 0"
    restore = "Working_S1 = 1; Working_S2 = 1"
    b.act("GEO_F", "geo_fail_rate", igs=[ig("IG_GF", both, zero)], outs=["GEO"])
    b.act("GEO_R", "geo_rcv_rate", ins=["GEO"], ogs=[og("OG_GR", restore)])
    b.act("MIS_F", "mis_fail_rate", igs=[ig("IG_MF", both, zero)], outs=["MIS"])
    b.act("MIS_R", "mis_rcv_rate", ins=["MIS"], ogs=[og("OG_MR", restore)])
    return b.build()


# ---------------------------------------------------------------------------
# {n,n,l} in F-SDN: two switches with homogeneous equipment plus a link
# co-located with switch S2

def build_ssl(params, corrected=False) -> SanModel:
    b = ModelBuilder("ssl", SSL_PARAMS, params)
    b.place("Working_S1", 1)
    b.place("Working_S2", 1)
    b.place("GEO")
    both = "Working_S1 == 1 and Working_S2 == 1"
    og_sw = og("OG_SW", "Working_S1 = 0; Working_S2 = 0; "
                        "failed_SW_S1 = 1; failed_SW_S2 = 1")
    og_fhw = og("OG_FHW", "Working_S1 = 0; Working_S2 = 0; "
                          "failed_FHW_S1 = 1; failed_FHW_S2 = 1")
    og_fhwt = og("OG_FHWt", "Working_S1 = 0; Working_S2 = 0; "
                            "failed_FHWt_S1 = 1; failed_FHWt_S2 = 1")
    for i in "12":
        sfx = f"_S{i}"
        add_switch(
            b, working=f"Working_S{i}", place_sfx=sfx, act_sfx=sfx,
            swf_cases=common_first(both, "heq_cvg",
                                   case(0, ogs=[og_sw]), f"failed_SW{sfx}"),
            fhwf_cases=common_first(both, "heq_cvg",
                                    case(0, ogs=[og_fhw]), f"failed_FHW{sfx}"),
            fhwtf_cases=common_first(both, "heq_cvg",
                                     case(0, ogs=[og_fhwt]), f"failed_FHWt{sfx}"))
    add_link(b)
    b.act("GEO_F", "geo_fail_rate",
          igs=[ig("IG_GF", "Working_L == 1 and Working_S2 == 1",
                  "Working_L = 0; Working_S2 = 0")],
          outs=["GEO"])
    b.act("GEO_R", "geo_rcv_rate", ins=["GEO"],
          ogs=[og("OG_GR", "Working_L = 1; Working_S2 = 1")])
    return b.build()


# ---------------------------------------------------------------------------
# {n,n,n} in F-SDN: three switches with homogeneous equipment

def build_sss(params, corrected=False) -> SanModel:
    b = ModelBuilder("sss", SSS_PARAMS, params)
    for i in "123":
        b.place(f"Working_S{i}", 1)
    all3 = "Working_S1 == 1 and Working_S2 == 1 and Working_S3 == 1"
    zero3 = "Working_S1 = 0; Working_S2 = 0; Working_S3 = 0; "
    og_sw = og("OG_SW", zero3 + "failed_SW_S1 = 1; failed_SW_S2 = 1; "
                                "failed_SW_S3 = 1")
    og_fhw = og("OG_FHW", zero3 + "failed_FHW_S1 = 1; failed_FHW_S2 = 1; "
                                  "failed_FHW_S3 = 1")
    og_fhwt = og("OG_FHWt", zero3 + "failed_FHWt_S1 = 1; failed_FHWt_S2 = 1; "
                                    "failed_FHWt_S3 = 1")
    for i in "123":
        sfx = f"_S{i}"
        add_switch(
            b, working=f"Working_S{i}", place_sfx=sfx, act_sfx=sfx,
            swf_cases=common_first(all3, "heq_cvg",
                                   case(0, ogs=[og_sw]), f"failed_SW{sfx}"),
            fhwf_cases=common_first(all3, "heq_cvg",
                                    case(0, ogs=[og_fhw]), f"failed_FHW{sfx}"),
            fhwtf_cases=common_first(all3, "heq_cvg",
                                     case(0, ogs=[og_fhwt]), f"failed_FHWt{sfx}"))
    return b.build()


# ---------------------------------------------------------------------------
# {n,l,l} in F-SDN: one switch and its two co-located links

def build_sll(params, corrected=False) -> SanModel:
    b = ModelBuilder("sll", SLL_PARAMS, params)
    b.place("Working_S", 1)
    add_switch(b, working="Working_S")
    add_link(b, "1")
    add_link(b, "2")
    b.place("GEO")
    b.place("PHY")
    b.act("GEO_F", "geo_fail_rate",
          igs=[ig("IG_GF",
                  "Working_L1 == 1 and Working_L2 == 1 and Working_S == 1",
                  "Working_L1 = 0; Working_L2 = 0; Working_S = 0")],
          outs=["GEO"])
    b.act("GEO_R", "geo_rcv_rate", ins=["GEO"],
          ogs=[og("OG_GR", "Working_L1 = 1; Working_L2 = 1; Working_S = 1")])
    b.act("PHY_F", "phy_fail_rate",
          igs=[ig("IG_PF", "Working_L1 == 1 and Working_L2 == 1",
                  "Working_L1 = 0; Working_L2 = 0")],
          outs=["PHY"])
    b.act("PHY_R", "phy_rcv_rate", ins=["PHY"],
          ogs=[og("OG_PR", "Working_L1 = 1; Working_L2 = 1")])
    return b.build()


# ---------------------------------------------------------------------------
# {n,n} in C-SDN: two controllers, shared configuration, mutual takeover

def build_cc(params, corrected=False) -> SanModel:
    b = ModelBuilder("cc", CC_PARAMS, params)
    n_proc = int(params["N_proc"])
    for i in "12":
        b.place(f"Active_proc_C{i}", n_proc)
        for pl in ("failed_HW", "failed_MAN", "failed_SW", "sw_sys_down",
                   "sys_down"):
            b.place(f"{pl}_C{i}")
    b.place("MIS")
    og_tm = og("OG_TM", "failed_MAN_C1 = 1; failed_MAN_C2 = 1")
    for me, oth in (("C1", "C2"), ("C2", "C1")):
        up_me = (f"MIS == 0 and sys_down_{me} == 0 and "
                 f"sw_sys_down_{me} == 0 and failed_MAN_{me} == 0")
        oth_flags = (f"failed_MAN_{oth} == 0 and sys_down_{oth} == 0 and "
                     f"sw_sys_down_{oth} == 0")
        migrate = (f"sys_down_{oth} == 0 and sw_sys_down_{oth} == 0 and "
                   f"failed_MAN_{oth} == 0 and Active_proc_{me} == K_th")
        og_sd = og(f"OG_SD_{me}",
                   f"failed_HW_{me} += 1; "
                   f"Active_proc_{me} = N_proc - failed_HW_{me}; "
                   f"failed_SW_{me} = 0")
        og_man = og(f"OG_MAN_{me}",
                    f"Active_proc_{me} = N_proc - failed_HW_{me}; "
                    f"failed_SW_{me} = 0")
        og_ssd = og(f"OG_SSD_{me}",
                    f"Active_proc_{me} = N_proc - failed_HW_{me}; "
                    f"failed_SW_{me} = 0")
        # The victim of a traffic-migration takeover gets its down flag
        # only; decrementing its processor count here would break the
        # Active_proc = N_proc - failed_HW accounting that every other
        # hard-down path maintains (and could drive the count negative).
        og_th = og(f"OG_TH_{me}",
                   f"sys_down_{oth} = 1; failed_HW_{me} += 1")
        og_ts = og(f"OG_TS_{me}",
                   f"sw_sys_down_{oth} = 1; failed_SW_{me} += 1")
        b.act(f"HW_F1_{me}", f"Active_proc_{me} * hw_fail_rate",
              ins=[f"Active_proc_{me}"], cases=(
                  case(f"(1 - hw_cvg) if ({up_me}) else 0.0",
                       outs=[f"sys_down_{me}"], ogs=[og_sd]),
                  case(f"((hw_cvg * tmi_cvg) if ({migrate}) else hw_cvg) "
                       f"if ({up_me}) else 1.0",
                       outs=[f"failed_HW_{me}"]),
                  case(f"((hw_cvg * (1 - tmi_cvg)) if ({migrate}) else 0.0) "
                       f"if ({up_me}) else 0.0",
                       ogs=[og_th]),
              ))
        b.act(f"HW_F2_{me}", f"hw_fail_rate * failed_SW_{me}",
              ins=[f"failed_SW_{me}"], outs=[f"failed_HW_{me}"])
        b.act(f"HW_R_{me}", "hw_rcv_rate", ins=[f"failed_HW_{me}"],
              outs=[f"Active_proc_{me}"])
        b.act(f"MAN_F_{me}", "man_fail_rate",
              igs=[ig(f"IG_MAN_{me}",
                      f"MIS == 0 and failed_MAN_{me} == 0 and "
                      f"sys_down_{me} == 0 and sw_sys_down_{me} == 0")],
              cases=(
                  case(f"tmi_cvg if ({oth_flags}) else 1.0",
                       outs=[f"failed_MAN_{me}"], ogs=[og_man]),
                  case(f"(1 - tmi_cvg) if ({oth_flags}) else 0.0",
                       ogs=[og_tm]),
              ))
        b.act(f"MAN_R_{me}", "man_rcv_rate", ins=[f"failed_MAN_{me}"])
        b.act(f"SW_F_{me}",
              f"sw_fail_rate if Active_proc_{me} >= K_th "
              f"else sw_fail_rate * Active_proc_{me}",
              igs=[ig(f"IG_SW_{me}",
                      f"MIS == 0 and failed_MAN_{me} == 0 and "
                      f"sys_down_{me} == 0 and sw_sys_down_{me} == 0 and "
                      f"Active_proc_{me} > 0",
                      f"Active_proc_{me} -= 1")],
              cases=(
                  case("1 - sw_cvg", outs=[f"sw_sys_down_{me}"], ogs=[og_ssd]),
                  case(f"(sw_cvg * tmi_cvg) if ({migrate}) else sw_cvg",
                       outs=[f"failed_SW_{me}"]),
                  case(f"(sw_cvg * (1 - tmi_cvg)) if ({migrate}) else 0.0",
                       ogs=[og_ts]),
              ))
        b.act(f"SW_R_{me}", "sw_rcv_rate", ins=[f"failed_SW_{me}"],
              outs=[f"Active_proc_{me}"])
        b.act(f"UHW_R_{me}", "uhw_rcv_rate", ins=[f"sys_down_{me}"])
        b.act(f"USW_R_{me}", "usw_rcv_rate", ins=[f"sw_sys_down_{me}"])
    b.act("MIS_F", "mis_fail_rate",
          igs=[ig("IG_MF",
                  "MIS == 0 and failed_MAN_C1 == 0 and sys_down_C1 == 0 and "
                  "sw_sys_down_C1 == 0 and failed_MAN_C2 == 0 and "
                  "sys_down_C2 == 0 and sw_sys_down_C2 == 0")],
          outs=["MIS"])
    b.act("MIS_R", "mis_rcv_rate", ins=["MIS"])
    return b.build()


# ---------------------------------------------------------------------------
# {n,n,n} in C-SDN: controller plus two switches, same city, with global
# and per-switch compatibility issues

def build_css(params, corrected=False) -> SanModel:
    b = ModelBuilder("css", CSS_PARAMS, params)
    add_controller(b, sw_fail="csw_fail_rate", sw_rcv="csw_rcv_rate")
    b.place("Working_S1", 1)
    b.place("Working_S2", 1)
    for i in "12":
        add_switch(b, working=f"Working_S{i}", place_sfx=f"_S{i}",
                   act_sfx=f"_S{i}")
    b.place("GEO")
    b.place("CIS")
    b.place("CIS_S1")
    b.place("CIS_S2")
    ctrl_up = "failed_MAN == 0 and sys_down == 0 and sw_sys_down == 0"
    both = "Working_S1 == 1 and Working_S2 == 1"
    b.act("GEO_F", "geo_fail_rate",
          igs=[ig("IG_GF", both, "Working_S1 = 0; Working_S2 = 0")],
          outs=["GEO"])
    b.act("GEO_R", "geo_rcv_rate", ins=["GEO"],
          ogs=[og("OG_GR", "Working_S1 = 1; Working_S2 = 1")])
    b.act("CIS_F", "cis_fail_rate",
          igs=[ig("IG_CF", f"{both} and {ctrl_up}",
                  "Working_S1 = 0; Working_S2 = 0")],
          outs=["CIS"])
    b.act("CIS_R", "cis_rcv_rate", ins=["CIS"],
          ogs=[og("OG_CR", "Working_S1 = 1; Working_S2 = 1")])
    b.act("CIS_F_S1", "cis_fail_rate",
          igs=[ig("IG_CF_S1", f"CIS_S2 == 0 and Working_S1 == 1 and {ctrl_up}",
                  "Working_S1 = 0")],
          outs=["CIS_S1"])
    b.act("CIS_R_S1", "cis_rcv_rate", ins=["CIS_S1"],
          ogs=[og("OG_CR_S1", "Working_S1 = 1")])
    b.act("CIS_F_S2", "cis_fail_rate",
          igs=[ig("IG_CF_S2", f"CIS_S1 == 0 and Working_S2 == 1 and {ctrl_up}",
                  "Working_S2 = 0")],
          outs=["CIS_S2"])
    b.act("CIS_R_S2", "cis_rcv_rate", ins=["CIS_S2"],
          ogs=[og("OG_CR_S2", "Working_S2 = 1")])
    return b.build()


# ---------------------------------------------------------------------------
# {n,n,l} in C-SDN: controller, switch and link, with the switch and link
# co-located and a controller/switch compatibility issue

def build_csl(params, corrected=False) -> SanModel:
    b = ModelBuilder("csl", CSL_PARAMS, params)
    add_controller(b, sw_fail="csw_fail_rate", sw_rcv="csw_rcv_rate")
    b.place("Working_S", 1)
    add_switch(b, working="Working_S", place_sfx="_S", act_sfx="_S")
    add_link(b)
    b.place("GEO")
    b.place("CIS")
    ctrl_up = "failed_MAN == 0 and sys_down == 0 and sw_sys_down == 0"
    b.act("GEO_F", "geo_fail_rate",
          igs=[ig("IG_GF", "Working_L == 1 and Working_S == 1",
                  "Working_L = 0; Working_S = 0")],
          outs=["GEO"])
    b.act("GEO_R", "geo_rcv_rate", ins=["GEO"],
          ogs=[og("OG_GR", "Working_L = 1; Working_S = 1")])
    b.act("CIS_F", "cis_fail_rate",
          igs=[ig("IG_CF", f"CIS == 0 and Working_S == 1 and {ctrl_up}",
                  "Working_S = 0")],
          outs=["CIS"])
    b.act("CIS_R", "cis_rcv_rate", ins=["CIS"],
          ogs=[og("OG_CR", "Working_S = 1")])
    return b.build()
