"""Construction helpers and the four network-element models.

Models are assembled from expression strings over place and parameter
names, mirroring the structure of the published model listings: every
failure mode is a place, every failure/recovery event an exponential
activity, coverage branches are case distributions, and correlated
failures enter through input/output gates.
"""

from __future__ import annotations

from ..core import (Activity, Case, InputArc, InputGate, OutputArc,
                    OutputGate, Place, SanModel)


class ModelBuilder:
    """Accumulates places and activities, then emits an immutable model."""

    def __init__(self, name: str, schema: tuple[str, ...], params):
        self.name = name
        self.schema = schema
        self.params = params
        self._places: list[Place] = []
        self._acts: list[Activity] = []

    def place(self, name: str, initial: int = 0):
        self._places.append(Place(name, initial))

    def act(self, name, rate, ins=(), igs=(), cases=None, outs=(), ogs=()):
        if cases is None:
            cases = (Case(1.0, tuple(OutputArc(o) for o in outs), tuple(ogs)),)
        self._acts.append(Activity(
            name=name, rate=rate,
            input_arcs=tuple(InputArc(i) for i in ins),
            input_gates=tuple(igs), cases=tuple(cases)))

    def pair(self, fail, fail_rate, src, dst, rcv, rcv_rate):
        """Plain failure/recovery pair moving one token src -> dst -> src."""
        self.act(fail, fail_rate, ins=[src], outs=[dst])
        self.act(rcv, rcv_rate, ins=[dst], outs=[src])

    def build(self) -> SanModel:
        return SanModel(self.name, self._places, self._acts, self.schema)


def ig(name: str, predicate: str, function: str = "") -> InputGate:
    return InputGate(name, predicate, function)


def og(name: str, function: str) -> OutputGate:
    return OutputGate(name, function)


def case(prob, outs=(), ogs=()) -> Case:
    return Case(prob, tuple(OutputArc(o) for o in outs), tuple(ogs))


def common_first(guard: str, cvg: str, common: Case, normal_out: str) -> tuple[Case, Case]:
    """Two-case pattern with the correlated branch listed first.

    When `guard` holds, the correlated case fires with probability 1-cvg
    and the single-element case with cvg; otherwise only the single-element
    case is possible.
    """
    c1 = Case(f"(1 - {cvg}) if ({guard}) else 0.0", common.arcs, common.gates)
    c2 = case(f"{cvg} if ({guard}) else 1.0", outs=[normal_out])
    return (c1, c2)


def normal_first(guard: str, cvg: str, normal_out: str, common: Case) -> tuple[Case, Case]:
    """Two-case pattern with the single-element branch listed first."""
    c1 = case(f"{cvg} if ({guard}) else 1.0", outs=[normal_out])
    c2 = Case(f"(1 - {cvg}) if ({guard}) else 0.0", common.arcs, common.gates)
    return (c1, c2)


# ---------------------------------------------------------------------------
# Reusable element blocks

def add_link(b: ModelBuilder, sfx: str = ""):
    """Two-state link: up or down on hardware failure."""
    b.place(f"Working_L{sfx}", 1)
    b.place(f"Failed_L{sfx}")
    b.pair(f"L_F{sfx}", "link_fail_rate", f"Working_L{sfx}", f"Failed_L{sfx}",
           f"L_R{sfx}", "link_rcv_rate")


def add_switch(b: ModelBuilder, *, working: str, place_sfx: str = "",
               act_sfx: str = "", swf_cases=None, fhwf_cases=None,
               fhwtf_cases=None):
    """Forwarding-plane element: software plus permanent/transient hardware."""
    fsw = f"failed_SW{place_sfx}"
    ffhw = f"failed_FHW{place_sfx}"
    ffhwt = f"failed_FHWt{place_sfx}"
    for pl in (ffhw, ffhwt, fsw):
        b.place(pl)
    b.act(f"FHW_F{act_sfx}", "fhw_fail_rate", ins=[working],
          cases=fhwf_cases, outs=[ffhw])
    b.act(f"FHW_R{act_sfx}", "fhw_rcv_rate", ins=[ffhw], outs=[working])
    b.act(f"FHWt_F{act_sfx}", "fhwt_fail_rate", ins=[working],
          cases=fhwtf_cases, outs=[ffhwt])
    b.act(f"FHWt_R{act_sfx}", "fhwt_rcv_rate", ins=[ffhwt], outs=[working])
    b.act(f"SW_F{act_sfx}", "sw_fail_rate", ins=[working],
          cases=swf_cases, outs=[fsw])
    b.act(f"SW_R{act_sfx}", "sw_rcv_rate", ins=[fsw], outs=[working])


def add_router(b: ModelBuilder, *, working: str, sfx: str = "",
               man: bool = True, corrected: bool = False,
               manf_cases=None, chwf2_cases=None, swf_cases=None,
               fhwf_cases=None, fhwtf_cases=None):
    """Traditional router block: 1+1 control hardware, O&M, software,
    forwarding hardware.  The element is up while the token sits in its
    working place or in spare_CHW.

    The published listings rate the CHW_R recovery with chw_fail_rate in
    the composed models; `corrected` substitutes chw_rcv_rate instead.
    """
    spare = f"spare_CHW{sfx}"
    fchw = f"failed_CHW{sfx}"
    sysd = f"sys_down{sfx}"
    fsw = f"failed_SW{sfx}"
    ffhw = f"failed_FHW{sfx}"
    ffhwt = f"failed_FHWt{sfx}"
    for pl in (spare, fchw, sysd, fsw, ffhw, ffhwt):
        b.place(pl)
    if man:
        fman = f"failed_MAN{sfx}"
        b.place(fman)
        b.act(f"MAN_F{sfx}", "man_fail_rate", ins=[working],
              cases=manf_cases, outs=[fman])
        b.act(f"MAN_R{sfx}", "man_rcv_rate", ins=[fman], outs=[working])
    b.act(f"CHW_F{sfx}", "2 * chw_fail_rate", ins=[working], cases=(
        case("1 - chw_cvg", outs=[sysd]),
        case("chw_cvg", outs=[spare]),
    ))
    b.act(f"CHW_F2{sfx}", "chw_fail_rate", ins=[spare],
          cases=chwf2_cases, outs=[fchw])
    b.act(f"CHW_R{sfx}", "chw_rcv_rate" if corrected else "chw_fail_rate",
          ins=[spare], outs=[working])
    b.act(f"CHW_R2{sfx}", "chw_rcv_rate", ins=[fchw], outs=[spare])
    b.act(f"UCHW_R{sfx}", "uchw_rcv_rate", ins=[sysd], outs=[working])
    b.act(f"SW_F{sfx}", "sw_fail_rate", ins=[working],
          cases=swf_cases, outs=[fsw])
    b.act(f"SW_R{sfx}", "sw_rcv_rate", ins=[fsw], outs=[working])
    b.act(f"FHW_F{sfx}", "fhw_fail_rate", ins=[working],
          cases=fhwf_cases, outs=[ffhw])
    b.act(f"FHW_R{sfx}", "fhw_rcv_rate", ins=[ffhw], outs=[working])
    b.act(f"FHWt_F{sfx}", "fhwt_fail_rate", ins=[working],
          cases=fhwtf_cases, outs=[ffhwt])
    b.act(f"FHWt_R{sfx}", "fhwt_rcv_rate", ins=[ffhwt], outs=[working])


def add_controller(b: ModelBuilder, *, sw_fail: str = "sw_fail_rate",
                   sw_rcv: str = "sw_rcv_rate"):
    """Clustered SDN controller: N_proc processors, up while at least K_th
    are active and no O&M / coverage failure is pending.

    Unsuffixed place names; the software rate parameters are overridable
    because composed models reserve sw_* for the switch software.
    """
    n_proc = int(b.params["N_proc"])
    b.place("Active_proc", n_proc)
    for pl in ("failed_HW", "failed_MAN", "failed_SW", "sw_sys_down", "sys_down"):
        b.place(pl)
    up = "sys_down == 0 and sw_sys_down == 0 and failed_MAN == 0"
    og_sd = og("OG_SD", "failed_HW += 1; Active_proc = N_proc - failed_HW; failed_SW = 0")
    og_man = og("OG_MAN", "Active_proc = N_proc - failed_HW; failed_SW = 0")
    og_ssd = og("OG_SSD", "Active_proc = N_proc - failed_HW; failed_SW = 0")
    b.act("HW_F1", "Active_proc * hw_fail_rate", ins=["Active_proc"], cases=(
        case(f"(1 - hw_cvg) if ({up}) else 0.0", outs=["sys_down"], ogs=[og_sd]),
        case(f"hw_cvg if ({up}) else 1.0", outs=["failed_HW"]),
    ))
    b.act("HW_F2", "hw_fail_rate * failed_SW", ins=["failed_SW"], outs=["failed_HW"])
    b.act("HW_R", "hw_rcv_rate", ins=["failed_HW"], outs=["Active_proc"])
    b.act("MAN_F", "man_fail_rate",
          igs=[ig("IG_MAN", "failed_MAN == 0 and sys_down == 0 and sw_sys_down == 0")],
          cases=(case(1.0, outs=["failed_MAN"], ogs=[og_man]),))
    b.act("MAN_R", "man_rcv_rate", ins=["failed_MAN"])
    b.act("SW_F", f"{sw_fail} if Active_proc >= K_th else {sw_fail} * Active_proc",
          igs=[ig("IG_SW",
                  "failed_MAN == 0 and sys_down == 0 and sw_sys_down == 0 "
                  "and Active_proc > 0",
                  "Active_proc -= 1")],
          cases=(
              case("1 - sw_cvg", outs=["sw_sys_down"], ogs=[og_ssd]),
              case("sw_cvg", outs=["failed_SW"]),
          ))
    b.act("SW_R", sw_rcv, ins=["failed_SW"], outs=["Active_proc"])
    b.act("UHW_R", "uhw_rcv_rate", ins=["sys_down"])
    b.act("USW_R", "usw_rcv_rate", ins=["sw_sys_down"])


# ---------------------------------------------------------------------------
# Standalone network elements

LINK_PARAMS = ("link_fail_rate", "link_rcv_rate")

ROUTER_PARAMS = ("chw_cvg", "chw_fail_rate", "chw_rcv_rate",
                 "fhw_fail_rate", "fhw_rcv_rate", "fhwt_fail_rate",
                 "fhwt_rcv_rate", "man_fail_rate", "man_rcv_rate",
                 "sw_fail_rate", "sw_rcv_rate", "uchw_rcv_rate")

SWITCH_PARAMS = ("fhw_fail_rate", "fhw_rcv_rate", "fhwt_fail_rate",
                 "fhwt_rcv_rate", "sw_fail_rate", "sw_rcv_rate")

CONTROLLER_PARAMS = ("K_th", "N_proc", "hw_cvg", "hw_fail_rate",
                     "hw_rcv_rate", "man_fail_rate", "man_rcv_rate",
                     "sw_cvg", "sw_fail_rate", "sw_rcv_rate",
                     "uhw_rcv_rate", "usw_rcv_rate")


def build_link(params, corrected=False) -> SanModel:
    b = ModelBuilder("link", LINK_PARAMS, params)
    add_link(b)
    return b.build()


def build_router(params, corrected=False) -> SanModel:
    # Standalone element: the control-hardware recoveries both use the
    # repair rate (the composed models keep the verbatim listing instead).
    b = ModelBuilder("router", ROUTER_PARAMS, params)
    b.place("Working", 1)
    add_router(b, working="Working", corrected=True)
    return b.build()


def build_switch(params, corrected=False) -> SanModel:
    b = ModelBuilder("switch", SWITCH_PARAMS, params)
    b.place("Working", 1)
    add_switch(b, working="Working")
    return b.build()


def build_controller(params, corrected=False) -> SanModel:
    b = ModelBuilder("controller", CONTROLLER_PARAMS, params)
    add_controller(b)
    return b.build()
