"""Built-in parameter studies.

One study per catalog model, reproducing the published experiment grids:
fixed assignments plus Manual value lists whose cross-product defines the
grid.  Studies can be exported to (and re-read from) a line-oriented text
format so new grids can be defined without code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import SanError


@dataclass(frozen=True)
class StudyVar:
    name: str
    type: str            # "int" | "double"
    kind: str            # "fixed" | "manual"
    values: tuple

    def cast(self, raw):
        return int(raw) if self.type == "int" else float(raw)


@dataclass(frozen=True)
class Study:
    name: str
    model: str
    reward: str
    variables: tuple[StudyVar, ...]

    def manual_vars(self) -> list[StudyVar]:
        return [v for v in self.variables if v.kind == "manual"]

    def grid_size(self) -> int:
        size = 1
        for v in self.manual_vars():
            size *= len(v.values)
        return size

    def grid(self):
        """Yield (assignment, full-params) per point, in declared order."""
        fixed = {v.name: v.values[0] for v in self.variables if v.kind == "fixed"}
        manual = self.manual_vars()
        for combo in itertools.product(*(v.values for v in manual)):
            point = dict(zip((v.name for v in manual), combo))
            yield point, {**fixed, **point}

    def defaults(self) -> dict:
        """Fixed values; ranged variables at their first listed value."""
        return {v.name: v.values[0] for v in self.variables}


def _fixed(name, value, type_="double"):
    return StudyVar(name, type_, "fixed", (value,))


def _manual(name, values, type_="double"):
    return StudyVar(name, type_, "manual", tuple(values))


STUDIES: dict[str, Study] = {}


def _study(name, model, reward, variables):
    STUDIES[name] = Study(name, model, reward, tuple(variables))


_study("CC_study", "cc", "U_cc", [
    _fixed("K_th", 8, "int"),
    _fixed("N_proc", 10, "int"),
    _fixed("hw_cvg", 0.97),
    _fixed("hw_fail_rate", 1.0e-8),
    _fixed("hw_rcv_rate", 2.0e-5),
    _fixed("man_fail_rate", 1.0e-6),
    _fixed("man_rcv_rate", 9.0e-5),
    _manual("mis_fail_rate", [5.0e-6, 5.0e-7, 5.0e-8, 5.0e-9, 5.0e-10]),
    _fixed("mis_rcv_rate", 9.0e-5),
    _fixed("sw_cvg", 0.9),
    _fixed("sw_fail_rate", 2.0e-5),
    _fixed("sw_rcv_rate", 0.006),
    _manual("tmi_cvg", [0.9, 0.93, 0.95, 0.97, 1.0]),
    _fixed("uhw_rcv_rate", 6.0e-4),
    _fixed("usw_rcv_rate", 6.0e-4),
])

_study("CSL_study", "csl", "U_csl", [
    _fixed("K_th", 8, "int"),
    _fixed("N_proc", 10, "int"),
    _manual("cis_fail_rate", [2.0e-4, 2.0e-5, 2.0e-6, 2.0e-7, 2.0e-8]),
    _fixed("cis_rcv_rate", 0.002),
    _fixed("csw_fail_rate", 2.0e-5),
    _fixed("csw_rcv_rate", 0.006),
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("geo_fail_rate", [9.0e-8, 9.0e-9, 9.0e-10, 9.0e-11, 9.0e-12]),
    _fixed("geo_rcv_rate", 7.0e-6),
    _fixed("hw_cvg", 0.97),
    _fixed("hw_fail_rate", 1.0e-8),
    _fixed("hw_rcv_rate", 2.0e-5),
    _fixed("link_fail_rate", 1.0e-6),
    _fixed("link_rcv_rate", 0.01),
    _fixed("man_fail_rate", 1.0e-6),
    _fixed("man_rcv_rate", 9.0e-5),
    _fixed("sw_cvg", 0.9),
    _fixed("sw_fail_rate", 2.0e-20),
    _fixed("sw_rcv_rate", 0.006),
    _fixed("uhw_rcv_rate", 6.0e-4),
    _fixed("usw_rcv_rate", 6.0e-4),
])

_study("CSS_study", "css", "U_css", [
    _fixed("K_th", 8, "int"),
    _fixed("N_proc", 10, "int"),
    _manual("cis_fail_rate", [2.0e-4, 2.0e-5, 2.0e-6, 2.0e-7, 2.0e-8]),
    _fixed("cis_rcv_rate", 0.002),
    _fixed("csw_fail_rate", 2.0e-5),
    _fixed("csw_rcv_rate", 0.006),
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("geo_fail_rate", [9.0e-8, 9.0e-9, 9.0e-10, 9.0e-11, 9.0e-12]),
    _fixed("geo_rcv_rate", 7.0e-6),
    _fixed("hw_cvg", 0.97),
    _fixed("hw_fail_rate", 1.0e-8),
    _fixed("hw_rcv_rate", 2.0e-5),
    _fixed("man_fail_rate", 1.0e-6),
    _fixed("man_rcv_rate", 9.0e-5),
    _fixed("sw_cvg", 0.9),
    _fixed("sw_fail_rate", 2.0e-20),
    _fixed("sw_rcv_rate", 0.006),
    _fixed("uhw_rcv_rate", 6.0e-4),
    _fixed("usw_rcv_rate", 6.0e-4),
])

_study("C_study", "controller", "U_c", [
    _fixed("K_th", 8, "int"),
    _fixed("N_proc", 10, "int"),
    _fixed("hw_cvg", 0.97),
    _fixed("hw_fail_rate", 1.0e-8),
    _fixed("hw_rcv_rate", 2.0e-5),
    _fixed("man_fail_rate", 1.0e-6),
    _fixed("man_rcv_rate", 9.0e-5),
    _fixed("sw_cvg", 0.9),
    _fixed("sw_fail_rate", 2.0e-5),
    _fixed("sw_rcv_rate", 0.006),
    _fixed("uhw_rcv_rate", 6.0e-4),
    _fixed("usw_rcv_rate", 6.0e-4),
])

_study("LL_study", "ll", "U_ll", [
    _manual("geo_fail_rate", [1.0e-5, 1.0e-6, 1.0e-7, 1.0e-8, 1.0e-9]),
    _fixed("geo_rcv_rate", 0.01),
    _fixed("link_fail_rate", 1.0e-6),
    _fixed("link_rcv_rate", 0.01),
    _manual("phy_fail_rate", [1.0e-5, 1.0e-6, 1.0e-7, 1.0e-8, 1.0e-9]),
    _fixed("phy_rcv_rate", 0.003),
])

_study("RLL_study", "rll", "U_rll", [
    _fixed("chw_cvg", 0.97),
    _fixed("chw_fail_rate", 9.0e-9),
    _fixed("chw_rcv_rate", 2.0e-5),
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("geo_fail_rate", [9.0e-8, 9.0e-9, 9.0e-10, 9.0e-11, 9.0e-12]),
    _fixed("geo_rcv_rate", 7.0e-6),
    _fixed("link_fail_rate", 1.0e-6),
    _fixed("link_rcv_rate", 0.01),
    _fixed("man_fail_rate", 5.0e-7),
    _fixed("man_rcv_rate", 9.0e-5),
    _manual("phy_fail_rate", [1.0e-5, 1.0e-6, 1.0e-7, 1.0e-8, 1.0e-9]),
    _fixed("phy_rcv_rate", 0.003),
    _fixed("sw_fail_rate", 2.0e-6),
    _fixed("sw_rcv_rate", 0.006),
    _fixed("uchw_rcv_rate", 3.0e-5),
])

_study("RRL_study", "rrl", "U_rrl", [
    _fixed("chw_cvg", 0.97),
    _fixed("chw_fail_rate", 9.0e-9),
    _fixed("chw_rcv_rate", 2.0e-5),
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("geo_fail_rate", [9.0e-8, 9.0e-9, 9.0e-10, 9.0e-11, 9.0e-12]),
    _fixed("geo_rcv_rate", 7.0e-6),
    _manual("heq_cvg", [0.98, 0.99, 1.0]),
    _fixed("link_fail_rate", 1.0e-6),
    _fixed("link_rcv_rate", 0.01),
    _fixed("man_fail_rate", 5.0e-7),
    _fixed("man_rcv_rate", 9.0e-5),
    _fixed("sw_fail_rate", 2.0e-6),
    _fixed("sw_rcv_rate", 0.006),
    _fixed("uchw_rcv_rate", 3.0e-5),
])

_study("RRR_study", "rrr", "U_rrr", [
    _fixed("chw_cvg", 0.97),
    _fixed("chw_fail_rate", 9.0e-9),
    _fixed("chw_rcv_rate", 2.0e-5),
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("heq_cvg", [0.98, 0.99, 1.0]),
    _fixed("man_fail_rate", 5.0e-7),
    _fixed("man_rcv_rate", 9.0e-5),
    _fixed("sw_fail_rate", 2.0e-6),
    _fixed("sw_rcv_rate", 0.006),
    _fixed("uchw_rcv_rate", 3.0e-5),
])

_study("RR_study", "rr", "U_rr", [
    _fixed("chw_cvg", 0.97),
    _fixed("chw_fail_rate", 9.0e-9),
    _fixed("chw_rcv_rate", 2.0e-5),
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("geo_fail_rate", [9.0e-8, 9.0e-9, 9.0e-10, 9.0e-11, 9.0e-12]),
    _fixed("geo_rcv_rate", 7.0e-6),
    _manual("man_fail_rate", [5.0e-5, 5.0e-6, 5.0e-7, 5.0e-8, 5.0e-9]),
    _fixed("man_rcv_rate", 9.0e-5),
    _fixed("sw_fail_rate", 2.0e-6),
    _fixed("sw_rcv_rate", 0.006),
    _manual("tmi_cvg", [0.9, 0.93, 0.95, 0.97, 1.0]),
    _fixed("uchw_rcv_rate", 3.0e-5),
])

_study("SLL_study", "sll", "U_sll", [
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("geo_fail_rate", [9.0e-8, 9.0e-9, 9.0e-10, 9.0e-11, 9.0e-12]),
    _fixed("geo_rcv_rate", 7.0e-6),
    _fixed("link_fail_rate", 1.0e-6),
    _fixed("link_rcv_rate", 0.01),
    _manual("phy_fail_rate", [1.0e-5, 1.0e-6, 1.0e-7, 1.0e-8, 1.0e-9]),
    _fixed("phy_rcv_rate", 0.003),
    _fixed("sw_fail_rate", 2.0e-20),
    _fixed("sw_rcv_rate", 0.006),
])

_study("SSL_study", "ssl", "U_ssl", [
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("geo_fail_rate", [9.0e-8, 9.0e-9, 9.0e-10, 9.0e-11, 9.0e-12]),
    _fixed("geo_rcv_rate", 7.0e-6),
    _manual("heq_cvg", [0.98, 0.99, 1.0]),
    _fixed("link_fail_rate", 1.0e-6),
    _fixed("link_rcv_rate", 0.01),
    _fixed("sw_fail_rate", 2.0e-20),
    _fixed("sw_rcv_rate", 0.006),
])

_study("SSS_study", "sss", "U_sss", [
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("heq_cvg", [0.98, 0.99, 1.0]),
    _fixed("sw_fail_rate", 2.0e-20),
    _fixed("sw_rcv_rate", 0.006),
])

_study("SS_study", "ss", "U_ss", [
    _fixed("fhw_fail_rate", 9.0e-9),
    _fixed("fhw_rcv_rate", 2.0e-5),
    _fixed("fhwt_fail_rate", 2.0e-6),
    _fixed("fhwt_rcv_rate", 0.006),
    _manual("geo_fail_rate", [9.0e-8, 9.0e-9, 9.0e-10, 9.0e-11, 9.0e-12]),
    _fixed("geo_rcv_rate", 7.0e-6),
    _manual("mis_fail_rate", [5.0e-6, 5.0e-7, 5.0e-8, 5.0e-9, 5.0e-10]),
    _fixed("mis_rcv_rate", 9.0e-5),
    _fixed("sw_fail_rate", 2.0e-20),
    _fixed("sw_rcv_rate", 0.006),
    _manual("tmi_cvg", [0.9, 0.93, 0.95, 0.97, 1.0]),
])


# ---------------------------------------------------------------------------
# Text round trip

def format_study(study: Study) -> str:
    lines = [f"study {study.name}", f"model {study.model}",
             f"reward {study.reward}"]
    for v in study.variables:
        values = " ".join(repr(x) for x in v.values)
        lines.append(f"{v.kind} {v.name} {v.type} {values}")
    return "\n".join(lines) + "\n"


def parse_study(text: str, source: str = "<study>") -> Study:
    name = model = reward = None
    variables: list[StudyVar] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        key = fields[0]
        try:
            if key == "study":
                name = fields[1]
            elif key == "model":
                model = fields[1]
            elif key == "reward":
                reward = fields[1]
            elif key in ("fixed", "manual"):
                vname, vtype = fields[1], fields[2]
                if vtype not in ("int", "double"):
                    raise ValueError(f"bad type '{vtype}'")
                cast = int if vtype == "int" else float
                values = tuple(cast(x) for x in fields[3:])
                if not values:
                    raise ValueError("no values")
                if key == "fixed" and len(values) != 1:
                    raise ValueError("fixed variables take one value")
                variables.append(StudyVar(vname, vtype, key, values))
            else:
                raise ValueError(f"unknown directive '{key}'")
        except (IndexError, ValueError) as exc:
            raise SanError(f"{source}:{lineno}: {exc}") from None
    if not (name and model and reward):
        raise SanError(f"{source}: study/model/reward headers are required")
    return Study(name, model, reward, tuple(variables))
