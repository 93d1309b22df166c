"""Catalog of the backbone availability models.

Sixteen models: four network elements (link, router, switch, controller)
and twelve minimal-cut-set compositions (rr, rrl, rrr, rll for the
traditional network; ss, ssl, sss, sll, ll for the SDN forwarding part;
cc, css, csl for the SDN control part).  `rrl` is the two-routers-plus-
link model that the source listings label "rl"; that name is kept as an
alias.  Each model has an unavailability reward and a canonical study
supplying default parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..core import ParamError, RewardVariable, SanError, SanModel
from . import builders, cutsets
from .studies import STUDIES, Study, StudyVar, format_study, parse_study

__all__ = ["CATALOG", "ALIASES", "Study", "StudyVar", "STUDIES",
           "build", "reward", "schema", "default_params", "canonical_study",
           "model_ids", "study_names", "study", "format_study", "parse_study"]


@dataclass(frozen=True)
class CatalogEntry:
    builder: Callable[..., SanModel]
    schema: tuple[str, ...]
    reward: RewardVariable
    study: str                      # canonical study supplying defaults


CATALOG: dict[str, CatalogEntry] = {
    "link": CatalogEntry(
        builders.build_link, builders.LINK_PARAMS,
        RewardVariable("U_link", "Failed_L == 1"), "LL_study"),
    "router": CatalogEntry(
        builders.build_router, builders.ROUTER_PARAMS,
        RewardVariable("U_router", "Working == 0 and spare_CHW == 0"),
        "RLL_study"),
    "switch": CatalogEntry(
        builders.build_switch, builders.SWITCH_PARAMS,
        RewardVariable("U_switch", "Working == 0"), "SS_study"),
    "controller": CatalogEntry(
        builders.build_controller, builders.CONTROLLER_PARAMS,
        RewardVariable("U_c", "Active_proc < K_th or failed_MAN == 1 or "
                              "sys_down == 1 or sw_sys_down == 1"),
        "C_study"),
    "ll": CatalogEntry(
        cutsets.build_ll, cutsets.LL_PARAMS,
        RewardVariable("U_ll", "Working_L1 == 0 and Working_L2 == 0"),
        "LL_study"),
    "rr": CatalogEntry(
        cutsets.build_rr, cutsets.RR_PARAMS,
        RewardVariable("U_rr", "Working_S1 == 0 and Working_S2 == 0 and "
                               "spare_CHW_S1 == 0 and spare_CHW_S2 == 0"),
        "RR_study"),
    "rrl": CatalogEntry(
        cutsets.build_rrl, cutsets.RRL_PARAMS,
        RewardVariable("U_rrl", "Working_S1 == 0 and Working_S2 == 0 and "
                                "Working_L == 0 and spare_CHW_S1 == 0 and "
                                "spare_CHW_S2 == 0"),
        "RRL_study"),
    "rrr": CatalogEntry(
        cutsets.build_rrr, cutsets.RRR_PARAMS,
        RewardVariable("U_rrr", "Working_S1 == 0 and Working_S2 == 0 and "
                                "Working_S3 == 0 and spare_CHW_S1 == 0 and "
                                "spare_CHW_S2 == 0 and spare_CHW_S3 == 0"),
        "RRR_study"),
    "rll": CatalogEntry(
        cutsets.build_rll, cutsets.RLL_PARAMS,
        RewardVariable("U_rll", "Working_L1 == 0 and Working_L2 == 0 and "
                                "Working_R == 0 and spare_CHW == 0"),
        "RLL_study"),
    "ss": CatalogEntry(
        cutsets.build_ss, cutsets.SS_PARAMS,
        RewardVariable("U_ss", "Working_S1 == 0 and Working_S2 == 0"),
        "SS_study"),
    "ssl": CatalogEntry(
        cutsets.build_ssl, cutsets.SSL_PARAMS,
        RewardVariable("U_ssl", "Working_S1 == 0 and Working_S2 == 0 and "
                                "Working_L == 0"),
        "SSL_study"),
    "sss": CatalogEntry(
        cutsets.build_sss, cutsets.SSS_PARAMS,
        RewardVariable("U_sss", "Working_S1 == 0 and Working_S2 == 0 and "
                                "Working_S3 == 0"),
        "SSS_study"),
    "sll": CatalogEntry(
        cutsets.build_sll, cutsets.SLL_PARAMS,
        RewardVariable("U_sll", "Working_L1 == 0 and Working_L2 == 0 and "
                                "Working_S == 0"),
        "SLL_study"),
    "cc": CatalogEntry(
        cutsets.build_cc, cutsets.CC_PARAMS,
        RewardVariable("U_cc",
                       "((Active_proc_C1 < K_th or failed_MAN_C1 == 1 or "
                       "sys_down_C1 == 1 or sw_sys_down_C1 == 1) and "
                       "(Active_proc_C2 < K_th or failed_MAN_C2 == 1 or "
                       "sys_down_C2 == 1 or sw_sys_down_C2 == 1)) or "
                       "MIS == 1"),
        "CC_study"),
    "css": CatalogEntry(
        cutsets.build_css, cutsets.CSS_PARAMS,
        RewardVariable("U_css",
                       "Working_S1 == 0 and Working_S2 == 0 and "
                       "(Active_proc < K_th or failed_MAN == 1 or "
                       "sys_down == 1 or sw_sys_down == 1 or CIS == 1 or "
                       "CIS_S1 == 1 or CIS_S2 == 1)"),
        "CSS_study"),
    "csl": CatalogEntry(
        cutsets.build_csl, cutsets.CSL_PARAMS,
        RewardVariable("U_csl",
                       "Working_S == 0 and Working_L == 0 and "
                       "(Active_proc < K_th or failed_MAN == 1 or "
                       "sys_down == 1 or sw_sys_down == 1 or CIS == 1)"),
        "CSL_study"),
}

# the source listings name the two-routers-plus-link model "rl"
ALIASES = {"rl": "rrl"}


def _entry(model_id: str) -> CatalogEntry:
    model_id = ALIASES.get(model_id, model_id)
    try:
        return CATALOG[model_id]
    except KeyError:
        raise SanError(f"unknown model '{model_id}'; known: "
                       f"{', '.join(sorted(CATALOG))}") from None


def model_ids() -> list[str]:
    return list(CATALOG)


def study_names() -> list[str]:
    return list(STUDIES)


def study(name: str) -> Study:
    try:
        return STUDIES[name]
    except KeyError:
        raise SanError(f"unknown study '{name}'; known: "
                       f"{', '.join(STUDIES)}") from None


def schema(model_id: str) -> tuple[str, ...]:
    return _entry(model_id).schema


def reward(model_id: str) -> RewardVariable:
    return _entry(model_id).reward


def canonical_study(model_id: str) -> str:
    return _entry(model_id).study


def build(model_id: str, params, corrected: bool = False) -> SanModel:
    """Construct a catalog model for the given parameter set."""
    entry = _entry(model_id)
    missing = [k for k in entry.schema if k not in params]
    if missing:
        raise ParamError(f"model '{model_id}': missing parameters "
                         f"{', '.join(missing)}")
    return entry.builder(params, corrected=corrected)


def default_params(model_id: str, study_name: str | None = None) -> dict:
    """Parameters for a model from a study: fixed values, first Manual value.

    Studies whose variable set is wider than the model schema (the element
    models draw from their cut-set studies) are restricted to the schema.
    """
    entry = _entry(model_id)
    st = study(study_name or entry.study)
    assignment = st.defaults()
    missing = [k for k in entry.schema if k not in assignment]
    if missing:
        raise ParamError(f"study '{st.name}' does not cover parameters "
                         f"{', '.join(missing)} of model '{model_id}'")
    return {k: assignment[k] for k in entry.schema}
