"""Command-line entry point.

Subcommands: run-study (grid experiments to CSV), solve (single model,
either backend), validate (catalog structure checks), enumerate-cuts
(structural minimal cut sets), list (models and studies), export-study
(editable study file).  Exit codes: 0 success, 1 usage error, 2
model/semantics error, 3 convergence failure in at least one result row.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import catalog, structural
from .core import SanError, validate_model
from .ctmc import expected_reward, explore, steady_state
from .sim import SimConfig, run_estimate

USAGE_ERROR, MODEL_ERROR, CONVERGENCE_ERROR = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE_ERROR)


@dataclass
class ResultRow:
    study: str
    model: str
    backend: str
    point: dict            # ranged-variable assignment for this row
    mean: float
    ci_low: float
    ci_high: float
    replications: int
    converged: bool
    wall_time: float       # kept out of the CSV so output is byte-stable


def _fmt(x: float) -> str:
    return f"{x:.10e}"


def rows_to_csv(rows: list[ResultRow], var_names: list[str]) -> str:
    header = ["study", "model", "backend"] + var_names + \
             ["mean", "ci_low", "ci_high", "replications", "converged"]
    lines = [",".join(header)]
    for r in rows:
        cells = [r.study, r.model, r.backend]
        cells += [_fmt(float(r.point[v])) for v in var_names]
        cells += [_fmt(r.mean), _fmt(r.ci_low), _fmt(r.ci_high),
                  str(r.replications), "true" if r.converged else "false"]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def rows_to_tidy_csv(rows: list[ResultRow], var_names: list[str]) -> str:
    """Long format: one line per (row, ranged variable)."""
    lines = ["study,model,backend,point,variable,value,mean,ci_low,ci_high,converged"]
    for idx, r in enumerate(rows):
        for v in var_names:
            lines.append(",".join([
                r.study, r.model, r.backend, str(idx), v,
                _fmt(float(r.point[v])), _fmt(r.mean), _fmt(r.ci_low),
                _fmt(r.ci_high), "true" if r.converged else "false"]))
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str):
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence((seed, index)).generate_state(1)[0])


def _compute_row(study, point, params, backend, cfg_fields, state_cap,
                 corrected, point_index):
    """One grid point on one backend; returns a ResultRow (never raises
    for per-row model errors, which yield a failed row instead)."""
    t0 = time.monotonic()
    model_id = study.model
    reward = catalog.reward(model_id)
    try:
        model = catalog.build(model_id, params, corrected=corrected)
        if backend == "ctmc":
            space, gen = explore(model, params, state_cap)
            value = expected_reward(steady_state(gen), space, reward, params)
            return ResultRow(study.name, model_id, "ctmc", point, value,
                             value, value, 0, True, time.monotonic() - t0)
        cfg = SimConfig(**dict(cfg_fields, seed=_point_seed(cfg_fields["seed"],
                                                            point_index)))
        est = run_estimate(model, params, reward, cfg)
        return ResultRow(study.name, model_id, "sim", point, est.mean,
                         est.ci_low, est.ci_high, est.replications,
                         est.converged, time.monotonic() - t0)
    except SanError as exc:
        print(f"warning: {study.name} point {point} [{backend}]: {exc}",
              file=sys.stderr)
        nan = float("nan")
        return ResultRow(study.name, model_id, backend, point, nan, nan,
                         nan, 0, False, time.monotonic() - t0)


def run_study(study, backend: str, cfg: SimConfig, state_cap: int = 1_000_000,
              workers: int = 1, corrected: bool = False) -> list[ResultRow]:
    """All grid points of a study on the requested backend(s), rows in
    grid-then-backend order."""
    backends = ("ctmc", "sim") if backend == "both" else (backend,)
    cfg_fields = {"t_end": cfg.t_end, "confidence_level": cfg.confidence_level,
                  "relative_half_width": cfg.relative_half_width,
                  "min_replications": cfg.min_replications,
                  "max_replications": cfg.max_replications, "seed": cfg.seed}
    tasks = []
    for idx, (point, params) in enumerate(study.grid()):
        for bk in backends:
            tasks.append((study, point, params, bk, cfg_fields, state_cap,
                          corrected, idx))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_compute_row_star, tasks))
    else:
        rows = [_compute_row(*t) for t in tasks]
    return rows


def _compute_row_star(args):
    return _compute_row(*args)


# ---------------------------------------------------------------------------
# Subcommands

def _sim_config(args, seed_default=12345) -> SimConfig:
    return SimConfig(t_end=args.t_end, relative_half_width=args.rel_ci,
                     confidence_level=args.confidence,
                     max_replications=args.max_reps,
                     seed=args.seed if args.seed is not None else seed_default)


def _add_sim_flags(p):
    p.add_argument("--seed", type=int, default=None, help="base RNG seed")
    p.add_argument("--t-end", type=float, default=1e7, dest="t_end",
                   help="simulated horizon per replication")
    p.add_argument("--rel-ci", type=float, default=0.1, dest="rel_ci",
                   help="target relative half-width")
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--max-reps", type=int, default=100_000, dest="max_reps")


def cmd_run_study(args) -> int:
    if args.study_file:
        with open(args.study_file, encoding="utf-8") as fh:
            study = catalog.parse_study(fh.read(), args.study_file)
    else:
        study = catalog.study(args.study)
    cfg = _sim_config(args)
    rows = run_study(study, args.backend, cfg, state_cap=args.state_cap,
                     workers=args.workers, corrected=args.corrected)
    var_names = [v.name for v in study.manual_vars()]
    csv_text = rows_to_csv(rows, var_names)
    if args.out:
        write_atomic(args.out, csv_text)
        print(f"{len(rows)} rows -> {args.out}")
    else:
        sys.stdout.write(csv_text)
    if args.tidy_out:
        write_atomic(args.tidy_out, rows_to_tidy_csv(rows, var_names))
    bad = [r for r in rows if not (r.converged or r.backend == "ctmc")]
    failed = [r for r in rows if r.mean != r.mean]
    return CONVERGENCE_ERROR if (bad or failed) else 0


def cmd_solve(args) -> int:
    params = dict(catalog.default_params(args.model, args.study))
    for item in args.set or ():
        if "=" not in item:
            raise SanError(f"--set expects name=value, got '{item}'")
        name, _, raw = item.partition("=")
        if name not in catalog.schema(args.model):
            raise SanError(f"model '{args.model}' has no parameter '{name}'")
        params[name] = float(raw)
    reward = catalog.reward(args.model)
    model = catalog.build(args.model, params, corrected=args.corrected)
    rows = []
    backends = ("ctmc", "sim") if args.backend == "both" else (args.backend,)
    for bk in backends:
        t0 = time.monotonic()
        if bk == "ctmc":
            space, gen = explore(model, params, args.state_cap)
            value = expected_reward(steady_state(gen), space, reward, params)
            rows.append(ResultRow("-", args.model, "ctmc", {}, value, value,
                                  value, 0, True, time.monotonic() - t0))
        else:
            est = run_estimate(model, params, reward, _sim_config(args))
            rows.append(ResultRow("-", args.model, "sim", {}, est.mean,
                                  est.ci_low, est.ci_high, est.replications,
                                  est.converged, time.monotonic() - t0))
    csv_text = rows_to_csv(rows, [])
    if args.out:
        write_atomic(args.out, csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0 if all(r.converged or r.backend == "ctmc" for r in rows) \
        else CONVERGENCE_ERROR


def cmd_validate(args) -> int:
    ids = [args.model] if args.model else catalog.model_ids()
    bad = False
    for mid in ids:
        params = catalog.default_params(mid)
        model = catalog.build(mid, params)
        diags = validate_model(model)
        status = "ok" if not diags else f"{len(diags)} problem(s)"
        print(f"{mid}: {status}")
        for d in diags:
            print(f"  - {d}")
            bad = True
    return MODEL_ERROR if bad else 0


def cmd_enumerate_cuts(args) -> int:
    topo = structural.load_topology(args.topology)
    cuts = structural.enumerate_min_cutsets(topo, args.variant, args.max_card)
    text = structural.cutsets_to_csv(cuts)
    if args.out:
        write_atomic(args.out, text)
        print(f"{len(cuts)} cut sets -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_list(args) -> int:
    print("models:")
    for mid in catalog.model_ids():
        entry_schema = catalog.schema(mid)
        print(f"  {mid:11s} reward={catalog.reward(mid).id:8s} "
              f"study={catalog.canonical_study(mid):10s} "
              f"params={len(entry_schema)}")
    print("studies:")
    for name in catalog.study_names():
        st = catalog.study(name)
        ranged = ",".join(v.name for v in st.manual_vars()) or "-"
        print(f"  {name:10s} model={st.model:11s} grid={st.grid_size():4d} "
              f"ranged={ranged}")
    return 0


def cmd_export_study(args) -> int:
    st = catalog.study(args.study)
    text = catalog.format_study(st)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="san-avail",
                     description="Backbone availability analysis with "
                                 "stochastic activity networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run-study", help="run a parameter study to CSV")
    p.add_argument("--study", help="built-in study name")
    p.add_argument("--study-file", help="study definition file")
    p.add_argument("--backend", choices=("sim", "ctmc", "both"),
                   default="ctmc")
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.add_argument("--tidy-out", dest="tidy_out",
                   help="also write a long-format CSV for plotting")
    p.add_argument("--workers", type=int,
                   default=max(1, os.cpu_count() or 1))
    p.add_argument("--state-cap", type=int, default=1_000_000,
                   dest="state_cap")
    p.add_argument("--corrected", action="store_true",
                   help="rate control-hardware recovery with chw_rcv_rate")
    _add_sim_flags(p)
    p.set_defaults(func=cmd_run_study)

    p = sub.add_parser("solve", help="solve one model at one parameter point")
    p.add_argument("--model", required=True)
    p.add_argument("--study", help="study supplying defaults")
    p.add_argument("--set", action="append", metavar="NAME=VALUE")
    p.add_argument("--backend", choices=("sim", "ctmc", "both"),
                   default="ctmc")
    p.add_argument("--out")
    p.add_argument("--state-cap", type=int, default=1_000_000,
                   dest="state_cap")
    p.add_argument("--corrected", action="store_true")
    _add_sim_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="check catalog model structure")
    p.add_argument("--model")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate-cuts", help="minimal cut sets of a topology")
    p.add_argument("--topology", help="topology file (default: built-in backbone)")
    p.add_argument("--variant", choices=("tn", "fsdn", "csdn"), required=True)
    p.add_argument("--max-card", type=int, default=3, dest="max_card")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate_cuts)

    p = sub.add_parser("list", help="list models and studies")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("export-study", help="write a study as an editable file")
    p.add_argument("--study", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_study)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run-study" and not (args.study or args.study_file):
        parser.error("run-study requires --study or --study-file")
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MODEL_ERROR


if __name__ == "__main__":
    sys.exit(main())
