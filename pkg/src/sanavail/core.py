"""Stochastic activity network (SAN) core.

A model is a set of places holding non-negative token counts, connected by
exponential timed activities.  An activity is enabled when every input arc
place holds enough tokens, every attached input-gate predicate is true, and
its rate evaluates to a positive number in the current marking.  On
completion, one of its cases is selected according to marking-dependent
probabilities; tokens then move in a fixed order: input arcs, input-gate
functions, output arcs of the chosen case, output gates of the chosen case.

Rates, probabilities and gate bodies are written as small Python expression
strings over place names and global parameter names (arithmetic,
comparisons, boolean operators and conditional expressions only).  They are
compiled once per model into index-based closures, so the hot loops in the
state-space explorer and the simulator stay cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence


class SanError(Exception):
    """Base class for modelling errors."""


class ExpressionError(SanError):
    """An expression string is malformed or references an unknown name."""


class ParamError(SanError):
    """A required global parameter is missing."""


class MarkingError(SanError):
    """A marking does not match the model's place set."""


class SemanticsError(SanError):
    """A firing rule was violated (disabled activity, negative tokens)."""


class CaseNormalizationError(SanError):
    """Case probabilities fall outside [0,1] or do not sum to one."""


# ---------------------------------------------------------------------------
# Model elements

@dataclass(frozen=True)
class Place:
    name: str
    initial: int = 0


@dataclass(frozen=True)
class InputArc:
    place: str
    weight: int = 1


@dataclass(frozen=True)
class OutputArc:
    place: str
    weight: int = 1


@dataclass(frozen=True)
class InputGate:
    """Enabling predicate plus a token mutation applied on firing."""

    name: str
    predicate: str
    function: str = ""


@dataclass(frozen=True)
class OutputGate:
    name: str
    function: str


@dataclass(frozen=True)
class Case:
    """One completion branch: probability expression and its effects."""

    probability: object = 1.0  # expression string or constant
    arcs: tuple[OutputArc, ...] = ()
    gates: tuple[OutputGate, ...] = ()


@dataclass(frozen=True)
class Activity:
    """Exponential timed activity.

    `rate` may depend on the marking; a rate of zero means disabled.  An
    activity without an explicit case distribution has a single implicit
    case holding its output arcs and gates.
    """

    name: str
    rate: object  # expression string or constant
    input_arcs: tuple[InputArc, ...] = ()
    input_gates: tuple[InputGate, ...] = ()
    cases: tuple[Case, ...] = (Case(),)


@dataclass(frozen=True)
class RewardVariable:
    """Marking predicate defining the 'unavailable' states."""

    id: str
    predicate: str


# ---------------------------------------------------------------------------
# Expression compilation

_IDENT = re.compile(r"\b[A-Za-z_]\w*\b")
_KEYWORDS = frozenset({"if", "else", "and", "or", "not", "True", "False"})
_STMT = re.compile(r"^(\w+)\s*(\+=|-=|=)\s*(.+)$")


def _rewrite(src: str, places: Mapping[str, int], params: Mapping[str, int],
             where: str) -> str:
    def repl(match: re.Match) -> str:
        name = match.group(0)
        if name in _KEYWORDS:
            return name
        if name in places:
            return f"m[{places[name]}]"
        if name in params:
            return f"p[{params[name]}]"
        raise ExpressionError(f"{where}: unknown name '{name}' "
                              "(neither a place nor a parameter)")
    return _IDENT.sub(repl, src)


def compile_expr(src, places, params, where: str) -> Callable:
    """Compile an expression into f(marking_seq, param_tuple) -> value."""
    if isinstance(src, (int, float)):
        value = float(src)
        return lambda m, p: value
    body = _rewrite(src, places, params, where)
    text = f"def _f(m, p):\n    return ({body})\n"
    ns: dict = {}
    try:
        exec(compile(text, f"<{where}>", "exec"), {"__builtins__": {}}, ns)
    except SyntaxError as exc:
        raise ExpressionError(f"{where}: bad expression {src!r}: {exc}") from None
    return ns["_f"]


def compile_stmts(src: str, places, params, where: str) -> Callable | None:
    """Compile a gate body (assignments to places) into g(marking_list, p)."""
    stmts = [s.strip() for s in re.split(r"[;\n]", src) if s.strip()]
    if not stmts:
        return None
    lines = []
    for s in stmts:
        match = _STMT.match(s)
        if not match:
            raise ExpressionError(f"{where}: bad statement {s!r}")
        target, op, rhs = match.groups()
        if target not in places:
            raise ExpressionError(f"{where}: assignment to unknown place '{target}'")
        lines.append(f"    m[{places[target]}] {op} ({_rewrite(rhs, places, params, where)})")
    text = "def _g(m, p):\n" + "\n".join(lines) + "\n"
    ns: dict = {}
    try:
        exec(compile(text, f"<{where}>", "exec"), {"__builtins__": {}}, ns)
    except SyntaxError as exc:
        raise ExpressionError(f"{where}: bad gate body {src!r}: {exc}") from None
    return ns["_g"]


# ---------------------------------------------------------------------------
# Compiled model internals

class _CompiledActivity:
    __slots__ = ("name", "index", "arc_items", "gate_preds", "gate_fns",
                 "rate_fn", "prob_fns", "case_effects", "n_cases",
                 "_ig_names", "_og_names")

    def __init__(self, name, index, arc_items, gate_preds, gate_fns,
                 rate_fn, prob_fns, case_effects):
        self.name = name
        self.index = index
        self.arc_items = arc_items          # ((place_idx, weight), ...)
        self.gate_preds = gate_preds
        self.gate_fns = gate_fns
        self.rate_fn = rate_fn
        self.prob_fns = prob_fns
        self.case_effects = case_effects    # per case: (out_items, out_gate_fns)
        self.n_cases = len(prob_fns)

    def enabled_rate(self, m, p) -> float:
        for i, w in self.arc_items:
            if m[i] < w:
                return 0.0
        for pred in self.gate_preds:
            if not pred(m, p):
                return 0.0
        return self.rate_fn(m, p)

    def case_probs(self, m, p) -> list[float]:
        probs = [fn(m, p) for fn in self.prob_fns]
        total = 0.0
        for q in probs:
            if q < -1e-12 or q > 1.0 + 1e-12:
                raise CaseNormalizationError(
                    f"activity '{self.name}': case probability {q!r} outside "
                    f"[0,1] at marking {tuple(m)}")
            total += q
        if abs(total - 1.0) > 1e-12:
            raise CaseNormalizationError(
                f"activity '{self.name}': case probabilities sum to {total!r} "
                f"at marking {tuple(m)}")
        return probs

    def fire(self, m, p, case: int) -> tuple:
        mm = list(m)
        for i, w in self.arc_items:
            mm[i] -= w
        for fn in self.gate_fns:
            fn(mm, p)
        out_items, out_gates = self.case_effects[case]
        for i, w in out_items:
            mm[i] += w
        for fn in out_gates:
            fn(mm, p)
        if min(mm) < 0:
            self._diagnose_fire(m, p, case)
        return tuple(mm)

    def _diagnose_fire(self, m, p, case):
        # Slow path, only reached on a negative-token violation: replay the
        # firing step by step to name the offending arc or gate.
        mm = list(m)
        for i, w in self.arc_items:
            mm[i] -= w
            if mm[i] < 0:
                raise SemanticsError(
                    f"activity '{self.name}': input arc from place index {i} "
                    f"drives tokens negative at marking {tuple(m)}")
        for gate, fn in zip(self._input_gate_names(), self.gate_fns):
            fn(mm, p)
            if min(mm) < 0:
                raise SemanticsError(
                    f"activity '{self.name}': input gate '{gate}' drives "
                    f"tokens negative at marking {tuple(m)}")
        out_items, out_gates = self.case_effects[case]
        for i, w in out_items:
            mm[i] += w
        for gate, fn in zip(self._output_gate_names(case), out_gates):
            fn(mm, p)
            if min(mm) < 0:
                raise SemanticsError(
                    f"activity '{self.name}': output gate '{gate}' of case "
                    f"{case} drives tokens negative at marking {tuple(m)}")
        raise SemanticsError(
            f"activity '{self.name}': firing case {case} drives tokens "
            f"negative at marking {tuple(m)}")

    def _input_gate_names(self):
        return self._ig_names

    def _output_gate_names(self, case):
        return self._og_names[case]


class _CompiledModel:
    def __init__(self, model: "SanModel"):
        places = {pl.name: k for k, pl in enumerate(model.places)}
        params = {name: k for k, name in enumerate(model.params)}
        self.place_index = places
        self.param_index = params
        self.place_names = tuple(pl.name for pl in model.places)
        self.initial = tuple(int(pl.initial) for pl in model.places)
        self.activities: list[_CompiledActivity] = []
        self.activity_index: dict[str, int] = {}
        for k, act in enumerate(model.activities):
            where = f"{model.name}.{act.name}"
            arc_items = tuple((places[a.place], a.weight) for a in act.input_arcs)
            gate_preds = [compile_expr(g.predicate, places, params,
                                       f"{where}.{g.name}.predicate")
                          for g in act.input_gates]
            gate_fns = []
            ig_names = []
            for g in act.input_gates:
                fn = compile_stmts(g.function, places, params,
                                   f"{where}.{g.name}.function")
                if fn is not None:
                    gate_fns.append(fn)
                    ig_names.append(g.name)
            rate_fn = compile_expr(act.rate, places, params, f"{where}.rate")
            prob_fns = [compile_expr(c.probability, places, params,
                                     f"{where}.case{ci}.probability")
                        for ci, c in enumerate(act.cases)]
            effects = []
            og_names = []
            for ci, c in enumerate(act.cases):
                out_items = tuple((places[a.place], a.weight) for a in c.arcs)
                out_gates = []
                names = []
                for g in c.gates:
                    fn = compile_stmts(g.function, places, params,
                                       f"{where}.case{ci}.{g.name}")
                    if fn is not None:
                        out_gates.append(fn)
                        names.append(g.name)
                effects.append((out_items, out_gates))
                og_names.append(names)
            ca = _CompiledActivity(act.name, k, arc_items, gate_preds,
                                   gate_fns, rate_fn, prob_fns, effects)
            ca._ig_names = ig_names
            ca._og_names = og_names
            self.activities.append(ca)
            self.activity_index[act.name] = k

    def pack_params(self, values: Mapping) -> tuple:
        missing = [name for name in self.param_index if name not in values]
        if missing:
            raise ParamError(f"missing parameters: {', '.join(sorted(missing))}")
        out = [0.0] * len(self.param_index)
        for name, k in self.param_index.items():
            out[k] = values[name]
        return tuple(out)

    def pack_marking(self, marking: Mapping[str, int]) -> tuple:
        if set(marking) != set(self.place_index):
            unknown = set(marking) - set(self.place_index)
            absent = set(self.place_index) - set(marking)
            parts = []
            if unknown:
                parts.append(f"unknown places {sorted(unknown)}")
            if absent:
                parts.append(f"missing places {sorted(absent)}")
            raise MarkingError("marking does not match model: " + "; ".join(parts))
        return tuple(int(marking[name]) for name in self.place_names)

    def unpack_marking(self, packed: Sequence[int]) -> dict[str, int]:
        return dict(zip(self.place_names, packed))


# ---------------------------------------------------------------------------
# The model

class SanModel:
    """Immutable SAN description; safe to share across workers."""

    def __init__(self, name: str, places: Iterable[Place],
                 activities: Iterable[Activity], params: Iterable[str] = ()):
        self.name = name
        self.places = tuple(places)
        self.activities = tuple(activities)
        self.params = tuple(params)
        self._compiled: _CompiledModel | None = None

    @property
    def compiled(self) -> _CompiledModel:
        if self._compiled is None:
            self._compiled = _CompiledModel(self)
        return self._compiled

    def initial_marking(self) -> dict[str, int]:
        return {pl.name: int(pl.initial) for pl in self.places}

    def activity(self, name: str) -> Activity:
        for act in self.activities:
            if act.name == name:
                return act
        raise SanError(f"model '{self.name}' has no activity '{name}'")

    def __repr__(self):
        return (f"SanModel({self.name!r}, places={len(self.places)}, "
                f"activities={len(self.activities)})")


def validate_model(model: SanModel) -> list[str]:
    """Structural diagnostics; an empty list means the model is well formed."""
    diags: list[str] = []
    seen: set[str] = set()
    for pl in model.places:
        if pl.name in seen:
            diags.append(f"duplicate place name '{pl.name}'")
        seen.add(pl.name)
        if pl.initial < 0:
            diags.append(f"place '{pl.name}' has negative initial marking")
    place_names = {pl.name for pl in model.places}
    clash = place_names & set(model.params)
    for name in sorted(clash):
        diags.append(f"name '{name}' is both a place and a parameter")
    seen_acts: set[str] = set()
    places = {pl.name: k for k, pl in enumerate(model.places)}
    params = {name: k for k, name in enumerate(model.params)}
    for act in model.activities:
        where = f"activity '{act.name}'"
        if act.name in seen_acts:
            diags.append(f"duplicate activity name '{act.name}'")
        seen_acts.add(act.name)
        if not act.cases:
            diags.append(f"{where}: no cases")
        for arc in act.input_arcs:
            if arc.place not in place_names:
                diags.append(f"{where}: input arc references unknown place "
                             f"'{arc.place}'")
            if arc.weight < 1:
                diags.append(f"{where}: input arc weight must be >= 1")
        for ci, case in enumerate(act.cases):
            for arc in case.arcs:
                if arc.place not in place_names:
                    diags.append(f"{where}: case {ci} output arc references "
                                 f"unknown place '{arc.place}'")
        # expression-level problems (unknown names, syntax)
        try:
            compile_expr(act.rate, places, params, f"{act.name}.rate")
        except ExpressionError as exc:
            diags.append(str(exc))
        for gate in act.input_gates:
            for src, kind in ((gate.predicate, "predicate"), (gate.function, "function")):
                try:
                    if kind == "predicate":
                        compile_expr(src, places, params, f"{act.name}.{gate.name}")
                    else:
                        compile_stmts(src, places, params, f"{act.name}.{gate.name}")
                except ExpressionError as exc:
                    diags.append(str(exc))
        for ci, case in enumerate(act.cases):
            try:
                compile_expr(case.probability, places, params,
                             f"{act.name}.case{ci}")
            except ExpressionError as exc:
                diags.append(str(exc))
            for gate in case.gates:
                try:
                    compile_stmts(gate.function, places, params,
                                  f"{act.name}.{gate.name}")
                except ExpressionError as exc:
                    diags.append(str(exc))
    return diags


# ---------------------------------------------------------------------------
# Public operations on explicit markings

def enabled(model: SanModel, marking: Mapping[str, int], params: Mapping) -> set[str]:
    """Names of the activities enabled in `marking`."""
    comp = model.compiled
    m = comp.pack_marking(marking)
    p = comp.pack_params(params)
    return {act.name for act in comp.activities if act.enabled_rate(m, p) > 0.0}


def case_probs(model: SanModel, marking: Mapping[str, int], activity: str,
               params: Mapping) -> list[float]:
    """Evaluated case probabilities of `activity` in `marking`."""
    comp = model.compiled
    m = comp.pack_marking(marking)
    p = comp.pack_params(params)
    act = comp.activities[comp.activity_index[activity]]
    return act.case_probs(m, p)


def fire(model: SanModel, marking: Mapping[str, int], activity: str,
         case_index: int = 0, params: Mapping = ()) -> dict[str, int]:
    """Fire `activity` (case `case_index`) and return the new marking."""
    comp = model.compiled
    m = comp.pack_marking(marking)
    p = comp.pack_params(params)
    act = comp.activities[comp.activity_index[activity]]
    if act.enabled_rate(m, p) <= 0.0:
        raise SemanticsError(f"activity '{activity}' is not enabled in marking")
    if not 0 <= case_index < act.n_cases:
        raise SemanticsError(f"activity '{activity}' has no case {case_index}")
    return comp.unpack_marking(act.fire(m, p, case_index))


def bind_reward(reward: RewardVariable, place_names: Sequence[str],
                params: Mapping) -> Callable[[Sequence[int]], bool]:
    """Compile a reward predicate against packed markings."""
    places = {name: k for k, name in enumerate(place_names)}
    pidx = {name: k for k, name in enumerate(params)}
    pvals = tuple(params[name] for name in pidx)
    fn = compile_expr(reward.predicate, places, pidx, f"reward {reward.id}")
    return lambda m: bool(fn(m, pvals))
