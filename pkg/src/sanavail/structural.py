"""Structural layer: topology, minimal cut sets, composition helpers.

The backbone is a graph of forwarding nodes (grouped into cities by the
alphabetic prefix of their id, or an explicit tag) plus controller nodes
attached by dedicated links.  Availability criteria:

* tn / fsdn - one connected component of the surviving forwarding graph
  contains at least one node of every city;
* csdn - every city additionally reaches at least one surviving
  controller.  Sets that already break forwarding connectivity are
  attributed to the forwarding layer and excluded from the csdn list.

Cut sets are found by exhaustive subset search in increasing cardinality
with subset-minimality filtering; element counts are small enough that
this is exact and fast.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from typing import Iterable, Sequence

from .core import SanError


class TopologyError(SanError):
    """Malformed topology file or inconsistent graph."""


@dataclass(frozen=True)
class Node:
    id: str
    role: str           # "fwd" | "ctrl"
    city: str | None    # demand group; None = pure transit


@dataclass(frozen=True)
class Link:
    id: str
    a: str
    b: str


@dataclass
class Topology:
    nodes: dict[str, Node]
    links: dict[str, Link]

    def fwd_nodes(self) -> list[str]:
        return [n.id for n in self.nodes.values() if n.role == "fwd"]

    def ctrl_nodes(self) -> list[str]:
        return [n.id for n in self.nodes.values() if n.role == "ctrl"]

    def cities(self) -> list[str]:
        seen: list[str] = []
        for n in self.nodes.values():
            if n.role == "fwd" and n.city and n.city not in seen:
                seen.append(n.city)
        return seen


@dataclass(frozen=True)
class CutSet:
    elements: frozenset[str]
    cardinality: int
    type_tag: str       # e.g. "{n,n,l}"

    def sorted_elements(self) -> list[str]:
        return sorted(self.elements)


_CITY = re.compile(r"^([A-Za-z]+)")


def _default_city(node_id: str) -> str | None:
    match = _CITY.match(node_id)
    return match.group(1) if match else None


def parse_topology(text: str, source: str = "<topology>") -> Topology:
    """Parse the line-oriented format: `node <id> <fwd|ctrl> [city]` and
    `link <id> <endpoint> <endpoint>`; `#` starts a comment; a city of `-`
    marks a transit node with no demand attached."""
    nodes: dict[str, Node] = {}
    links: dict[str, Link] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "node":
            if len(fields) not in (3, 4):
                raise TopologyError(f"{source}:{lineno}: "
                                    "expected 'node <id> <fwd|ctrl> [city]'")
            _, nid, role = fields[:3]
            if role not in ("fwd", "ctrl"):
                raise TopologyError(f"{source}:{lineno}: bad role '{role}'")
            if nid in nodes:
                raise TopologyError(f"{source}:{lineno}: duplicate node '{nid}'")
            if len(fields) == 4:
                city = None if fields[3] == "-" else fields[3]
            else:
                city = _default_city(nid) if role == "fwd" else None
            nodes[nid] = Node(nid, role, city)
        elif kind == "link":
            if len(fields) != 4:
                raise TopologyError(f"{source}:{lineno}: "
                                    "expected 'link <id> <endpoint> <endpoint>'")
            _, lid, a, c = fields
            if lid in links:
                raise TopologyError(f"{source}:{lineno}: duplicate link '{lid}'")
            links[lid] = Link(lid, a, c)
        else:
            raise TopologyError(f"{source}:{lineno}: unknown directive '{kind}'")
    for link in links.values():
        for end in (link.a, link.b):
            if end not in nodes:
                raise TopologyError(f"{source}: link '{link.id}' references "
                                    f"unknown node '{end}'")
    return Topology(nodes, links)


def load_topology(path=None) -> Topology:
    """Load a topology file; without a path, the packaged backbone."""
    if path is None:
        text = (resources.files("sanavail") / "data" / "backbone.topo").read_text()
        return parse_topology(text, "backbone.topo")
    with open(path, encoding="utf-8") as fh:
        return parse_topology(fh.read(), str(path))


# ---------------------------------------------------------------------------
# Availability criteria

def _components(topo: Topology, failed: frozenset[str]) -> list[set[str]]:
    """Connected components of the surviving forwarding graph."""
    alive = {n for n in topo.fwd_nodes() if n not in failed}
    adj: dict[str, list[str]] = {n: [] for n in alive}
    for link in topo.links.values():
        if link.id in failed:
            continue
        if link.a in alive and link.b in alive:
            adj[link.a].append(link.b)
            adj[link.b].append(link.a)
    comps: list[set[str]] = []
    todo = set(alive)
    while todo:
        start = todo.pop()
        comp = {start}
        stack = [start]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in comp:
                    comp.add(nxt)
                    stack.append(nxt)
        todo -= comp
        comps.append(comp)
    return comps


def forwarding_ok(topo: Topology, failed: Iterable[str]) -> bool:
    """True iff one surviving component holds a node of every city."""
    failed = frozenset(failed)
    cities = topo.cities()
    if not cities:
        return True
    city_of = {n.id: n.city for n in topo.nodes.values() if n.role == "fwd"}
    for comp in _components(topo, failed):
        present = {city_of[n] for n in comp if city_of[n]}
        if present.issuperset(cities):
            return True
    return False


def control_ok(topo: Topology, failed: Iterable[str]) -> bool:
    """True iff every city has a surviving node whose component reaches a
    surviving controller over a surviving attachment link."""
    failed = frozenset(failed)
    cities = topo.cities()
    city_of = {n.id: n.city for n in topo.nodes.values() if n.role == "fwd"}
    ctrl_alive = {n for n in topo.ctrl_nodes() if n not in failed}
    attach: dict[str, set[str]] = {}
    for link in topo.links.values():
        if link.id in failed:
            continue
        for u, c in ((link.a, link.b), (link.b, link.a)):
            if c in ctrl_alive and u in topo.nodes and topo.nodes[u].role == "fwd":
                attach.setdefault(u, set()).add(c)
    reached: set[str] = set()
    for comp in _components(topo, failed):
        if any(u in attach and u not in failed for u in comp):
            reached.update(city_of[n] for n in comp if city_of[n])
    return all(city in reached for city in cities)


_CRITERIA = {"tn": forwarding_ok, "fsdn": forwarding_ok, "csdn": control_ok}


def _universe(topo: Topology, variant: str) -> list[str]:
    fwd = set(topo.fwd_nodes())
    fwd_links = [l.id for l in topo.links.values()
                 if l.a in fwd and l.b in fwd]
    if variant in ("tn", "fsdn"):
        return sorted(fwd) + sorted(fwd_links)
    return (sorted(topo.nodes) +
            sorted(l.id for l in topo.links.values()))


def _type_tag(topo: Topology, elements: Iterable[str]) -> str:
    n_nodes = sum(1 for e in elements if e in topo.nodes)
    n_links = len(list(elements)) - n_nodes
    return "{" + ",".join(["n"] * n_nodes + ["l"] * n_links) + "}"


def enumerate_min_cutsets(topo: Topology, variant: str, max_cardinality: int,
                          universe: Sequence[str] | None = None) -> list[CutSet]:
    """All minimal cut sets of cardinality <= max_cardinality.

    For csdn, sets that also break forwarding connectivity are attributed
    to the forwarding layer and omitted (supersets remain non-minimal
    either way because failures are monotone).
    """
    if variant not in _CRITERIA:
        raise SanError(f"unknown variant '{variant}'; use tn, fsdn or csdn")
    if max_cardinality < 1:
        raise SanError("max_cardinality must be >= 1")
    ok = _CRITERIA[variant]
    if not ok(topo, ()):
        raise TopologyError("baseline topology does not satisfy the "
                            f"'{variant}' criterion with no failures")
    elements = list(universe) if universe is not None else _universe(topo, variant)
    breakers: list[frozenset[str]] = []
    results: list[CutSet] = []
    for card in range(1, max_cardinality + 1):
        for combo in combinations(elements, card):
            cand = frozenset(combo)
            if any(found <= cand for found in breakers):
                continue
            if ok(topo, cand):
                continue
            breakers.append(cand)
            if variant == "csdn" and not forwarding_ok(topo, cand):
                continue
            results.append(CutSet(cand, card, _type_tag(topo, cand)))
    results.sort(key=lambda cs: (cs.cardinality, cs.sorted_elements()))
    return results


def cutsets_to_csv(cutsets: Iterable[CutSet]) -> str:
    import csv
    import io
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["cardinality", "type", "elements"])
    for cs in cutsets:
        writer.writerow([cs.cardinality, cs.type_tag,
                         ",".join(cs.sorted_elements())])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Composition of per-cut-set unavailabilities

def _check_unit(values: Iterable[float], what: str) -> list[float]:
    out = []
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise SanError(f"{what} {v!r} outside [0,1]")
        out.append(float(v))
    return out


def compose_series(cut_unavailabilities: Iterable[float]) -> float:
    """Series (rare-event upper bound) combination: 1 - prod(1 - U_i).

    Treats cut sets as independent, ignoring shared elements, so the
    result is an approximation suitable for small unavailabilities.
    """
    prod = 1.0
    for u in _check_unit(cut_unavailabilities, "cut-set unavailability"):
        prod *= 1.0 - u
    return 1.0 - prod


def compose_independent_product(factors: Iterable[float]) -> float:
    """Product of independent unavailabilities (the two-links-times-
    controller composition)."""
    prod = 1.0
    for f in _check_unit(factors, "factor"):
        prod *= f
    return prod
