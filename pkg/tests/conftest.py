"""Shared helpers: catalog fixtures, an independent brute-force cut-set
oracle, a random topology generator and a disjoint-union model combiner."""

from __future__ import annotations

import itertools

import pytest

from sanavail import catalog
from sanavail.core import SanModel
from sanavail.structural import Link, Node, Topology


@pytest.fixture(scope="session")
def defaults():
    """model id -> (model, params) at canonical-study defaults."""
    out = {}
    for mid in catalog.model_ids():
        params = catalog.default_params(mid)
        out[mid] = (catalog.build(mid, params), params)
    return out


def combine_independent(m1: SanModel, m2: SanModel, name: str) -> SanModel:
    """Disjoint union of two models sharing no place or activity names."""
    p1 = {p.name for p in m1.places}
    p2 = {p.name for p in m2.places}
    a1 = {a.name for a in m1.activities}
    a2 = {a.name for a in m2.activities}
    assert not (p1 & p2) and not (a1 & a2), "models are not disjoint"
    params = tuple(dict.fromkeys(m1.params + m2.params))
    return SanModel(name, m1.places + m2.places,
                    m1.activities + m2.activities, params)


# ---------------------------------------------------------------------------
# Independent oracle for minimal cut sets: plain subset scan with
# minimality established by re-testing every proper subset.

def brute_force_cutsets(topo: Topology, ok, elements, max_card: int):
    cuts = []
    for card in range(1, max_card + 1):
        for combo in itertools.combinations(elements, card):
            if ok(topo, combo):
                continue
            minimal = True
            for k in range(len(combo)):
                sub = combo[:k] + combo[k + 1:]
                if not ok(topo, sub):
                    minimal = False
                    break
            if minimal:
                cuts.append(frozenset(combo))
    return set(cuts)


def random_topology(rng, with_ctrl: bool = False) -> Topology:
    """Small random graph: <= 8 forwarding nodes over <= 4 cities,
    <= 12 links, optionally 1-2 controllers attached at random."""
    n_cities = rng.integers(2, 5)
    cities = ["A", "B", "C", "D"][:n_cities]
    node_ids = []
    nodes = {}
    remaining = int(rng.integers(n_cities, 9))
    for k in range(remaining):
        city = cities[k % n_cities]
        nid = f"{city}{k}"
        node_ids.append(nid)
        nodes[nid] = Node(nid, "fwd", city)
    ctrl_ids = []
    if with_ctrl:
        for k in range(int(rng.integers(1, 3))):
            cid = f"X{k}"
            ctrl_ids.append(cid)
            nodes[cid] = Node(cid, "ctrl", None)
    links = {}
    n_links = int(rng.integers(len(node_ids) - 1, 13))
    pairs = list(itertools.combinations(node_ids, 2))
    rng.shuffle(pairs)
    for a, b in pairs[:n_links]:
        lid = f"l_{a}-{b}"
        links[lid] = Link(lid, a, b)
    for cid in ctrl_ids:
        homes = rng.choice(node_ids, size=min(2, len(node_ids)),
                           replace=False)
        for h in homes:
            lid = f"l_{h}-{cid}"
            links[lid] = Link(lid, h, cid)
    return Topology(nodes, links)
