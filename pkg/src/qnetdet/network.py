"""Quantum networks of bipartite links and their series-parallel reduction.

A network is an undirected multigraph whose edges carry Schmidt vectors
of a common local dimension, with two distinguished terminal nodes.
For series-parallel topologies the deterministically transmissible
Schmidt vector between the terminals is computed by alternating two
moves until a single terminal-to-terminal edge remains:

* parallel: every bundle of edges sharing both endpoints is replaced by
  one edge carrying the purification of the tensor product of the
  bundle's vectors;
* series: every non-terminal node of degree two is contracted, its two
  edges replaced by one carrying the swap of their vectors, walking
  nodes outward from terminal A so chains are folded left to right.

Self-loops transmit nothing and are dropped whenever they appear.  The
same engine with scalar payloads yields the network's probabilistic
conversion figure: each link is scored by its probability of conversion
to a maximally entangled pair, series edges multiply scores, parallel
bundles combine as complements.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Tuple

from .errors import (
    DanglingEndpoint,
    DisconnectedTerminals,
    MissingTerminal,
    MixedDimensions,
    NotSeriesParallel,
    SchemaError,
)
from .rules import conversion_probability, purify_rule, swap_rule
from .schmidt import SchmidtVector, concurrence, normalize_descending


class TopologyClass(Enum):
    """Exhaustive, mutually exclusive classification of a two-terminal
    network (after discarding self-loops):

    SIMPLE_SERIES          a single chain from A to B (including the
                           degenerate one-edge chain)
    SIMPLE_PARALLEL        two or more edges, all directly joining A and B
    PARALLEL_THEN_SERIES   a chain from A to B where at least one hop is
                           a multi-edge bundle
    SERIES_THEN_PARALLEL   two or more internally disjoint chains from A
                           to B, no bundles inside a chain
    SERIES_PARALLEL        reducible by series and parallel moves but not
                           of the above shapes
    NOT_SERIES_PARALLEL    reduction stalls (e.g. a bridge topology)
    """

    SIMPLE_SERIES = "SimpleSeries"
    SIMPLE_PARALLEL = "SimpleParallel"
    PARALLEL_THEN_SERIES = "ParallelThenSeries"
    SERIES_THEN_PARALLEL = "SeriesThenParallel"
    SERIES_PARALLEL = "SeriesParallel"
    NOT_SERIES_PARALLEL = "NotSeriesParallel"


@dataclass(frozen=True)
class Edge:
    """Undirected network edge carrying a Schmidt vector."""

    u: str
    v: str
    link: SchmidtVector


def _check_endpoint(name) -> str:
    if not isinstance(name, str) or not name:
        raise DanglingEndpoint(f"edge endpoint {name!r} is not a non-empty string")
    return name


@dataclass(frozen=True)
class QuantumNetwork:
    """Immutable two-terminal network of Schmidt-vector links."""

    dimension: int
    terminals: Tuple[str, str]
    edges: Tuple[Edge, ...]

    def __init__(self, dimension: int, terminals: Iterable[str], edges: Iterable[Edge]):
        terms = tuple(terminals)
        if len(terms) != 2 or terms[0] == terms[1]:
            raise MissingTerminal("exactly two distinct terminals are required")
        for t in terms:
            if not isinstance(t, str) or not t:
                raise MissingTerminal(f"terminal {t!r} is not a non-empty string")
        edges = tuple(edges)
        for e in edges:
            _check_endpoint(e.u)
            _check_endpoint(e.v)
            if e.link.dimension != dimension:
                raise MixedDimensions(
                    f"link {e.u}-{e.v} has dimension {e.link.dimension}, network has {dimension}"
                )
        object.__setattr__(self, "dimension", int(dimension))
        object.__setattr__(self, "terminals", terms)
        object.__setattr__(self, "edges", edges)

    @property
    def nodes(self) -> List[str]:
        seen = set(self.terminals)
        for e in self.edges:
            seen.add(e.u)
            seen.add(e.v)
        return sorted(seen)


def network_from_dict(obj) -> QuantumNetwork:
    """Build a network from the parsed JSON structure
    {"dimension": d, "terminals": [a, b], "edges": [{"u","v","schmidt"}...]}.

    Link vectors must sum to 1 within 1e-9 and are renormalized on
    ingest.

    Raises
    ------
    SchemaError, DanglingEndpoint, MixedDimensions, MissingTerminal
    """
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    missing = {"dimension", "terminals", "edges"} - set(obj)
    if missing:
        raise SchemaError(f"missing keys: {sorted(missing)}")
    d = obj["dimension"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise SchemaError(f"dimension must be a positive integer, got {d!r}")
    terms = obj["terminals"]
    if not isinstance(terms, list) or len(terms) != 2:
        raise MissingTerminal("terminals must be a list of two node names")
    raw_edges = obj["edges"]
    if not isinstance(raw_edges, list):
        raise SchemaError("edges must be a list")
    edges = []
    for i, re_ in enumerate(raw_edges):
        if not isinstance(re_, dict) or {"u", "v", "schmidt"} - set(re_):
            raise SchemaError(f"edge {i} must be an object with keys u, v, schmidt")
        u = _check_endpoint(re_["u"])
        v = _check_endpoint(re_["v"])
        vec = re_["schmidt"]
        if not isinstance(vec, list) or not vec or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in vec
        ):
            raise SchemaError(f"edge {i} schmidt must be a non-empty list of numbers")
        if len(vec) != d:
            raise MixedDimensions(f"edge {i} has {len(vec)} entries, dimension is {d}")
        if any(x < -1e-12 for x in vec):
            raise SchemaError(f"edge {i} schmidt has a negative entry")
        total = math.fsum(vec)
        if abs(total - 1.0) > 1e-9:
            raise SchemaError(f"edge {i} schmidt sums to {total!r}, expected 1 within 1e-9")
        edges.append(Edge(u, v, normalize_descending(vec)))
    return QuantumNetwork(d, terms, edges)


def parse_network(text: str) -> QuantumNetwork:
    """Parse a JSON network description; see network_from_dict."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return network_from_dict(obj)


# ---------------------------------------------------------------------------
# generic reduction engine


class _Multigraph:
    def __init__(self, network: QuantumNetwork, payload_of):
        self.edges: Dict[int, list] = {}
        self.adj: Dict[str, set] = {}
        self.next_id = 0
        for t in network.terminals:
            self.adj.setdefault(t, set())
        for e in network.edges:
            self.add(e.u, e.v, payload_of(e))

    def add(self, u, v, payload) -> int:
        eid = self.next_id
        self.next_id += 1
        self.edges[eid] = [u, v, payload]
        self.adj.setdefault(u, set()).add(eid)
        self.adj.setdefault(v, set()).add(eid)
        return eid

    def remove(self, eid) -> None:
        u, v, _ = self.edges.pop(eid)
        self.adj[u].discard(eid)
        self.adj[v].discard(eid)
        for n in {u, v}:
            if not self.adj[n]:
                del self.adj[n]

    def other(self, eid, node) -> str:
        u, v, _ = self.edges[eid]
        return v if u == node else u

    def distances(self, start) -> Dict[str, int]:
        dist = {start: 0}
        queue = deque([start])
        while queue:
            n = queue.popleft()
            for eid in self.adj.get(n, ()):
                w = self.other(eid, n)
                if w not in dist:
                    dist[w] = dist[n] + 1
                    queue.append(w)
        return dist


def _reduce_engine(network, series_fn, parallel_fn, payload_of, payload_json):
    """Run the alternating parallel/series reduction.

    Returns (payload, trace).  Raises DisconnectedTerminals when B is
    unreachable from A and NotSeriesParallel when the loop stalls before
    reaching a single A-B edge.
    """
    a, b = network.terminals
    g = _Multigraph(network, payload_of)
    if b not in g.distances(a):
        raise DisconnectedTerminals(f"no path between {a} and {b}")
    trace = []

    def drop_self_loops():
        for eid in sorted(g.edges):
            u, v, payload = g.edges[eid]
            if u == v:
                g.remove(eid)
                if payload_json is not None:
                    trace.append({"op": "drop_self_loop", "node": u, "link": payload_json(payload)})

    drop_self_loops()
    while True:
        changed = False
        # parallel pass: merge every bundle sharing both endpoints
        groups: Dict[Tuple[str, str], list] = {}
        for eid in sorted(g.edges):
            u, v, _ = g.edges[eid]
            key = (u, v) if u <= v else (v, u)
            groups.setdefault(key, []).append(eid)
        for key in sorted(groups):
            eids = groups[key]
            if len(eids) < 2:
                continue
            payloads = [g.edges[eid][2] for eid in eids]
            merged = parallel_fn(payloads)
            for eid in eids:
                g.remove(eid)
            g.add(key[0], key[1], merged)
            if payload_json is not None:
                trace.append(
                    {
                        "op": "parallel",
                        "nodes": [key[0], key[1]],
                        "arity": len(eids),
                        "inputs": [payload_json(p) for p in payloads],
                        "output": payload_json(merged),
                    }
                )
            changed = True
        # series pass: contract degree-2 non-terminals, nearest to A first
        dist = g.distances(a)
        candidates = [
            n for n in g.adj if n not in (a, b) and len(g.adj[n]) == 2
        ]
        candidates.sort(key=lambda n: (dist.get(n, 1 << 30), n))
        for node in candidates:
            if node not in g.adj or len(g.adj[node]) != 2:
                continue
            e1, e2 = sorted(g.adj[node])
            u = g.other(e1, node)
            w = g.other(e2, node)
            ku = (dist.get(u, 1 << 30), u)
            kw = (dist.get(w, 1 << 30), w)
            if kw < ku:
                e1, e2 = e2, e1
                u, w = w, u
            p1 = g.edges[e1][2]
            p2 = g.edges[e2][2]
            merged = series_fn(p1, p2)
            g.remove(e1)
            g.remove(e2)
            if payload_json is not None:
                trace.append(
                    {
                        "op": "series",
                        "node": node,
                        "through": [u, w],
                        "inputs": [payload_json(p1), payload_json(p2)],
                        "output": payload_json(merged),
                    }
                )
            if u == w:
                if payload_json is not None:
                    trace.append({"op": "drop_self_loop", "node": u, "link": payload_json(merged)})
            else:
                g.add(u, w, merged)
            changed = True
        if not changed:
            break
    remaining = sorted(g.edges)
    if len(remaining) == 1:
        u, v, payload = g.edges[remaining[0]]
        if {u, v} == {a, b}:
            return payload, trace
    remnant = [(g.edges[eid][0], g.edges[eid][1]) for eid in remaining]
    pair = min((tuple(sorted(p)) for p in remnant), default=(a, b))
    raise NotSeriesParallel(
        f"reduction stalled with {len(remaining)} edges, e.g. between "
        f"{pair[0]} and {pair[1]}",
        remnant=remnant,
    )


def _det_parallel(links: List[SchmidtVector]) -> SchmidtVector:
    d = links[0].dimension
    prod = [1.0]
    for vec in links:
        prod = [a * b for a in prod for b in vec.entries]
    return purify_rule(prod, d)


def reduce_series_parallel(network: QuantumNetwork):
    """Reduce a series-parallel network to the Schmidt vector shared by
    its terminals after the deterministic protocol.

    Returns
    -------
    (SchmidtVector, list of dict)
        The final vector and the reduction trace: one event per move
        with the operator, location and the vectors consumed/produced.

    Raises
    ------
    DisconnectedTerminals, NotSeriesParallel
    """
    return _reduce_engine(
        network,
        series_fn=swap_rule,
        parallel_fn=_det_parallel,
        payload_of=lambda e: e.link,
        payload_json=lambda vec: [float(v) for v in vec],
    )


def cep_probability(network: QuantumNetwork) -> float:
    """Probability that the terminals end up maximally entangled when
    every link is first converted to a maximally entangled pair
    probabilistically and successes are wired together.

    Each link succeeds with its conversion probability to the uniform
    vector; series compositions multiply, parallel bundles succeed when
    any member does.

    Raises
    ------
    DisconnectedTerminals, NotSeriesParallel
    """
    d = network.dimension
    uniform = SchmidtVector([1.0 / d] * d)
    value, _ = _reduce_engine(
        network,
        series_fn=lambda p, q: p * q,
        parallel_fn=lambda ps: 1.0 - math.prod(1.0 - p for p in ps),
        payload_of=lambda e: conversion_probability(e.link, uniform),
        payload_json=None,
    )
    return value


def classify_topology(network: QuantumNetwork) -> TopologyClass:
    """Classify the network shape; see TopologyClass.

    Raises
    ------
    DisconnectedTerminals
        Terminals not connected (no class applies).
    """
    a, b = network.terminals
    g = _Multigraph(network, lambda e: None)
    if b not in g.distances(a):
        raise DisconnectedTerminals(f"no path between {a} and {b}")
    edges = [(u, v) for u, v, _ in (g.edges[eid] for eid in sorted(g.edges)) if u != v]
    if all({u, v} == {a, b} for u, v in edges):
        return (
            TopologyClass.SIMPLE_SERIES
            if len(edges) == 1
            else TopologyClass.SIMPLE_PARALLEL
        )
    # multigraph degree and bundle structure
    degree: Dict[str, int] = {}
    bundles: Dict[Tuple[str, str], int] = {}
    for u, v in edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
        key = (u, v) if u <= v else (v, u)
        bundles[key] = bundles.get(key, 0) + 1
    nodes = set(degree)
    internal = nodes - {a, b}
    # chain test on the bundle graph: A and B see one neighbour, internal
    # nodes two, and the chain visits every node
    simple_adj: Dict[str, set] = {n: set() for n in nodes}
    for u, v in bundles:
        simple_adj[u].add(v)
        simple_adj[v].add(u)
    if (
        len(simple_adj.get(a, ())) == 1
        and len(simple_adj.get(b, ())) == 1
        and all(len(simple_adj[n]) == 2 for n in internal)
    ):
        path = [a]
        prev = None
        while path[-1] != b and len(path) <= len(nodes):
            nxt = [n for n in simple_adj[path[-1]] if n != prev]
            if len(nxt) != 1:
                break
            prev = path[-1]
            path.append(nxt[0])
        if path[-1] == b and len(path) == len(nodes):
            return (
                TopologyClass.SIMPLE_SERIES
                if all(c == 1 for c in bundles.values())
                else TopologyClass.PARALLEL_THEN_SERIES
            )
    # branch test: internally disjoint chains of single edges from A to B
    if all(degree[n] == 2 for n in internal) and all(c == 1 for c in bundles.values()):
        adj2: Dict[str, list] = {n: [] for n in nodes}
        for u, v in edges:
            adj2[u].append(v)
            adj2[v].append(u)
        visited = set()
        ok = True
        for first in sorted(adj2.get(a, ())):
            node, prev = first, a
            while node not in (a, b):
                if node in visited:
                    ok = False
                    break
                visited.add(node)
                nxt = [n for n in adj2[node] if n != prev]
                if len(nxt) != 1:
                    ok = False
                    break
                prev, node = node, nxt[0]
            if not ok or node == a:
                ok = False
                break
        if ok and visited == internal:
            return TopologyClass.SERIES_THEN_PARALLEL
    try:
        _reduce_engine(
            network,
            series_fn=lambda p, q: None,
            parallel_fn=lambda ps: None,
            payload_of=lambda e: None,
            payload_json=None,
        )
    except NotSeriesParallel:
        return TopologyClass.NOT_SERIES_PARALLEL
    return TopologyClass.SERIES_PARALLEL


def report(network: QuantumNetwork) -> dict:
    """Full reduction report: topology class, final Schmidt vector, its
    concurrences, the conversion figure and the reduction trace.

    Raises
    ------
    DisconnectedTerminals, NotSeriesParallel
    """
    topo = classify_topology(network)
    vec, trace = reduce_series_parallel(network)
    d = network.dimension
    return {
        "dimension": d,
        "terminals": list(network.terminals),
        "edge_count": len(network.edges),
        "topology": topo.value,
        "det_vector": [float(v) for v in vec],
        "concurrence": {f"C_{k}": concurrence(vec, k) for k in range(1, d + 1)},
        "cep_probability": cep_probability(network),
        "reduction_trace": trace,
    }
