"""Network model: nodes, capacitated arcs, paths, subpaths and failure scenarios.

A network is a directed multigraph with a dedicated source and sink.  Arcs
carry exact rational capacities plus integer travel times / delays (only used
by the dynamic models; static instances leave both at 0).

Enumeration helpers are deterministic: arcs are ordered by id, simple paths
lexicographically by their arc-id sequences, scenarios by (size, arc order).
Exhaustive enumerations are protected by guards that raise ``GuardExceeded``
instead of looping for hours; defaults can be overridden per call or via the
``ROBUSTFLOW_GUARD_PATHS`` / ``ROBUSTFLOW_GUARD_SCENARIOS`` environment
variables.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .rational import rat

DEFAULT_GUARD_PATHS = 100_000
DEFAULT_GUARD_SCENARIOS = 1_000_000


class NetworkError(ValueError):
    """Malformed network, flow or parameter (domain error)."""


class GuardExceeded(RuntimeError):
    """An enumeration would exceed its configured guard."""


def _env_guard(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise NetworkError(f"{name} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise NetworkError(f"{name} must be positive, got {value}")
    return value


def guard_paths(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    return _env_guard("ROBUSTFLOW_GUARD_PATHS", DEFAULT_GUARD_PATHS)


def guard_scenarios(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    return _env_guard("ROBUSTFLOW_GUARD_SCENARIOS", DEFAULT_GUARD_SCENARIOS)


def arc_sort_key(arc_id: Hashable):
    """Total order on arc ids: ints first by value, then strings by (length, text).

    The length-first rule keeps numbered ids in natural order (a2 before a10).
    """
    if isinstance(arc_id, bool):
        return (2, 1, str(arc_id))
    if isinstance(arc_id, int):
        return (0, arc_id, "")
    text = str(arc_id)
    return (1, len(text), text)


@dataclass(frozen=True)
class Arc:
    """One directed arc.  ``capacity`` is a positive exact rational."""

    id: Hashable
    tail: str
    head: str
    capacity: object
    travel_time: int = 0
    delay: int = 0


class Network:
    """Directed multigraph with source/sink and deterministic arc order.

    The constructor accepts any input and normalizes arc order; use
    :func:`validate_network` to check the structural invariants.
    """

    def __init__(
        self,
        nodes: Iterable[str],
        arcs: Iterable[Arc],
        source: str,
        sink: str,
        meta: Optional[Mapping] = None,
    ) -> None:
        self.nodes = tuple(nodes)
        self.arcs = tuple(sorted(arcs, key=lambda a: arc_sort_key(a.id)))
        self.source = source
        self.sink = sink
        self.meta = dict(meta) if meta else {}
        self.arc_by_id = {}
        for arc in self.arcs:
            self.arc_by_id.setdefault(arc.id, arc)
        out: dict = {v: [] for v in self.nodes}
        inc: dict = {v: [] for v in self.nodes}
        for arc in self.arcs:
            out.setdefault(arc.tail, []).append(arc)
            inc.setdefault(arc.head, []).append(arc)
        self._out = {v: tuple(lst) for v, lst in out.items()}
        self._in = {v: tuple(lst) for v, lst in inc.items()}
        self.arc_rank = {arc.id: i for i, arc in enumerate(self.arcs)}

    def out_arcs(self, v: str) -> tuple:
        return self._out.get(v, ())

    def in_arcs(self, v: str) -> tuple:
        return self._in.get(v, ())

    def __repr__(self) -> str:
        return (
            f"Network(|V|={len(self.nodes)}, |A|={len(self.arcs)}, "
            f"source={self.source!r}, sink={self.sink!r})"
        )


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_network(net: Network) -> ValidationReport:
    """Check the structural invariants; returns all violations, never raises."""
    bad = []
    nodeset = set(net.nodes)
    if len(nodeset) != len(net.nodes):
        bad.append("duplicate node names")
    if net.source not in nodeset:
        bad.append(f"source {net.source!r} is not a node")
    if net.sink not in nodeset:
        bad.append(f"sink {net.sink!r} is not a node")
    if net.source == net.sink:
        bad.append("source equals sink")
    seen_ids = set()
    for arc in net.arcs:
        if arc.id in seen_ids:
            bad.append(f"duplicate arc id {arc.id!r}")
        seen_ids.add(arc.id)
        if arc.tail not in nodeset:
            bad.append(f"arc {arc.id!r}: unknown tail {arc.tail!r}")
        if arc.head not in nodeset:
            bad.append(f"arc {arc.id!r}: unknown head {arc.head!r}")
        try:
            positive = rat(arc.capacity) > 0
        except (TypeError, ValueError):
            positive = False
        if not positive:
            bad.append(f"arc {arc.id!r}: capacity must be a positive rational")
        for attr in ("travel_time", "delay"):
            value = getattr(arc, attr)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                bad.append(f"arc {arc.id!r}: {attr} must be an integer >= 0")
        if arc.head == net.source:
            bad.append(f"arc {arc.id!r} enters the source")
        if arc.tail == net.sink:
            bad.append(f"arc {arc.id!r} leaves the sink")
    if net.source in nodeset and net.sink in nodeset and net.source != net.sink:
        fwd = _reachable(net, net.source, forward=True)
        bwd = _reachable(net, net.sink, forward=False)
        for v in net.nodes:
            if v not in fwd or v not in bwd:
                bad.append(f"node {v!r} is not on any source-sink path")
    return ValidationReport(tuple(bad))


def _reachable(net: Network, start: str, *, forward: bool) -> set:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        arcs = net.out_arcs(v) if forward else net.in_arcs(v)
        for arc in arcs:
            w = arc.head if forward else arc.tail
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


@dataclass(frozen=True)
class Path:
    """A directed path, stored as its arc-id sequence plus visited nodes."""

    arcs: tuple
    nodes: tuple

    @property
    def start(self) -> str:
        return self.nodes[0]

    @property
    def end(self) -> str:
        return self.nodes[-1]

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class PathCatalog:
    """All simple source-sink paths and their contiguous subpaths.

    ``subpaths`` is deduplicated and sorted; ``by_end``/``by_start``/``by_arc``
    map nodes / arc ids to subpath indices, ``st_by_arc`` maps arc ids to
    source-sink path indices.
    """

    st_paths: tuple
    subpaths: tuple
    by_end: Mapping
    by_start: Mapping
    by_arc: Mapping
    st_by_arc: Mapping
    sub_index: Mapping = field(repr=False)
    st_index: Mapping = field(repr=False)
    sub_arcsets: tuple = field(repr=False)
    st_arcsets: tuple = field(repr=False)

    def subpath_id(self, arcs: Sequence) -> Optional[int]:
        return self.sub_index.get(tuple(arcs))


def enumerate_st_paths(net: Network, *, guard: Optional[int] = None) -> tuple:
    """All simple source-sink paths, lexicographic in the arc order."""
    limit = guard_paths(guard)
    paths = []
    arc_stack = []
    node_stack = [net.source]
    visited = {net.source}

    def walk(v: str) -> None:
        if v == net.sink:
            if len(paths) >= limit:
                raise GuardExceeded(
                    f"more than {limit} source-sink paths; raise the guard to proceed"
                )
            paths.append(Path(tuple(a.id for a in arc_stack), tuple(node_stack)))
            return
        for arc in net.out_arcs(v):
            w = arc.head
            if w in visited:
                continue
            visited.add(w)
            arc_stack.append(arc)
            node_stack.append(w)
            walk(w)
            node_stack.pop()
            arc_stack.pop()
            visited.discard(w)

    walk(net.source)
    return tuple(paths)


def enumerate_subpaths(net: Network, *, guard: Optional[int] = None) -> PathCatalog:
    """Catalog of simple s-t paths plus every contiguous segment of one."""
    st_paths = enumerate_st_paths(net, guard=guard)
    limit = guard_paths(guard)
    seen = {}
    for path in st_paths:
        n = len(path.arcs)
        for i in range(n):
            for j in range(i + 1, n + 1):
                key = path.arcs[i:j]
                if key not in seen:
                    if len(seen) >= limit:
                        raise GuardExceeded(
                            f"more than {limit} subpaths; raise the guard to proceed"
                        )
                    seen[key] = Path(key, path.nodes[i : j + 1])
    order = sorted(seen, key=lambda key: tuple(net.arc_rank[a] for a in key))
    subpaths = tuple(seen[key] for key in order)
    by_end: dict = {}
    by_start: dict = {}
    by_arc: dict = {}
    for idx, sub in enumerate(subpaths):
        by_end.setdefault(sub.end, []).append(idx)
        by_start.setdefault(sub.start, []).append(idx)
        for a in sub.arcs:
            by_arc.setdefault(a, []).append(idx)
    st_by_arc: dict = {}
    for idx, path in enumerate(st_paths):
        for a in path.arcs:
            st_by_arc.setdefault(a, []).append(idx)
    return PathCatalog(
        st_paths=st_paths,
        subpaths=subpaths,
        by_end={v: tuple(ix) for v, ix in by_end.items()},
        by_start={v: tuple(ix) for v, ix in by_start.items()},
        by_arc={a: tuple(ix) for a, ix in by_arc.items()},
        st_by_arc={a: tuple(ix) for a, ix in st_by_arc.items()},
        sub_index={sub.arcs: i for i, sub in enumerate(subpaths)},
        st_index={p.arcs: i for i, p in enumerate(st_paths)},
        sub_arcsets=tuple(frozenset(sub.arcs) for sub in subpaths),
        st_arcsets=tuple(frozenset(p.arcs) for p in st_paths),
    )


Scenario = tuple


@dataclass(frozen=True)
class ScenarioSet:
    """All failure scenarios: subsets of ``universe`` of size at most ``gamma``."""

    universe: tuple
    gamma: int
    scenarios: tuple

    @property
    def count(self) -> int:
        return len(self.scenarios)


def scenario_count(universe_size: int, gamma: int) -> int:
    return sum(math.comb(universe_size, k) for k in range(0, min(gamma, universe_size) + 1))


def enumerate_scenarios(
    universe: Iterable[Hashable], gamma: int, *, guard: Optional[int] = None
) -> ScenarioSet:
    """All subsets of ``universe`` of size <= gamma, ordered by (size, arc order)."""
    if isinstance(gamma, bool) or not isinstance(gamma, int) or gamma < 0:
        raise NetworkError(f"gamma must be an integer >= 0, got {gamma!r}")
    ordered = tuple(sorted(set(universe), key=arc_sort_key))
    limit = guard_scenarios(guard)
    total = scenario_count(len(ordered), gamma)
    if total > limit:
        raise GuardExceeded(
            f"{total} scenarios exceed the guard of {limit}; raise the guard to proceed"
        )
    scenarios = []
    for k in range(0, min(gamma, len(ordered)) + 1):
        scenarios.extend(itertools.combinations(ordered, k))
    return ScenarioSet(universe=ordered, gamma=gamma, scenarios=tuple(scenarios))
