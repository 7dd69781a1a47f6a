"""Exact maximum flow (Edmonds-Karp) and flow decomposition.

Everything here runs over exact rationals; the max-flow routine also returns
the value of a minimum cut found from the final residual graph, which callers
use as an optimality certificate.
"""

from __future__ import annotations

from collections import deque
from typing import Mapping, Optional

from .network import Network, NetworkError, Path, arc_sort_key
from .rational import ZERO, rat


def nominal_max_flow(net: Network):
    """Maximum source-sink flow value, an optimal arc flow, and a min-cut value.

    Returns ``(value, arc_flow, min_cut_value)`` with ``arc_flow`` keyed by
    arc id.  The cut value comes from the residual reachability cut, so
    ``value == min_cut_value`` certifies optimality.
    """
    flow = {arc.id: ZERO for arc in net.arcs}
    source, sink = net.source, net.sink
    while True:
        # BFS for a shortest augmenting path; parent[v] = (arc, direction)
        parent: dict = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            v = queue.popleft()
            for arc in net.out_arcs(v):
                if arc.head not in parent and rat(arc.capacity) - flow[arc.id] > 0:
                    parent[arc.head] = (arc, 1)
                    queue.append(arc.head)
            for arc in net.in_arcs(v):
                if arc.tail not in parent and flow[arc.id] > 0:
                    parent[arc.tail] = (arc, -1)
                    queue.append(arc.tail)
        if sink not in parent:
            break
        # Find the bottleneck along the augmenting path, then push.
        slack = None
        v = sink
        while v != source:
            arc, direction = parent[v]
            room = rat(arc.capacity) - flow[arc.id] if direction > 0 else flow[arc.id]
            slack = room if slack is None or room < slack else slack
            v = arc.tail if direction > 0 else arc.head
        v = sink
        while v != source:
            arc, direction = parent[v]
            flow[arc.id] += slack if direction > 0 else -slack
            v = arc.tail if direction > 0 else arc.head
    value = sum((flow[a.id] for a in net.out_arcs(source)), ZERO) - sum(
        (flow[a.id] for a in net.in_arcs(source)), ZERO
    )
    # Residual reachability from the source gives a minimum cut.
    reach = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        for arc in net.out_arcs(v):
            if arc.head not in reach and rat(arc.capacity) - flow[arc.id] > 0:
                reach.add(arc.head)
                stack.append(arc.head)
        for arc in net.in_arcs(v):
            if arc.tail not in reach and flow[arc.id] > 0:
                reach.add(arc.tail)
                stack.append(arc.tail)
    cut_value = sum(
        (rat(arc.capacity) for arc in net.arcs if arc.tail in reach and arc.head not in reach),
        ZERO,
    )
    return value, flow, cut_value


def path_decompose(arc_flow: Mapping, net: Network, from_node: str, to_node: str):
    """Decompose an arc flow into simple ``from_node``-``to_node`` paths.

    Cycle flow is discarded; the returned path values sum to the net outflow
    of ``from_node``.  Negative entries or a conservation violation at any
    other node raise :class:`NetworkError`.
    """
    if from_node == to_node:
        raise NetworkError("decomposition endpoints must differ")
    remaining = {}
    for arc_id, value in arc_flow.items():
        value = rat(value)
        if value < 0:
            raise NetworkError(f"negative flow on arc {arc_id!r}")
        if arc_id not in net.arc_by_id:
            raise NetworkError(f"flow on unknown arc {arc_id!r}")
        if value > 0:
            remaining[arc_id] = value
    balance: dict = {}
    for arc_id, value in remaining.items():
        arc = net.arc_by_id[arc_id]
        balance[arc.head] = balance.get(arc.head, ZERO) + value
        balance[arc.tail] = balance.get(arc.tail, ZERO) - value
    for v, net_in in balance.items():
        if v not in (from_node, to_node) and net_in != 0:
            raise NetworkError(f"flow conservation violated at node {v!r}")

    def find_path() -> Optional[list]:
        stack = [(from_node, [])]
        visited = {from_node}
        while stack:
            v, trail = stack.pop()
            if v == to_node:
                return trail
            # Reverse-sorted push so the lexicographically first arc pops first.
            for arc in sorted(
                (a for a in net.out_arcs(v) if remaining.get(a.id, ZERO) > 0 and a.head not in visited),
                key=lambda a: arc_sort_key(a.id),
                reverse=True,
            ):
                visited.add(arc.head)
                stack.append((arc.head, trail + [arc]))
        return None

    pieces = []
    while True:
        trail = find_path()
        if trail is None:
            break
        value = min(remaining[arc.id] for arc in trail)
        for arc in trail:
            remaining[arc.id] -= value
            if remaining[arc.id] == 0:
                del remaining[arc.id]
        nodes = (from_node,) + tuple(arc.head for arc in trail)
        pieces.append((Path(tuple(arc.id for arc in trail), nodes), value))
    return pieces
