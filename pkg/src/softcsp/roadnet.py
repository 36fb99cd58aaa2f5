"""Road networks and the trip-level optimizer.

A network is a directed graph whose edges carry finite (time, energy)
costs.  The trip optimizer enumerates every *simple* path (no repeated
node) between two nodes whose total energy stays within a cap -- the cap
models the charge available for the trip -- and reduces the alternatives
to the non-dominated ones.

Two input syntaxes are supported: a line-oriented fact format ::

    edge(p,q,[2,4]).
    node(isolated).      % optional; when present, declares the node set

and a JSON document (the CLI's file format)::

    {"nodes": ["p", "q"],
     "edges": [{"from": "p", "to": "q", "time": 2, "energy": 4}]}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

from .errors import FormatError, InputError, ParseError, UnknownNodeError
from .frontier import STRICT, CostFrontier, frontier_filter
from .semiring import CostPair


@dataclass(frozen=True)
class RoadNetwork:
    nodes: Tuple[str, ...]
    edges: Dict[Tuple[str, str], CostPair]

    def neighbours(self, node: str) -> List[Tuple[str, CostPair]]:
        out = [(dst, cost) for (src, dst), cost in self.edges.items()
               if src == node]
        out.sort(key=lambda pair: pair[0])
        return out


@dataclass(frozen=True)
class TripSolution:
    """A simple path together with its summed (time, energy) cost."""

    path: Tuple[str, ...]
    cost: CostPair


def _check_cost(value, what: str, where: str):
    if type(value) is not int or value < 0:
        raise FormatError(f"{where}: {what} must be a non-negative integer, "
                          f"got {value!r}")
    return value


def _assemble(nodes, edge_list, declared_nodes: bool, describe):
    node_set = set(nodes)
    edges: Dict[Tuple[str, str], CostPair] = {}
    for where, src, dst, cost in edge_list:
        if (src, dst) in edges:
            raise describe(where, f"duplicate edge {src}->{dst}")
        if declared_nodes:
            for endpoint in (src, dst):
                if endpoint not in node_set:
                    raise describe(where, f"unknown node {endpoint!r}")
        else:
            node_set.update((src, dst))
        edges[(src, dst)] = cost
    return RoadNetwork(nodes=tuple(sorted(node_set)), edges=edges)


_EDGE_FACT = re.compile(
    r"^edge\(\s*(\w+)\s*,\s*(\w+)\s*,\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*\)$")
_NODE_FACT = re.compile(r"^node\(\s*(\w+)\s*\)$")


def parse_network(text: str) -> RoadNetwork:
    """Parse the fact format; errors carry the offending line number.

    Facts end with ``.`` and several may share a line.  Without ``node``
    facts the node set is the set of edge endpoints; with them, every
    endpoint must be declared.
    """
    nodes: List[str] = []
    edge_list = []
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        cut = raw_line.find("%")
        line = (raw_line if cut < 0 else raw_line[:cut]).strip()
        if not line:
            continue
        statements = [part.strip() for part in line.split(".")]
        if statements[-1]:
            raise ParseError(f"fact {statements[-1]!r} does not end with '.'",
                             line_no)
        for statement in statements[:-1]:
            if not statement:
                continue
            edge_match = _EDGE_FACT.match(statement)
            if edge_match:
                src, dst, time, energy = edge_match.groups()
                edge_list.append((line_no, src, dst,
                                  CostPair(int(time), int(energy))))
                continue
            node_match = _NODE_FACT.match(statement)
            if node_match:
                nodes.append(node_match.group(1))
                continue
            raise ParseError(f"malformed network fact {statement!r}", line_no)

    def describe(line_no, message):
        return ParseError(message, line_no)

    return _assemble(nodes, edge_list, declared_nodes=bool(nodes),
                     describe=describe)


def network_from_json(data) -> RoadNetwork:
    if not isinstance(data, dict) or "nodes" not in data or "edges" not in data:
        raise FormatError('network file must be an object with "nodes" and '
                          '"edges"')
    nodes = data["nodes"]
    if (not isinstance(nodes, list)
            or not all(isinstance(n, str) and n for n in nodes)):
        raise FormatError('"nodes" must be a list of node names')
    raw_edges = data["edges"]
    if not isinstance(raw_edges, list):
        raise FormatError('"edges" must be a list')
    edge_list = []
    for index, entry in enumerate(raw_edges):
        where = f"edges[{index}]"
        if not isinstance(entry, dict):
            raise FormatError(f"{where} must be an object")
        missing = [k for k in ("from", "to", "time", "energy") if k not in entry]
        if missing:
            raise FormatError(f"{where} is missing {missing!r}")
        time = _check_cost(entry["time"], "time", where)
        energy = _check_cost(entry["energy"], "energy", where)
        edge_list.append((where, entry["from"], entry["to"],
                          CostPair(time, energy)))

    def describe(where, message):
        return FormatError(f"{where}: {message}")

    return _assemble(nodes, edge_list, declared_nodes=True, describe=describe)


def load_network(path: str | Path) -> RoadNetwork:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    try:
        return network_from_json(data)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def enumerate_paths(net: RoadNetwork, source: str, dest: str,
                    energy_limit: int) -> List[TripSolution]:
    """All simple paths source -> dest with total energy within the cap.

    Paths have at least one edge and never repeat a node, so the
    destination only ever appears as the final endpoint; querying a node
    against itself therefore yields nothing.  Results are in lexicographic
    order of the node sequence.
    """
    for node in (source, dest):
        if node not in net.nodes:
            raise UnknownNodeError(f"unknown node {node!r}")
    if type(energy_limit) is not int or energy_limit < 0:
        raise InputError(f"energy limit must be a non-negative integer, "
                         f"got {energy_limit!r}")

    results: List[TripSolution] = []
    path = [source]
    visited = {source}

    def walk(node: str, time: int, energy: int) -> None:
        for neighbour, cost in net.neighbours(node):
            next_energy = energy + cost.energy
            if next_energy > energy_limit or neighbour in visited:
                continue
            path.append(neighbour)
            if neighbour == dest:
                results.append(TripSolution(path=tuple(path),
                                            cost=CostPair(time + cost.time,
                                                          next_energy)))
            else:
                visited.add(neighbour)
                walk(neighbour, time + cost.time, next_energy)
                visited.remove(neighbour)
            path.pop()

    walk(source, 0, 0)
    return results


def best_paths(net: RoadNetwork, source: str, dest: str, energy_limit: int,
               mode: str = STRICT) -> CostFrontier:
    """The non-dominated trips; witnesses are the node sequences."""
    trips = enumerate_paths(net, source, dest, energy_limit)
    return frontier_filter([(t.path, t.cost) for t in trips], mode)


def trip_solutions(front: CostFrontier) -> List[TripSolution]:
    return [TripSolution(path=item.witness, cost=item.cost) for item in front]
