"""Candidate-node enumeration strategies over the design graph.

All enumerators are pure and deterministic (given the seed, for the random
one), never emit duplicates, and never include the reference node itself.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from .dataset import Dataset, FieldType
from .design_space import DesignGraph, NodeId
from .errors import InvalidBound, UnknownNode


@dataclass(frozen=True)
class TraversalStrategy:
    kind: str  # "bfs" | "dfs" | "random" | "cluster"
    max_path: Optional[int] = None  # bfs
    sample_size: Optional[int] = None  # random
    seed: int = 0  # random

    def __post_init__(self):
        if self.kind == "bfs" and (self.max_path is None or self.max_path < 1):
            raise InvalidBound("bfs needs max_path >= 1")
        if self.kind == "random" and (self.sample_size is None or self.sample_size < 1):
            raise InvalidBound("random needs sample_size >= 1")


def Bfs(max_path: int) -> TraversalStrategy:
    return TraversalStrategy("bfs", max_path=max_path)


def Dfs() -> TraversalStrategy:
    return TraversalStrategy("dfs")


def Random(sample_size: int, seed: int = 0) -> TraversalStrategy:
    return TraversalStrategy("random", sample_size=sample_size, seed=seed)


def Cluster() -> TraversalStrategy:
    return TraversalStrategy("cluster")


def enumerate_bfs(graph: DesignGraph, n0: NodeId, max_path: int) -> list[NodeId]:
    """All nodes at distance 1..max_path, in breadth order then neighbor order."""
    if n0 not in graph:
        raise UnknownNode(repr(n0))
    if max_path < 1:
        raise InvalidBound("max_path must be >= 1")
    out: list[NodeId] = []
    seen = {n0}
    frontier = deque([(n0, 0)])
    while frontier:
        node, d = frontier.popleft()
        if d == max_path:
            continue
        for nb in graph.neighbors(node):
            if nb not in seen:
                seen.add(nb)
                out.append(nb)
                frontier.append((nb, d + 1))
    return out


def enumerate_dfs(graph: DesignGraph, n0: NodeId) -> list[NodeId]:
    """Depth-first over attribute-addition edges only, until the size boundary.

    Emits each node once, in discovery order, following dataset field order.
    """
    if n0 not in graph:
        raise UnknownNode(repr(n0))
    out: list[NodeId] = []
    seen = {n0}

    def visit(node: NodeId) -> None:
        if len(node) >= graph.max_attrs:
            return
        members = set(node.attrs)
        for f in graph.field_names:
            if f in members:
                continue
            child = NodeId.of(members | {f})
            if child in seen:
                continue
            seen.add(child)
            out.append(child)
            visit(child)

    visit(n0)
    return out


def enumerate_random(graph: DesignGraph, n0: NodeId, sample_size: int,
                     seed: int) -> list[NodeId]:
    """Uniform sample without replacement from all nodes except n0."""
    if sample_size < 1:
        raise InvalidBound("sample_size must be >= 1")
    population = [n for n in graph.nodes() if n != n0]
    rng = random.Random(seed)
    k = min(sample_size, len(population))
    return rng.sample(population, k)


@dataclass(frozen=True)
class ClusterCriteria:
    """Grouping signature for cluster-oriented traversal.

    The built-in signature is the multiset of field types of a node's
    attributes, ordered quantitative < temporal < nominal so that clusters of
    "denser" numeric nodes sort first on ties.
    """

    name: str = "field-type-multiset"


_TYPE_RANK = {FieldType.QUANTITATIVE: 0, FieldType.TEMPORAL: 1, FieldType.NOMINAL: 2}


def node_signature(node: NodeId, dataset: Dataset) -> tuple:
    kinds = sorted((dataset.field_type(a) for a in node.attrs),
                   key=lambda t: _TYPE_RANK[t])
    return tuple(_TYPE_RANK[k] for k in kinds)


def enumerate_cluster(graph: DesignGraph, n0: NodeId, dataset: Dataset,
                      criteria: ClusterCriteria = ClusterCriteria()) -> list[NodeId]:
    """Clusters ordered by minimum distance to n0 (ties: signature), flattened.

    The cluster containing n0 has minimum distance 0, so it always comes
    first; n0 itself is not emitted.
    """
    if n0 not in graph:
        raise UnknownNode(repr(n0))
    clusters: dict[tuple, list[NodeId]] = {}
    for node in graph.nodes():
        clusters.setdefault(node_signature(node, dataset), []).append(node)
    keyed = []
    for sig, members in clusters.items():
        min_dist = min(graph.shortest_path_len(m, n0) for m in members)
        keyed.append((min_dist, sig, sorted(members)))
    keyed.sort(key=lambda item: (item[0], item[1]))
    out: list[NodeId] = []
    for _, _, members in keyed:
        out.extend(m for m in members if m != n0)
    return out


def enumerate_nodes(graph: DesignGraph, n0: NodeId, strategy: TraversalStrategy,
                    dataset: Dataset) -> list[NodeId]:
    """Dispatch a strategy to its enumerator."""
    if strategy.kind == "bfs":
        return enumerate_bfs(graph, n0, strategy.max_path)
    if strategy.kind == "dfs":
        return enumerate_dfs(graph, n0)
    if strategy.kind == "random":
        return enumerate_random(graph, n0, strategy.sample_size, strategy.seed)
    if strategy.kind == "cluster":
        return enumerate_cluster(graph, n0, dataset)
    raise InvalidBound(f"unknown traversal kind {strategy.kind!r}")
