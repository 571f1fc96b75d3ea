"""Design-space graph over attribute sets, with implicit add/remove-one edges.

Nodes are attribute subsets of size 1..max_attrs; two nodes are adjacent when
their symmetric difference has exactly one attribute. Adjacency is computed on
demand: materializing C(n, 3) nodes x ~n edges buys nothing when the neighbor
rule is O(n).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .dataset import Dataset
from .errors import InvalidBound, UnknownNode


@dataclass(frozen=True, order=True)
class NodeId:
    attrs: tuple[str, ...]  # sorted, unique

    @staticmethod
    def of(names: Iterable[str]) -> "NodeId":
        return NodeId(tuple(sorted(set(names))))

    def __len__(self) -> int:
        return len(self.attrs)

    def __repr__(self) -> str:
        return "{" + ",".join(self.attrs) + "}"


class ScopeMode(Enum):
    HYBRID = "hybrid"
    VISUAL_ENCODING_ONLY = "visual-encoding-only"
    DATA_QUERY_ONLY = "data-query-only"


@dataclass(frozen=True)
class EnumerationScope:
    """Which slice of the design space an algorithm enumerates over.

    VISUAL_ENCODING_ONLY pins enumeration to the single node of the selected
    attributes; DATA_QUERY_ONLY works at node granularity with encodings
    merged away. HYBRID (default) uses both.
    """

    mode: ScopeMode = ScopeMode.HYBRID
    selected: Optional[NodeId] = None

    def __post_init__(self):
        if self.mode is ScopeMode.VISUAL_ENCODING_ONLY:
            if self.selected is None or len(self.selected) == 0:
                raise InvalidBound("visual-encoding-only scope needs a non-empty selection")


class DesignGraph:
    """Immutable graph handle; all queries are pure."""

    def __init__(self, field_names: Iterable[str], max_attrs: int = 3,
                 dataset_ref: str = ""):
        self.field_names = tuple(field_names)
        n = len(self.field_names)
        if not 1 <= max_attrs <= n:
            raise InvalidBound(f"max_attrs must be in 1..{n}, got {max_attrs}")
        self.max_attrs = max_attrs
        self.dataset_ref = dataset_ref
        self._field_set = frozenset(self.field_names)

    @property
    def node_count(self) -> int:
        n = len(self.field_names)
        return sum(math.comb(n, k) for k in range(1, self.max_attrs + 1))

    def __contains__(self, node: NodeId) -> bool:
        k = len(node.attrs)
        return (1 <= k <= self.max_attrs
                and len(set(node.attrs)) == k
                and tuple(sorted(node.attrs)) == node.attrs
                and set(node.attrs) <= self._field_set)

    def nodes(self) -> Iterator[NodeId]:
        """All nodes: size ascending, fields in header order within a size."""
        for k in range(1, self.max_attrs + 1):
            for combo in combinations(self.field_names, k):
                yield NodeId.of(combo)

    def _require(self, node: NodeId) -> None:
        if node not in self:
            raise UnknownNode(repr(node))

    def neighbors(self, node: NodeId) -> list[NodeId]:
        """Single-attribute additions (field order), then removals (field order)."""
        self._require(node)
        out: list[NodeId] = []
        members = set(node.attrs)
        if len(members) < self.max_attrs:
            for f in self.field_names:
                if f not in members:
                    out.append(NodeId.of(members | {f}))
        if len(members) > 1:
            for f in self.field_names:
                if f in members:
                    out.append(NodeId.of(members - {f}))
        return out

    def shortest_path_len(self, a: NodeId, b: NodeId) -> int:
        """Minimal edge count; every intermediate node stays within size bounds."""
        self._require(a)
        self._require(b)
        if a == b:
            return 0
        seen = {a}
        frontier = deque([(a, 0)])
        while frontier:
            node, d = frontier.popleft()
            for nb in self.neighbors(node):
                if nb == b:
                    return d + 1
                if nb not in seen:
                    seen.add(nb)
                    frontier.append((nb, d + 1))
        raise UnknownNode(f"no path between {a!r} and {b!r}")

    def within_constraints(self, node: NodeId, n0: NodeId,
                           max_path: Optional[int] = None,
                           max_inputs: Optional[int] = None) -> bool:
        """Path-length bound from the reference node plus an input-count bound."""
        if max_inputs is not None and len(node) > max_inputs:
            return False
        if max_path is not None and self.shortest_path_len(node, n0) > max_path:
            return False
        return True


def build_graph(dataset: Dataset, max_attrs: int = 3) -> DesignGraph:
    return DesignGraph(dataset.field_names, max_attrs, dataset_ref=dataset.name)
