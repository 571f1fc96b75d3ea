"""Independent brute-force oracles the real implementations are checked against.

Everything here works on explicit node lists and explicit adjacency, never on
the library's lazy neighbor rule.
"""

from collections import deque
from itertools import combinations

from vizrec.design_space import NodeId


def all_nodes(fields, max_attrs):
    nodes = []
    for k in range(1, max_attrs + 1):
        nodes.extend(NodeId.of(c) for c in combinations(sorted(fields), k))
    return nodes


def adjacent(a: NodeId, b: NodeId) -> bool:
    return len(set(a.attrs) ^ set(b.attrs)) == 1


def bfs_distance(fields, max_attrs, start: NodeId, goal: NodeId):
    """Plain BFS over materialized adjacency; None if unreachable."""
    nodes = all_nodes(fields, max_attrs)
    adj = {n: [m for m in nodes if adjacent(n, m)] for n in nodes}
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            return dist[cur]
        for nb in adj[cur]:
            if nb not in dist:
                dist[nb] = dist[cur] + 1
                queue.append(nb)
    return None


def nodes_within(fields, max_attrs, start: NodeId, radius: int):
    """All nodes at distance 1..radius from start (set, not ordered)."""
    return {
        n for n in all_nodes(fields, max_attrs)
        if n != start
        and (d := bfs_distance(fields, max_attrs, start, n)) is not None
        and d <= radius
    }
