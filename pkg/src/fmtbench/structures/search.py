"""Bounded cycle and path-with-ear search on graphs.

Partial paths are abandoned as soon as the remaining length budget is smaller
than the BFS distance back to the target, which keeps long searches on gadget
graphs cheap.
"""

from __future__ import annotations

from collections import deque

from .core import FinStructure

INF = float("inf")


def bfs_distances(adj, source: int, blocked=frozenset()) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist and v not in blocked:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


class DistanceCache:
    """Memoised BFS distances per source vertex for one graph."""

    def __init__(self, g: FinStructure):
        self.adj = g.adjacency
        self._cache: dict[int, dict[int, int]] = {}

    def __call__(self, source: int) -> dict[int, int]:
        d = self._cache.get(source)
        if d is None:
            d = self._cache[source] = bfs_distances(self.adj, source)
        return d


def find_cycle_through(g: FinStructure, v: int, r: int, avoid=frozenset(), distances=None) -> list[int] | None:
    """r distinct vertices z1=v, z2, ..., zr with consecutive ones and (zr, z1) adjacent."""
    if r < 3:
        raise ValueError("cycle length must be at least 3")
    if v in avoid:
        return None
    adj = g.adjacency
    dist = distances(v) if distances is not None else bfs_distances(adj, v)
    path = [v]
    on_path = {v}

    def dfs(u):
        if len(path) == r:
            return v in adj[u]
        remaining = r - len(path)  # edges still to add, closing edge included: remaining + 1
        for w in adj[u]:
            if w in on_path or w in avoid:
                continue
            if dist.get(w, INF) > remaining:
                continue
            path.append(w)
            on_path.add(w)
            if dfs(w):
                return True
            path.pop()
            on_path.discard(w)
        return False

    return list(path) if dfs(v) else None


def find_path_with_ear(g: FinStructure, a: int, b: int, r: int, s: int, distances=None):
    """Path z0=a, ..., zr=b (distinct vertices) plus an s-cycle w1..ws disjoint from
    it with w1 adjacent to z_{r-1}.  Returns ``(path, ear)`` or None."""
    if r < 3 or s < 3:
        raise ValueError("path and ear lengths must be at least 3")
    if a == b:
        return None
    adj = g.adjacency
    dist_b = distances(b) if distances is not None else bfs_distances(adj, b)
    if dist_b.get(a, INF) > r:
        return None
    path = [a]
    on_path = {a}
    found = []

    def try_ear():
        penultimate = path[r - 1]
        for w in sorted(adj[penultimate]):
            if w in on_path:
                continue
            ear = find_cycle_through(g, w, s, avoid=on_path)
            if ear is not None:
                found.append(ear)
                return True
        return False

    def dfs(u):
        steps = len(path) - 1
        if steps == r:
            return u == b and try_ear()
        for w in adj[u]:
            if w in on_path:
                continue
            if w == b and steps + 1 != r:
                continue
            if dist_b.get(w, INF) > r - steps - 1:
                continue
            path.append(w)
            on_path.add(w)
            if dfs(w):
                return True
            path.pop()
            on_path.discard(w)
        return False

    if dfs(a):
        return list(path), found[0]
    return None


def chordless_cycles(g: FinStructure, max_len: int):
    """All chordless cycles of length 3..max_len, each once.

    A cycle is reported as a vertex list starting at its smallest vertex, with
    the second vertex smaller than the last one.
    """
    adj = g.adjacency
    out = []
    for s in g.universe:
        dist = bfs_distances(adj, s, blocked=frozenset(range(1, s)))
        for v1 in sorted(adj[s]):
            if v1 <= s:
                continue
            path = [s, v1]
            _chordless_dfs(adj, s, path, set(path), max_len, dist, out)
    return out


def _chordless_dfs(adj, s, path, on_path, max_len, dist, out):
    last = path[-1]
    interior = path[1:-1]
    for u in sorted(adj[last]):
        if u <= s or u in on_path:
            continue
        if any(u in adj[p] for p in interior):
            continue
        if s in adj[u]:
            if path[1] < u:
                out.append(path + [u])
            continue
        # path + u has len(path) edges; closing needs at least dist(u, s) more
        if len(path) + dist.get(u, INF) > max_len:
            continue
        path.append(u)
        on_path.add(u)
        _chordless_dfs(adj, s, path, on_path, max_len, dist, out)
        path.pop()
        on_path.discard(u)
