"""Simple bipartite graphs: construction, generators, connectivity, edge-list I/O.

Vertices are dense integer indices per side: left vertices 0..n1-1, right
vertices 0..n2-1.  Edges are (left, right) pairs.  Graphs are immutable after
construction and every function here is pure, so concurrent use is safe.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass


@dataclass(frozen=True)
class DegreeProfile:
    """Per-side degree sequences and the regularity flags derived from them."""

    left_degrees: tuple[int, ...]
    right_degrees: tuple[int, ...]
    delta: int
    is_left_regular: bool
    is_biregular: bool
    is_regular: bool


@dataclass(frozen=True)
class BipartiteGraph:
    """Immutable simple bipartite graph with explicit sides X (left) and Y (right)."""

    n1: int
    n2: int
    edges: frozenset[tuple[int, int]]

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def left_neighbors(self) -> list[list[int]]:
        """Sorted neighbor list for every left vertex."""
        adj: list[list[int]] = [[] for _ in range(self.n1)]
        for u, v in self.sorted_edges():
            adj[u].append(v)
        return adj

    def right_neighbors(self) -> list[list[int]]:
        """Sorted neighbor list for every right vertex."""
        adj: list[list[int]] = [[] for _ in range(self.n2)]
        for u, v in sorted(self.edges, key=lambda e: (e[1], e[0])):
            adj[v].append(u)
        return adj

    def degree_profile(self) -> DegreeProfile:
        left = tuple(len(nb) for nb in self.left_neighbors())
        right = tuple(len(nb) for nb in self.right_neighbors())
        delta = min(min(left), min(right))
        left_regular = len(set(left)) == 1
        biregular = left_regular and len(set(right)) == 1
        regular = biregular and left[0] == right[0]
        return DegreeProfile(left, right, delta, left_regular, biregular, regular)

    def is_connected(self) -> bool:
        """BFS over the whole vertex set (left indices first, then right)."""
        if self.n <= 1:
            return True
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(self.n1 + v)
            adj[self.n1 + v].append(u)
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    queue.append(y)
        return count == self.n


def build(n1: int, n2: int, edges) -> BipartiteGraph:
    """Validate and construct a bipartite graph.

    Rejects out-of-range endpoints and duplicate edges, naming the offending
    pair in the error message.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError(f"both sides must be nonempty, got sizes ({n1}, {n2})")
    seen: set[tuple[int, int]] = set()
    for pair in edges:
        u, v = pair
        if not (0 <= u < n1 and 0 <= v < n2):
            raise ValueError(
                f"edge ({u}, {v}) out of range for sides ({n1}, {n2})"
            )
        if (u, v) in seen:
            raise ValueError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
    return BipartiteGraph(n1, n2, frozenset(seen))


def complete_bipartite(m: int, n: int) -> BipartiteGraph:
    """K_{m,n}: left side of size m, right side of size n, all m*n edges."""
    if m < 1 or n < 1:
        raise ValueError(f"complete bipartite sides must be >= 1, got ({m}, {n})")
    return BipartiteGraph(m, n, frozenset((i, j) for i in range(m) for j in range(n)))


def path_graph(n: int) -> BipartiteGraph:
    """Path on n vertices, sides assigned by alternation.

    Path vertex 2i becomes left vertex i, path vertex 2i+1 becomes right
    vertex i, so the sides have sizes (ceil(n/2), floor(n/2)).
    """
    if n < 2:
        raise ValueError(f"path needs at least 2 vertices, got {n}")
    edges = []
    for k in range(n - 1):
        if k % 2 == 0:
            edges.append((k // 2, k // 2))
        else:
            edges.append((k // 2 + 1, k // 2))
    return build((n + 1) // 2, n // 2, edges)


TREE_MODES = ("balanced", "unbalanced", "average")


def _tree_side_sizes(n: int, mode: str) -> tuple[int, int]:
    if mode == "balanced":
        return (n + 1) // 2, n // 2
    if mode == "unbalanced":
        return 1, n - 1
    if mode == "average":
        if n % 2 == 0:
            num1, num2 = 3 * n - 4, n + 4
        elif n % 4 == 3:
            num1, num2 = 3 * n - 3, n + 3
        else:  # n % 4 == 1
            num1, num2 = 3 * n - 5, n + 5
        if num1 % 4 or num2 % 4:
            raise ValueError(
                f"average bipartition infeasible for n={n}: "
                f"side formula gives ({num1}/4, {num2}/4)"
            )
        return num1 // 4, num2 // 4
    raise ValueError(f"unknown tree mode {mode!r}; expected one of {TREE_MODES}")


def random_tree(n: int, mode: str, seed: int) -> BipartiteGraph:
    """Seeded random tree whose alternation bipartition has the requested sizes.

    Grows a spanning tree by attaching each new vertex to a uniformly random
    vertex of the opposite side, alternating sides at random while capacity
    remains.  The result is always connected with m = n - 1, and identical
    seeds give identical trees.
    """
    if n < 2:
        raise ValueError(f"tree needs at least 2 vertices, got {n}")
    a, b = _tree_side_sizes(n, mode)
    rng = random.Random(seed)
    edges = [(0, 0)]
    left_used, right_used = 1, 1
    while left_used + right_used < n:
        can_left = left_used < a
        can_right = right_used < b
        grow_left = rng.random() < 0.5 if can_left and can_right else can_left
        if grow_left:
            edges.append((left_used, rng.randrange(right_used)))
            left_used += 1
        else:
            edges.append((rng.randrange(left_used), right_used))
            right_used += 1
    return build(a, b, edges)


def is_minimally_connected(g: BipartiteGraph) -> bool:
    """True iff g is connected and every edge is a bridge (m = n - 1)."""
    return g.is_connected() and g.m == g.n - 1


def edge_connectivity(g: BipartiteGraph) -> int:
    """Edge connectivity via unit-capacity max-flow (Edmonds-Karp).

    Fixing source 0, the minimum s-t cut over all sinks t equals the global
    minimum edge cut.  Intended for desk scale (n <= 64).  Returns 0 for
    disconnected input.
    """
    if not g.is_connected():
        return 0
    n = g.n
    if n < 2:
        return 0
    pairs = [(u, g.n1 + v) for u, v in g.edges]
    best = g.m
    for sink in range(1, n):
        best = min(best, _max_flow_unit(n, pairs, 0, sink))
    return best


def _max_flow_unit(n: int, pairs: list[tuple[int, int]], s: int, t: int) -> int:
    # residual capacities; undirected unit edges carry capacity 1 each way
    cap = [[0] * n for _ in range(n)]
    for u, v in pairs:
        cap[u][v] = 1
        cap[v][u] = 1
    flow = 0
    while True:
        parent = [-1] * n
        parent[s] = s
        queue = deque([s])
        while queue and parent[t] == -1:
            x = queue.popleft()
            for y in range(n):
                if parent[y] == -1 and cap[x][y] > 0:
                    parent[y] = x
                    queue.append(y)
        if parent[t] == -1:
            return flow
        y = t
        while y != s:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1


def write_edge_list(g: BipartiteGraph) -> str:
    """Serialize to the `bip` edge-list text format (edges sorted, 0-based)."""
    lines = [f"bip {g.n1} {g.n2}"]
    lines += [f"e {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> BipartiteGraph:
    """Parse the `bip` edge-list format; `#` comment lines are ignored."""
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "bip":
                raise ValueError(f"line {lineno}: expected header 'bip <n1> <n2>'")
            header = (int(parts[1]), int(parts[2]))
        else:
            if len(parts) != 3 or parts[0] != "e":
                raise ValueError(f"line {lineno}: expected edge line 'e <left> <right>'")
            edges.append((int(parts[1]), int(parts[2])))
    if header is None:
        raise ValueError("missing 'bip <n1> <n2>' header")
    return build(header[0], header[1], edges)
