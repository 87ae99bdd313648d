"""Loop-free multigraphs stored as edge classes.

An edge class is an unordered vertex pair together with its multiplicity,
the number of parallel edges joining the pair. Vertices are the integers
``0 .. vertex_count - 1``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence

from .errors import BadVertexId, DuplicateClass, LoopEdge, ZeroMultiplicity

__all__ = ["Multigraph", "build", "pair", "underlying_simple", "induced", "is_series_parallel"]


def pair(u: int, v: int) -> tuple[int, int]:
    """Canonical key of the unordered pair ``{u, v}``."""
    return (u, v) if u < v else (v, u)


class Multigraph:
    """Immutable loop-free multigraph.

    ``classes`` keeps the orientation the caller supplied (so files round
    trip unchanged); lookups go through the canonical :func:`pair` key.
    """

    __slots__ = ("vertex_count", "classes", "adjacency", "_degree", "_index", "_max_degree")

    def __init__(self, vertex_count: int, classes: Iterable[Sequence[int]] = ()) -> None:
        if vertex_count < 0:
            raise BadVertexId(f"negative vertex count {vertex_count}")
        self.vertex_count = vertex_count
        self.classes: list[tuple[int, int, int]] = []
        self.adjacency: list[list[tuple[int, int]]] = [[] for _ in range(vertex_count)]
        self._degree = [0] * vertex_count
        self._index: dict[tuple[int, int], int] = {}
        adjacency = self.adjacency
        degree = self._degree
        index = self._index
        for u, v, mult in classes:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise BadVertexId(f"edge ({u}, {v}) outside 0..{vertex_count - 1}")
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")
            if mult < 1:
                raise ZeroMultiplicity(f"edge ({u}, {v}) has multiplicity {mult}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise DuplicateClass(f"pair {key} listed twice")
            index[key] = len(self.classes)
            self.classes.append((u, v, mult))
            adjacency[u].append((v, mult))
            adjacency[v].append((u, mult))
            degree[u] += mult
            degree[v] += mult
        self._max_degree = max(degree, default=0)

    def degree(self, v: int) -> int:
        return self._degree[v]

    @property
    def degrees(self) -> list[int]:
        return list(self._degree)

    @property
    def max_degree(self) -> int:
        """Delta(G), counting parallel edges."""
        return self._max_degree

    @property
    def edge_count(self) -> int:
        """Number of edges, with multiplicity."""
        return sum(m for _, _, m in self.classes)

    def mult(self, u: int, v: int) -> int:
        """Multiplicity of ``uv``; zero when the vertices are not adjacent."""
        i = self._index.get(pair(u, v))
        return 0 if i is None else self.classes[i][2]

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        """``(neighbor, multiplicity)`` pairs at ``v``."""
        return self.adjacency[v]

    def class_map(self) -> dict[tuple[int, int], int]:
        return {pair(u, v): m for u, v, m in self.classes}

    def __len__(self) -> int:
        return self.vertex_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.class_map() == other.class_map()

    def __hash__(self) -> int:
        return hash((self.vertex_count, frozenset(self.class_map().items())))

    def __repr__(self) -> str:
        return f"Multigraph({self.vertex_count}, {self.classes!r})"

    def relabel(self, perm: Sequence[int]) -> Multigraph:
        """Copy with vertex ``v`` renamed to ``perm[v]``."""
        return Multigraph(self.vertex_count, [(perm[u], perm[v], m) for u, v, m in self.classes])

    def underlying_simple(self) -> Multigraph:
        return underlying_simple(self)

    def induced(self, vertices: Iterable[int]) -> Multigraph:
        return induced(self, vertices)

    def is_series_parallel(self) -> bool:
        return is_series_parallel(self)


def build(vertex_count: int, classes: Iterable[Sequence[int]] = ()) -> Multigraph:
    """Validate and build a multigraph in O(n + m).

    Raises LoopEdge, DuplicateClass, BadVertexId or ZeroMultiplicity.
    """
    return Multigraph(vertex_count, classes)


def underlying_simple(g: Multigraph) -> Multigraph:
    return Multigraph(g.vertex_count, [(u, v, 1) for u, v, _ in g.classes])


def induced(g: Multigraph, vertices: Iterable[int]) -> Multigraph:
    """G[U], relabelled so that the sorted members of U become 0, 1, ...

    Multiplicities are preserved.
    """
    members = sorted(set(vertices))
    for v in members:
        if not 0 <= v < g.vertex_count:
            raise BadVertexId(f"vertex {v} not in graph")
    new_id = {v: i for i, v in enumerate(members)}
    return Multigraph(
        len(members),
        [(new_id[u], new_id[v], m) for u, v, m in g.classes if u in new_id and v in new_id],
    )


def is_series_parallel(g: Multigraph) -> bool:
    """True iff ``g`` has no subdivision of K4.

    Works on the underlying simple graph: vertices of degree at most one are
    deleted and degree-two vertices are suppressed (a parallel edge created
    by the suppression is merged at once) until nothing applies. The graph is
    series-parallel exactly when everything disappears. Runs in O(n + m).
    """
    n = g.vertex_count
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v, _ in g.classes:
        adj[u].add(v)
        adj[v].add(u)
    alive = [True] * n
    remaining = n
    queue = deque(v for v in range(n) if len(adj[v]) <= 2)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        nbrs = adj[v]
        d = len(nbrs)
        if d > 2:
            continue
        alive[v] = False
        remaining -= 1
        if d == 2:
            x, y = nbrs
            adj[x].discard(v)
            adj[y].discard(v)
            if y in adj[x]:
                # suppressing v would create a parallel xy edge; merging it drops both degrees
                queue.append(x)
                queue.append(y)
            else:
                adj[x].add(y)
                adj[y].add(x)
        else:
            for x in nbrs:
                adj[x].discard(v)
                if len(adj[x]) <= 2:
                    queue.append(x)
        nbrs.clear()
    return remaining == 0
