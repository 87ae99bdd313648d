"""Brute-force ground truth for desk-scale instances.

Nothing here is clever on purpose: these functions exist to check the
reducer and colorer, so they share no code with them beyond the graph type.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExceeded, NoneFound, PreconditionViolated
from .multigraph import Multigraph, pair
from .reducer import Configuration, Fan, Isolated, PendantClass, TriplePath, TwinPair

__all__ = [
    "Budget",
    "OddSetReport",
    "chi_exact",
    "is_k_colorable_exact",
    "find_coloring_exact",
    "gamma_exact",
    "lower_bound",
    "find_config_bruteforce",
    "config_holds",
    "gen_sp",
]


@dataclass(frozen=True)
class Budget:
    max_vertices: int = 10
    max_edges: int = 32

    def check(self, g: Multigraph) -> None:
        if g.vertex_count > self.max_vertices:
            raise BudgetExceeded(f"{g.vertex_count} vertices > {self.max_vertices}")
        if g.edge_count > self.max_edges:
            raise BudgetExceeded(f"{g.edge_count} edges > {self.max_edges}")


DEFAULT_BUDGET = Budget()


# -- exact edge coloring ------------------------------------------------------


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def find_coloring_exact(g: Multigraph, k: int, budget: Budget = DEFAULT_BUDGET) -> dict[tuple[int, int], list[int]] | None:
    """A k-edge-coloring of ``g`` found by exhaustive search, or None.

    Each step picks the uncolored class with the least slack (free colors
    minus multiplicity) and tries every admissible color set for it. Colors
    not used anywhere yet are interchangeable, so a set may only add fresh
    colors as the next unused indices.
    """
    budget.check(g)
    if k < 0:
        raise ValueError("k must be non-negative")
    if g.max_degree > k:
        return None
    classes = g.classes
    n_cls = len(classes)
    full = (1 << k) - 1
    seen = [0] * g.vertex_count
    incident: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for i, (u, v, _) in enumerate(classes):
        incident[u].append(i)
        incident[v].append(i)
    # static tie-break: heavier endpoints first, then class id
    rank = sorted(range(n_cls), key=lambda i: (-max(g.degree(classes[i][0]), g.degree(classes[i][1])), i))
    assigned = [0] * n_cls
    done = [False] * n_cls

    def slack(i: int) -> int:
        u, v, m = classes[i]
        return bin(full & ~(seen[u] | seen[v])).count("1") - m

    def search(remaining: int, used: int) -> bool:
        if remaining == 0:
            return True
        best, best_slack = -1, k + 1
        for i in rank:
            if not done[i]:
                sl = slack(i)
                if sl < best_slack:
                    best, best_slack = i, sl
                    if sl < 0:
                        return False
        u, v, m = classes[best]
        free = full & ~(seen[u] | seen[v])
        used_mask = (1 << used) - 1
        old_colors = _bits(free & used_mask)
        fresh_available = k - used
        done[best] = True
        for j in range(min(m, len(old_colors)), -1, -1):
            n_fresh = m - j
            if n_fresh > fresh_available:
                break
            fresh = ((1 << n_fresh) - 1) << used
            for combo in combinations(old_colors, j):
                mask = fresh
                for c in combo:
                    mask |= 1 << c
                seen[u] |= mask
                seen[v] |= mask
                assigned[best] = mask
                ok = all(slack(i) >= 0 for x in (u, v) for i in incident[x] if not done[i])
                if ok and search(remaining - 1, used + n_fresh):
                    return True
                seen[u] &= ~mask
                seen[v] &= ~mask
        done[best] = False
        return False

    if not search(n_cls, 0):
        return None
    return {pair(u, v): [c + 1 for c in _bits(assigned[i])] for i, (u, v, _) in enumerate(classes)}


def is_k_colorable_exact(g: Multigraph, k: int, budget: Budget = DEFAULT_BUDGET) -> bool:
    return find_coloring_exact(g, k, budget) is not None


def chi_exact(g: Multigraph, budget: Budget = DEFAULT_BUDGET) -> int:
    """Exact chromatic index: the first k from Delta upward that admits a coloring."""
    budget.check(g)
    k = g.max_degree
    while not is_k_colorable_exact(g, k, budget):
        k += 1
    return k


# -- odd-set density ---------------------------------------------------------


@dataclass(frozen=True)
class OddSetReport:
    U: tuple[int, ...]
    edges_inside: int
    density: Fraction


def gamma_exact(g: Multigraph, pruned: bool = False, max_vertices: int = 20) -> OddSetReport:
    """Maximum of 2|E(G[U])| / (|U| - 1) over odd U with |U| >= 3.

    With ``pruned=True`` only sets whose induced simple graph has minimum
    degree at least two are examined. An empty family gives density 0.
    """
    n = g.vertex_count
    if n > max_vertices:
        raise BudgetExceeded(f"{n} vertices > {max_vertices}")
    cls = [((1 << u) | (1 << v), m) for u, v, m in g.classes]
    nbr = [0] * n
    for u, v, _ in g.classes:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    best = OddSetReport((), 0, Fraction(0))
    for size in range(3, n + 1, 2):
        for members in combinations(range(n), size):
            mask = 0
            for v in members:
                mask |= 1 << v
            if pruned and any(bin(nbr[v] & mask).count("1") < 2 for v in members):
                continue
            inside = sum(m for both, m in cls if mask & both == both)
            density = Fraction(2 * inside, size - 1)
            if density > best.density:
                best = OddSetReport(members, inside, density)
    return best


def lower_bound(g: Multigraph) -> int:
    """max(Delta, ceil(Gamma))."""
    density = gamma_exact(g).density
    return max(g.max_degree, -(-density.numerator // density.denominator))


# -- structural configurations ---------------------------------------------


def find_config_bruteforce(s: Multigraph) -> Configuration:
    """Locate one of the four local configurations in a simple graph.

    Checks the defining neighbourhood conditions literally, in the order
    (a) low degree, (b) twins, (c) path-like, (d) fan.
    """
    if any(m != 1 for _, _, m in s.classes):
        raise PreconditionViolated("graph is not simple")
    n = s.vertex_count
    if n == 0:
        raise NoneFound("null graph")
    nbrs = [frozenset(x for x, _ in s.neighbors(v)) for v in range(n)]

    for v in range(n):
        if not nbrs[v]:
            return Isolated(v)
        if len(nbrs[v]) == 1:
            (x,) = nbrs[v]
            return PendantClass(v, x, 1)

    deg2 = [v for v in range(n) if len(nbrs[v]) == 2]
    for u, v in combinations(deg2, 2):
        if nbrs[u] == nbrs[v]:
            x, y = sorted(nbrs[u])
            return TwinPair(x, y, u, v, 1, 1, 1, 1)

    # (c): N(v) = {u, w}, N(u) within {v, w, z}
    for v in deg2:
        for u in nbrs[v]:
            (w,) = nbrs[v] - {u}
            rest = nbrs[u] - {v, w}
            if len(rest) > 1:
                continue
            b = 1 if w in nbrs[u] else 0
            if not rest:
                return TriplePath(u, w, v, 1, b, 1)
            (z,) = rest
            return Fan(u, w, z, v, None, 1, b, 1, 0, 1, 0)

    # (d): N(w) = {u1, u2, v1, v2}, N(v_i) = {w, u_i}
    for w in range(n):
        if len(nbrs[w]) != 4:
            continue
        spokes = [v for v in nbrs[w] if len(nbrs[v]) == 2]
        for v1, v2 in combinations(spokes, 2):
            (u1,) = nbrs[v1] - {w}
            (u2,) = nbrs[v2] - {w}
            if len({v1, v2, u1, u2, w}) == 5 and nbrs[w] == {u1, u2, v1, v2}:
                return Fan(w, u1, u2, v1, v2, 1, 1, 1, 1, 1, 1)
    raise NoneFound("no configuration; the graph is not series-parallel")


def config_holds(g: Multigraph, conf: Configuration) -> bool:
    """True iff ``conf`` describes ``g`` exactly: named vertices distinct,
    stated multiplicities exact, and the constrained vertices have no other
    neighbours."""

    def nbhd(v: int) -> dict[int, int]:
        if not 0 <= v < g.vertex_count:
            return {}
        return dict(g.neighbors(v))

    def exactly(v: int, want: dict[int, int]) -> bool:
        return nbhd(v) == {x: m for x, m in want.items() if m}

    if isinstance(conf, Isolated):
        return 0 <= conf.v < g.vertex_count and not nbhd(conf.v)
    if isinstance(conf, PendantClass):
        return conf.m >= 1 and conf.v != conf.x and exactly(conf.v, {conf.x: conf.m})
    if isinstance(conf, TwinPair):
        x, y, u, v = conf.x, conf.y, conf.u, conf.v
        return (
            len({x, y, u, v}) == 4
            and min(conf.a, conf.b, conf.c, conf.d) >= 1
            and conf.a >= conf.d
            and exactly(u, {x: conf.a, y: conf.b})
            and exactly(v, {x: conf.c, y: conf.d})
        )
    if isinstance(conf, TriplePath):
        w, u1, v1 = conf.w, conf.u1, conf.v1
        return (
            len({w, u1, v1}) == 3
            and conf.a >= 1
            and conf.c >= 1
            and exactly(v1, {w: conf.c, u1: conf.a})
            and exactly(w, {v1: conf.c, u1: conf.b})
        )
    if isinstance(conf, Fan):
        w, u1, u2, v1, v2 = conf.w, conf.u1, conf.u2, conf.v1, conf.v2
        named = [x for x in (w, u1, u2, v1, v2) if x is not None]
        if len(set(named)) != len(named) or v1 is None or conf.c + conf.d < 1:
            return False
        if not (conf.a >= 1 and conf.c >= 1 and exactly(v1, {w: conf.c, u1: conf.a})):
            return False
        w_want = {u1: conf.b, v1: conf.c, u2: conf.e}
        if v2 is None:
            if conf.d or conf.f:
                return False
        else:
            if not (conf.d >= 1 and conf.f >= 1 and exactly(v2, {w: conf.d, u2: conf.f})):
                return False
            w_want[v2] = conf.d
        return exactly(w, w_want) and g.mult(u1, v1) == conf.a and (v2 is None or g.mult(u2, v2) == conf.f)
    raise TypeError(f"not a configuration: {conf!r}")


# -- generator --------------------------------------------------------------


def gen_sp(n_target: int, max_mult: int, seed: int) -> Multigraph:
    """Random connected series-parallel multigraph on exactly ``n_target`` vertices.

    Grows a random two-terminal composition tree: a node owing ``inner``
    internal vertices becomes a single edge when ``inner == 0``, otherwise a
    series composition (one new middle vertex, the rest split uniformly) or
    a parallel composition (``inner`` split uniformly), each with
    probability 1/2. Vertex ids are shuffled and every class gets an
    independent multiplicity in ``[1, max_mult]``.
    """
    if n_target < 2:
        raise ValueError("n_target must be at least 2")
    if max_mult < 1:
        raise ValueError("max_mult must be at least 1")
    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()
    next_id = 2
    stack = [(0, 1, n_target - 2, False)]
    while stack:
        s, t, inner, force_series = stack.pop()
        if inner == 0:
            edges.add(pair(s, t))
        elif force_series or rng.random() < 0.5:
            mid = next_id
            next_id += 1
            left = rng.randint(0, inner - 1)
            stack.append((s, mid, left, False))
            stack.append((mid, t, inner - 1 - left, False))
        else:
            left = rng.randint(0, inner)
            stack.append((s, t, left, left == inner))
            stack.append((s, t, inner - left, left == 0))
    perm = list(range(n_target))
    rng.shuffle(perm)
    classes = sorted(pair(perm[u], perm[v]) for u, v in edges)
    return Multigraph(n_target, [(u, v, rng.randint(1, max_mult)) for u, v in classes])
