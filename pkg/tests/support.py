"""Shared graph builders and the shadow model used by several test modules."""

from __future__ import annotations

import random
from itertools import combinations

from spcolor.encoding import EncodingState, from_multigraph, potential
from spcolor.multigraph import Multigraph, pair
from spcolor.oracle import config_holds, gen_sp
from spcolor.reducer import Fan, PendantClass, ReductionFrame, TriplePath, TwinPair, Verdict, decide

CORPUS_SEED = 20260101


def triangle(a: int = 1, b: int = 1, c: int = 1) -> Multigraph:
    """Triangle 0-1-2 with multiplicities 01:a, 12:b, 02:c."""
    return Multigraph(3, [(0, 1, a), (1, 2, b), (0, 2, c)])


def cycle(n: int, mult: int = 1) -> Multigraph:
    return Multigraph(n, [(i, (i + 1) % n, mult) for i in range(n)])


def path(*mults: int) -> Multigraph:
    return Multigraph(len(mults) + 1, [(i, i + 1, m) for i, m in enumerate(mults)])


def complete(n: int, mult: int = 1) -> Multigraph:
    return Multigraph(n, [(u, v, mult) for u, v in combinations(range(n), 2)])


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5, 1) for i in range(5)]
    spokes = [(i, i + 5, 1) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5, 1) for i in range(5)]
    return Multigraph(10, outer + spokes + inner)


def k_range(g: Multigraph) -> range:
    """max(0, Delta - 1) .. ceil(3 Delta / 2) + 1 inclusive."""
    delta = g.max_degree
    return range(max(0, delta - 1), -(-3 * delta // 2) + 2)


def corpus(count: int, seed: int = CORPUS_SEED, max_vertices: int = 8, max_mult: int = 4) -> list[Multigraph]:
    rng = random.Random(seed)
    return [gen_sp(rng.randint(2, max_vertices), max_mult, rng.randrange(2**32)) for _ in range(count)]


def random_graph(rng: random.Random, n: int, p: float, max_mult: int) -> Multigraph:
    classes = [(u, v, rng.randint(1, max_mult)) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Multigraph(n, classes)


def random_sp_subgraph(rng: random.Random, max_vertices: int = 9) -> Multigraph:
    """A generator output with some classes dropped (possibly disconnected)."""
    n = rng.randint(2, max_vertices)
    g = gen_sp(n, rng.choice([1, 2, 4, 7]), rng.randrange(2**32))
    return Multigraph(n, [c for c in g.classes if rng.random() < 0.85])


# -- shadow model -----------------------------------------------------------


def _sub(sh: dict[tuple[int, int], int], u: int, v: int, m: int) -> None:
    key = pair(u, v)
    left = sh[key] - m
    assert left >= 0, f"shadow class {key} would go negative"
    if left:
        sh[key] = left
    else:
        del sh[key]


def _add(sh: dict[tuple[int, int], int], u: int, v: int, m: int) -> None:
    if m:
        key = pair(u, v)
        sh[key] = sh.get(key, 0) + m


def shadow_apply(sh: dict[tuple[int, int], int], frame: ReductionFrame) -> None:
    """Apply a reduction to a plain class dictionary, independently of the encoding."""
    c = frame.config
    if isinstance(c, PendantClass):
        _sub(sh, c.v, c.x, c.m)
    elif isinstance(c, TwinPair):
        _sub(sh, c.v, c.x, c.c)
        _sub(sh, c.v, c.y, c.d)
        _sub(sh, c.u, c.x, c.d)
        _add(sh, c.u, c.y, c.d)
    elif isinstance(c, TriplePath):
        _sub(sh, c.v1, c.u1, c.a)
        _sub(sh, c.v1, c.w, c.c)
    elif isinstance(c, Fan):
        _sub(sh, c.u1, c.v1, c.a)
        _sub(sh, c.w, c.v1, c.c)
        if c.v2 is not None:
            _sub(sh, c.u2, c.v2, c.f)
            _sub(sh, c.w, c.v2, c.d)
        if not frame.small_sum:
            if c.b:
                _sub(sh, c.w, c.u1, c.b)
            if c.e:
                _sub(sh, c.w, c.u2, c.e)
            if frame.x is not None:
                _add(sh, frame.x, c.u1, c.a - frame.z1 - frame.s1)
                _add(sh, frame.x, c.u2, c.f - frame.z2 - frame.s2)
            if frame.y is not None:
                _add(sh, frame.y, c.u1, c.b - frame.z2)
                _add(sh, frame.y, c.u2, c.e - frame.z1)
            _add(sh, c.u1, c.u2, frame.z1 + frame.z2)
    for p in frame.pendants:
        _sub(sh, p.v, p.x, p.m)


class ShadowRun:
    """Run ``decide`` while checking the encoding after every iteration.

    Records one message per violated property in ``problems``: shadow graph
    mismatch, non-decreasing potential, counter invariant, worklist coverage,
    configuration conditions, and degrees above k after a reduction.
    """

    def __init__(self, g: Multigraph, k: int, K: int = 16) -> None:
        self.g = g
        self.k = k
        self.K = K
        self.shadow = g.class_map()
        self.problems: list[str] = []
        self.last_potential: int | None = None
        self.configs = 0
        self.iterations = 0

    def _graph(self, state: EncodingState) -> Multigraph:
        return Multigraph(state.next_vertex, [(u, v, m) for (u, v), m in sorted(self.shadow.items())])

    def observe(self, state: EncodingState, event: str, frame: ReductionFrame | None) -> None:
        self.iterations += 1
        phi = potential(state, self.K)
        if self.last_potential is not None and phi >= self.last_potential:
            self.problems.append(f"potential {self.last_potential} -> {phi} on {event}")
        self.last_potential = phi
        if frame is not None:
            self.configs += 1
            if not config_holds(self._graph(state), frame.config):
                self.problems.append(f"configuration conditions fail: {frame.config}")
            shadow_apply(self.shadow, frame)
            if any(d > self.k for d in self._graph(state).degrees):
                self.problems.append(f"degree above k after {frame.config}")
        if state.expand().class_map() != self.shadow:
            self.problems.append(f"expand differs from shadow after {event}")
        queued = set(state.worklist)
        for v in state.inc:
            if state.deg(v) - state.val(v) > state.counter[v]:
                self.problems.append(f"counter invariant fails at {v}")
            if state.is_active(v) and v not in queued:
                self.problems.append(f"active vertex {v} missing from worklist")

    def run(self) -> Verdict:
        self.last_potential = potential(from_multigraph(self.g), self.K)
        return decide(self.g, self.k, trace=True, observer=self.observe)


# -- acceptance reporting -----------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def report(criterion: int, ok: bool, detail: str) -> None:
    """Record and print one pass/fail line; the terminal summary repeats them."""
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[criterion] = line
    print(line)
