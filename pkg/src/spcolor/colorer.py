"""Explicit k-edge-colorings, rebuilt by replaying reduction frames backwards.

A coloring maps each canonical vertex pair ``(u, v)`` with ``u < v`` to the
sorted list of colors on its parallel edges. Colors are ``1..k``. Every
choice takes the smallest admissible color, so results are deterministic.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Sequence

from .errors import PreconditionViolated, ShapeMismatch, TraceMismatch
from .multigraph import Multigraph, pair
from .reducer import (
    Answer,
    Fan,
    Isolated,
    PendantClass,
    ReductionFrame,
    TriplePath,
    TwinPair,
    Verdict,
    decide,
)

__all__ = ["Coloring", "two_fan_extend", "lemma1_extend", "replay_color", "color", "verify_coloring", "coloring_violation"]

Coloring = dict[tuple[int, int], list[int]]


def _smallest_free(k: int, count: int, avoid: Iterable[set[int] | frozenset[int]]) -> list[int]:
    blocked = set().union(*avoid)
    out = []
    c = 1
    while len(out) < count and c <= k:
        if c not in blocked:
            out.append(c)
        c += 1
    return out


def two_fan_extend(
    k: int,
    m1: int,
    m2: int,
    s0: Iterable[int],
    s1: Iterable[int],
    s2: Iterable[int],
) -> tuple[list[int], list[int]]:
    """Colors for two groups of parallel edges at a common vertex u0.

    ``m1`` edges go to u1 and ``m2`` edges to u2; ``s0``, ``s1``, ``s2`` are
    the colors already seen at u0, u1, u2. Requires

        m1 + |S0 u S1| <= k,  m2 + |S0 u S2| <= k,  m1 + m2 + |S0 u (S1 n S2)| <= k.

    The first group avoids S0 u S1 and takes as many colors of S2 as it can;
    the second group then avoids S0 u S2 and the first group.
    """
    s0, s1, s2 = set(s0), set(s1), set(s2)
    if m1 + len(s0 | s1) > k:
        raise PreconditionViolated(f"m1 + |S0 u S1| = {m1 + len(s0 | s1)} > {k}")
    if m2 + len(s0 | s2) > k:
        raise PreconditionViolated(f"m2 + |S0 u S2| = {m2 + len(s0 | s2)} > {k}")
    if m1 + m2 + len(s0 | (s1 & s2)) > k:
        raise PreconditionViolated(f"m1 + m2 + |S0 u (S1 n S2)| = {m1 + m2 + len(s0 | (s1 & s2))} > {k}")
    blocked = s0 | s1
    preferred = sorted(c for c in s2 - blocked if 1 <= c <= k)
    first = preferred[:m1]
    if len(first) < m1:
        first += _smallest_free(k, m1 - len(first), (blocked, s2))
    second = _smallest_free(k, m2, (s0, s2, set(first)))
    assert len(first) == m1 and len(second) == m2
    return sorted(first), second


lemma1_extend = two_fan_extend


class _Palette:
    """Coloring under construction with per-vertex seen sets."""

    def __init__(self, k: int) -> None:
        self.k = k
        self.classes: dict[tuple[int, int], list[int]] = {}
        self.seen: defaultdict[int, set[int]] = defaultdict(set)

    def colors(self, u: int, v: int) -> list[int]:
        return self.classes.get(pair(u, v), [])

    def add(self, u: int, v: int, cols: Sequence[int], expected: int | None = None) -> None:
        if expected is not None and len(cols) != expected:
            raise TraceMismatch(f"needed {expected} colors on {u}-{v}, found only {len(cols)}")
        su, sv = self.seen[u], self.seen[v]
        for c in cols:
            if c in su or c in sv or not 1 <= c <= self.k:
                raise TraceMismatch(f"color {c} not available on {u}-{v}")
            su.add(c)
            sv.add(c)
        if cols:
            self.classes.setdefault(pair(u, v), []).extend(cols)

    def take(self, u: int, v: int, cols: Iterable[int]) -> None:
        key = pair(u, v)
        current = self.classes.get(key, [])
        for c in cols:
            try:
                current.remove(c)
            except ValueError:
                raise TraceMismatch(f"color {c} missing on {u}-{v}") from None
            self.seen[u].discard(c)
            self.seen[v].discard(c)
        if not current:
            self.classes.pop(key, None)

    def take_all(self, u: int, v: int, expected: int) -> list[int]:
        cols = list(self.colors(u, v))
        if len(cols) != expected:
            raise TraceMismatch(f"expected {expected} edges on {u}-{v}, found {len(cols)}")
        self.take(u, v, cols)
        return cols

    def greedy(self, u: int, v: int, count: int) -> None:
        """Color ``count`` new u-v edges with the smallest colors free at both ends."""
        self.add(u, v, _smallest_free(self.k, count, (self.seen[u], self.seen[v])), count)

    def fan_out(self, w: int, v1: int | None, m1: int, v2: int | None, m2: int) -> None:
        s1 = self.seen[v1] if v1 is not None else set()
        s2 = self.seen[v2] if v2 is not None else set()
        try:
            first, second = two_fan_extend(self.k, m1, m2, self.seen[w], s1, s2)
        except PreconditionViolated as exc:
            raise TraceMismatch(f"two-fan extension at {w} impossible: {exc}") from None
        if v1 is not None:
            self.add(w, v1, first)
        if v2 is not None:
            self.add(w, v2, second)


def _replay_frame(pal: _Palette, frame: ReductionFrame) -> None:
    for p in frame.pendants:
        pal.greedy(p.v, p.x, p.m)
    conf = frame.config
    if isinstance(conf, Isolated):
        return
    if isinstance(conf, PendantClass):
        pal.greedy(conf.v, conf.x, conf.m)
    elif isinstance(conf, TwinPair):
        _replay_twin(pal, conf)
    elif isinstance(conf, TriplePath):
        # the far end u1 first: its degree bounds what is left there
        pal.greedy(conf.v1, conf.u1, conf.a)
        pal.greedy(conf.v1, conf.w, conf.c)
    elif isinstance(conf, Fan):
        if frame.small_sum:
            pal.greedy(conf.u1, conf.v1, conf.a)
            if conf.v2 is not None:
                pal.greedy(conf.u2, conf.v2, conf.f)
        else:
            _replay_fan(pal, conf, frame)
        pal.fan_out(conf.w, conf.v1, conf.c, conf.v2, conf.d)
    else:
        raise TraceMismatch(f"unknown frame {frame!r}")


def _replay_twin(pal: _Palette, conf: TwinPair) -> None:
    x, y, u, v, d = conf.x, conf.y, conf.u, conf.v, conf.d
    uy = pal.colors(u, y)
    if len(uy) != conf.b + d:
        raise TraceMismatch(f"expected {conf.b + d} edges on {u}-{y}, found {len(uy)}")
    seen_x = pal.seen[x]
    # A: d colors of the uy group, as few of them seen at x as possible
    chosen = sorted(uy, key=lambda c: (c in seen_x, c))[:d]
    pal.take(u, y, chosen)
    moved = [c for c in chosen if c not in seen_x]
    moved += _smallest_free(pal.k, d - len(moved), (seen_x, pal.seen[u], set(moved)))
    pal.add(u, x, moved, d)
    pal.fan_out(v, x, conf.c, y, d)


def _replay_fan(pal: _Palette, conf: Fan, frame: ReductionFrame) -> None:
    u1, u2 = conf.u1, conf.u2
    z1, z2 = frame.z1, frame.z2
    xu1 = xu2 = yu1 = yu2 = []
    if frame.x is not None:
        xu1 = pal.take_all(frame.x, u1, conf.a - z1 - frame.s1)
        xu2 = pal.take_all(frame.x, u2, conf.f - z2 - frame.s2)
    if frame.y is not None:
        yu1 = pal.take_all(frame.y, u1, conf.b - z2)
        yu2 = pal.take_all(frame.y, u2, conf.e - z1)
    z = sorted(pal.colors(u1, u2))[: z1 + z2]
    if len(z) != z1 + z2:
        raise TraceMismatch(f"expected {z1 + z2} extra edges on {u1}-{u2}")
    pal.take(u1, u2, z)
    zs1, zs2 = z[:z1], z[z1:]
    pal.add(u1, conf.v1, xu1 + zs1)
    pal.add(conf.w, u1, yu1 + zs2, conf.b)
    pal.add(conf.w, u2, yu2 + zs1, conf.e)
    if conf.v2 is not None:
        pal.add(conf.v2, u2, xu2 + zs2)
    elif xu2 or zs2:
        raise TraceMismatch("fan without v2 carries edges for it")
    pal.greedy(u1, conf.v1, frame.s1)
    if conf.v2 is not None:
        pal.greedy(u2, conf.v2, frame.s2)


def replay_color(g: Multigraph, k: int, frames: Sequence[ReductionFrame]) -> Coloring:
    """Build a k-edge-coloring of ``g`` from the frames of a YES verdict."""
    pal = _Palette(k)
    for frame in reversed(frames):
        _replay_frame(pal, frame)
    expected = g.class_map()
    if expected.keys() != pal.classes.keys():
        raise TraceMismatch("replayed classes differ from the input graph")
    for key, m in expected.items():
        if len(pal.classes[key]) != m:
            raise TraceMismatch(f"class {key} has {len(pal.classes[key])} colors, expected {m}")
    return {key: sorted(pal.classes[key]) for key in expected}


def color(g: Multigraph, k: int) -> tuple[Verdict, Coloring | None]:
    """Decide and, on YES, return an explicit coloring."""
    verdict = decide(g, k, trace=True)
    if verdict.answer is not Answer.YES:
        return verdict, None
    assert verdict.frames is not None
    return verdict, replay_color(g, k, verdict.frames)


def coloring_violation(g: Multigraph, k: int, col: Coloring) -> str | None:
    """Describe the first defect of ``col`` (1-based vertices), or None if proper."""
    expected = g.class_map()
    keys = {pair(u, v) for u, v in col}
    if keys != expected.keys() or len(keys) != len(col):
        raise ShapeMismatch("coloring classes differ from the graph's classes")
    seen: dict[int, set[int]] = defaultdict(set)
    for (u, v), cols in col.items():
        key = pair(u, v)
        if len(cols) != expected[key]:
            return f"class {key[0] + 1}-{key[1] + 1} has {len(cols)} colors, multiplicity {expected[key]}"
        for c in cols:
            if not 1 <= c <= k:
                return f"class {key[0] + 1}-{key[1] + 1} uses color {c} outside 1..{k}"
            for x in key:
                if c in seen[x]:
                    return f"vertex {x + 1} sees color {c} twice"
                seen[x].add(c)
    return None


def verify_coloring(g: Multigraph, k: int, col: Coloring) -> bool:
    return coloring_violation(g, k, col) is None
