"""Linear-time decision of ``chi'(G) <= k`` for series-parallel multigraphs.

The driver pops vertices off the encoding's worklist. Inactive or vanished
vertices are discarded, crowded vertices are deduplicated, plain series
vertices are compressed, and every other active vertex exposes one of the
local configurations below. Each configuration either fails a local
inequality (answer: no) or is rewritten into a smaller graph that is
k-edge-colorable exactly when the current one is. The rewrites are kept as
:class:`ReductionFrame` objects so that :mod:`spcolor.colorer` can replay
them backwards into an explicit coloring.

Configurations (multiplicities in parentheses):

* ``Isolated(v)`` and ``PendantClass(v, x, m)``: v has at most one neighbour.
* ``TwinPair(x, y, u, v, a, b, c, d)``: u and v both have exactly the
  neighbours x and y; ux (a), uy (b), vx (c), vy (d), oriented so a >= d.
* ``TriplePath(w, u1, v1, a, b, c)``: the neighbours of w are among u1 and
  v1, the neighbours of v1 are w and u1; u1v1 (a), u1w (b), v1w (c).
* ``Fan(w, u1, u2, v1, v2, a..f)``: the neighbours of w are among u1, u2, v1,
  v2 and each v_i has neighbours w and u_i; u1v1 (a), u1w (b), v1w (c),
  v2w (d), u2w (e), u2v2 (f). ``v2`` may be absent (then d = f = 0).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Union

from .encoding import EncodingState, HEdgeRecord, SubdivisionEntry, from_multigraph
from .errors import NotSeriesParallel, PreconditionViolated, VertexAbsent
from .multigraph import Multigraph, is_series_parallel

__all__ = [
    "Isolated",
    "PendantClass",
    "TwinPair",
    "TriplePath",
    "Fan",
    "Configuration",
    "Step",
    "Violation",
    "ReductionFrame",
    "Answer",
    "DegreeExceeded",
    "LocalCheck",
    "Verdict",
    "detect",
    "local_feasible",
    "apply_reduction",
    "decide",
    "chromatic_index",
    "format_frame",
    "format_trace",
]


@dataclass(frozen=True)
class Isolated:
    v: int


@dataclass(frozen=True)
class PendantClass:
    v: int
    x: int
    m: int
    rid: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TwinPair:
    x: int
    y: int
    u: int
    v: int
    a: int
    b: int
    c: int
    d: int
    rid: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TriplePath:
    w: int
    u1: int
    v1: int
    a: int
    b: int
    c: int
    rid: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Fan:
    w: int
    u1: int
    u2: int
    v1: int | None
    v2: int | None
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    rids: tuple[int, int] | None = field(default=None, compare=False, repr=False)

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d + self.e + self.f


Configuration = Union[Isolated, PendantClass, TwinPair, TriplePath, Fan]


class Step(enum.Enum):
    NEEDS_DEDUPE = "needs-dedupe"
    NEEDS_COMPRESS = "needs-compress"
    NOT_LOCAL = "not-local"


@dataclass(frozen=True)
class Violation:
    """A failed local inequality; ``vertices`` is an odd set witnessing it."""

    inequality: str
    vertices: tuple[int, ...]
    edges: int
    k: int


@dataclass(frozen=True)
class ReductionFrame:
    """One applied reduction.

    ``pendants`` lists vertices that the reduction left with a single
    neighbour; they are removed on the spot and must be recolored first
    when the frame is replayed.
    """

    config: Configuration
    small_sum: bool = False
    z1: int = 0
    z2: int = 0
    s: int = 0
    s1: int = 0
    s2: int = 0
    x: int | None = None
    y: int | None = None
    pendants: tuple[PendantClass, ...] = ()

    @property
    def moved(self) -> int:
        return self.config.d if isinstance(self.config, TwinPair) else 0


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    NOT_SERIES_PARALLEL = "not-series-parallel"


@dataclass(frozen=True)
class DegreeExceeded:
    v: int
    degree: int


@dataclass(frozen=True)
class LocalCheck:
    config: Configuration
    violation: Violation
    frame_depth: int


@dataclass
class Verdict:
    answer: Answer
    reason: DegreeExceeded | LocalCheck | None = None
    frames: list[ReductionFrame] | None = None
    iterations: int = 0

    def __bool__(self) -> bool:
        return self.answer is Answer.YES

    def describe(self) -> str:
        """One-line human summary, vertices printed 1-based."""
        if self.answer is Answer.YES:
            return "YES"
        if self.answer is Answer.NOT_SERIES_PARALLEL:
            return "NOT-SERIES-PARALLEL"
        reason = self.reason
        if isinstance(reason, DegreeExceeded):
            return f"NO degree deg({reason.v + 1}) = {reason.degree} > k"
        assert isinstance(reason, LocalCheck)
        viol = reason.violation
        members = ",".join(str(v + 1) for v in sorted(viol.vertices))
        size = len(viol.vertices)
        return f"NO local-check 2|E({{{members}}})| = {2 * viol.edges} > {viol.k}*{size - 1}"


# -- decoding ---------------------------------------------------------------


def _twin(rec: HEdgeRecord) -> TwinPair:
    p, q = rec.lam[-2], rec.lam[-1]
    if p.m0 >= q.m1:
        return TwinPair(rec.end0, rec.end1, p.vertex, q.vertex, p.m0, p.m1, q.m0, q.m1, rid=rec.id)
    return TwinPair(rec.end1, rec.end0, q.vertex, p.vertex, q.m1, q.m0, p.m1, p.m0, rid=rec.id)


def detect(state: EncodingState, v: int) -> Configuration | Step:
    """Classify the active vertex ``v``.

    Crowded vertices (``deg_H(v) > 2``) report NEEDS_DEDUPE without being
    touched. Otherwise the parallel records at ``v`` are merged first and
    the remaining one or two records decide the configuration.
    """
    if v not in state:
        raise VertexAbsent(v)
    if not state.is_active(v):
        return Step.NOT_LOCAL
    if state.deg(v) > 2:
        return Step.NEEDS_DEDUPE
    state.dedupe(v)
    recs = state.incident(v)
    if not recs:
        return Isolated(v)
    if len(recs) == 1:
        (rec,) = recs
        x = rec.other(v)
        if not rec.lam:
            return PendantClass(v, x, rec.mu, rid=rec.id)
        if len(rec.lam) >= 2:
            return _twin(rec)
        p = rec.lam[0]
        return TriplePath(v, x, p.vertex, rec.toward(p, x), rec.mu, rec.toward(p, v), rid=rec.id)
    r1, r2 = recs
    if len(r1.lam) >= 2:
        return _twin(r1)
    if len(r2.lam) >= 2:
        return _twin(r2)
    if not r1.lam and not r2.lam:
        return Step.NEEDS_COMPRESS
    if not r1.lam:
        r1, r2 = r2, r1
    u1, u2 = r1.other(v), r2.other(v)
    p = r1.lam[0]
    a, c = r1.toward(p, u1), r1.toward(p, v)
    if r2.lam:
        q = r2.lam[0]
        v2, d, f = q.vertex, r2.toward(q, v), r2.toward(q, u2)
    else:
        v2, d, f = None, 0, 0
    return Fan(v, u1, u2, p.vertex, v2, a, r1.mu, c, d, r2.mu, f, rids=(r1.id, r2.id))


def local_feasible(conf: Configuration, k: int) -> Violation | None:
    """The extra inequality a configuration needs beyond ``Delta <= k``."""
    if isinstance(conf, TriplePath):
        t = conf.a + conf.b + conf.c
        if t > k:
            return Violation(f"a+b+c = {t} > {k}", (conf.w, conf.u1, conf.v1), t, k)
    elif isinstance(conf, Fan) and conf.total > k:
        t = conf.a + conf.b + conf.c
        if t > k:
            members = tuple(x for x in (conf.u1, conf.v1, conf.w) if x is not None)
            return Violation(f"a+b+c = {t} > {k}", members, t, k)
        t = conf.d + conf.e + conf.f
        if t > k:
            members = tuple(x for x in (conf.u2, conf.v2, conf.w) if x is not None)
            return Violation(f"d+e+f = {t} > {k}", members, t, k)
    return None


# -- rewriting --------------------------------------------------------------


def _drop_if_empty(state: EncodingState, rec: HEdgeRecord) -> None:
    if rec.mu == 0 and not rec.lam:
        state.delete_record(rec)
        state.bump(rec.end0)
        state.bump(rec.end1)


def _record(state: EncodingState, rid: int | None) -> HEdgeRecord:
    try:
        return state.records[rid]  # type: ignore[index]
    except KeyError:
        raise PreconditionViolated(f"configuration refers to missing record {rid}") from None


def _check_tail(rec: HEdgeRecord, vertices: tuple[int, ...]) -> None:
    tail = tuple(e.vertex for e in rec.lam[-len(vertices):])
    if sorted(tail) != sorted(vertices):
        raise PreconditionViolated(f"record {rec.id} does not end with entries {vertices}")


def apply_reduction(state: EncodingState, conf: Configuration, k: int) -> ReductionFrame:
    """Rewrite ``state`` into the reduced graph for ``conf``.

    ``conf`` must come from :func:`detect` on the current state and pass
    :func:`local_feasible`.
    """
    if local_feasible(conf, k) is not None:
        raise PreconditionViolated(f"{conf} fails its local check for k={k}")

    if isinstance(conf, Isolated):
        state.remove_vertex(conf.v)
        return ReductionFrame(conf)

    if isinstance(conf, PendantClass):
        rec = _record(state, conf.rid)
        state.delete_record(rec)
        state.remove_vertex(conf.v)
        state.bump(conf.x)
        return ReductionFrame(conf)

    if isinstance(conf, TwinPair):
        rec = _record(state, conf.rid)
        _check_tail(rec, (conf.u, conf.v))
        state.pop_entry(rec)
        state.pop_entry(rec)
        a, b, d = conf.a, conf.b, conf.d
        pendants: tuple[PendantClass, ...] = ()
        if a > d:
            state.append_entry(rec, rec.oriented(conf.u, conf.x, a - d, b + d))
        else:
            pendants = (PendantClass(conf.u, conf.y, b + d),)
        _drop_if_empty(state, rec)
        return ReductionFrame(conf, pendants=pendants)

    if isinstance(conf, TriplePath):
        rec = _record(state, conf.rid)
        _check_tail(rec, (conf.v1,))
        state.pop_entry(rec)
        _drop_if_empty(state, rec)
        return ReductionFrame(conf)

    if isinstance(conf, Fan):
        return _apply_fan(state, conf, k)

    raise TypeError(f"not a configuration: {conf!r}")


def _apply_fan(state: EncodingState, conf: Fan, k: int) -> ReductionFrame:
    if conf.rids is None:
        raise PreconditionViolated("fan configuration was not produced by detect")
    r1, r2 = _record(state, conf.rids[0]), _record(state, conf.rids[1])
    _check_tail(r1, (conf.v1,))
    if conf.v2 is not None:
        _check_tail(r2, (conf.v2,))
    a, b, c, d, e, f = conf.a, conf.b, conf.c, conf.d, conf.e, conf.f

    if conf.total <= k:
        state.pop_entry(r1)
        if conf.v2 is not None:
            state.pop_entry(r2)
        _drop_if_empty(state, r1)
        _drop_if_empty(state, r2)
        return ReductionFrame(conf, small_sum=True)

    z1 = max(0, a + b + c + e - k)
    z2 = max(0, b + d + e + f - k)
    s = k - (b + c + d + e)
    s1 = min(s, a - z1)
    s2 = s - s1
    assert s >= 0 and 0 <= s2 <= f - z2, (conf, k)
    xa, xf = a - z1 - s1, f - z2 - s2
    yb, ye = b - z2, e - z1
    assert xa + xf <= k and yb + ye <= k, (conf, k)

    u1, u2, w = conf.u1, conf.u2, conf.w
    state.delete_record(r1)
    state.delete_record(r2)
    state.remove_vertex(w)
    state.bump(u1)
    state.bump(u2)

    entries: list[SubdivisionEntry] = []
    pendants: list[PendantClass] = []
    fresh: list[int | None] = []
    for to_u1, to_u2 in ((xa, xf), (yb, ye)):
        if not (to_u1 or to_u2):
            fresh.append(None)
            continue
        p = state.new_vertex_id()
        fresh.append(p)
        if to_u1 and to_u2:
            entries.append(SubdivisionEntry(p, to_u1, to_u2))
        else:
            pendants.append(PendantClass(p, u1 if to_u1 else u2, to_u1 or to_u2))
    if z1 + z2 or entries:
        state.add_record(u1, u2, z1 + z2, entries)
        state.bump(u1)
        state.bump(u2)
    return ReductionFrame(conf, z1=z1, z2=z2, s=s, s1=s1, s2=s2, x=fresh[0], y=fresh[1], pendants=tuple(pendants))


# -- driver -----------------------------------------------------------------

Observer = Callable[[EncodingState, str, "ReductionFrame | None"], None]


def decide(
    g: Multigraph,
    k: int,
    trace: bool = False,
    observer: Observer | None = None,
    check_series_parallel: bool = True,
) -> Verdict:
    """Decide whether the series-parallel multigraph ``g`` is k-edge-colorable.

    With ``trace=True`` a YES verdict carries the reduction frames needed by
    :func:`spcolor.colorer.replay_color`. ``observer(state, event, frame)``
    is called after every iteration; ``event`` is one of ``"stale"``,
    ``"dedupe"``, ``"compress"`` or ``"reduce"``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if check_series_parallel and not is_series_parallel(g):
        return Verdict(Answer.NOT_SERIES_PARALLEL)
    for v in range(g.vertex_count):
        if g.degree(v) > k:
            return Verdict(Answer.NO, DegreeExceeded(v, g.degree(v)))

    state = from_multigraph(g)
    frames: list[ReductionFrame] | None = [] if trace else None
    depth = 0
    iterations = 0
    worklist = state.worklist
    inc = state.inc
    counter = state.counter
    while worklist:
        iterations += 1
        v = worklist.popleft()
        frame = None
        d = len(inc[v]) if v in inc else -1
        if d < 0 or (d > 2 and d > 3 * counter[v]):
            event = "stale"
        elif d > 2:
            state.dedupe(v)
            event = "dedupe"
        else:
            step = detect(state, v)
            if step is Step.NEEDS_COMPRESS:
                state.series_compress(v)
                event = "compress"
            else:
                assert not isinstance(step, Step), step
                violation = local_feasible(step, k)
                if violation is not None:
                    return Verdict(Answer.NO, LocalCheck(step, violation, depth), frames, iterations)
                frame = apply_reduction(state, step, k)
                depth += 1
                if frames is not None:
                    frames.append(frame)
                if v in inc:
                    worklist.append(v)
                event = "reduce"
        if observer is not None:
            observer(state, event, frame)
    if inc:
        return Verdict(Answer.NOT_SERIES_PARALLEL, iterations=iterations)
    return Verdict(Answer.YES, frames=frames, iterations=iterations)


def chromatic_index(g: Multigraph) -> int:
    """Smallest k with ``decide(g, k)`` YES.

    Starts at Delta(g), doubles the step until YES, then bisects.
    """
    if not is_series_parallel(g):
        raise NotSeriesParallel("graph contains a subdivision of K4")

    def ok(k: int) -> bool:
        return decide(g, k, check_series_parallel=False).answer is Answer.YES

    lo = g.max_degree
    if ok(lo):
        return lo
    step = 1
    hi = lo + step
    while not ok(hi):
        lo = hi
        step *= 2
        hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


# -- trace serialization ----------------------------------------------------


def _fmt(x: int | None) -> str:
    return "-" if x is None else str(x)


def format_frame(frame: ReductionFrame) -> str:
    conf = frame.config
    if isinstance(conf, Isolated):
        parts = ["isolated", conf.v]
    elif isinstance(conf, PendantClass):
        parts = ["pendant", conf.v, conf.x, conf.m]
    elif isinstance(conf, TwinPair):
        parts = ["twin", conf.x, conf.y, conf.u, conf.v, conf.a, conf.b, conf.c, conf.d]
    elif isinstance(conf, TriplePath):
        parts = ["triple", conf.w, conf.u1, conf.v1, conf.a, conf.b, conf.c]
    else:
        tag = "fan-small" if frame.small_sum else "fan"
        parts = [tag, conf.w, conf.u1, conf.u2, conf.v1, conf.v2, conf.a, conf.b, conf.c, conf.d, conf.e, conf.f]
        if not frame.small_sum:
            parts += [frame.z1, frame.z2, frame.s, frame.s1, frame.s2, frame.x, frame.y]
    for p in frame.pendants:
        parts += ["+pendant", p.v, p.x, p.m]
    return " ".join(p if isinstance(p, str) else _fmt(p) for p in parts)


def format_trace(frames: list[ReductionFrame]) -> str:
    return "\n".join(format_frame(f) for f in frames)
