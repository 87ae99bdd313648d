"""Compressed encoding of the graph being reduced.

The state holds a multigraph ``H`` whose edges are *records*. A record
between ``end0`` and ``end1`` stands for ``mu`` parallel edges plus, for each
of its subdivision entries ``(p, m0, m1)``, a vertex ``p`` joined to ``end0``
by ``m0`` edges and to ``end1`` by ``m1`` edges. The represented multigraph
is rebuilt by :func:`expand`.

Alongside ``H`` the state keeps a per-vertex counter ``C`` bounding
``deg_H(v) - val_H(v)`` and a FIFO worklist that contains every active
vertex. Totals needed by :func:`potential` are maintained incrementally so
the potential can be read in O(1) after every step.
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

from .errors import PreconditionViolated, VertexAbsent
from .multigraph import Multigraph, pair

__all__ = [
    "SubdivisionEntry",
    "HEdgeRecord",
    "EncodingState",
    "from_multigraph",
    "expand",
    "is_active",
    "dedupe",
    "series_compress",
    "potential",
    "dump",
    "POTENTIAL_K",
]

POTENTIAL_K = 16


class SubdivisionEntry(NamedTuple):
    vertex: int
    m0: int  # edges to the record's end0
    m1: int  # edges to the record's end1

    def flipped(self) -> SubdivisionEntry:
        return SubdivisionEntry(self.vertex, self.m1, self.m0)


class HEdgeRecord:
    __slots__ = ("id", "end0", "end1", "mu", "lam")

    def __init__(self, rid: int, end0: int, end1: int, mu: int, lam: list[SubdivisionEntry]) -> None:
        self.id = rid
        self.end0 = end0
        self.end1 = end1
        self.mu = mu
        self.lam = lam

    def other(self, v: int) -> int:
        return self.end1 if self.end0 == v else self.end0

    def toward(self, entry: SubdivisionEntry, end: int) -> int:
        """Multiplicity of the edges joining ``entry`` to the given end."""
        return entry.m0 if end == self.end0 else entry.m1

    def oriented(self, vertex: int, end: int, m_end: int, m_other: int) -> SubdivisionEntry:
        """Entry for ``vertex`` with ``m_end`` edges to ``end`` and ``m_other`` to the other end."""
        if end == self.end0:
            return SubdivisionEntry(vertex, m_end, m_other)
        return SubdivisionEntry(vertex, m_other, m_end)

    def __repr__(self) -> str:
        return f"HEdgeRecord({self.id}, {self.end0}, {self.end1}, mu={self.mu}, lam={self.lam})"


class EncodingState:
    """Mutable encoding ``(H, lambda, mu)`` with counter and worklist.

    ``inc`` maps every vertex of ``H`` to the ids of its incident records, so
    ``deg_H(v) == len(inc[v])`` and parallel records are allowed.
    """

    def __init__(self, vertex_count: int = 0) -> None:
        self.records: dict[int, HEdgeRecord] = {}
        self.inc: dict[int, dict[int, None]] = {}
        self.counter: dict[int, int] = {}
        self.worklist: deque[int] = deque()
        self.next_vertex = vertex_count
        self.next_record = 0
        self.lam_total = 0
        self.counter_total = 0

    # -- queries ---------------------------------------------------------

    def __contains__(self, v: int) -> bool:
        return v in self.inc

    @property
    def vertex_count(self) -> int:
        """|V(H)|."""
        return len(self.inc)

    def deg(self, v: int) -> int:
        try:
            return len(self.inc[v])
        except KeyError:
            raise VertexAbsent(v) from None

    def val(self, v: int) -> int:
        recs = self.records
        return len({recs[r].other(v) for r in self.inc[v]})

    def incident(self, v: int) -> list[HEdgeRecord]:
        recs = self.records
        return [recs[r] for r in self.inc[v]]

    def is_active(self, v: int) -> bool:
        try:
            d = len(self.inc[v])
        except KeyError:
            raise VertexAbsent(v) from None
        return d <= 2 or d <= 3 * self.counter[v]

    # -- primitive mutations (used by the reducer) ----------------------

    def push(self, v: int) -> None:
        self.worklist.append(v)

    def bump(self, v: int) -> None:
        """Count one H-edge change at ``v`` and queue it."""
        self.counter[v] += 1
        self.counter_total += 1
        self.worklist.append(v)

    def add_vertex(self, v: int) -> None:
        self.inc[v] = {}
        self.counter[v] = 0

    def new_vertex_id(self) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        return v

    def remove_vertex(self, v: int) -> None:
        if self.inc[v]:
            raise PreconditionViolated(f"vertex {v} still has incident records")
        del self.inc[v]
        self.counter_total -= self.counter.pop(v)

    def add_record(self, end0: int, end1: int, mu: int, lam: list[SubdivisionEntry]) -> HEdgeRecord:
        rid = self.next_record
        self.next_record += 1
        rec = HEdgeRecord(rid, end0, end1, mu, lam)
        self.records[rid] = rec
        self.inc[end0][rid] = None
        self.inc[end1][rid] = None
        self.lam_total += len(lam)
        return rec

    def delete_record(self, rec: HEdgeRecord) -> None:
        del self.records[rec.id]
        del self.inc[rec.end0][rec.id]
        del self.inc[rec.end1][rec.id]
        self.lam_total -= len(rec.lam)

    def pop_entry(self, rec: HEdgeRecord) -> SubdivisionEntry:
        self.lam_total -= 1
        return rec.lam.pop()

    def append_entry(self, rec: HEdgeRecord, entry: SubdivisionEntry) -> None:
        self.lam_total += 1
        rec.lam.append(entry)

    # -- iteration rules -------------------------------------------------

    def dedupe(self, v: int) -> None:
        """Merge parallel records at ``v`` and reset ``C(v)``.

        The surviving record of each parallel class is the one with the
        longest entry list; the shorter list is moved (reoriented if the
        records disagree on end order), so merging costs are small-to-large.
        """
        if v not in self.inc:
            raise VertexAbsent(v)
        recs = self.records
        by_other: dict[int, HEdgeRecord] = {}
        decreased: dict[int, None] = {}
        for rid in list(self.inc[v]):
            rec = recs[rid]
            x = rec.other(v)
            keep = by_other.get(x)
            if keep is None:
                by_other[x] = rec
                continue
            if len(rec.lam) > len(keep.lam):
                keep, rec = rec, keep
                by_other[x] = keep
            keep.mu += rec.mu
            if rec.lam:
                if rec.end0 == keep.end0:
                    keep.lam.extend(rec.lam)
                else:
                    keep.lam.extend(e.flipped() for e in rec.lam)
            # entries moved, not dropped: lam_total is unchanged
            del recs[rec.id]
            del self.inc[v][rec.id]
            del self.inc[x][rec.id]
            decreased[x] = None
        if decreased:
            self.worklist.append(v)
            self.worklist.extend(decreased)
        self.counter_total -= self.counter[v]
        self.counter[v] = 0

    def series_compress(self, v: int) -> HEdgeRecord:
        """Replace the path x - v - y by one record xy carrying v as an entry."""
        if v not in self.inc:
            raise VertexAbsent(v)
        if len(self.inc[v]) != 2:
            raise PreconditionViolated(f"deg_H({v}) = {len(self.inc[v])}, need 2")
        r1, r2 = (self.records[r] for r in self.inc[v])
        x, y = r1.other(v), r2.other(v)
        if x == y:
            raise PreconditionViolated(f"val_H({v}) = 1, need 2")
        if r1.lam or r2.lam:
            raise PreconditionViolated(f"vertex {v} is incident to a record with entries")
        self.delete_record(r1)
        self.delete_record(r2)
        self.remove_vertex(v)
        rec = self.add_record(x, y, 0, [SubdivisionEntry(v, r1.mu, r2.mu)])
        self.bump(x)
        self.bump(y)
        return rec

    def potential(self, K: int = POTENTIAL_K) -> int:
        return potential(self, K)

    def expand(self) -> Multigraph:
        return expand(self)


def from_multigraph(g: Multigraph) -> EncodingState:
    """One record per edge class, empty entry lists, ``C = 0``."""
    state = EncodingState(g.vertex_count)
    for v in range(g.vertex_count):
        state.add_vertex(v)
    for u, v, m in g.classes:
        state.add_record(u, v, m, [])
    state.worklist.extend(v for v in range(g.vertex_count) if len(state.inc[v]) <= 2)
    return state


def expand(state: EncodingState) -> Multigraph:
    """Materialize the represented multigraph (vertex ids are kept)."""
    classes: dict[tuple[int, int], int] = {}
    for rec in state.records.values():
        if rec.mu:
            key = pair(rec.end0, rec.end1)
            classes[key] = classes.get(key, 0) + rec.mu
        for p, m0, m1 in rec.lam:
            for end, m in ((rec.end0, m0), (rec.end1, m1)):
                key = pair(p, end)
                classes[key] = classes.get(key, 0) + m
    return Multigraph(state.next_vertex, [(u, v, m) for (u, v), m in sorted(classes.items())])


def is_active(state: EncodingState, v: int) -> bool:
    return state.is_active(v)


def dedupe(state: EncodingState, v: int) -> None:
    state.dedupe(v)


def series_compress(state: EncodingState, v: int) -> HEdgeRecord:
    return state.series_compress(v)


def potential(state: EncodingState, K: int = POTENTIAL_K) -> int:
    """2K|V(H)| + K * sum |lambda(e)| + |L| + 4 * sum C(v)."""
    if K < 1:
        raise ValueError("K must be positive")
    return 2 * K * len(state.inc) + K * state.lam_total + len(state.worklist) + 4 * state.counter_total


def dump(state: EncodingState) -> str:
    """Debug listing, one record per line: ``end0 end1 mu p:m0:m1 ...``."""
    lines = []
    for rec in state.records.values():
        parts = [str(rec.end0), str(rec.end1), str(rec.mu)]
        parts.extend(f"{p}:{m0}:{m1}" for p, m0, m1 in rec.lam)
        lines.append(" ".join(parts))
    return "\n".join(lines)
