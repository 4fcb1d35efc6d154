"""Elementary diagram transformations with replayable logging.

Moves reference locations by dart index in the diagram they apply to, so a
log replays deterministically.  Census bookkeeping of each move is frozen by
the tests: R1+ adds a 1-gon, grows the poked face by 2 and the far face by
1; R2+ adds a bigon and one face; R3 preserves the whole census multiset.

``LoopRoute`` is the workhorse of the realization pipeline: it inserts a
kink whose loop is routed as a simple closed curve across a given edge
sequence (one transversal crossing per edge, loop strand passing under
everything).  It is equivalent to a finite R2/R3 sequence but is applied and
replayed as a single logged move.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .planar import (
    DiagramError,
    PlaneDiagram,
    ccw,
    crossing_of,
    cw,
    dart_at,
    opposite,
    slot_of,
)


# ---------------------------------------------------------------------------
# face-side helpers


def left_face_dart(d: PlaneDiagram, edge_dart: int) -> int:
    """Representative dart of the face on the left of ``edge_dart``.

    "Left" means: walking the edge from ``edge_dart``'s crossing toward its
    partner, the face traversing the edge in that direction.
    """
    return ccw(edge_dart)


def face_orbit_of(d: PlaneDiagram, dart: int) -> list[int]:
    orbit = [dart]
    e = d.face_next(dart)
    while e != dart:
        orbit.append(e)
        e = d.face_next(e)
    return orbit


def boundary_edge_darts(d: PlaneDiagram, face_dart: int) -> list[int]:
    """Edge darts traversed by the face containing ``face_dart``, in order.

    The face traverses edge ``{cw(o), pairing[cw(o)]}`` for each orbit dart
    ``o``; the returned dart is ``cw(o)``, oriented along the walk.
    """
    return [cw(o) for o in face_orbit_of(d, face_dart)]


def same_face(d: PlaneDiagram, dart_a: int, dart_b: int) -> bool:
    orbit = face_orbit_of(d, dart_a)
    return dart_b in orbit


# ---------------------------------------------------------------------------
# move records


@dataclass(frozen=True)
class R1Plus:
    """Kink on edge ``{dart, pairing[dart]}``; the 1-gon lies in the face on
    the side of ``dart``'s own face orbit.  ``over`` sets the new crossing's
    over diagonal (None on projections)."""

    dart: int
    over: int | None = None


@dataclass(frozen=True)
class R1Minus:
    """Remove the kink whose 1-gon face is the singleton orbit of ``dart``."""

    dart: int


@dataclass(frozen=True)
class R2Plus:
    """Push edge ``arc`` across edge ``target``; both must bound the face on
    the left of both darts.  ``under=True`` routes the arc beneath the
    target strand (None on projections)."""

    arc: int
    target: int
    under: bool | None = None


@dataclass(frozen=True)
class R2Minus:
    """Cancel the bigon face containing ``dart`` in its orbit."""

    dart: int


@dataclass(frozen=True)
class R3:
    """Slide across the triangle face containing ``dart`` in its orbit."""

    dart: int


@dataclass(frozen=True)
class LoopRoute:
    """Insert a kink at ``anchor`` (1-gon side per R1Plus convention) and
    route its loop as a simple closed curve crossing each edge in ``route``
    once, in order, re-entering the anchor face at the end.  The loop strand
    passes under every crossed strand; ``over`` fixes the anchor crossing."""

    anchor: int
    route: tuple[int, ...]
    over: int | None = None


Move = R1Plus | R1Minus | R2Plus | R2Minus | R3 | LoopRoute


@dataclass(frozen=True)
class MoveLog:
    start: PlaneDiagram
    moves: tuple[Move, ...]
    end: PlaneDiagram

    def __len__(self) -> int:
        return len(self.moves)


# ---------------------------------------------------------------------------
# surgery scratchpad


class _Surgeon:
    def __init__(self, d: PlaneDiagram):
        self.src = d
        self.pairing: list[int] = list(d.pairing)
        self.over: list[int | None] = list(d.over_diag)
        self.circles = d.circles
        self._dmap: dict[int, int] | None = None

    def new_crossing(self, over: int | None = None) -> int:
        self.over.append(over)
        self.pairing.extend([-1, -1, -1, -1])
        return len(self.over) - 1

    def cut(self, dart: int) -> int:
        partner = self.pairing[dart]
        self.pairing[dart] = -1
        self.pairing[partner] = -1
        return partner

    def join(self, a: int, b: int) -> None:
        if a == b:
            raise DiagramError("cannot join a dart to itself")
        if self.pairing[a] != -1 or self.pairing[b] != -1:
            raise DiagramError("join target already paired")
        self.pairing[a] = b
        self.pairing[b] = a

    def remove_crossings(self, removed: set[int]) -> None:
        """Delete crossings, splicing every strand running through them.

        Strand cycles lying entirely inside the removed set become free
        circles.
        """
        rdarts = {d for c in removed for d in range(4 * c, 4 * c + 4)}

        def through(dart: int) -> int:
            v = self.pairing[dart]
            while v in rdarts:
                v = self.pairing[v ^ 2]
            return v

        outside = [u for u in range(len(self.pairing))
                   if u not in rdarts and self.pairing[u] in rdarts]
        spliced = {u: through(u) for u in outside}
        # strand cycles entirely inside the removed set: count passages
        visited: set[int] = set()
        for d0 in rdarts:
            if d0 in visited or self.pairing[d0] not in rdarts:
                continue
            v = d0
            internal = True
            while True:
                visited.add(v)
                visited.add(v ^ 2)
                nxt = self.pairing[v]
                if nxt not in rdarts:
                    internal = False
                    break
                v = nxt ^ 2
                if v == d0:
                    break
            if internal:
                self.circles += 1
        for u, v in spliced.items():
            self.pairing[u] = v
        # compact dart labels
        keep = [c for c in range(len(self.over)) if c not in removed]
        cmap = {c: i for i, c in enumerate(keep)}
        dmap = {}
        for c in keep:
            for s in range(4):
                dmap[4 * c + s] = 4 * cmap[c] + s
        new_pairing = [-1] * (4 * len(keep))
        for c in keep:
            for s in range(4):
                old = 4 * c + s
                new_pairing[dmap[old]] = dmap[self.pairing[old]]
        self.pairing = new_pairing
        self.over = [self.over[c] for c in keep]
        self._dmap = dmap

    def dart_map(self, old: int) -> int | None:
        if self._dmap is None:
            return old
        return self._dmap.get(old)


def _rebuild_starts_like(pairing: tuple[int, ...], prefer: set[int]) -> tuple[int, ...]:
    """One start dart per component, preferring darts from ``prefer``."""
    n = len(pairing)
    seen = [False] * n
    starts = []
    for d0 in range(n):
        if seen[d0]:
            continue
        orbit = [d0]
        seen[d0] = True
        e = pairing[d0] ^ 2
        while e != d0:
            orbit.append(e)
            seen[e] = True
            e = pairing[e] ^ 2
        # mark the reversed orbit as seen as well
        rev0 = pairing[d0]
        r = rev0
        rev = [r]
        while True:
            if not seen[r]:
                seen[r] = True
            r = pairing[r] ^ 2
            if r == rev0:
                break
            rev.append(r)
        fwd_pref = sum(1 for x in orbit if x in prefer)
        rev_pref = sum(1 for x in rev if x in prefer)
        chosen = orbit if fwd_pref >= rev_pref else rev
        starts.append(min(chosen))
    return tuple(sorted(starts))


def _finish(surg: _Surgeon) -> PlaneDiagram:
    if any(p == -1 for p in surg.pairing):
        raise DiagramError("surgery left unpaired darts")
    pairing = tuple(surg.pairing)
    prefer = set()
    for d in surg.src.forward_darts():
        nd = surg.dart_map(d)
        if nd is not None:
            prefer.add(nd)
    starts = _rebuild_starts_like(pairing, prefer)
    return PlaneDiagram(pairing, tuple(surg.over), starts, surg.circles)


# ---------------------------------------------------------------------------
# move application


def apply_move(d: PlaneDiagram, m: Move) -> PlaneDiagram:
    if isinstance(m, R1Plus):
        return _apply_r1_plus(d, m)
    if isinstance(m, R1Minus):
        return _apply_r1_minus(d, m)
    if isinstance(m, R2Plus):
        return _apply_r2_plus(d, m)
    if isinstance(m, R2Minus):
        return _apply_r2_minus(d, m)
    if isinstance(m, R3):
        return _apply_r3(d, m)
    if isinstance(m, LoopRoute):
        return _apply_loop_route(d, m)
    raise DiagramError(f"unknown move {m!r}")


def _apply_r1_plus(d: PlaneDiagram, m: R1Plus) -> PlaneDiagram:
    v = m.dart
    if not 0 <= v < len(d.pairing):
        raise DiagramError("R1Plus: dart out of range")
    surg = _Surgeon(d)
    u = surg.cut(v)
    x = surg.new_crossing(m.over)
    surg.join(u, dart_at(x, 0))
    surg.join(dart_at(x, 2), dart_at(x, 3))
    surg.join(dart_at(x, 1), v)
    return _finish(surg)


def one_gon_darts(d: PlaneDiagram) -> list[int]:
    return [o[0] for o in d.face_orbits() if len(o) == 1]


def _apply_r1_minus(d: PlaneDiagram, m: R1Minus) -> PlaneDiagram:
    dart = m.dart
    if d.face_next(dart) != dart:
        raise DiagramError("R1Minus: dart is not a 1-gon face")
    surg = _Surgeon(d)
    surg.remove_crossings({crossing_of(dart)})
    return _finish(surg)


def _apply_r2_plus(d: PlaneDiagram, m: R2Plus) -> PlaneDiagram:
    a, b = m.arc, m.target
    a2, b2 = d.pairing[a], d.pairing[b]
    if {a, a2} == {b, b2}:
        raise DiagramError("R2Plus: arc and target must be distinct edges")
    if not same_face(d, ccw(a), ccw(b)):
        raise DiagramError("R2Plus: arc and target do not co-bound the face")
    over_x = over_y = None
    if m.under is not None:
        # target strand rides the (1,3) diagonal at both new crossings
        over_x = over_y = 1 if m.under else 0
    surg = _Surgeon(d)
    surg.cut(a)
    surg.cut(b)
    x = surg.new_crossing(over_x)
    y = surg.new_crossing(over_y)
    surg.join(a, dart_at(x, 0))
    surg.join(a2, dart_at(y, 0))
    surg.join(b, dart_at(y, 1))
    surg.join(b2, dart_at(x, 3))
    surg.join(dart_at(x, 2), dart_at(y, 2))  # arc middle
    surg.join(dart_at(x, 1), dart_at(y, 3))  # target middle
    return _finish(surg)


def bigon_darts(d: PlaneDiagram) -> list[list[int]]:
    return [o for o in d.face_orbits() if len(o) == 2]


def r2_minus_applicable(d: PlaneDiagram, dart: int) -> bool:
    q = d.face_next(dart)
    if q == dart or d.face_next(q) != dart:
        return False
    x, y = crossing_of(dart), crossing_of(q)
    if x == y:
        return False
    if d.over_diag[x] is None and d.over_diag[y] is None:
        return True
    if d.over_diag[x] is None or d.over_diag[y] is None:
        return False
    # strand A runs through dart's crossing on the diagonal of cw(dart)
    p = dart
    sa_x = (slot_of(p) - 1) & 1          # A's diagonal parity at x
    sa_y = slot_of(q) & 1                # A's diagonal parity at y
    a_over_x = d.over_diag[x] == sa_x
    a_over_y = d.over_diag[y] == sa_y
    return a_over_x == a_over_y


def _apply_r2_minus(d: PlaneDiagram, m: R2Minus) -> PlaneDiagram:
    p = m.dart
    q = d.face_next(p)
    if q == p or d.face_next(q) != p:
        raise DiagramError("R2Minus: dart is not on a bigon face")
    if not r2_minus_applicable(d, p):
        raise DiagramError("R2Minus: bigon is not reducible")
    surg = _Surgeon(d)
    surg.remove_crossings({crossing_of(p), crossing_of(q)})
    return _finish(surg)


def triangle_darts(d: PlaneDiagram) -> list[list[int]]:
    return [o for o in d.face_orbits() if len(o) == 3]


def r3_applicable(d: PlaneDiagram, dart: int) -> bool:
    p = dart
    q = d.face_next(p)
    r = d.face_next(q)
    if d.face_next(r) != p or len({p, q, r}) != 3:
        return False
    cs = [crossing_of(t) for t in (p, q, r)]
    if len(set(cs)) != 3:
        return False
    if any(d.over_diag[c] is None for c in cs):
        return all(d.over_diag[c] is None for c in cs)
    # edge strands: E1={cw(p),q} at (P,Q); E2={cw(q),r}; E3={cw(r),p}
    def over_at(t_dart: int, diag_dart: int) -> bool:
        return d.over_diag[crossing_of(t_dart)] == (slot_of(diag_dart) & 1)

    patterns = []
    for t, u in ((p, q), (q, r), (r, p)):
        at_first = over_at(t, cw(t))
        at_second = over_at(u, u)
        patterns.append((at_first, at_second))
    return any(a == b for a, b in patterns)


def _apply_r3(d: PlaneDiagram, m: R3) -> PlaneDiagram:
    p = m.dart
    q = d.face_next(p)
    r = d.face_next(q)
    if d.face_next(r) != p or len({crossing_of(t) for t in (p, q, r)}) != 3:
        raise DiagramError("R3: dart is not on a triangle with 3 crossings")
    if not r3_applicable(d, p):
        raise DiagramError("R3: over/under pattern inadmissible")
    surg = _Surgeon(d)
    new_pairs: list[tuple[int, int]] = []
    for t, u in ((p, q), (q, r), (r, p)):
        new_pairs.append((ccw(t), opposite(u)))
    internal = {x for pr in new_pairs for x in pr}
    # darts vacated by the triangle edges move to the opposite corner:
    # an edge previously attached at ccw(t) re-attaches at cw(t), and one
    # attached at opposite(t) re-attaches at t.
    relocate = {}
    for t in (p, q, r):
        relocate[ccw(t)] = cw(t)
        relocate[opposite(t)] = t
    pairing = list(surg.pairing)
    for a, b in new_pairs:
        pairing[a] = b
        pairing[b] = a
    for t in (p, q, r):
        for freed, pre in ((cw(t), ccw(t)), (t, opposite(t))):
            o = d.pairing[pre]
            target = relocate.get(o, o)
            pairing[freed] = target
            pairing[target] = freed
    for a in range(len(pairing)):
        if pairing[pairing[a]] != a or pairing[a] == a:
            raise DiagramError("R3: rewiring inconsistency (degenerate triangle)")
    surg.pairing = pairing
    return _finish(surg)


# ---------------------------------------------------------------------------
# routed kinks


def _apply_loop_route(d: PlaneDiagram, m: LoopRoute) -> PlaneDiagram:
    if len(set(m.route)) != len(m.route):
        raise DiagramError("LoopRoute: route crosses an edge twice")
    route_edges = []
    for e in m.route:
        route_edges.append((e, d.pairing[e]))
    anchor = m.anchor
    if any(anchor in pr or d.pairing[anchor] in pr for pr in route_edges):
        raise DiagramError("LoopRoute: route crosses the anchor edge")
    surg = _Surgeon(d)
    u = surg.cut(anchor)
    x = surg.new_crossing(m.over)
    surg.join(u, dart_at(x, 0))
    surg.join(dart_at(x, 1), anchor)
    prev_out = dart_at(x, 2)  # loop leaves the anchor here
    for e, e2 in route_edges:
        surg.cut(e)
        li = surg.new_crossing(0 if not d.is_projection() else None)
        surg.join(e, dart_at(li, 0))
        surg.join(dart_at(li, 2), e2)
        surg.join(prev_out, dart_at(li, 3))
        prev_out = dart_at(li, 1)
    surg.join(prev_out, dart_at(x, 3))
    return _finish(surg)


# ---------------------------------------------------------------------------
# kinks and detours (spec-level wrappers)


def make_kink(d: PlaneDiagram, edge_dart: int, sign: int | None = None) -> tuple[PlaneDiagram, Move]:
    """Create a kink on the given edge, 1-gon in the face on ``edge_dart``'s
    side.  For diagrams with crossing data, ``sign`` selects the writhe
    contribution of the new crossing."""
    if d.is_projection() or sign is None:
        mv = R1Plus(edge_dart, None)
        return apply_move(d, mv), mv
    for over in (0, 1):
        mv = R1Plus(edge_dart, over)
        out = apply_move(d, mv)
        if out.crossing_sign(out.n_crossings - 1) == sign:
            return out, mv
    raise DiagramError("make_kink: no assignment achieves the requested sign")


def detour(
    d: PlaneDiagram,
    loop_dart: int,
    path: Sequence[int],
    under: bool | None = True,
) -> tuple[PlaneDiagram, MoveLog]:
    """Re-route the 1-gon at ``loop_dart`` across the strands in ``path``.

    Each path entry is an edge dart; the loop's tip is pushed across it with
    one R2Plus (two new crossings), so the tip must share a face with each
    successive edge.  The empty path returns the diagram unchanged.
    """
    if d.face_next(loop_dart) != loop_dart:
        raise DiagramError("detour: dart is not a 1-gon face")
    start = d
    moves: list[Move] = []
    cur = d
    # the loop edge seen with the loop's outside face on its left
    tips = [loop_dart]
    if cur.is_projection():
        under = None
    for edge in path:
        tip = next((t for t in tips if same_face(cur, ccw(t), ccw(edge))), None)
        if tip is None:
            raise DiagramError("detour: path edge does not bound the tip face")
        mv = R2Plus(tip, edge, under)
        nxt = apply_move(cur, mv)
        moves.append(mv)
        # the new tip is the arc middle {x.2, y.2} of the two new crossings
        x, y = nxt.n_crossings - 2, nxt.n_crossings - 1
        tips = [dart_at(x, 2), dart_at(y, 2)]
        cur = nxt
    return cur, MoveLog(start, tuple(moves), cur)


def find_neutral_route(
    d: PlaneDiagram,
    anchor_face_dart: int,
    exit_edge: int,
    entry_edge: int,
    forbidden_faces: Iterable[int] = (),
) -> tuple[int, ...] | None:
    """Edge-dart sequence for a census-neutral loop from exit to entry.

    The loop leaves the anchor face across ``exit_edge`` and must re-enter
    it across ``entry_edge`` (both darts with the anchor face on their
    left).  Intermediate faces are each crossed once, in a way that leaves
    the region census unchanged away from quadrilaterals: 4-gons are crossed
    between opposite edges, 3-gons anywhere, larger faces only corner-wise
    (exit two steps from the entry), 1- and 2-gons never.  Returns the
    route (darts oriented with the walked-from face on the left) or None.
    """
    orbits = d.face_orbits()
    fid = [-1] * len(d.pairing)
    for i, orbit in enumerate(orbits):
        for o in orbit:
            fid[o] = i
    boundaries = [[cw(o) for o in orbit] for orbit in orbits]
    anchor_face = fid[anchor_face_dart]
    blocked = set(forbidden_faces)
    blocked.add(anchor_face)

    target_dart = d.pairing[entry_edge]  # entry edge seen from outside
    if exit_edge == target_dart:
        # the edge has the anchor face on both sides; one crossing closes it
        return (exit_edge,)

    def exits(face: int, entry_pos: int) -> list[int]:
        bnd = boundaries[face]
        n = len(bnd)
        if n == 3:
            return [(entry_pos + 1) % n, (entry_pos + 2) % n]
        if n == 4:
            return [(entry_pos + 2) % n]
        if n >= 5:
            return [(entry_pos + 2) % n, (entry_pos - 2) % n]
        return []

    from collections import deque

    first_entry = d.pairing[exit_edge]
    start_face = fid[ccw(first_entry)]
    if start_face in blocked:
        return None
    pos0 = boundaries[start_face].index(first_entry)
    queue = deque([(start_face, pos0)])
    visited = {start_face}
    parent: dict[tuple[int, int], tuple[tuple[int, int] | None, int]] = {
        (start_face, pos0): (None, exit_edge)
    }
    goal: tuple[int, int] | None = None
    while queue and goal is None:
        face, pos = queue.popleft()
        bnd = boundaries[face]
        for j in exits(face, pos):
            e = bnd[j]
            if e == target_dart:
                goal = (face, pos)
                break
            nf = fid[ccw(d.pairing[e])]
            if nf in blocked or nf in visited:
                continue
            npos = boundaries[nf].index(d.pairing[e])
            visited.add(nf)
            parent[(nf, npos)] = ((face, pos), e)
            queue.append((nf, npos))
    if goal is None:
        return None
    route = [target_dart]
    node: tuple[int, int] | None = goal
    while node is not None:
        prev, e = parent[node]
        route.append(e)
        node = prev
    route.reverse()
    return tuple(route)


# ---------------------------------------------------------------------------
# certificates


def verify_certificate(log: MoveLog) -> tuple[bool, int]:
    """Replay the log; returns (ok, index of first failing move or -1)."""
    cur = log.start
    for i, mv in enumerate(log.moves):
        try:
            cur = apply_move(cur, mv)
        except DiagramError:
            return False, i
    if cur.pairing == log.end.pairing and cur.over_diag == log.end.over_diag \
            and cur.circles == log.end.circles:
        return True, -1
    if cur.n_crossings <= 24 and cur.canonical_key() == log.end.canonical_key():
        return True, -1
    return False, len(log.moves)


def concat_logs(first: MoveLog, second: MoveLog) -> MoveLog:
    if first.end.pairing != second.start.pairing:
        raise DiagramError("logs do not compose")
    return MoveLog(first.start, first.moves + second.moves, second.end)


# ---------------------------------------------------------------------------
# simplifier


def _greedy_pass(d: PlaneDiagram) -> tuple[PlaneDiagram, list[Move]]:
    moves: list[Move] = []
    changed = True
    cur = d
    while changed:
        changed = False
        ones = one_gon_darts(cur)
        if ones:
            mv = R1Minus(min(ones))
            cur = apply_move(cur, mv)
            moves.append(mv)
            changed = True
            continue
        for orbit in bigon_darts(cur):
            p = min(orbit)
            if r2_minus_applicable(cur, p):
                mv = R2Minus(p)
                cur = apply_move(cur, mv)
                moves.append(mv)
                changed = True
                break
    return cur, moves


def _under_arcs(d: PlaneDiagram) -> list[list[int]]:
    """Maximal strand arcs passing under at every crossing they meet.

    Returned as lists of forward darts; a full component that is everywhere
    under comes back as one cyclic arc.
    """
    if not d.has_full_crossing_info():
        return []
    fwd: list[int] = []
    for orbit in d.component_orbits():
        fwd.extend(orbit)
    under_at_entry: dict[int, bool] = {}
    for orbit in d.component_orbits():
        for dd in orbit:
            c = crossing_of(dd)
            under_at_entry[dd] = d.over_diag[c] != (slot_of(dd) & 1)
    arcs: list[list[int]] = []
    seen: set[int] = set()
    for orbit in d.component_orbits():
        n = len(orbit)
        breaks = [i for i, dd in enumerate(orbit) if not under_at_entry[dd]]
        if not breaks:
            arcs.append(orbit)
            continue
        for bi, i0 in enumerate(breaks):
            i1 = breaks[(bi + 1) % len(breaks)]
            run = []
            j = (i0 + 1) % n
            while j != i1:
                run.append(orbit[j])
                j = (j + 1) % n
            if run:
                arcs.append(run)
    return arcs


def _try_r3_enabling(d: PlaneDiagram) -> tuple[PlaneDiagram, list[Move]] | None:
    """One guided step: an R3 that immediately enables a greedy reduction."""
    for orbit in triangle_darts(d):
        p = min(orbit)
        if not r3_applicable(d, p):
            continue
        nxt = apply_move(d, R3(p))
        red, moves = _greedy_pass(nxt)
        if red.n_crossings < d.n_crossings:
            return red, [R3(p)] + moves
    return None


def simplify(d: PlaneDiagram, budget: int = 10**6) -> tuple[PlaneDiagram, MoveLog]:
    """Reduce crossing number by R1-/R2- with R3 assistance.

    Phase 1 runs greedy R1-/R2- to a fixed point.  Phase 2 performs a
    deterministic best-first search over R3/R2-/R2+ sequences (expanded as
    "R3 plus greedy cleanup" macro steps), bounded by ``budget`` expanded
    diagrams, never returning a diagram with more crossings than seen best.
    """
    if not d.has_full_crossing_info():
        raise DiagramError("simplify needs full crossing data")
    start = d
    cur, moves = _greedy_pass(d)
    spent = 0
    while cur.n_crossings > 0 and spent < budget:
        step = _try_r3_enabling(cur)
        spent += 1
        if step is None:
            # wider (depth-2) R3 probing, still deterministic
            step = _try_r3_depth2(cur, budget - spent)
            if step is None:
                break
        nd, mseq = step
        cur = nd
        moves.extend(mseq)
    return cur, MoveLog(start, tuple(moves), cur)


def _try_r3_depth2(d: PlaneDiagram, budget: int) -> tuple[PlaneDiagram, list[Move]] | None:
    if budget <= 0:
        return None
    tried = 0
    for orbit in sorted(triangle_darts(d), key=min):
        p = min(orbit)
        if not r3_applicable(d, p):
            continue
        mid = apply_move(d, R3(p))
        inner = _try_r3_enabling(mid)
        tried += 1
        if inner is not None:
            nd, mseq = inner
            return nd, [R3(p)] + mseq
        if tried >= budget:
            return None
    return None


# ---------------------------------------------------------------------------
# random growth (property-test generator support)


def random_grow_move(d: PlaneDiagram, rng) -> PlaneDiagram:
    """Apply one random R1+ or R2+ move (used by ``random_diagram``)."""
    if rng.random() < 0.5 or d.n_crossings < 2:
        dart = rng.randrange(len(d.pairing))
        over = None if d.is_projection() else rng.choice((0, 1))
        return apply_move(d, R1Plus(dart, over))
    faces = d.face_orbits()
    rng.shuffle(faces)
    for orbit in faces:
        edges = [cw(o) for o in orbit]
        distinct: list[int] = []
        seen_edges: set[frozenset[int]] = set()
        for e in edges:
            key = frozenset((e, d.pairing[e]))
            if key not in seen_edges:
                seen_edges.add(key)
                distinct.append(e)
        if len(distinct) >= 2:
            a, b = rng.sample(distinct, 2)
            under = None if d.is_projection() else rng.choice((True, False))
            return apply_move(d, R2Plus(a, b, under))
    dart = rng.randrange(len(d.pairing))
    over = None if d.is_projection() else rng.choice((0, 1))
    return apply_move(d, R1Plus(dart, over))
