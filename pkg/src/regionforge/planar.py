"""Immutable 4-valent planar combinatorial maps.

A diagram is stored as a rotation system on darts (half-edges).  Crossing
``c`` owns the four darts ``4c .. 4c+3``; the dart's slot ``d & 3`` gives its
position in the counterclockwise rotation order at the crossing.  An edge is
an unordered pair ``{d, pairing[d]}`` of darts.

Frozen conventions (changing any of these silently breaks census tests):

* slots 0..3 run counterclockwise;
* the two strand passages through a crossing are the diagonals, so the
  strand continues from slot ``s`` to slot ``s ^ 2``;
* faces are the orbits of ``d -> pairing[cw(d)]`` where ``cw`` steps one
  slot clockwise;
* ``over_diag[c] == 0`` means the slot 0-2 diagonal passes over,
  ``1`` means the slot 1-3 diagonal does, ``None`` means no crossing data.

Crossing-free unknot components are carried as a bare count in ``circles``;
they only arise from smoothing/simplification.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def crossing_of(dart: int) -> int:
    return dart >> 2


def slot_of(dart: int) -> int:
    return dart & 3


def dart_at(crossing: int, slot: int) -> int:
    return 4 * crossing + (slot & 3)


def opposite(dart: int) -> int:
    """Dart on the same strand passage, diagonally across the crossing."""
    return dart ^ 2


def ccw(dart: int) -> int:
    return (dart & ~3) | ((dart + 1) & 3)


def cw(dart: int) -> int:
    return (dart & ~3) | ((dart + 3) & 3)


class DiagramError(ValueError):
    """Raised when an operation's structural precondition fails."""


@dataclass(frozen=True)
class PlaneDiagram:
    """A 4-valent map on the sphere, optionally with crossing data.

    ``pairing`` is a fixed-point-free involution on darts.  ``over_diag``
    holds one entry per crossing (0, 1 or None).  ``starts`` fixes one dart
    per link component: the component is traversed from that dart and every
    dart reached by ``strand_next`` points in the traversal direction.
    """

    pairing: tuple[int, ...]
    over_diag: tuple[int | None, ...]
    starts: tuple[int, ...]
    circles: int = 0

    # -- basic structure ---------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.pairing) // 4

    @property
    def n_edges(self) -> int:
        return len(self.pairing) // 2

    @property
    def darts(self) -> range:
        return range(len(self.pairing))

    def strand_next(self, dart: int) -> int:
        """Follow the strand: cross the edge, pass through the crossing."""
        return self.pairing[dart] ^ 2

    def strand_prev(self, dart: int) -> int:
        return self.pairing[dart ^ 2]

    def face_next(self, dart: int) -> int:
        return self.pairing[cw(dart)]

    # -- orbits ------------------------------------------------------------

    def face_orbits(self) -> list[list[int]]:
        seen = [False] * len(self.pairing)
        orbits: list[list[int]] = []
        for d0 in self.darts:
            if seen[d0]:
                continue
            orbit = []
            d = d0
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = self.face_next(d)
            orbits.append(orbit)
        return orbits

    def face_id_of_dart(self) -> list[int]:
        """Index of the face orbit owning each dart."""
        fid = [-1] * len(self.pairing)
        for i, orbit in enumerate(self.face_orbits()):
            for d in orbit:
                fid[d] = i
        return fid

    def component_orbits(self) -> list[list[int]]:
        """Directed strand orbits, one per component, from ``starts``."""
        orbits = []
        for s in self.starts:
            orbit = [s]
            d = self.strand_next(s)
            while d != s:
                orbit.append(d)
                d = self.strand_next(d)
            orbits.append(orbit)
        return orbits

    def n_components(self) -> int:
        return len(self.starts) + self.circles

    def forward_darts(self) -> set[int]:
        out: set[int] = set()
        for orbit in self.component_orbits():
            out.update(orbit)
        return out

    # -- derived quantities --------------------------------------------------

    def census(self) -> "FaceCensus":
        counts: Counter[int] = Counter(len(o) for o in self.face_orbits())
        return FaceCensus(dict(counts))

    def is_projection(self) -> bool:
        return all(o is None for o in self.over_diag)

    def has_full_crossing_info(self) -> bool:
        return all(o is not None for o in self.over_diag)

    def crossing_sign(self, c: int) -> int:
        """Sign of crossing ``c`` under the chosen component orientations."""
        o = self.over_diag[c]
        if o is None:
            raise DiagramError(f"crossing {c} has no over/under data")
        fwd = self.forward_darts()
        over_out = next(d for d in (dart_at(c, o), dart_at(c, o + 2)) if d in fwd)
        under_out = next(
            d for d in (dart_at(c, o + 1), dart_at(c, o + 3)) if d in fwd
        )
        return 1 if (slot_of(under_out) - slot_of(over_out)) % 4 == 1 else -1

    def writhe(self) -> int:
        if not self.has_full_crossing_info():
            raise DiagramError("writhe needs crossing data at every crossing")
        return sum(self.crossing_sign(c) for c in range(self.n_crossings))

    def is_reduced(self) -> bool:
        """True iff no crossing has two opposite corners on the same face."""
        fid = self.face_id_of_dart()
        for c in range(self.n_crossings):
            corners = [fid[dart_at(c, s)] for s in range(4)]
            if corners[0] == corners[2] or corners[1] == corners[3]:
                return False
        return True

    # -- validation ----------------------------------------------------------

    def validate(self) -> "ValidationReport":
        failures: list[str] = []
        n = len(self.pairing)
        if n % 4:
            failures.append(f"dart count {n} is not a multiple of 4")
        for d in self.darts:
            p = self.pairing[d]
            if not 0 <= p < n:
                failures.append(f"pairing[{d}] = {p} out of range")
            elif p == d:
                failures.append(f"pairing has fixed point at dart {d}")
            elif self.pairing[p] != d:
                failures.append(f"pairing not an involution at dart {d}")
        if len(self.over_diag) != self.n_crossings:
            failures.append("over_diag length does not match crossing count")
        for c, o in enumerate(self.over_diag):
            if o not in (None, 0, 1):
                failures.append(f"over_diag[{c}] = {o!r} invalid")
        if not failures and n:
            # connectivity under pairing + rotation
            seen = {0}
            stack = [0]
            while stack:
                d = stack.pop()
                for e in (self.pairing[d], ccw(d)):
                    if e not in seen:
                        seen.add(e)
                        stack.append(e)
            if len(seen) != n:
                failures.append(
                    f"map not connected: reached {len(seen)} of {n} darts"
                )
            else:
                v = self.n_crossings
                f = len(self.face_orbits())
                if f != v + 2:
                    failures.append(f"not genus 0: F = {f}, V + 2 = {v + 2}")
        if not failures and n:
            fwd = set()
            for s in self.starts:
                if not 0 <= s < n:
                    failures.append(f"start dart {s} out of range")
                    break
                if s in fwd:
                    failures.append(f"start dart {s} repeats a component")
                    break
                d = s
                while True:
                    fwd.add(d)
                    d = self.strand_next(d)
                    if d == s:
                        break
            else:
                if len(fwd) != self.n_edges:
                    failures.append(
                        "starts do not cover every component exactly once"
                    )
        if self.circles < 0:
            failures.append("negative circle count")
        return ValidationReport(tuple(failures))

    def check_valid(self) -> "PlaneDiagram":
        report = self.validate()
        if not report.ok:
            raise DiagramError("; ".join(report.failures))
        return self

    # -- isomorphism ---------------------------------------------------------

    def canonical_key(self) -> tuple:
        """Canonical form: lexicographic minimum over BFS relabelings.

        Every (start dart, reflection) pair seeds a traversal that relabels
        crossings in first-visit order; the smallest resulting signature is
        the key.  Quadratic in size, meant for desk-scale diagrams.
        """
        n = len(self.pairing)
        if n == 0:
            return ("circles", self.circles)
        best: tuple | None = None
        for reflect in (False, True):
            for d0 in self.darts:
                sig = self._signature_from(d0, reflect)
                if best is None or sig < best:
                    best = sig
        return ("map", self.circles, best)

    def _signature_from(self, d0: int, reflect: bool) -> tuple:
        # Relabel: visit darts via a deterministic spiral; new crossing ids in
        # first-visit order, each crossing's slot 0 at its first-visited dart.
        n = len(self.pairing)
        cross_id: dict[int, int] = {}
        anchor: dict[int, int] = {}  # crossing -> dart relabeled as its slot 0
        order: list[int] = []

        def newdart(d: int) -> int:
            c = crossing_of(d)
            if c not in cross_id:
                cross_id[c] = len(cross_id)
                anchor[c] = d
            delta = (slot_of(d) - slot_of(anchor[c])) & 3
            if reflect:
                delta = (-delta) & 3
            return 4 * cross_id[c] + delta

        seen = [False] * n
        queue = [d0]
        while queue:
            d = queue.pop()
            if seen[d]:
                continue
            seen[d] = True
            newdart(d)
            order.append(d)
            nxt = ccw(d) if not reflect else cw(d)
            queue.append(self.pairing[d])
            queue.append(nxt)
        pairing_sig = tuple(newdart(self.pairing[d]) for d in sorted(order, key=newdart))
        over_sig = []
        for c, _ in sorted(cross_id.items(), key=lambda kv: kv[1]):
            o = self.over_diag[c]
            if o is None:
                over_sig.append(2)
            else:
                a = slot_of(anchor[c])
                delta = (o - a) & 1 if not reflect else (a - o) & 1
                over_sig.append(delta)
        return (pairing_sig, tuple(over_sig))

    def is_isomorphic_to(self, other: "PlaneDiagram") -> bool:
        return self.canonical_key() == other.canonical_key()

    # -- modified copies -----------------------------------------------------

    def with_over(self, assignment: Sequence[int | None]) -> "PlaneDiagram":
        if len(assignment) != self.n_crossings:
            raise DiagramError("assignment length mismatch")
        return PlaneDiagram(self.pairing, tuple(assignment), self.starts, self.circles)

    def as_projection(self) -> "PlaneDiagram":
        return self.with_over((None,) * self.n_crossings)

    def with_starts(self, starts: Sequence[int]) -> "PlaneDiagram":
        return PlaneDiagram(self.pairing, self.over_diag, tuple(starts), self.circles)


@dataclass(frozen=True)
class FaceCensus:
    """Map from region size n to the number p_n of n-gon regions."""

    counts: dict[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "counts", {n: p for n, p in sorted(self.counts.items()) if p}
        )

    def __getitem__(self, n: int) -> int:
        return self.counts.get(n, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FaceCensus):
            return self.counts == other.counts
        if isinstance(other, dict):
            return self.counts == {n: p for n, p in sorted(other.items()) if p}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.counts.items()))

    def total_faces(self) -> int:
        return sum(self.counts.values())

    def total_edges_weighted(self) -> int:
        return sum(n * p for n, p in self.counts.items())

    def euler_identity(self) -> bool:
        """General form of the census identity: sum (4 - n) p_n = 8."""
        return sum((4 - n) * p for n, p in self.counts.items()) == 8

    def without_quads(self) -> dict[int, int]:
        return {n: p for n, p in self.counts.items() if n != 4}

    def __str__(self) -> str:
        return " ".join(f"p{n}={p}" for n, p in self.counts.items()) or "(empty)"


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "invalid: " + "; ".join(self.failures)


# -- spec-level operation wrappers ------------------------------------------


def validate(d: PlaneDiagram) -> ValidationReport:
    return d.validate()


def face_census(d: PlaneDiagram) -> FaceCensus:
    d.check_valid()
    return d.census()


def euler_identity(c: FaceCensus) -> bool:
    return c.euler_identity()


def writhe(d: PlaneDiagram) -> int:
    return d.writhe()


def is_reduced(d: PlaneDiagram) -> bool:
    d.check_valid()
    return d.is_reduced()


# -- small builders ----------------------------------------------------------


class MapBuilder:
    """Mutable scratch structure for assembling diagrams dart by dart."""

    def __init__(self) -> None:
        self.pairing: dict[int, int] = {}
        self.over: list[int | None] = []

    def new_crossing(self, over: int | None = None) -> int:
        self.over.append(over)
        return len(self.over) - 1

    def join(self, d1: int, d2: int) -> None:
        if d1 in self.pairing or d2 in self.pairing:
            raise DiagramError(f"dart {d1} or {d2} already paired")
        if d1 == d2:
            raise DiagramError("cannot pair a dart with itself")
        self.pairing[d1] = d2
        self.pairing[d2] = d1

    def build(self, starts: Sequence[int] | None = None, circles: int = 0) -> PlaneDiagram:
        n = 4 * len(self.over)
        if sorted(self.pairing) != list(range(n)):
            raise DiagramError("pairing incomplete")
        pairing = tuple(self.pairing[d] for d in range(n))
        if starts is None:
            starts = _default_starts(pairing)
        return PlaneDiagram(pairing, tuple(self.over), tuple(starts), circles)


def _default_starts(pairing: Sequence[int]) -> tuple[int, ...]:
    seen: set[int] = set()
    starts = []
    for d in range(len(pairing)):
        if d in seen:
            continue
        starts.append(d)
        e = d
        while e not in seen:
            seen.add(e)
            e = pairing[e] ^ 2
    return tuple(starts)


def default_starts_for(pairing: Sequence[int]) -> tuple[int, ...]:
    return _default_starts(pairing)


def circle_diagram(k: int = 1) -> PlaneDiagram:
    """k disjoint crossing-free circles."""
    return PlaneDiagram((), (), (), circles=k)


def kink_diagram(over: int | None = None) -> PlaneDiagram:
    """One-crossing unknot; ``over=1`` gives the positive kink."""
    return PlaneDiagram((1, 0, 3, 2), (over,), (0,))


def positive_kink() -> PlaneDiagram:
    return kink_diagram(over=1)


# -- random generation (property-test support) -------------------------------


def random_diagram(seed: int, move_count: int) -> PlaneDiagram:
    """Apply ``move_count`` random R1+/R2+ moves to a one-crossing kink.

    Deterministic in ``seed``.  Import is deferred to avoid a module cycle
    with :mod:`regionforge.moves`.
    """
    from . import moves

    if move_count < 1:
        raise DiagramError("move_count must be >= 1")
    rng = random.Random(seed)
    d = kink_diagram(over=rng.choice((0, 1)))
    for _ in range(move_count):
        d = moves.random_grow_move(d, rng)
    return d.check_valid()
