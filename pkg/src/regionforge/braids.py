"""Braid words, toric and quasitoric braids, and their closures.

A braid word lives on ``p`` strands with letters ``(i, sign)`` for the Artin
generator ``sigma_i^sign`` (1 <= i <= p-1).  The closure is built as the
standard closed-braid diagram; strands that meet no crossing close into
crossing-free circles and are kept as the diagram's ``circles`` count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .planar import DiagramError, PlaneDiagram, dart_at


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...]  # (generator index, +1/-1)

    def __post_init__(self) -> None:
        if self.strands < 2:
            raise DiagramError("braid needs at least 2 strands")
        for i, s in self.letters:
            if not 1 <= i <= self.strands - 1:
                raise DiagramError(f"generator index {i} out of range")
            if s not in (1, -1):
                raise DiagramError(f"letter sign {s} invalid")

    def permutation(self) -> list[int]:
        """Image of each strand position under the word, bottom to top."""
        perm = list(range(self.strands))
        for i, _ in self.letters:
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return perm

    def cycle_count(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = 0
        for i in range(self.strands):
            if seen[i]:
                continue
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
        return cycles

    def writhe(self) -> int:
        return sum(s for _, s in self.letters)

    def __str__(self) -> str:
        body = " ".join(f"s{i}" if s > 0 else f"s{i}^-1" for i, s in self.letters)
        return f"{self.strands}; {body}"


def toric(p: int, q: int) -> BraidWord:
    """The toric braid (sigma_1 sigma_2 ... sigma_{p-1})^q, all positive."""
    if p < 2:
        raise DiagramError("toric braid needs p >= 2")
    if q < 1:
        raise DiagramError("toric braid needs q >= 1")
    letters = tuple((i, 1) for _ in range(q) for i in range(1, p))
    return BraidWord(p, letters)


@dataclass(frozen=True)
class QuasitoricSpec:
    p: int
    q: int
    signs: tuple[tuple[int, ...], ...]  # signs[j][i-1] for row j, generator i

    def __post_init__(self) -> None:
        if len(self.signs) != self.q or any(len(row) != self.p - 1 for row in self.signs):
            raise DiagramError("sign matrix must be q rows of p-1 entries")


def quasitoric(spec: QuasitoricSpec) -> BraidWord:
    """Toric braid with the letter signs replaced by the sign matrix."""
    letters = []
    for row in spec.signs:
        for i, s in enumerate(row, start=1):
            if s not in (1, -1):
                raise DiagramError("sign matrix entries must be +-1")
            letters.append((i, s))
    return BraidWord(spec.p, tuple(letters))


def is_quasitoric_word(w: BraidWord) -> bool:
    """True iff the letters follow the toric pattern 1,2,..,p-1 repeated."""
    if len(w.letters) % (w.strands - 1):
        return False
    for k, (i, _) in enumerate(w.letters):
        if i != (k % (w.strands - 1)) + 1:
            return False
    return True


def quasitoric_spec_of(w: BraidWord) -> QuasitoricSpec:
    if not is_quasitoric_word(w):
        raise DiagramError("word does not follow the toric letter pattern")
    q = len(w.letters) // (w.strands - 1)
    rows = []
    for j in range(q):
        row = tuple(s for _, s in w.letters[j * (w.strands - 1):(j + 1) * (w.strands - 1)])
        rows.append(row)
    return QuasitoricSpec(w.strands, q, tuple(rows))


def negative_full_twist(p: int) -> BraidWord:
    """((sigma_1 ... sigma_{p-1})^{-1})^p: p(p-1) negative letters.

    Written as p repeats of the reversed row with all signs negative, which
    keeps the toric letter pattern after conjugation-free normalization is
    not required here: the closure only needs the letters in order.
    """
    if p < 2:
        raise DiagramError("full twist needs p >= 2")
    letters = tuple((i, -1) for _ in range(p) for i in range(p - 1, 0, -1))
    return BraidWord(p, letters)


def product(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.strands != b.strands:
        raise DiagramError("braid product needs equal strand counts")
    return BraidWord(a.strands, a.letters + b.letters)


def closure(w: BraidWord) -> PlaneDiagram:
    """Standard closed-braid diagram of the word.

    Strands run upward; letter ``sigma_i`` makes the strand entering at
    position i pass over the one at position i+1.  Positions not involved in
    any letter close into crossing-free circles.
    """
    p = w.strands
    if not w.letters:
        return PlaneDiagram((), (), (), circles=p)
    # 'ports[k]' is the dangling dart at the top of column k, or None.
    # Crossing layout for a letter at position i (columns i-1, i, 0-based
    # c = i-1): the crossing's four slots, counterclockwise:
    #   0 = SW (in from column c), 1 = SE (in from column c+1),
    #   2 = NE (out to column c+1), 3 = NW (out to column c).
    # The strand passages are the diagonals (0, 2) [SW -> NE] and (1, 3)
    # [SE -> NW].  A positive letter puts the SW->NE strand on top.
    ports: list[int | None] = [None] * p
    bottoms: list[tuple[int, int] | None] = [None] * p
    pairing: dict[int, int] = {}
    over: list[int] = []

    def join(x: int, y: int) -> None:
        pairing[x] = y
        pairing[y] = x

    for (i, s) in w.letters:
        c = len(over)
        over.append(0 if s > 0 else 1)
        left, right = i - 1, i
        for col, slot_in in ((left, 0), (right, 1)):
            if ports[col] is None:
                bottoms[col] = (c, slot_in)
            else:
                join(ports[col], dart_at(c, slot_in))
        ports[left] = dart_at(c, 3)
        ports[right] = dart_at(c, 2)
    circles = 0
    for col in range(p):
        if ports[col] is None:
            circles += 1
            continue
        bc, bs = bottoms[col]
        join(ports[col], dart_at(bc, bs))
    pairing_t = tuple(pairing[d] for d in range(4 * len(over)))
    # orient every component upward: start at each component's first
    # bottom-entry dart (slot 0/1 darts are traversed upward)
    starts: list[int] = []
    seen: set[int] = set()
    for c in range(len(over)):
        for s in (0, 1):
            d0 = dart_at(c, s) ^ 2  # outgoing dart of the upward passage
            if d0 in seen:
                continue
            comp = [d0]
            e = pairing_t[d0] ^ 2
            while e != d0:
                comp.append(e)
                e = pairing_t[e] ^ 2
            if any(x in seen for x in comp):
                continue
            seen.update(comp)
            seen.update(pairing_t[x] for x in comp)
            starts.append(min(comp))
    diagram = PlaneDiagram(pairing_t, tuple(over), tuple(sorted(starts)), circles)
    return diagram.check_valid()
