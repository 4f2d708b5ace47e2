"""Simple closed curves on the genus 2 surface as exact chord diagrams.

The surface is an octagon with sides 0..7 read counterclockwise and glued by
the word a b a^-1 b^-1 c d c^-1 d^-1: side pairs (0,2) a, (1,3) b, (4,6) c and
(5,7) d.  A point at parameter t on one side is glued to 1 - t on its partner.

For exact geometry the fundamental domain is drawn as the unit disk with the
eight sides laid out as consecutive arcs of the circle; a boundary point at
position ``side + t`` goes to a rational point of the circle, monotonically in
the position.  Distinct points of a circle are never collinear, so every
crossing predicate is a strict sign test on rational determinants.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .freegroup import CyclicWord, reduce

PARTNER = {0: 2, 2: 0, 1: 3, 3: 1, 4: 6, 6: 4, 5: 7, 7: 5}
SIDE_CLASS = {0: "a", 2: "a", 1: "b", 3: "b", 4: "c", 6: "c", 5: "d", 7: "d"}
CLASS_SIDES = {"a": (0, 2), "b": (1, 3), "c": (4, 6), "d": (5, 7)}
# pairs of side classes whose curves meet once on the surface
_DUAL = {frozenset("ab"), frozenset("cd")}


class SurfaceError(ValueError):
    pass


class NonTransverse(SurfaceError):
    pass


class InvalidCurve(SurfaceError):
    pass


@dataclass(frozen=True, order=True)
class BoundaryPoint:
    side: int
    t: Fraction

    def __post_init__(self):
        if self.side not in PARTNER:
            raise SurfaceError(f"side {self.side} out of range")
        t = Fraction(self.t)
        object.__setattr__(self, "t", t)
        if not 0 < t < 1:
            raise SurfaceError(f"t={t} must lie strictly between 0 and 1")

    @property
    def position(self) -> Fraction:
        return self.side + self.t

    def glued(self) -> "BoundaryPoint":
        return BoundaryPoint(PARTNER[self.side], 1 - self.t)

    def shifted(self, eps: Fraction) -> "BoundaryPoint":
        return BoundaryPoint(self.side, self.t + eps)

    def to_json(self):
        return {"side": self.side, "t": f"{self.t.numerator}/{self.t.denominator}"}

    @classmethod
    def from_json(cls, obj) -> "BoundaryPoint":
        return cls(int(obj["side"]), Fraction(str(obj["t"])))


def point(side: int, t) -> BoundaryPoint:
    return BoundaryPoint(side, Fraction(t))


def chords_cross(c1: tuple[BoundaryPoint, BoundaryPoint], c2: tuple[BoundaryPoint, BoundaryPoint]) -> bool:
    """Strict interior crossing of two chords with four distinct endpoints.

    The octagon is convex, so two chords cross iff their endpoints
    interleave in boundary order.
    """
    lo, hi = sorted((c1[0].position, c1[1].position))
    inside = [lo < p.position < hi for p in c2]
    return inside[0] != inside[1] and all(p.position not in (lo, hi) for p in c2)


Chord = tuple[BoundaryPoint, BoundaryPoint]


@dataclass(frozen=True)
class ChordCurve:
    """Cyclic sequence of oriented chords (entry, exit).

    The exit of chord i is glued to the entry of chord i+1.
    """

    chords: tuple[Chord, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_exits(cls, exits: Sequence[tuple[int, object]], name: str = "") -> "ChordCurve":
        """Build a closed curve from its exit points; entries are the glued images."""
        pts = [point(s, t) for s, t in exits]
        chords = tuple((pts[i - 1].glued(), pts[i]) for i in range(len(pts)))
        return cls(chords, name)

    def endpoints(self) -> list[BoundaryPoint]:
        return [p for ch in self.chords for p in ch]

    def reversed(self) -> "ChordCurve":
        return ChordCurve(tuple((b, a) for a, b in reversed(self.chords)), self.name)

    def rotated(self, k: int) -> "ChordCurve":
        k %= len(self.chords)
        return ChordCurve(self.chords[k:] + self.chords[:k], self.name)

    def to_json(self):
        return [{"from": a.to_json(), "to": b.to_json()} for a, b in self.chords]

    @classmethod
    def from_json(cls, obj, name: str = "") -> "ChordCurve":
        if isinstance(obj, dict):
            name = obj.get("name", name)
            obj = obj["chords"]
        try:
            chords = tuple(
                (BoundaryPoint.from_json(c["from"]), BoundaryPoint.from_json(c["to"])) for c in obj
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise SurfaceError(f"malformed curve JSON: {exc}") from exc
        return cls(chords, name)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class Violation:
    kind: str
    chords: tuple[int, ...]

    def __str__(self):
        return f"{self.kind} at chords {list(self.chords)}"


def validate(c: ChordCurve) -> list[Violation]:
    """Every violated curve invariant; an empty list means the curve is valid."""
    out: list[Violation] = []
    n = len(c.chords)
    if n == 0:
        return [Violation("empty curve", ())]
    for i, (a, b) in enumerate(c.chords):
        if a == b:
            out.append(Violation("degenerate chord", (i,)))
    for i in range(n):
        nxt = (i + 1) % n
        if c.chords[i][1].glued() != c.chords[nxt][0]:
            out.append(Violation("not closed", (i, nxt)))
    seen: dict[BoundaryPoint, int] = {}
    for i, ch in enumerate(c.chords):
        for p in ch:
            if p in seen and seen[p] != i:
                out.append(Violation("repeated boundary point", (seen[p], i)))
            seen.setdefault(p, i)
    for i in range(n):
        for j in range(i + 1, n):
            if len({*c.chords[i], *c.chords[j]}) == 4 and chords_cross(c.chords[i], c.chords[j]):
                out.append(Violation("self-crossing", (i, j)))
    return out


def is_valid(c: ChordCurve) -> bool:
    return not validate(c)


def _require_valid(c: ChordCurve) -> None:
    bad = validate(c)
    if bad:
        raise InvalidCurve(f"invalid curve {c.name or ''}: " + "; ".join(map(str, bad)))


def shared_points(c1: ChordCurve, c2: ChordCurve) -> set[BoundaryPoint]:
    return set(c1.endpoints()) & set(c2.endpoints())


def crossings(c1: ChordCurve, c2: ChordCurve) -> int:
    """Number of transverse interior crossings between the two representatives."""
    if shared_points(c1, c2):
        raise NonTransverse("curves share a boundary point")
    return sum(chords_cross(a, b) for a in c1.chords for b in c2.chords)


def disjoint(c1: ChordCurve, c2: ChordCurve) -> bool:
    return not shared_points(c1, c2) and crossings(c1, c2) == 0


@dataclass(frozen=True)
class MeridianSystem:
    """Two side classes whose curves bound disks; generator i+1 is dual to classes[i]."""

    classes: tuple[str, str]

    def __post_init__(self):
        a, b = self.classes
        if a not in CLASS_SIDES or b not in CLASS_SIDES:
            raise SurfaceError(f"unknown side classes {self.classes}")
        if a == b:
            raise SurfaceError("meridian classes must be distinct")
        if frozenset((a, b)) in _DUAL:
            raise SurfaceError(f"side classes {a}, {b} meet once and cannot both bound disks")

    @classmethod
    def parse(cls, text: str) -> "MeridianSystem":
        return cls(tuple(text.strip()))

    def __str__(self):
        return "".join(self.classes)

    def generator(self, cls_name: str) -> int:
        return self.classes.index(cls_name) + 1 if cls_name in self.classes else 0


def signed_passages(c: ChordCurve) -> list[tuple[str, int]]:
    """(side class, sign) for each gluing passage, in traversal order.

    Passing from side s to its partner s' is positive when s' < s.
    """
    out = []
    for a, b in c.chords:
        s, s2 = b.side, PARTNER[b.side]
        out.append((SIDE_CLASS[s], 1 if s2 < s else -1))
    return out


def word_of(c: ChordCurve, m: MeridianSystem) -> CyclicWord:
    """Class in the handlebody whose meridians are the curves of ``m``."""
    _require_valid(c)
    letters = []
    for cls_name, sign in signed_passages(c):
        g = m.generator(cls_name)
        if g:
            letters.append(sign * g)
    return reduce(letters, 2).cyclic()


def _point_gap(points: Iterable[BoundaryPoint]) -> Fraction:
    by_side = defaultdict(set)
    for p in points:
        by_side[p.side].add(p.t)
    gap = Fraction(1)
    for ts in by_side.values():
        vals = sorted(ts | {Fraction(0), Fraction(1)})
        gap = min(gap, min(b - a for a, b in zip(vals, vals[1:])))
    return gap


def push_off(c: ChordCurve, side: str = "left", avoid: Iterable[ChordCurve] = ()) -> ChordCurve:
    """A parallel copy of ``c`` disjoint from it.

    Entries move by +eps and exits by -eps (left) or the reverse (right); this
    keeps consecutive chords glued.  ``eps`` is a quarter of the smallest gap
    between boundary points of ``c`` and of any ``avoid`` curves.
    """
    _require_valid(c)
    if side not in ("left", "right"):
        raise SurfaceError("side must be 'left' or 'right'")
    pts = c.endpoints() + [p for other in avoid for p in other.endpoints()]
    eps = _point_gap(pts) / 4
    s = eps if side == "left" else -eps
    out = ChordCurve(tuple((a.shifted(s), b.shifted(-s)) for a, b in c.chords), c.name)
    _require_valid(out)
    return out


# --- regular neighbourhoods ----------------------------------------------


def neighborhood_boundary(curves: Sequence[ChordCurve]) -> list[ChordCurve]:
    """Boundary of a regular neighbourhood of a union of curves.

    In the fundamental domain each connected cluster of crossing chords is a
    tree; its neighbourhood boundary consists of arcs joining consecutive
    cluster endpoints (in circle order), pushed slightly apart.  The arcs are
    then glued across the sides and traced into closed curves.  Two curves
    meeting once give a single curve: the band sum of two copies of one
    along the other.
    """
    chords = [ch for c in curves for ch in c.chords]
    for c in curves:
        _require_valid(c)
    n = len(chords)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    all_pts = [p for ch in chords for p in ch]
    if len(set(all_pts)) != len(all_pts):
        raise NonTransverse("curves share a boundary point")
    edges = 0
    for i in range(n):
        for j in range(i + 1, n):
            if chords_cross(chords[i], chords[j]):
                edges += 1
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
    clusters = defaultdict(list)
    for i in range(n):
        clusters[find(i)].append(i)
    if edges != n - len(clusters):
        raise SurfaceError("crossing clusters contain cycles; neighbourhood has interior holes")
    eps = _point_gap(all_pts) / 4
    arcs: list[tuple[BoundaryPoint, BoundaryPoint]] = []
    for members in clusters.values():
        pts = sorted((p for i in members for p in chords[i]), key=lambda p: p.position)
        for k in range(len(pts)):
            arcs.append((pts[k].shifted(eps), pts[(k + 1) % len(pts)].shifted(-eps)))
    owner = {}
    for idx, (a, b) in enumerate(arcs):
        owner[a] = idx
        owner[b] = idx
    used = [False] * len(arcs)
    out = []
    for start in range(len(arcs)):
        if used[start]:
            continue
        seq = []
        idx = start
        entry = arcs[start][0]
        while not used[idx]:
            used[idx] = True
            a, b = arcs[idx]
            ex = b if entry == a else a
            seq.append((entry, ex))
            entry = ex.glued()
            idx = owner[entry]
        out.append(ChordCurve(tuple(seq)))
    for c in out:
        _require_valid(c)
    return out


def band_sum(meridian: ChordCurve, along: ChordCurve) -> ChordCurve:
    """Band sum of two copies of ``meridian`` along ``along``; they must meet once."""
    if crossings(meridian, along) != 1:
        raise SurfaceError("band sum needs curves meeting exactly once")
    (out,) = neighborhood_boundary([meridian, along])
    return out


# --- topology of the complement -------------------------------------------


def complement_euler_characteristics(c: ChordCurve) -> list[int]:
    """Euler characteristic of each component of the surface cut along ``c``.

    Cells of the complement: regions of the fundamental domain cut by the
    chords (open disks), open side segments between consecutive boundary
    points (identified in pairs), and the single octagon vertex.
    """
    _require_valid(c)
    chords = list(c.chords)
    pts = sorted(c.endpoints(), key=lambda p: p.position)
    k = len(pts)
    index = {p: i for i, p in enumerate(pts)}
    other = {}
    for a, b in chords:
        other[a], other[b] = b, a
    # boundary arc i runs from pts[i] to pts[i+1] (cyclically); walk regions
    region = [-1] * k
    nreg = 0
    for i in range(k):
        if region[i] >= 0:
            continue
        j = i
        while region[j] < 0:
            region[j] = nreg
            # arc j ends at pts[j+1]; follow its chord to the far end and continue
            far = other[pts[(j + 1) % k]]
            j = index[far]
        nreg += 1

    def arc_of(side: int, t: Fraction) -> int:
        # boundary arc containing the boundary position side + t (not an endpoint)
        pos = side + t
        best = k - 1
        for i, p in enumerate(pts):
            if p.position < pos:
                best = i
        return best

    # open side segments
    by_side = defaultdict(list)
    for p in pts:
        by_side[p.side].append(p.t)
    parent = list(range(nreg + 1))  # node nreg is the vertex

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[a] = b

    vertex = nreg
    segments = []
    for s in range(8):
        if s > PARTNER[s]:
            continue
        ts = sorted(by_side[s])
        cuts = [Fraction(0)] + ts + [Fraction(1)]
        for lo, hi in zip(cuts, cuts[1:]):
            mid = (lo + hi) / 2
            r1 = region[arc_of(s, mid)]
            r2 = region[arc_of(PARTNER[s], 1 - mid)]
            union(r1, r2)
            segments.append(r1)
    for corner in range(8):
        union(vertex, region[arc_of(corner, Fraction(0))])
    comps = defaultdict(lambda: [0, 0, 0])
    for r in range(nreg):
        comps[find(r)][0] += 1
    for r in segments:
        comps[find(r)][1] += 1
    comps[find(vertex)][2] += 1
    return sorted(f - e + v for f, e, v in comps.values())


def is_separating(c: ChordCurve) -> bool:
    return len(complement_euler_characteristics(c)) == 2


def bounds_disk_on_surface(c: ChordCurve) -> bool:
    return 1 in complement_euler_characteristics(c)


def corner_circle(eps=Fraction(1, 10)) -> ChordCurve:
    """A small circle around the octagon vertex: one short chord cutting each corner."""
    eps = Fraction(eps)
    exits = []
    # cutting corner k joins side k at t=eps to side k-1 at t=1-eps
    side, t = 0, eps
    for _ in range(8):
        prev = (side - 1) % 8
        exits.append((prev, 1 - eps))
        nxt = BoundaryPoint(prev, 1 - eps).glued()
        side, t = nxt.side, nxt.t
        if (side, t) == (0, eps):
            break
    return ChordCurve.from_exits(exits, name="corner circle")
