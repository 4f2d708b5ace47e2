"""Slopes on the one-holed torus and distance in the Farey graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import gcd


class SlopeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Slope:
    """Reduced fraction p/q with q >= 0; infinity is 1/0."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 0 or (self.p, self.q) == (0, 0):
            raise SlopeError(f"invalid slope {self.p}/{self.q}")
        if gcd(self.p, self.q) != 1:
            raise SlopeError(f"slope {self.p}/{self.q} is not reduced")
        if self.q == 0 and self.p != 1:
            raise SlopeError("infinity must be written 1/0")

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        if p == 0 and q == 0:
            raise SlopeError("0/0 is not a slope")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        s = text.strip().lower()
        if s in ("inf", "infinity", "1/0", "-1/0"):
            return INF
        try:
            if "/" in s:
                a, b = s.split("/")
                return cls.of(int(a), int(b))
            return cls.of(int(s), 1)
        except ValueError as exc:
            raise SlopeError(f"cannot parse slope {text!r}") from exc

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def __str__(self):
        return "inf" if self.q == 0 else f"{self.p}/{self.q}"


INF = Slope(1, 0)


def det(s1: Slope, s2: Slope) -> int:
    return s1.p * s2.q - s1.q * s2.p


def adjacent(s1: Slope, s2: Slope) -> bool:
    return abs(det(s1, s2)) == 1


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def act(m: tuple[int, int, int, int], s: Slope) -> Slope:
    """Apply the integer matrix ((a, b), (c, d)) to a slope as a Mobius map."""
    a, b, c, d = m
    return Slope.of(a * s.p + b * s.q, c * s.p + d * s.q)


def to_infinity(s: Slope) -> tuple[int, int, int, int]:
    """A matrix in SL(2, Z) sending ``s`` to 1/0."""
    g, x, y = _ext_gcd(s.p, s.q)
    # x*p + y*q = 1, so ((y, -x), (-q, p)) has determinant 1 and kills the denominator.
    return (x, y, -s.q, s.p)


def _inverse_matrix(m):
    a, b, c, d = m
    return (d, -b, -c, a)


def _ladder(p: int, q: int) -> list[tuple[int, int]]:
    """Vertices of the Farey triangles crossed by the geodesic from 1/0 to p/q.

    Only the two ends of each fan are kept; a shortest path never needs the
    inner vertices of a fan because the fan pivot is adjacent to all of them.
    Vertices are raw (numerator, denominator) pairs, not normalised.
    """
    verts = {(1, 0), (p, q)}
    h2, k2 = 0, 1
    h1, k1 = 1, 0
    a = p // q
    verts.add((a, 1))
    verts.add((a + 1, 1))
    while q:
        a = p // q
        for j in {0, 1, a - 1, a}:
            if 0 <= j <= a:
                verts.add((h2 + j * h1, k2 + j * k1))
        h2, k2, h1, k1 = h1, k1, a * h1 + h2, a * k1 + k2
        verts.add((h1, k1))
        p, q = q, p - a * q
    return list(verts)


@lru_cache(maxsize=65536)
def _distance_from_infinity(p: int, q: int) -> int:
    if q == 0:
        return 0
    if q == 1:
        return 1
    verts = _ladder(p, q)
    dist = {(1, 0): 0}
    queue = deque([(1, 0)])
    while queue:
        u = queue.popleft()
        if u == (p, q):
            return dist[u]
        for v in verts:
            if v not in dist and abs(u[0] * v[1] - u[1] * v[0]) == 1:
                dist[v] = dist[u] + 1
                queue.append(v)
    raise AssertionError("ladder is connected by construction")


def distance(s1: Slope, s2: Slope) -> int:
    """Farey graph distance via the continued-fraction ladder."""
    if s1 == s2:
        return 0
    x = act(to_infinity(s1), s2)
    return _distance_from_infinity(x.p, x.q)


def neighbors_bounded(s: Slope, max_den: int, max_num: int) -> list[Slope]:
    """Farey neighbours of ``s`` with denominator <= max_den and |numerator| <= max_num."""
    if s.q == 0:
        return [Slope(n, 1) for n in range(-max_num, max_num + 1)] if max_den >= 1 else []
    # all (r, t) with s.p * t - s.q * r = 1 form (r0 + k p, t0 + k q); the other
    # sign is the negation, which names the same slope after normalisation
    _, x, y = _ext_gcd(s.p, s.q)
    # x p + y q = 1  ->  r0 = -y, t0 = x
    r0, t0 = -y, x
    out = set()
    k_lo = -((t0 + max_den) // s.q) - 1
    k_hi = (max_den - t0) // s.q + 1
    for k in range(k_lo, k_hi + 1):
        r, t = r0 + k * s.p, t0 + k * s.q
        if abs(t) <= max_den and abs(r) <= max_num and (r, t) != (0, 0):
            out.add(Slope.of(r, t))
    return sorted(out)


def bounded_slopes(max_den: int, max_num: int) -> list[Slope]:
    out = [INF]
    for q in range(1, max_den + 1):
        out.extend(Slope(p, q) for p in range(-max_num, max_num + 1) if gcd(p, q) == 1)
    return out


def bfs_distance(s1: Slope, s2: Slope, max_den: int | None = None, max_num: int | None = None) -> int | None:
    """Breadth-first distance among slopes with bounded numerator and denominator.

    Oracle only: with the default bounds (8x the inputs) it agrees with
    :func:`distance` at desk scale, but the bound is not a proof.
    """
    if max_den is None:
        max_den = 8 * max(1, s1.q, s2.q)
    if max_num is None:
        max_num = 8 * max(1, abs(s1.p), abs(s2.p)) + 8
    dist = {s1: 0}
    queue = deque([s1])
    while queue:
        u = queue.popleft()
        if u == s2:
            return dist[u]
        for v in neighbors_bounded(u, max_den, max_num):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return None


def _key(s: Slope):
    return (s.q, abs(s.p), s.p)


def common_neighbor(s1: Slope, s2: Slope) -> Slope | None:
    """A slope adjacent to both, least denominator first, or None if distance > 2."""
    m = to_infinity(s1)
    back = _inverse_matrix(m)
    x = act(m, s2)
    if x == INF:
        # every neighbour of s1 qualifies; the least-denominator one has den <= s1.q
        cands = neighbors_bounded(s1, max(1, s1.q), abs(s1.p) + s1.q + 1)
        return min(cands, key=_key)
    # neighbours of infinity are the integers; those adjacent to x = p/q
    if x.q == 1:
        ints = [x.p - 1, x.p + 1]
    else:
        ints = [n for n in ((x.p - 1) // x.q, (x.p + 1) // x.q) if abs(x.p - n * x.q) == 1]
    if not ints:
        return None
    cands = {act(back, Slope.of(n, 1)) for n in ints}
    return min(cands, key=lambda s: (s.q, s.p))
