"""Words, Whitehead automorphisms and Stallings folding in free groups of rank 2-4.

Letters are nonzero integers: ``g`` stands for generator ``g`` and ``-g`` for
its inverse.  The ASCII syntax uses ``a b c d`` for the generators and upper
case for inverses; ``x y z w`` are accepted as aliases on input.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

MAX_RANK = 4
ALPHABET = "abcd"
_ALIASES = {"x": "a", "y": "b", "z": "c", "w": "d"}


class FreeGroupError(ValueError):
    """Base class for malformed or degenerate free group input."""


class MalformedWord(FreeGroupError):
    pass


class DegenerateInput(FreeGroupError):
    pass


class ArityError(FreeGroupError):
    pass


class RankMismatch(FreeGroupError):
    pass


def _check_rank(rank: int) -> None:
    if not 2 <= rank <= MAX_RANK:
        raise MalformedWord(f"rank must be in 2..{MAX_RANK}, got {rank}")


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _inverse(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(letters))


def _cyclic_strip(letters: tuple[int, ...]) -> tuple[int, ...]:
    i, j = 0, len(letters)
    while j - i > 1 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return letters[i:j]


def _letter_key(x: int) -> tuple[int, int]:
    # a < A < b < B < ...
    return (abs(x), 0 if x > 0 else 1)


def _canonical_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    if not letters:
        return letters
    best = None
    best_key = None
    for cand in (letters, _inverse(letters)):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            key = [_letter_key(x) for x in rot]
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return best


def format_letters(letters: Sequence[int]) -> str:
    return "".join(
        ALPHABET[abs(x) - 1] if x > 0 else ALPHABET[abs(x) - 1].upper() for x in letters
    )


def parse_letters(text: str) -> tuple[int, ...]:
    out = []
    for ch in text.strip():
        low = _ALIASES.get(ch.lower(), ch.lower())
        if low not in ALPHABET:
            raise MalformedWord(f"unknown letter {ch!r} in {text!r}")
        g = ALPHABET.index(low) + 1
        out.append(g if ch.islower() else -g)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word.  Build through :func:`reduce` or :meth:`parse`."""

    letters: tuple[int, ...]
    rank: int = 2

    def __post_init__(self):
        _check_rank(self.rank)
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise MalformedWord(f"letter {x} out of range for rank {self.rank}")
        for x, y in zip(self.letters, self.letters[1:]):
            if x == -y:
                raise MalformedWord("word is not freely reduced")

    @classmethod
    def parse(cls, text: str, rank: int = 2) -> "Word":
        return reduce(parse_letters(text), rank)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_letters(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if other.rank != self.rank:
            raise RankMismatch("cannot multiply words of different rank")
        return reduce(self.letters + other.letters, self.rank)

    def inverse(self) -> "Word":
        return Word(_inverse(self.letters), self.rank)

    def cyclic(self) -> "CyclicWord":
        return cyclic_reduce(self)


@dataclass(frozen=True)
class CyclicWord:
    """Conjugacy class of a word, up to inversion, in canonical rotation."""

    letters: tuple[int, ...]
    rank: int = 2

    @classmethod
    def parse(cls, text: str, rank: int = 2) -> "CyclicWord":
        return cyclic_reduce(Word.parse(text, rank))

    @classmethod
    def from_letters(cls, letters: Iterable[int], rank: int = 2) -> "CyclicWord":
        return cyclic_reduce(reduce(letters, rank))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_letters(self.letters)

    def word(self) -> Word:
        return Word(self.letters, self.rank)

    def is_trivial(self) -> bool:
        return not self.letters


def reduce(raw: Iterable[int], rank: int = 2) -> Word:
    """Freely reduce a sequence of signed generator indices."""
    _check_rank(rank)
    raw = tuple(raw)
    for x in raw:
        if not isinstance(x, int) or x == 0 or abs(x) > rank:
            raise MalformedWord(f"letter {x!r} out of range for rank {rank}")
    return Word(_free_reduce(raw), rank)


def cyclic_reduce(w: Word) -> CyclicWord:
    return CyclicWord(_canonical_rotation(_cyclic_strip(_free_reduce(w.letters))), w.rank)


def conjugate(u: Word | CyclicWord, v: Word | CyclicWord) -> bool:
    """True iff ``u`` is conjugate to ``v`` or to ``v`` inverse."""
    cu = u if isinstance(u, CyclicWord) else cyclic_reduce(u)
    cv = v if isinstance(v, CyclicWord) else cyclic_reduce(v)
    return cu.letters == cv.letters


# --- automorphisms -------------------------------------------------------


def substitute(letters: Sequence[int], images: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    """Apply the endomorphism sending generator ``g`` to ``images[g]``."""
    out: list[int] = []
    for x in letters:
        img = images[x] if x > 0 else _inverse(images[-x])
        out.extend(img)
    return _free_reduce(out)


@dataclass(frozen=True)
class WhiteheadAut:
    """A Whitehead automorphism.

    ``kind == "permutation"``: ``mapping[g-1]`` is the signed image of generator g.
    ``kind == "type2"``: multiplier ``m`` and affected set ``A`` with ``m`` in A
    and ``-m`` not in A.  A generator ``x`` other than ``m^{+-1}`` is sent to
    ``m^-1 x`` if ``x^-1`` is in A, times ``m`` on the right if ``x`` is in A.
    """

    kind: str
    rank: int
    multiplier: int = 0
    affected: frozenset = frozenset()
    mapping: tuple[int, ...] = ()

    def __post_init__(self):
        _check_rank(self.rank)
        if self.kind == "type2":
            m = self.multiplier
            if m == 0 or abs(m) > self.rank:
                raise MalformedWord("multiplier out of range")
            if m not in self.affected or -m in self.affected:
                raise MalformedWord("type2 set must contain the multiplier but not its inverse")
            if any(x == 0 or abs(x) > self.rank for x in self.affected):
                raise MalformedWord("affected letter out of range")
        elif self.kind == "permutation":
            if sorted(abs(x) for x in self.mapping) != list(range(1, self.rank + 1)):
                raise MalformedWord("permutation must be a signed permutation of generators")
        else:
            raise MalformedWord(f"unknown automorphism kind {self.kind!r}")

    def images(self) -> dict[int, tuple[int, ...]]:
        if self.kind == "permutation":
            return {g: (self.mapping[g - 1],) for g in range(1, self.rank + 1)}
        m, A = self.multiplier, self.affected
        out = {}
        for g in range(1, self.rank + 1):
            if g == abs(m):
                out[g] = (g,)
                continue
            img = (g,)
            if -g in A:
                img = (-m,) + img
            if g in A:
                img = img + (m,)
            out[g] = img
        return out

    def inverse(self) -> "WhiteheadAut":
        if self.kind == "permutation":
            inv = [0] * self.rank
            for g, img in enumerate(self.mapping, start=1):
                inv[abs(img) - 1] = g if img > 0 else -g
            return WhiteheadAut("permutation", self.rank, mapping=tuple(inv))
        m = self.multiplier
        return WhiteheadAut(
            "type2", self.rank, multiplier=-m, affected=(self.affected - {m}) | {-m}
        )

    def __str__(self):
        imgs = self.images()
        return ", ".join(f"{format_letters((g,))}->{format_letters(imgs[g])}" for g in sorted(imgs))


def apply_whitehead(t: WhiteheadAut, w: Word) -> Word:
    if t.rank != w.rank:
        raise RankMismatch(f"automorphism rank {t.rank} != word rank {w.rank}")
    return Word(substitute(w.letters, t.images()), w.rank)


@lru_cache(maxsize=None)
def whitehead_type2(rank: int) -> tuple[WhiteheadAut, ...]:
    """All nontrivial type II Whitehead automorphisms of the given rank."""
    _check_rank(rank)
    letters = [g for g in range(1, rank + 1)] + [-g for g in range(1, rank + 1)]
    out = []
    for m in letters:
        rest = [x for x in letters if abs(x) != abs(m)]
        for k in range(len(rest) + 1):
            for sub in itertools.combinations(rest, k):
                aut = WhiteheadAut("type2", rank, multiplier=m, affected=frozenset((m,) + sub))
                if any(img != (g,) for g, img in aut.images().items()):
                    out.append(aut)
    return tuple(out)


@lru_cache(maxsize=None)
def whitehead_permutations(rank: int) -> tuple[WhiteheadAut, ...]:
    out = []
    for perm in itertools.permutations(range(1, rank + 1)):
        for signs in itertools.product((1, -1), repeat=rank):
            out.append(
                WhiteheadAut("permutation", rank, mapping=tuple(p * s for p, s in zip(perm, signs)))
            )
    return tuple(out)


@lru_cache(maxsize=None)
def _type2_images(rank: int) -> tuple[dict[int, tuple[int, ...]], ...]:
    return tuple(t.images() for t in whitehead_type2(rank))


def _cyc(letters: tuple[int, ...]) -> tuple[int, ...]:
    return _canonical_rotation(_cyclic_strip(letters))


@dataclass(frozen=True)
class DescentStep:
    before: str
    automorphism: str
    after: str


def primitivity_trace(w: CyclicWord) -> tuple[bool, list[DescentStep]]:
    """Whitehead descent with a trace of the automorphisms used.

    Descends greedily (shortest image, ties broken by canonical order).  At a
    local minimum of length > 1 the whole orbit at that length is explored
    before answering False.
    """
    if not w.letters:
        raise DegenerateInput("the trivial element is not primitive")
    rank = w.rank
    auts = whitehead_type2(rank)
    imgs = _type2_images(rank)
    current = _cyc(w.letters)
    trace: list[DescentStep] = []
    while len(current) > 1:
        best = None
        best_aut = None
        for aut, im in zip(auts, imgs):
            cand = _cyc(substitute(current, im))
            if len(cand) < len(current):
                key = (len(cand), [_letter_key(x) for x in cand])
                if best is None or key < best[0]:
                    best, best_aut = (key, cand), aut
        if best is not None:
            trace.append(DescentStep(format_letters(current), str(best_aut), format_letters(best[1])))
            current = best[1]
            continue
        escape = _explore_level(current, rank)
        if escape is None:
            return False, trace
        path, shorter = escape
        trace.extend(path)
        current = shorter
    return True, trace


def _explore_level(start: tuple[int, ...], rank: int):
    """Breadth-first search of the Whitehead orbit at fixed length.

    Returns (steps, shorter word) if some orbit element reduces, else None.
    """
    length = len(start)
    auts = whitehead_type2(rank) + whitehead_permutations(rank)
    imgs = [a.images() for a in auts]
    parent: dict[tuple[int, ...], tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for aut, im in zip(auts, imgs):
            cand = _cyc(substitute(cur, im))
            if len(cand) < length:
                steps = []
                node = cur
                while parent[node] is not None:
                    prev, a = parent[node]
                    steps.append(DescentStep(format_letters(prev), str(a), format_letters(node)))
                    node = prev
                steps.reverse()
                steps.append(DescentStep(format_letters(cur), str(aut), format_letters(cand)))
                return steps, cand
            if len(cand) == length and cand not in parent:
                parent[cand] = (cur, aut)
                queue.append(cand)
    return None


def is_primitive(w: CyclicWord | Word) -> bool:
    if isinstance(w, Word):
        w = cyclic_reduce(w)
    return primitivity_trace(w)[0]


# --- Stallings folding ---------------------------------------------------


@dataclass(frozen=True)
class FoldedGraph:
    """Folded labelled graph with base vertex 0.

    ``edges`` holds triples (source, generator, target) for positive labels,
    with vertices numbered in breadth-first order from the base, so two
    graphs are isomorphic as rooted labelled graphs iff they compare equal.
    """

    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    rank: int
    base: int = 0

    def adjacency(self) -> dict[int, dict[int, int]]:
        adj: dict[int, dict[int, int]] = {v: {} for v in range(self.num_vertices)}
        for u, g, v in self.edges:
            adj[u][g] = v
            adj[v][-g] = u
        return adj

    def is_folded(self) -> bool:
        seen = set()
        for u, g, v in self.edges:
            for key in ((u, g), (v, -g)):
                if key in seen:
                    return False
                seen.add(key)
        return True


def fold(generators: Sequence[Word], rank: int | None = None) -> FoldedGraph:
    """Stallings graph of the subgroup generated by ``generators``."""
    if rank is None:
        rank = generators[0].rank if generators else 2
    _check_rank(rank)
    parent: list[int] = [0]
    adj: list[dict[int, int]] = [{}]

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    pending: list[tuple[int, int]] = []

    def link(u: int, x: int, v: int) -> None:
        for a, lab, b in ((u, x, v), (v, -x, u)):
            a = find(a)
            old = adj[a].get(lab)
            if old is None:
                adj[a][lab] = b
            elif find(old) != find(b):
                pending.append((old, b))

    def new_vertex() -> int:
        parent.append(len(parent))
        adj.append({})
        return len(parent) - 1

    for w in generators:
        if w.rank != rank:
            raise RankMismatch("generator rank differs from requested rank")
        letters = w.letters
        if not letters:
            continue
        v = 0
        for i, x in enumerate(letters):
            nxt = 0 if i == len(letters) - 1 else new_vertex()
            link(v, x, nxt)
            v = nxt

    while pending:
        a, b = pending.pop()
        a, b = find(a), find(b)
        if a == b:
            continue
        if a > b:
            a, b = b, a
        parent[b] = a
        moved = adj[b]
        adj[b] = {}
        for lab, t in moved.items():
            old = adj[a].get(lab)
            if old is None:
                adj[a][lab] = t
            elif find(old) != find(t):
                pending.append((old, t))

    # canonical renumbering by BFS from the base
    order_labels = [x for g in range(1, rank + 1) for x in (g, -g)]
    root = find(0)
    number = {root: 0}
    queue = deque([root])
    edges = set()
    while queue:
        u = queue.popleft()
        for lab in order_labels:
            t = adj[u].get(lab)
            if t is None:
                continue
            t = find(t)
            if t not in number:
                number[t] = len(number)
                queue.append(t)
    for u in number:
        for lab, t in adj[u].items():
            t = find(t)
            if lab > 0:
                edges.add((number[u], lab, number[t]))
            else:
                edges.add((number[t], -lab, number[u]))
    return FoldedGraph(len(number), tuple(sorted(edges)), rank)


def contains(graph: FoldedGraph, w: Word) -> bool:
    adj = graph.adjacency()
    v = graph.base
    for x in w.letters:
        nxt = adj[v].get(x)
        if nxt is None:
            return False
        v = nxt
    return v == graph.base


def is_basis_tuple(ws: Sequence[Word], rank: int) -> bool:
    """True iff ``ws`` is a free basis of the free group of the given rank."""
    _check_rank(rank)
    if len(ws) != rank:
        raise ArityError(f"need {rank} words, got {len(ws)}")
    g = fold(list(ws), rank)
    if g.num_vertices != 1:
        return False
    return sorted(lab for _, lab, _ in g.edges) == list(range(1, rank + 1))
