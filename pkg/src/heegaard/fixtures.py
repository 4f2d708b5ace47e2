"""Frozen curve data for the three-curve handlebody construction and the F x I catalog.

Derivation of the three curves.  The handlebody H has meridian system
{b, d}: generator x (printed ``a``) is dual to side class b and generator y
(printed ``b``) is dual to side class d.

* ``LAMBDA3`` is one chord across the b gluing, so it meets the b meridian
  once and the d meridian not at all: word x.  It is the core of the x handle
  after pushing in, which is what makes surgery on it rewrite x as x^p.
* ``LAMBDA2`` crosses the c and d gluings once each: word y.
* ``LAMBDA1`` crosses b, d and c once each: word xy.  It runs through both
  handles, as the third curve of a symmetric triple must.

Any two of the words form a basis of F(x, y).  The automorphism
x -> xy, y -> x^-1 permutes the three classes cyclically
(lambda3 -> lambda1 -> lambda2 -> lambda3); this is the word-level shadow of
the order-three rotation of H.

Drilling the symmetry axis out of one 0-handle adds a free generator z
(printed ``c``).  Only ``LAMBDA1`` passes through that 0-handle between its
two handle passages, so its word becomes x z y while the other two keep their
words.  Killing z recovers the rank-2 words.

The second handlebody of the construction uses the meridian system {b, c};
there the same three curves read x y^-1, y, x, again pairwise bases.  Using a
different system on each side keeps certificates from collapsing onto a
shared disk.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .freegroup import Word
from .surface import ChordCurve, MeridianSystem, SurfaceError, crossings, shared_points

HALF = Fraction(1, 2)

LAMBDA1 = ChordCurve.from_exits([(3, Fraction(3, 4)), (7, Fraction(3, 4)), (4, Fraction(3, 4))], "lambda1")
LAMBDA2 = ChordCurve.from_exits([(4, HALF), (7, HALF)], "lambda2")
LAMBDA3 = ChordCurve.from_exits([(3, HALF)], "lambda3")

FRAME_H = MeridianSystem(("b", "d"))
FRAME_H_OTHER = MeridianSystem(("b", "c"))

# words of lambda1, lambda2, lambda3 in the rank-3 handlebody with the axis drilled out
RANK3_WORDS = (Word.parse("acb", 3), Word.parse("b", 3), Word.parse("a", 3))

# cyclically permutes the classes of the three curves
Z3_IMAGES = {1: (1, 2), 2: (-1,)}

# exit side of a one-chord curve parallel to the loop of each side class
LOOP_EXIT = {"a": 3, "b": 2, "c": 7, "d": 6}

_LOOP_TS = tuple(Fraction(k, 16) for k in (1, 3, 5, 7, 9, 11, 13, 15))


def meridian_loop(cls_name: str, t: Fraction) -> ChordCurve:
    """One-chord curve isotopic to the loop of a side class."""
    return ChordCurve.from_exits([(LOOP_EXIT[cls_name], t)], f"loop-{cls_name}")


def dual_meridian(frame: MeridianSystem, target: ChordCurve, avoid: tuple[ChordCurve, ...] = ()) -> ChordCurve | None:
    """A meridian loop of ``frame`` meeting ``target`` once and missing ``avoid``.

    Candidates are tried in a fixed order so the answer is deterministic.
    """
    for cls_name in frame.classes:
        for t in _LOOP_TS:
            m = meridian_loop(cls_name, t)
            others = (target,) + tuple(avoid)
            if any(shared_points(m, o) for o in others):
                continue
            if crossings(m, target) == 1 and all(crossings(m, o) == 0 for o in avoid):
                return m
    return None


@lru_cache(maxsize=1)
def mxi_catalog() -> dict[str, dict]:
    """Disjoint curve pairs realizing F x I slope words, keyed 'a0|a1|b0|b1'."""
    raw = resources.files("heegaard").joinpath("data/mxi_catalog.json").read_text()
    return json.loads(raw)


def mxi_entry(key: str):
    """(frame_a, frame_b, curve0, curve1) for a catalog key, or None."""
    entry = mxi_catalog().get(key)
    if entry is None:
        return None
    try:
        c0 = ChordCurve.from_exits([(s, Fraction(t)) for s, t in entry["lambda0"]], "lambda0")
        c1 = ChordCurve.from_exits([(s, Fraction(t)) for s, t in entry["lambda1"]], "lambda1")
        return (MeridianSystem.parse(entry["frame_a"]), MeridianSystem.parse(entry["frame_b"]), c0, c1)
    except (KeyError, ValueError, SurfaceError) as exc:  # pragma: no cover - data is frozen
        raise SurfaceError(f"corrupt catalog entry {key}: {exc}") from exc
