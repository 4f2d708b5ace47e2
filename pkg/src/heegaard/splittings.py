"""Genus-2 splittings with surgery slots, Dehn-derived pairs, and stabilization certificates.

Conventions
-----------
* Slot words are the raw classes of the boundary curve in each side's
  unsurgered handlebody (``word_of`` of the representative when one exists).
* A surgery slope p/q on a pushed-in curve is written in the meridian /
  longitude frame of its solid-torus neighbourhood; ``None`` ("none") means
  no surgery.  If the curve is the core of a handle dual to generator g, the
  surgered handlebody sees g as g**p, so boundary words are rewritten by
  g -> g**p.  1/0 is the trivial filling (p = 1).
* Slope words on F x I follow the Christoffel rule: letter i of C(p/q)
  (n = |p| + q letters) is y when floor(i q / n) steps, x otherwise, with x
  replaced by its inverse when p < 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import combinations, product
from math import gcd
from typing import Iterable, Mapping

from . import fixtures as fx
from .farey import INF, Slope, SlopeError, adjacent, common_neighbor, distance
from .freegroup import (
    CyclicWord,
    FreeGroupError,
    Word,
    conjugate,
    cyclic_reduce,
    is_basis_tuple,
    is_primitive,
    reduce,
    substitute,
)
from .surface import ChordCurve, MeridianSystem, SurfaceError, crossings, shared_points, word_of

SPEC_SCHEMA = "heegaard-spec/1"
SIDES = ("A", "B")
FAMILIES = ("MH", "MxI", "Hybrid", "Generic")


class SpecError(ValueError):
    """Malformed or inconsistent splitting description."""


class PreconditionError(ValueError):
    """A named precondition of an operation does not hold."""

    def __init__(self, clause: str, message: str = ""):
        super().__init__(f"{clause}: {message}" if message else clause)
        self.clause = clause


class NotDoublyPrimitive(PreconditionError):
    pass


class NotDisjoint(PreconditionError):
    pass


class WrongFamily(PreconditionError):
    pass


# --- slopes and words -----------------------------------------------------


def parse_surgery(text: str | Slope | None) -> Slope | None:
    if text is None or isinstance(text, Slope):
        return text
    if text.strip().lower() == "none":
        return None
    return Slope.parse(text)


def surgery_str(s: Slope | None) -> str:
    return "none" if s is None else str(s)


def winding(s: Slope | None) -> int:
    """Power to which the dual generator is raised by surgery on a handle core."""
    return 1 if s is None else s.p


def christoffel(s: Slope) -> Word:
    if s.is_infinite:
        return Word((1,))
    p, q = s.p, s.q
    n = abs(p) + q
    x = 1 if p > 0 else -1
    return Word(tuple(2 if (i * q) // n != ((i - 1) * q) // n else x for i in range(1, n + 1)))


def slope_word(s: Slope) -> CyclicWord:
    return christoffel(s).cyclic()


def slope_of(w: CyclicWord) -> Slope | None:
    """Inverse of :func:`slope_word` on its image; None for other classes."""
    if w.rank != 2 or not w.letters:
        return None
    p = sum(1 if x == 1 else -1 for x in w.letters if abs(x) == 1)
    q = sum(1 if x == 2 else -1 for x in w.letters if abs(x) == 2)
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    if gcd(p, q) != 1:
        return None
    s = Slope(p, q)
    return s if slope_word(s) == w else None


def _power_images(gen: int, p: int) -> dict[int, tuple[int, ...]]:
    img = {1: (1,), 2: (2,)}
    img[gen] = (gen,) * p if p >= 0 else (-gen,) * (-p)
    return img


# --- data model -----------------------------------------------------------


@dataclass(frozen=True)
class SurgerySlot:
    label: str
    host: str | None
    word_a: CyclicWord
    word_b: CyclicWord
    representative: ChordCurve | None = None
    slope: Slope | None = None

    def word(self, side: str) -> CyclicWord:
        return self.word_a if side == "A" else self.word_b

    def to_json(self):
        out = {
            "label": self.label,
            "host": self.host or "unassigned",
            "word_A": str(self.word_a),
            "word_B": str(self.word_b),
            "slope": surgery_str(self.slope),
        }
        if self.representative is not None:
            out["representative"] = self.representative.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "SurgerySlot":
        host = obj.get("host", "unassigned")
        if host not in ("A", "B", "unassigned"):
            raise SpecError(f"bad host {host!r}")
        rep = obj.get("representative")
        return cls(
            label=obj["label"],
            host=None if host == "unassigned" else host,
            word_a=CyclicWord.parse(obj["word_A"]),
            word_b=CyclicWord.parse(obj["word_B"]),
            representative=None if rep is None else ChordCurve.from_json(rep, obj["label"]),
            slope=parse_surgery(obj.get("slope", "none")),
        )


@dataclass(frozen=True)
class SideModel:
    """``handlebody`` or ``FxI``; ``frame`` is the meridian system on the model surface."""

    kind: str
    frame: MeridianSystem | None = None
    end_slopes: tuple[Slope, Slope] | None = None

    def __post_init__(self):
        if self.kind not in ("handlebody", "FxI"):
            raise SpecError(f"unknown side model {self.kind!r}")
        if (self.kind == "FxI") != (self.end_slopes is not None):
            raise SpecError("end slopes belong exactly to F x I sides")

    def to_json(self):
        out = {"kind": self.kind, "frame": None if self.frame is None else str(self.frame)}
        if self.end_slopes is not None:
            out["end_slopes"] = [str(s) for s in self.end_slopes]
        return out

    @classmethod
    def from_json(cls, obj) -> "SideModel":
        frame = obj.get("frame")
        ends = obj.get("end_slopes")
        return cls(
            kind=obj["kind"],
            frame=None if frame is None else MeridianSystem.parse(frame),
            end_slopes=None if ends is None else tuple(Slope.parse(s) for s in ends),
        )


@dataclass(frozen=True)
class Gluing:
    """Annuli identified along the listed slots; the remainder is an opaque tag."""

    identified: tuple[str, ...]
    tag: str = "arbitrary"

    def to_json(self):
        return {"identified": list(self.identified), "tag": self.tag}


@dataclass(frozen=True)
class SplittingSpec:
    family: str
    side_a: SideModel
    side_b: SideModel
    gluing: Gluing
    slots: tuple[SurgerySlot, ...]

    def side(self, s: str) -> SideModel:
        return self.side_a if s == "A" else self.side_b

    def slot(self, label: str) -> SurgerySlot:
        for sl in self.slots:
            if sl.label == label:
                return sl
        raise SpecError(f"no slot {label!r}")

    def labels(self) -> list[str]:
        return [s.label for s in self.slots]

    def hosts(self) -> dict[str, str | None]:
        return {s.label: s.host for s in self.slots}

    def to_json(self):
        return {
            "schema": SPEC_SCHEMA,
            "family": self.family,
            "sides": {"A": self.side_a.to_json(), "B": self.side_b.to_json()},
            "gluing": self.gluing.to_json(),
            "slots": [s.to_json() for s in self.slots],
        }

    def dumps(self) -> str:
        return json.dumps(normalize(self).to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, obj) -> "SplittingSpec":
        if not isinstance(obj, dict) or obj.get("schema") != SPEC_SCHEMA:
            raise SpecError(f"expected schema {SPEC_SCHEMA!r}")
        try:
            spec = cls(
                family=obj["family"],
                side_a=SideModel.from_json(obj["sides"]["A"]),
                side_b=SideModel.from_json(obj["sides"]["B"]),
                gluing=Gluing(tuple(obj["gluing"]["identified"]), obj["gluing"].get("tag", "arbitrary")),
                slots=tuple(SurgerySlot.from_json(s) for s in obj["slots"]),
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise SpecError(f"malformed spec: {exc!r}") from exc
        except (SlopeError, FreeGroupError, SurfaceError) as exc:
            raise SpecError(f"malformed spec: {exc}") from exc
        check_spec(spec)
        return spec

    @classmethod
    def loads(cls, text: str) -> "SplittingSpec":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"not JSON: {exc}") from exc
        return cls.from_json(obj)


def check_spec(spec: SplittingSpec) -> None:
    """Raise :class:`SpecError` unless the structural invariants hold."""
    if spec.family not in FAMILIES:
        raise SpecError(f"unknown family {spec.family!r}")
    labels = spec.labels()
    if len(set(labels)) != len(labels):
        raise SpecError("slot labels must be unique")
    for lab in spec.gluing.identified:
        if lab not in labels:
            raise SpecError(f"gluing names unknown slot {lab!r}")
    for side in SIDES:
        frame = spec.side(side).frame
        hosted = [s for s in spec.slots if s.host == side and s.representative is not None]
        for i, s in enumerate(hosted):
            for t in hosted[i + 1:]:
                if shared_points(s.representative, t.representative) or crossings(s.representative, t.representative):
                    raise SpecError(f"{s.label} and {t.label} cross on side {side}")
        if frame is None:
            continue
        for s in spec.slots:
            if s.representative is not None and word_of(s.representative, frame) != s.word(side):
                raise SpecError(f"word of {s.label} on side {side} disagrees with its representative")


def normalize(spec: SplittingSpec) -> SplittingSpec:
    """Canonical slot order; words are already canonical cyclic words."""
    slots = tuple(sorted(spec.slots, key=lambda s: s.label))
    gl = Gluing(tuple(sorted(spec.gluing.identified)), spec.gluing.tag)
    return replace(spec, slots=slots, gluing=gl)


def swap_sides(spec: SplittingSpec) -> SplittingSpec:
    flip = {"A": "B", "B": "A", None: None}
    slots = tuple(
        replace(s, host=flip[s.host], word_a=s.word_b, word_b=s.word_a) for s in spec.slots
    )
    return replace(spec, side_a=spec.side_b, side_b=spec.side_a, slots=slots)


# --- effective words after core surgery ------------------------------------


def core_rewrites(spec: SplittingSpec, side: str, exclude: str | None = None) -> list[tuple[str, int, int]]:
    """(label, generator, power) for each surgered slot hosted on ``side`` that is a handle core."""
    out = []
    for s in spec.slots:
        if s.host != side or s.slope is None or s.label == exclude:
            continue
        w = s.word(side)
        if len(w.letters) == 1:
            out.append((s.label, abs(w.letters[0]), winding(s.slope)))
    return out


def effective_word(spec: SplittingSpec, label: str, side: str) -> CyclicWord:
    """Class of a surface curve in the side's handlebody after its core surgeries."""
    letters = spec.slot(label).word(side).letters
    for _, gen, p in core_rewrites(spec, side, exclude=label):
        letters = substitute(letters, _power_images(gen, p))
    return reduce(letters, 2).cyclic()


# --- builders -------------------------------------------------------------


def _slot(label, host, curve, frame_a, frame_b, slope, wa=None, wb=None):
    return SurgerySlot(
        label=label,
        host=host,
        word_a=wa if wa is not None else word_of(curve, frame_a),
        word_b=wb if wb is not None else word_of(curve, frame_b),
        representative=curve,
        slope=slope,
    )


def build_mh(l1=None, l2=None, ra=None, rb=None, gluing_tag: str = "arbitrary") -> SplittingSpec:
    l1, l2, ra, rb = (parse_surgery(s) for s in (l1, l2, ra, rb))
    fa, fb = fx.FRAME_H, fx.FRAME_H_OTHER
    slots = (
        _slot("λ1", None, fx.LAMBDA1, fa, fb, l1),
        _slot("λ2", None, fx.LAMBDA2, fa, fb, l2),
        _slot("ρa", "A", fx.LAMBDA3, fa, fb, ra),
        _slot("ρb", "B", fx.LAMBDA3, fa, fb, rb),
    )
    spec = SplittingSpec(
        "MH", SideModel("handlebody", fa), SideModel("handlebody", fb), Gluing(("λ1", "λ2"), gluing_tag), slots
    )
    check_spec(spec)
    return normalize(spec)


def _mxi_key(a0, a1, b0, b1) -> str:
    return "|".join(str(s) for s in (a0, a1, b0, b1))


def build_mxi(a0, a1, b0, b1, s0=None, s1=None, gluing_tag: str = "arbitrary") -> SplittingSpec:
    a0, a1, b0, b1 = (s if isinstance(s, Slope) else Slope.parse(s) for s in (a0, a1, b0, b1))
    s0, s1 = parse_surgery(s0), parse_surgery(s1)
    entry = fx.mxi_entry(_mxi_key(a0, a1, b0, b1))
    if entry is None:
        fa = fb = c0 = c1 = None
    else:
        fa, fb, c0, c1 = entry
    slots = (
        SurgerySlot("λ0", None, slope_word(a0), slope_word(b0), c0, s0),
        SurgerySlot("λ1", None, slope_word(a1), slope_word(b1), c1, s1),
    )
    spec = SplittingSpec(
        "MxI",
        SideModel("FxI", fa, (a0, a1)),
        SideModel("FxI", fb, (b0, b1)),
        Gluing(("λ0", "λ1"), gluing_tag),
        slots,
    )
    check_spec(spec)
    return normalize(spec)


_FRAMES = tuple(MeridianSystem(c) for c in (("b", "d"), ("b", "c"), ("a", "d"), ("a", "c")))


def build_hybrid(l3=None, l1=None, l2=None, b0="0/1", b1="1/0", gluing_tag: str = "arbitrary") -> SplittingSpec:
    l3, l1, l2 = (parse_surgery(s) for s in (l3, l1, l2))
    b0, b1 = (s if isinstance(s, Slope) else Slope.parse(s) for s in (b0, b1))
    wb0, wb1 = slope_word(b0), slope_word(b1)
    # a B-side frame only if the fixtures realize the requested slope words
    fb = next(
        (f for f in _FRAMES if word_of(fx.LAMBDA1, f) == wb0 and word_of(fx.LAMBDA2, f) == wb1), None
    )
    fa = fx.FRAME_H
    slots = (
        SurgerySlot("λ1", None, word_of(fx.LAMBDA1, fa), wb0, fx.LAMBDA1, l1),
        SurgerySlot("λ2", None, word_of(fx.LAMBDA2, fa), wb1, fx.LAMBDA2, l2),
        SurgerySlot(
            "ρ", "A", word_of(fx.LAMBDA3, fa),
            word_of(fx.LAMBDA3, fb) if fb else CyclicWord(()), fx.LAMBDA3, l3,
        ),
    )
    spec = SplittingSpec(
        "Hybrid",
        SideModel("handlebody", fa),
        SideModel("FxI", fb, (b0, b1)),
        Gluing(("λ1", "λ2"), gluing_tag),
        slots,
    )
    check_spec(spec)
    return normalize(spec)


def derived_labels(spec: SplittingSpec) -> tuple[str, str]:
    """The two identified slots, in the order the first derived splitting pushes them (A, B)."""
    if len(spec.gluing.identified) != 2:
        raise SpecError("a Dehn-derived pair needs exactly two identified slots")
    return tuple(sorted(spec.gluing.identified))


def doubly_primitive_evidence(spec: SplittingSpec) -> list[dict]:
    """One record per (slot, side) with the effective word and its primitivity."""
    out = []
    for lab in derived_labels(spec):
        for side in SIDES:
            w = effective_word(spec, lab, side)
            out.append({"slot": lab, "side": side, "word": str(w), "primitive": bool(w.letters) and is_primitive(w)})
    return out


def dehn_derive(m0: SplittingSpec) -> tuple[SplittingSpec, SplittingSpec]:
    first, second = derived_labels(m0)
    for lab in (first, second):
        if m0.slot(lab).host is not None:
            raise PreconditionError(f"unassigned({lab})", "slot is already pushed into a side")
    for rec in doubly_primitive_evidence(m0):
        if not rec["primitive"]:
            raise NotDoublyPrimitive(
                f"doubly-primitive({rec['slot']},{rec['side']}-side)", f"word {rec['word'] or '1'} is not primitive"
            )
    r1, r2 = m0.slot(first).representative, m0.slot(second).representative
    if r1 is not None and r2 is not None:
        if shared_points(r1, r2) or crossings(r1, r2):
            raise NotDisjoint(f"disjoint({first},{second})", "representatives meet")

    def assign(a_lab, b_lab):
        slots = tuple(
            replace(s, host="A") if s.label == a_lab else replace(s, host="B") if s.label == b_lab else s
            for s in m0.slots
        )
        out = replace(m0, slots=slots)
        check_spec(out)
        return normalize(out)

    return assign(first, second), assign(second, first)


# --- classifier -----------------------------------------------------------


@dataclass(frozen=True)
class PairType:
    tag: str
    witness: dict | None = None
    diagnostics: dict | None = None

    def __post_init__(self):
        if self.tag not in ("TypeA", "TypeB", "Unknown"):
            raise ValueError(self.tag)
        if (self.witness is not None) != (self.tag != "Unknown"):
            raise ValueError("witness present iff the tag is not Unknown")

    def to_json(self):
        return {"tag": self.tag, "witness": self.witness, "diagnostics": self.diagnostics}


def _match_a(u: CyclicWord, v: CyclicWord, bound: int):
    """v a generator and u ~ g^n v^(+-1) for the other generator g, 0 < |n| <= bound."""
    if len(v.letters) != 1:
        return None
    h = abs(v.letters[0])
    g = 3 - h
    for n in range(1, bound + 1):
        for sn, sv in product((1, -1), (1, -1)):
            if CyclicWord.from_letters((sn * g,) * n + (sv * h,)) == u:
                return {"parallel": "v", "core_generator": Word((g,)).__str__(), "winding": sn * n, "trivial": n == 1}
    return None


def _match_b(u: CyclicWord, v: CyclicWord, bound: int):
    su, sv = slope_of(u), slope_of(v)
    if su is None or sv is None:
        return None
    if max(abs(su.p), su.q, abs(sv.p), sv.q) > bound:
        return None
    return {"F0": str(su), "F1": str(sv)}


def _swap_witness(tag: str, w: dict) -> dict:
    if tag == "TypeA":
        return {**w, "parallel": "u" if w["parallel"] == "v" else "v"}
    return {"F0": w["F1"], "F1": w["F0"]}


def classify_pair(
    u: CyclicWord,
    v: CyclicWord,
    representatives: tuple[ChordCurve, ChordCurve] | None = None,
    context: SideModel | None = None,
    bound: int = 12,
) -> PairType:
    """Catalog classification of a disjoint, non-parallel pair of primitive curves.

    Word pairs such as (xy, y) fit both catalogs, so the side model, when
    given, decides which catalog is tried first: F x I prefers the product
    catalog, a handlebody the band-sum one.  Without context the band-sum
    catalog goes first.
    """
    if u.rank != 2 or v.rank != 2:
        return PairType("Unknown", diagnostics={"reason": "rank is not 2", "u": str(u), "v": str(v)})
    for name, w in (("u", u), ("v", v)):
        if not w.letters or not is_primitive(w):
            raise PreconditionError(f"primitive({name})", f"{w} is not primitive")
    if conjugate(u, v):
        raise PreconditionError("non-parallel", "the two words are conjugate")
    if representatives is not None:
        r1, r2 = representatives
        if shared_points(r1, r2) or crossings(r1, r2):
            raise NotDisjoint("disjoint(u,v)", "representatives meet")
    order = ("TypeB", "TypeA") if context is not None and context.kind == "FxI" else ("TypeA", "TypeB")
    for tag in order:
        if tag == "TypeA":
            w = _match_a(u, v, bound)
            if w is None:
                w2 = _match_a(v, u, bound)
                w = None if w2 is None else _swap_witness(tag, w2)
        else:
            w = _match_b(u, v, bound)
        if w is not None:
            return PairType(tag, w)
    return PairType("Unknown", diagnostics={"u": str(u), "v": str(v), "bound": bound})


# --- stabilization --------------------------------------------------------


def single_stab_possible_mxi(a0: Slope, a1: Slope) -> tuple[bool, Slope | None]:
    if distance(a0, a1) > 2:
        return False, None
    return True, common_neighbor(a0, a1)


@dataclass(frozen=True)
class Move:
    kind: str
    fields: Mapping = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, **json.loads(json.dumps(dict(self.fields)))}


@dataclass(frozen=True)
class StabilizationCertificate:
    family: str
    start: Mapping[str, str]
    end: Mapping[str, str]
    moves: tuple[Move, ...]

    def to_json(self):
        return {
            "family": self.family,
            "start": dict(sorted(self.start.items())),
            "end": dict(sorted(self.end.items())),
            "moves": [m.to_json() for m in self.moves],
        }

    @classmethod
    def from_json(cls, obj) -> "StabilizationCertificate":
        try:
            moves = tuple(Move(m["kind"], {k: v for k, v in m.items() if k != "kind"}) for m in obj["moves"])
            return cls(obj["family"], dict(obj["start"]), dict(obj["end"]), moves)
        except (KeyError, TypeError, AttributeError) as exc:
            raise SpecError(f"malformed certificate: {exc!r}") from exc


def derived_hosts(spec: SplittingSpec, which: str) -> dict[str, str]:
    """Hosts of every assigned slot in the first or second derived splitting."""
    first, second = derived_labels(spec)
    hosts = {s.label: s.host for s in spec.slots if s.host is not None and s.label not in (first, second)}
    if which == "first":
        hosts.update({first: "A", second: "B"})
    elif which == "second":
        hosts.update({first: "B", second: "A"})
    else:
        raise ValueError(which)
    return hosts


def _lift(w: CyclicWord, rank: int, tail: Iterable[int] = ()) -> str:
    return str(Word(w.word().letters + tuple(tail), rank)) if w.letters else str(Word(tuple(tail), rank))


def basis_completion(words: list[Word], rank: int) -> list[str]:
    """Shortest-first words completing ``words`` to a basis of F(rank)."""
    need = rank - len(words)
    if need == 0:
        return []
    letters = [g for g in range(1, rank + 1)] + [-g for g in range(1, rank + 1)]
    pool = [Word((g,), rank) for g in range(1, rank + 1)]
    pool += [Word((g, h), rank) for g in letters for h in letters if g != -h]
    for extra in combinations(pool, need):
        if is_basis_tuple(list(words) + list(extra), rank):
            return [str(w) for w in extra]
    raise PreconditionError("completion", "no short completion to a basis")


def _frame_words(spec: SplittingSpec, hosts: Mapping[str, str], rank: int, lifts: Mapping[str, tuple[int, ...]]):
    """Per-side {label: word} in the given rank, plus completions."""
    words, completion = {}, {}
    for side in SIDES:
        ws = {}
        for lab, h in sorted(hosts.items()):
            if h != side:
                continue
            ws[lab] = _lift(spec.slot(lab).word(side), rank, lifts.get((lab, side), ()))
        words[side] = ws
        completion[side] = basis_completion([Word.parse(w, rank) for w in ws.values()], rank)
    return words, completion


def emit_single_stab_certificate(spec: SplittingSpec) -> StabilizationCertificate:
    """Push the second curve across, drill one tube along it, release the first."""
    if spec.family not in ("MH", "Hybrid"):
        raise WrongFamily("family", f"single stabilization certificate needs MH or Hybrid, not {spec.family}")
    first, second = derived_labels(spec)
    start, end = derived_hosts(spec, "first"), derived_hosts(spec, "second")
    mid = dict(start, **{second: "A"})
    words3, comp3 = _frame_words(spec, mid, 3, {})
    # drilled-handlebody word of the first curve, from the fixture derivation
    words3["A"][first] = str(fx.RANK3_WORDS[0])
    comp3["A"] = basis_completion([Word.parse(w, 3) for w in words3["A"].values()], 3)
    words2, comp2 = _frame_words(spec, end, 2, {})
    moves = (
        Move("push-in", {"slot": second, "side": "A"}),
        Move("tube-add", {"curve": second, "side": "A", "arc": {"kind": "straight"}, "words": words3, "completion": comp3}),
        Move("destabilize", {"release": first, "to": "B", "words": words2, "completion": comp2}),
    )
    return StabilizationCertificate(spec.family, start, end, moves)


def emit_double_stab_certificate(spec: SplittingSpec, single: bool = False) -> StabilizationCertificate:
    """Two-tube certificate for F x I splittings; ``single`` uses one Farey-arc tube instead."""
    if spec.family != "MxI":
        raise WrongFamily("family", f"F x I certificate needs family MxI, not {spec.family}")
    first, second = derived_labels(spec)
    start, end = derived_hosts(spec, "first"), derived_hosts(spec, "second")
    mid = dict(start, **{second: "A"})
    moves = [Move("push-in", {"slot": second, "side": "A"})]
    if single:
        ok, gamma = single_stab_possible_mxi(*spec.side_a.end_slopes)
        if not ok:
            raise PreconditionError("farey-distance<=2", "end slopes are more than two apart")
        w3, c3 = _frame_words(spec, mid, 3, {(second, "A"): (3,)})
        moves.append(Move("tube-add", {"curve": second, "side": "A", "arc": {"kind": "slope", "slope": str(gamma)}, "words": w3, "completion": c3}))
    else:
        w3, c3 = _frame_words(spec, mid, 3, {(second, "A"): (3,)})
        w4, c4 = _frame_words(spec, mid, 4, {(second, "A"): (3,), (first, "A"): (4,)})
        moves.append(Move("tube-add", {"curve": second, "side": "A", "arc": {"kind": "straight"}, "words": w3, "completion": c3}))
        moves.append(Move("tube-add", {"curve": first, "side": "A", "arc": {"kind": "straight"}, "words": w4, "completion": c4}))
        w3b, c3b = _frame_words(spec, end, 3, {(second, "A"): (3,)})
        moves.append(Move("destabilize", {"release": first, "to": "B", "words": w3b, "completion": c3b}))
    w2, c2 = _frame_words(spec, end, 2, {})
    release = first if single else None
    moves.append(Move("destabilize", {"release": release, "to": "B" if single else None, "words": w2, "completion": c2}))
    return StabilizationCertificate(spec.family, start, end, tuple(moves))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    index: int | None = None
    reason: str = ""

    def to_json(self):
        return {"ok": self.ok, "index": self.index, "reason": self.reason}


def _kill_extra(word: Word) -> CyclicWord:
    return CyclicWord.from_letters((x for x in word.letters if abs(x) <= 2), 2)


def check_certificate(cert: StabilizationCertificate, spec: SplittingSpec) -> CheckResult:
    """Replay the moves symbolically against the spec's raw slot words.

    After every tube-add and destabilize, the curves hosted on each side must
    form a primitive tuple in that side's current rank (their words plus the
    stated completion form a basis), and each word must reduce to the slot's
    spec word when the drilled generators are killed.
    """
    try:
        return _check(cert, spec)
    except (FreeGroupError, SlopeError, SpecError, KeyError, TypeError, ValueError, AttributeError) as exc:
        return CheckResult(False, None, f"malformed certificate: {exc}")


def _check(cert: StabilizationCertificate, spec: SplittingSpec) -> CheckResult:
    if cert.family != spec.family:
        return CheckResult(False, None, "family does not match the spec")
    if dict(cert.start) != derived_hosts(spec, "first"):
        return CheckResult(False, None, "start is not the first derived splitting")
    if dict(cert.end) != derived_hosts(spec, "second"):
        return CheckResult(False, None, "end is not the second derived splitting")
    hosts = dict(cert.start)
    genus = 2
    pending: set[str] = set()
    straight_tubes = 0
    for i, mv in enumerate(cert.moves):
        f = mv.fields
        if mv.kind == "push-in":
            slot, side = f["slot"], f["side"]
            if set(f) != {"slot", "side"}:
                return CheckResult(False, i, "unexpected push-in fields")
            if slot not in hosts or side not in SIDES or hosts[slot] == side:
                return CheckResult(False, i, "push-in must move a hosted slot to the other side")
            if genus != 2:
                return CheckResult(False, i, "push-in only before stabilizing")
            hosts[slot] = side
            pending.add(slot)
        elif mv.kind == "tube-add":
            curve, side, arc = f["curve"], f["side"], f["arc"]
            if side not in SIDES or hosts.get(curve) != side:
                return CheckResult(False, i, "tube must follow a curve hosted on its side")
            if pending and curve not in pending:
                return CheckResult(False, i, "tube must follow a pushed-in curve")
            if arc.get("kind") == "straight":
                if spec.family == "MxI":
                    straight_tubes += 1
            elif arc.get("kind") == "slope":
                if spec.family != "MxI":
                    return CheckResult(False, i, "slope arcs live in F x I")
                g = Slope.parse(arc["slope"])
                a0, a1 = spec.side(side).end_slopes
                if not (adjacent(g, a0) and adjacent(g, a1)):
                    return CheckResult(False, i, "arc slope is not a common Farey neighbour")
            else:
                return CheckResult(False, i, "unknown arc kind")
            pending.discard(curve)
            genus += 1
            bad = _check_frame(spec, hosts, genus, f["words"], f["completion"])
            if bad:
                return CheckResult(False, i, bad)
        elif mv.kind == "destabilize":
            if genus <= 2 or pending:
                return CheckResult(False, i, "nothing to destabilize")
            if spec.family == "MxI" and straight_tubes == 1:
                return CheckResult(False, i, "one straight tube does not separate the F x I ends")
            rel, to = f.get("release"), f.get("to")
            if rel is not None:
                if to not in SIDES or hosts.get(rel) in (None, to):
                    return CheckResult(False, i, "release must move a hosted slot across")
                hosts[rel] = to
            elif to is not None:
                return CheckResult(False, i, "plain destabilization has no target")
            genus -= 1
            bad = _check_frame(spec, hosts, genus, f["words"], f["completion"])
            if bad:
                return CheckResult(False, i, bad)
        else:
            return CheckResult(False, i, f"unknown move {mv.kind!r}")
    if genus != 2 or pending:
        return CheckResult(False, None, "does not return to genus 2")
    if hosts != dict(cert.end):
        return CheckResult(False, None, "final hosts differ from the end splitting")
    return CheckResult(True)


def _check_frame(spec, hosts, rank, words, completion) -> str:
    for side in SIDES:
        expect = sorted(lab for lab, h in hosts.items() if h == side)
        ws = words[side]
        if sorted(ws) != expect:
            return f"side {side} words do not list the hosted curves"
        parsed = []
        for lab in expect:
            w = Word.parse(ws[lab], rank)
            if _kill_extra(w) != spec.slot(lab).word(side):
                return f"word of {lab} on side {side} does not reduce to the spec word"
            parsed.append(w)
        extra = [Word.parse(w, rank) for w in completion[side]]
        if len(parsed) + len(extra) != rank or not is_basis_tuple(parsed + extra, rank):
            return f"curves on side {side} are not a primitive tuple in rank {rank}"
    return ""
