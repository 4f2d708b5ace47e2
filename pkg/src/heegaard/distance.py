"""Upper-bound certificates for the distance of a splitting.

A distance certificate is a chain of curves on the model surface whose ends
bound disks on opposite sides and whose neighbours are disjoint.  A
disjoint-curve certificate is one essential curve missing a disk boundary
on each side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import fixtures as fx
from .splittings import PreconditionError, SpecError, SplittingSpec, derived_hosts, derived_labels
from .surface import (
    ChordCurve,
    MeridianSystem,
    SurfaceError,
    band_sum,
    bounds_disk_on_surface,
    crossings,
    push_off,
    shared_points,
    validate,
    word_of,
)

CERT_SCHEMA = "heegaard-cert/1"

# disjoint-curve certificates for other seam constructions; no data is shipped for them
UNPOPULATED_DCP_SLOTS = ("variation-5", "variation-6")


class UnsupportedSpec(ValueError):
    pass


class CertificateError(ValueError):
    """Malformed certificate (schema or curve validation)."""


def essentiality_check(c: ChordCurve, systems: tuple[MeridianSystem, ...] = ()) -> str:
    """'essential' or 'inessential'.

    A nontrivial word on some side settles it at once; otherwise the cut
    surface is examined exactly, and the curve is inessential iff one side is
    a disk.
    """
    if validate(c):
        raise CertificateError("curve is not valid")
    if any(word_of(c, m).letters for m in systems):
        return "essential"
    return "inessential" if bounds_disk_on_surface(c) else "essential"


def _disjoint(c1: ChordCurve, c2: ChordCurve) -> bool:
    return not shared_points(c1, c2) and crossings(c1, c2) == 0


@dataclass(frozen=True)
class Verdict:
    ok: bool
    n: int | None = None
    reason: str = ""
    index: int | None = None

    def to_json(self):
        return {"ok": self.ok, "n": self.n, "reason": self.reason, "index": self.index}


@dataclass(frozen=True)
class DistanceCertificate:
    curves: tuple[ChordCurve, ...]
    side1: MeridianSystem
    side2: MeridianSystem

    def reversed(self) -> "DistanceCertificate":
        return DistanceCertificate(tuple(reversed(self.curves)), self.side2, self.side1)

    def to_json(self):
        return {
            "schema": CERT_SCHEMA,
            "kind": "distance",
            "curves": [c.to_json() for c in self.curves],
            "side1_meridians": str(self.side1),
            "side2_meridians": str(self.side2),
        }

    @classmethod
    def from_json(cls, obj) -> "DistanceCertificate":
        _expect(obj, "distance")
        try:
            return cls(
                tuple(ChordCurve.from_json(c) for c in obj["curves"]),
                MeridianSystem.parse(obj["side1_meridians"]),
                MeridianSystem.parse(obj["side2_meridians"]),
            )
        except (KeyError, TypeError, SurfaceError) as exc:
            raise CertificateError(f"malformed distance certificate: {exc}") from exc


def _expect(obj, kind):
    if not isinstance(obj, dict) or obj.get("schema") != CERT_SCHEMA:
        raise CertificateError(f"expected schema {CERT_SCHEMA!r}")
    if obj.get("kind") != kind:
        raise CertificateError(f"expected a {kind} certificate, got {obj.get('kind')!r}")


def verify_certificate(cert: DistanceCertificate) -> Verdict:
    curves = cert.curves
    if not curves:
        raise CertificateError("certificate has no curves")
    for i, c in enumerate(curves):
        if validate(c):
            raise CertificateError(f"curve {i} is not valid")
    n = len(curves) - 1
    if word_of(curves[0], cert.side1).letters:
        return Verdict(False, None, "c0 does not bound", 0)
    if word_of(curves[n], cert.side2).letters:
        return Verdict(False, None, "cn does not bound", n)
    both = (cert.side1, cert.side2)
    for i, c in enumerate(curves):
        if essentiality_check(c, both) != "essential":
            return Verdict(False, None, "curve is inessential", i)
    for i in range(1, n + 1):
        if not _disjoint(curves[i - 1], curves[i]):
            return Verdict(False, None, "consecutive curves meet", i)
    return Verdict(True, n)


def _disk_disjoint_from(frame: MeridianSystem, curve: ChordCurve, avoid: tuple[ChordCurve, ...], what: str) -> ChordCurve:
    """Band sum of a meridian meeting ``curve`` once, along ``curve``."""
    m = fx.dual_meridian(frame, curve, avoid)
    if m is None:
        raise UnsupportedSpec(f"no meridian of {frame} meets {what} exactly once")
    d = band_sum(m, curve)
    if any(not _disjoint(d, a) for a in avoid):
        raise UnsupportedSpec(f"band sum for {what} meets a surgered curve")
    return d


def build_distance3_certificate(spec: SplittingSpec, choice: str = "first") -> DistanceCertificate:
    """[disk on A, curve pushed into A, curve pushed into B, disk on B]."""
    first, second = derived_labels(spec)
    if choice == "first":
        la, lb = first, second
    elif choice == "second":
        la, lb = second, first
    else:
        raise ValueError("choice must be 'first' or 'second'")
    fa, fb = spec.side_a.frame, spec.side_b.frame
    ra, rb = spec.slot(la).representative, spec.slot(lb).representative
    if fa is None or fb is None or ra is None or rb is None:
        raise UnsupportedSpec("spec lacks representatives or meridian frames")
    if ra == rb or not _disjoint(ra, rb):
        raise PreconditionError(f"disjoint({la},{lb})", "the two curves must be disjoint and distinct")
    hosts = derived_hosts(spec, choice)

    def cores(side, own):
        # other curves pushed into this side and surgered; the disk must survive them
        return tuple(
            s.representative for s in spec.slots
            if hosts.get(s.label) == side and s.label != own and s.slope is not None and s.representative is not None
        )

    da = _disk_disjoint_from(fa, ra, cores("A", la), la)
    db = _disk_disjoint_from(fb, rb, cores("B", lb), lb)
    return DistanceCertificate((ChordCurve(da.chords, "disk-A"), ra, rb, ChordCurve(db.chords, "disk-B")), fa, fb)


@dataclass(frozen=True)
class DcpCertificate:
    seam: ChordCurve
    disk1: ChordCurve
    disk2: ChordCurve
    side1: MeridianSystem
    side2: MeridianSystem

    def to_json(self):
        return {
            "schema": CERT_SCHEMA,
            "kind": "dcp",
            "seam": self.seam.to_json(),
            "disk1": self.disk1.to_json(),
            "disk2": self.disk2.to_json(),
            "side1_meridians": str(self.side1),
            "side2_meridians": str(self.side2),
        }

    @classmethod
    def from_json(cls, obj) -> "DcpCertificate":
        _expect(obj, "dcp")
        try:
            return cls(
                ChordCurve.from_json(obj["seam"], "seam"),
                ChordCurve.from_json(obj["disk1"], "disk1"),
                ChordCurve.from_json(obj["disk2"], "disk2"),
                MeridianSystem.parse(obj["side1_meridians"]),
                MeridianSystem.parse(obj["side2_meridians"]),
            )
        except (KeyError, TypeError, SurfaceError) as exc:
            raise CertificateError(f"malformed dcp certificate: {exc}") from exc


def verify_dcp(cert: DcpCertificate) -> Verdict:
    for name in ("seam", "disk1", "disk2"):
        if validate(getattr(cert, name)):
            raise CertificateError(f"{name} is not valid")
    both = (cert.side1, cert.side2)
    if word_of(cert.disk1, cert.side1).letters:
        return Verdict(False, reason="disk1 does not bound on side 1")
    if word_of(cert.disk2, cert.side2).letters:
        return Verdict(False, reason="disk2 does not bound on side 2")
    for name in ("disk1", "disk2"):
        if bounds_disk_on_surface(getattr(cert, name)):
            return Verdict(False, reason=f"{name} bounds a disk on the surface")
    if essentiality_check(cert.seam, both) != "essential":
        return Verdict(False, reason="seam is inessential")
    if not _disjoint(cert.seam, cert.disk1):
        return Verdict(False, reason="seam meets disk1")
    if not _disjoint(cert.seam, cert.disk2):
        return Verdict(False, reason="seam meets disk2")
    return Verdict(True, 2)


def build_seam_certificate(spec: SplittingSpec) -> DcpCertificate:
    """Seam parallel to the first identified curve, for the three-curve family."""
    if spec.family != "MH":
        raise UnsupportedSpec("seam certificates are shipped for the MH family only")
    first, _ = derived_labels(spec)
    lam = spec.slot(first).representative
    fa, fb = spec.side_a.frame, spec.side_b.frame
    if lam is None or fa is None or fb is None:
        raise UnsupportedSpec("spec lacks representatives")
    cores_a = tuple(s.representative for s in spec.slots if s.host == "A" and s.slope is not None)
    cores_b = tuple(s.representative for s in spec.slots if s.host == "B" and s.slope is not None)
    d1 = _disk_disjoint_from(fa, lam, cores_a, first)
    d2 = _disk_disjoint_from(fb, lam, cores_b, first)
    seam = push_off(lam, "left", avoid=(d1, d2))
    return DcpCertificate(ChordCurve(seam.chords, "seam"), d1, d2, fa, fb)


def load_certificate(text: str):
    """Parse any certificate kind; returns (kind, object)."""
    from .splittings import StabilizationCertificate

    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not JSON: {exc}") from exc
    if not isinstance(obj, dict) or obj.get("schema") != CERT_SCHEMA:
        raise CertificateError(f"expected schema {CERT_SCHEMA!r}")
    kind = obj.get("kind")
    if kind == "distance":
        return kind, DistanceCertificate.from_json(obj)
    if kind == "dcp":
        return kind, DcpCertificate.from_json(obj)
    if kind == "stab":
        try:
            spec = SplittingSpec.from_json(obj["spec"])
            return kind, (StabilizationCertificate.from_json(obj["certificate"]), spec)
        except (KeyError, SpecError) as exc:
            raise CertificateError(f"malformed stabilization certificate: {exc}") from exc
    raise CertificateError(f"unknown certificate kind {kind!r}")


def stab_to_json(cert, spec: SplittingSpec) -> dict:
    from .splittings import normalize

    return {"schema": CERT_SCHEMA, "kind": "stab", "certificate": cert.to_json(), "spec": normalize(spec).to_json()}
