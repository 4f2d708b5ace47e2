import copy
import json
from fractions import Fraction

import pytest

from heegaard.distance import (
    CertificateError,
    DcpCertificate,
    DistanceCertificate,
    UnsupportedSpec,
    build_distance3_certificate,
    build_seam_certificate,
    essentiality_check,
    load_certificate,
    verify_certificate,
    verify_dcp,
)
from heegaard.fixtures import FRAME_H, FRAME_H_OTHER, LAMBDA1, LAMBDA3, meridian_loop
from heegaard.splittings import build_hybrid, build_mh, build_mxi
from heegaard.surface import ChordCurve, corner_circle

MH = build_mh("2/1", "none", "3/1", "-1/1")


def test_essentiality():
    both = (FRAME_H, FRAME_H_OTHER)
    assert essentiality_check(LAMBDA1, both) == "essential"
    assert essentiality_check(corner_circle(), both) == "inessential"
    # trivial in both handlebodies, yet essential on the surface
    d = build_distance3_certificate(MH).curves[0]
    assert essentiality_check(d, (FRAME_H,)) == "essential"


@pytest.mark.parametrize("choice", ["first", "second"])
def test_mh_certificate(choice):
    cert = build_distance3_certificate(MH, choice)
    assert verify_certificate(cert).ok and verify_certificate(cert).n == 3
    assert verify_certificate(cert.reversed()).n == 3
    back = DistanceCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    assert back == cert


def test_tampered_certificates_fail():
    cert = build_distance3_certificate(MH)
    c = list(cert.curves)
    cases = {
        "c0 does not bound": DistanceCertificate((LAMBDA3,) + tuple(c[1:]), cert.side1, cert.side2),
        "cn does not bound": DistanceCertificate(tuple(c[:-1]) + (LAMBDA3,), cert.side1, cert.side2),
        "curve is inessential": DistanceCertificate((c[0], corner_circle(Fraction(1, 32)), c[2], c[3]), cert.side1, cert.side2),
        "consecutive curves meet": DistanceCertificate((c[0], c[1], meridian_loop("c", Fraction(3, 16)), c[3]), cert.side1, cert.side2),
    }
    for reason, bad in cases.items():
        v = verify_certificate(bad)
        assert not v.ok and v.reason == reason, (reason, v)


def test_swapping_frames_breaks_certificate():
    cert = build_distance3_certificate(MH)
    swapped = DistanceCertificate(cert.curves, cert.side2, cert.side1)
    assert not verify_certificate(swapped).ok


def rejected(obj) -> bool:
    try:
        _, cert = load_certificate(json.dumps(obj))
        return not verify_certificate(cert).ok
    except CertificateError:
        return True


def test_every_endpoint_edit_is_rejected():
    obj = build_distance3_certificate(MH).to_json()
    tried = 0
    for i, curve in enumerate(obj["curves"]):
        for j in range(len(curve)):
            for end in ("from", "to"):
                bad = copy.deepcopy(obj)
                bad["curves"][i][j][end]["t"] = "1/64"
                tried += 1
                assert rejected(bad), (i, j, end)
    assert tried > 10


def test_malformed_documents():
    good = build_distance3_certificate(MH).to_json()
    for mutate in (
        lambda o: o.pop("curves"),
        lambda o: o.update(schema="nope"),
        lambda o: o.update(side1_meridians="cd"),
        lambda o: o.update(kind="other"),
    ):
        o = copy.deepcopy(good)
        mutate(o)
        with pytest.raises(CertificateError):
            load_certificate(json.dumps(o))
    with pytest.raises(CertificateError):
        load_certificate("{")
    with pytest.raises(CertificateError):
        verify_certificate(DistanceCertificate((), FRAME_H, FRAME_H))


def test_other_families_certify():
    for spec in (build_hybrid("2/1", "none", "none", "1/1", "0/1"), build_mxi("0/1", "1/0", "1/1", "0/1", "2/1")):
        for choice in ("first", "second"):
            assert verify_certificate(build_distance3_certificate(spec, choice)).n == 3
    with pytest.raises(UnsupportedSpec):
        build_distance3_certificate(build_hybrid(b0="2/1", b1="1/1"))


def test_dcp_seam_certificate():
    cert = build_seam_certificate(MH)
    v = verify_dcp(cert)
    assert v.ok and v.n == 2
    assert DcpCertificate.from_json(json.loads(json.dumps(cert.to_json()))) == cert
    kind, back = load_certificate(json.dumps(cert.to_json()))
    assert kind == "dcp" and verify_dcp(back).ok


def test_dcp_mutations_fail():
    cert = build_seam_certificate(MH)
    muts = {
        "disk1 does not bound on side 1": DcpCertificate(cert.seam, LAMBDA3, cert.disk2, cert.side1, cert.side2),
        "disk2 does not bound on side 2": DcpCertificate(cert.seam, cert.disk1, LAMBDA3, cert.side1, cert.side2),
        "disk1 bounds a disk on the surface": DcpCertificate(cert.seam, corner_circle(Fraction(1, 64)), cert.disk2, cert.side1, cert.side2),
        "seam is inessential": DcpCertificate(corner_circle(Fraction(1, 64)), cert.disk1, cert.disk2, cert.side1, cert.side2),
        "seam meets disk1": DcpCertificate(ChordCurve(meridian_loop("c", Fraction(3, 16)).chords, "seam"), cert.disk1, cert.disk2, cert.side1, cert.side2),
    }
    for reason, bad in muts.items():
        v = verify_dcp(bad)
        assert not v.ok and v.reason == reason, (reason, v)
    assert not verify_dcp(DcpCertificate(cert.seam, cert.disk1, cert.disk2, cert.side2, cert.side1)).ok


def test_dcp_only_for_mh():
    with pytest.raises(UnsupportedSpec):
        build_seam_certificate(build_mxi("0/1", "1/0", "0/1", "1/0"))
