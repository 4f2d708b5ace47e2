import json
import subprocess
import sys

import pytest

from heegaard.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_check_tools(capsys):
    assert run(["check", "primitive", "aab"], capsys)[:2] == (0, "true\n")
    assert run(["check", "primitive", "aabb"], capsys)[:2] == (0, "false\n")
    assert run(["check", "basis", "aab", "ab"], capsys)[:2] == (0, "true\n")
    assert run(["check", "basis", "acb", "b", "a", "--rank", "3"], capsys)[:2] == (0, "true\n")
    assert run(["check", "farey-dist", "2/5", "5/2"], capsys)[:2] == (0, "4\n")
    assert run(["check", "farey-dist", "-1/1", "2/1"], capsys)[:2] == (0, "2\n")
    assert run(["check", "classify", "aaab", "b"], capsys)[:2] == (0, "TypeA\n")
    assert run(["check", "classify", "a", "b", "--context", "fxi"], capsys)[:2] == (0, "TypeB\n")


def test_json_report_shape(capsys):
    code, out, _ = run(["--json", "check", "farey-dist", "0/1", "1/0"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert set(rep) >= {"schema", "command", "inputs", "checks", "status", "tool_version"}
    assert rep["result"] == 1 and rep["status"] == "pass"
    # flag accepted after the subcommand too
    code, out2, _ = run(["check", "farey-dist", "0/1", "1/0", "--json"], capsys)
    assert json.loads(out2) == rep


def test_usage_errors_exit_2(capsys, tmp_path):
    assert run(["check", "farey-dist", "0/0", "1/1"], capsys)[0] == 2
    assert run(["check", "primitive", "xq"], capsys)[0] == 2
    assert run(["derive", str(tmp_path / "missing.json")], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "nope"}')
    assert run(["derive", str(bad)], capsys)[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["check", "nonsense", "x"])
    assert e.value.code == 2


def test_semantic_failure_exits_1(capsys):
    code, out, err = run(["--json", "check", "classify", "aabb", "b"], capsys)
    assert code == 1 and json.loads(out)["status"] == "fail"
    assert "primitive(u)" in err


def test_generate_derive_certify_verify(capsys, tmp_path):
    spec = tmp_path / "mh.json"
    assert run(["generate", "mh", "--ra", "3/1", "--rb", "-1/1", "--output", str(spec)], capsys)[0] == 0
    code, out, _ = run(["derive", str(spec), "--json"], capsys)
    assert code == 0
    rep = json.loads(out)
    for path in rep["outputs"].values():
        assert json.loads(open(path).read())["family"] == "MH"
    for kind in ("distance", "dcp", "stab"):
        cert = tmp_path / f"{kind}.json"
        assert run(["certify", str(spec), "--kind", kind, "--output", str(cert)], capsys)[0] == 0
        code, out, _ = run(["verify", str(cert), "--kind", kind], capsys)
        assert code == 0 and out.startswith("ok")
    code, _, err = run(["verify", str(tmp_path / "dcp.json"), "--kind", "distance"], capsys)
    assert code == 2 and "dcp" in err


def test_tampered_certificate_exits_1(capsys, tmp_path):
    spec = tmp_path / "mxi.json"
    run(["generate", "mxi", "--output", str(spec)], capsys)
    cert = tmp_path / "d.json"
    run(["certify", str(spec), "--kind", "distance", "--output", str(cert)], capsys)
    obj = json.loads(cert.read_text())
    obj["curves"][0], obj["curves"][1] = obj["curves"][1], obj["curves"][0]
    cert.write_text(json.dumps(obj))
    assert run(["verify", str(cert), "--kind", "distance"], capsys)[0] == 1


def test_generate_is_deterministic(tmp_path):
    outs = []
    for _ in range(2):
        r = subprocess.run(
            [sys.executable, "-m", "heegaard.cli", "generate", "hybrid", "--l3", "2/1"],
            capture_output=True, text=True, check=True,
        )
        outs.append(r.stdout)
    assert outs[0] == outs[1] and json.loads(outs[0])["family"] == "Hybrid"
