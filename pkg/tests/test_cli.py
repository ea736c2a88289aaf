import json
from pathlib import Path

import pytest

from profcalc.cli import main

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(tmp_path, *argv):
    out = tmp_path / "cert.json"
    code = main(["--certificate", str(out), *argv])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def D(name):
    return str(DATA / name)


@pytest.mark.parametrize("argv,expected", [
    (["check", "category", D("walking_arrow.json")], 0),
    (["check", "category", D("broken_category.json")], 1),
    (["check", "profunctor", D("J.json")], 0),
    (["compose", D("J.json"), D("J.json")], 0),
    (["kan", "--diagram", D("d.json"), "--along", D("J.json")], 0),
    (["kan", "--diagram", D("d_nocolim.json"), "--along", D("J_nocolim.json")], 3),
    (["tabulate", D("H.json")], 0),
    (["lift", "--diagram", D("d.json"), "--along", D("J.json"), "--mode", "pseudo"], 0),
    (["lift", "--diagram", D("d.json"), "--along", D("J.json"), "--mode", "colax"], 0),
    (["lift", "--diagram", D("d_lax.json"), "--along", D("J.json"), "--mode", "lax"], 0),
    (["prop", "bc-factor", "--matrix", "1,2;3,4;5,6", "--split", "1,2"], 0),
    (["prop", "bc-relate", "--blocks", "1|2", "--zeta", "1,0;0,1", "--split", "1,1"], 0),
    (["prop", "hopf", "--group", "Z/2xZ/2"], 0),
    (["prop", "adjunction", "--group", "Z/3", "--basis", "a,b"], 0),
    (["prop", "coend", "--left", "1,2", "--left-labels", "a,a", "--right", "3", "--right-labels", "a"], 0),
], ids=lambda v: v if isinstance(v, int) else "-".join(a for a in v if not a.startswith("/"))[:40])
def test_exit_codes(tmp_path, argv, expected):
    code, cert = run(tmp_path, *argv)
    assert code == expected
    assert cert["exit_code"] == expected


def test_pseudo_lift_of_non_monoidal_diagram_fails(tmp_path):
    code, cert = run(tmp_path, "lift", "--diagram", D("d_lax.json"), "--along", D("J.json"), "--mode", "pseudo")
    # d_lax has no pseudo structure, which is a structural defect of the input
    assert code == 1 and cert["verdict"] != "ok"


def test_coend_distinct_labels(tmp_path):
    code, cert = run(tmp_path, "prop", "coend", "--left", "1", "--left-labels", "a", "--right", "1",
                     "--right-labels", "b")
    assert code == 0 and cert["payload"]["verdict"]["kind"] == "distinct"


def test_missing_file_is_io_error(tmp_path):
    assert main(["check", "category", str(tmp_path / "nope.json")]) == 4


def test_malformed_json_is_io_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check", "category", str(bad)]) == 4


def test_certificates_are_deterministic(tmp_path):
    argv = ["kan", "--diagram", D("d.json"), "--along", D("J.json")]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["--certificate", str(a), *argv])
    main(["--certificate", str(b), *argv])
    assert a.read_bytes() == b.read_bytes()


def test_verify_round_trip_and_tamper(tmp_path):
    cert = tmp_path / "c.json"
    main(["--certificate", str(cert), "prop", "hopf", "--group", "Z/4"])
    assert main(["--certificate", str(tmp_path / "v.json"), "verify", str(cert)]) == 0
    data = json.loads(cert.read_text())
    data["verdict"] = "tampered"
    cert.write_text(json.dumps(data))
    assert main(["--certificate", str(tmp_path / "v.json"), "verify", str(cert)]) == 2
    data["verdict"], data["version"] = "ok", "9.9.9"
    cert.write_text(json.dumps(data))
    assert main(["--certificate", str(tmp_path / "v.json"), "verify", str(cert)]) == 0
