import io
import json
import subprocess
import sys

import pytest

from ncdiv.cli import run
from ncdiv.gallery import build
from ncdiv.io import REPORT_SCHEMA, SCHEMA, dumps, instance_from_spec, instance_to_spec
from ncdiv.suite import run_suite

NAMES = ["z2-haar", "z3-haar", "inner-z2", "preproj-toy", "supercircle:3"]


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def write_spec(tmp_path, spec, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(spec))
    return str(path)


def test_check_clean_lists_identities():
    code, text = call("check", "z2-haar")
    assert code == 0
    assert text.count("verified: ") == 7
    assert text.rstrip().endswith("exit code 0")


def test_integral_text():
    code, text = call("integral", "z2-haar")
    assert code == 0
    assert "dim coker = 1" in text
    assert "V = span{e_e - e_g}" in text
    assert "Lambda = {e_e: 1, e_g: 1}" in text


def test_ibp_supercircle():
    code, text = call("ibp", "supercircle:4")
    assert code == 0
    assert "max residual: 0" in text


def test_ibp_needs_free_instance():
    code, _ = call("ibp", "preproj-toy")
    assert code == 2


def test_perturbed_spec_exits_one(tmp_path):
    spec = instance_to_spec(build("z2-haar"))
    spec["algebra"]["mul"][0][0][0] = "2/1"
    code, text = call("check", write_spec(tmp_path, spec))
    assert code == 1
    assert "stopped after" in text


def test_bad_input_exits_two(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert call("check", str(path))[0] == 2
    spec = instance_to_spec(build("z2-haar"))
    spec["surprise"] = 1
    assert call("check", write_spec(tmp_path, spec))[0] == 2
    spec = instance_to_spec(build("z2-haar"))
    spec["algebra"]["unit"][0] = "0.5"
    assert call("check", write_spec(tmp_path, spec))[0] == 2
    assert call("check", "no-such-instance")[0] == 2


def test_deterministic_output():
    assert call("check", "z3-haar") == call("check", "z3-haar")
    assert call("check", "supercircle:2", "--json") == call("check", "supercircle:2", "--json")


@pytest.mark.parametrize("name", NAMES)
def test_export_round_trip(name, tmp_path):
    inst = build(name)
    spec = instance_to_spec(inst)
    assert spec["schema"] == SCHEMA
    back = instance_from_spec(json.loads(dumps(spec)))
    assert instance_to_spec(back) == spec
    a = [r.as_dict() for r in run_suite(inst).reports]
    b = [r.as_dict() for r in run_suite(back).reports]
    assert a == b


def test_export_to_file_and_check(tmp_path):
    path = str(tmp_path / "z2.json")
    assert call("export", "z2-haar", "-o", path)[0] == 0
    code, text = call("integral", path)
    assert code == 0 and "Lambda = {e_e: 1, e_g: 1}" in text


def test_json_output():
    code, text = call("integral", "z3-haar", "--json")
    data = json.loads(text)
    assert code == 0 and data["exit_code"] == 0
    assert data["schema"] == REPORT_SCHEMA
    assert data["instance"] == "z3-haar"
    assert data["integral"]["dim coker"] == 1
    assert data["integral"]["table"] == {"e_e": "1/1", "e_g": "1/1", "e_g2": "1/1"}
    assert all(r["ok"] for r in data["reports"])


def test_lambda_file(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"θ": "1/1"}))
    assert call("integral", "supercircle:3", "--lambda", str(good))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"1": "1/1"}))
    assert call("integral", "supercircle:3", "--lambda", str(bad))[0] == 1


def test_window_flag():
    code, text = call("integral", "supercircle", "--window", "2")
    assert code == 0
    assert "instance: supercircle:2" in text
    assert "verified on window 2" in text


def test_calculus_and_divergence_views():
    code, text = call("calculus", "z2-haar")
    assert code == 0 and "module rank = 1, dimension = 2" in text
    code, text = call("divergence", "supercircle:2")
    assert code == 0 and "div[" in text
    assert call("divergence", "preproj-toy")[0] == 2


def test_gallery_command():
    for name in NAMES:
        assert call("gallery", name)[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ncdiv", "integral", "z2-haar"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "dim coker = 1" in proc.stdout
