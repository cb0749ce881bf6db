"""The ghfilt command line: schemas, reports, exit codes, determinism."""
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from ghfilt.cli import main
from ghfilt.schemas import CONFIG_SCHEMA, SchemaError, validate_config, validate_report

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"


def run(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(args, capsys):
    code, out, err = run(args, capsys)
    assert code == 0, err
    rep = json.loads(out)
    validate_report(rep)
    return rep


def test_all_sample_configs_validate():
    for p in sorted(CONFIGS.glob("*.json")):
        validate_config(json.loads(p.read_text()))


def test_unknown_keys_and_float_rationals_rejected():
    with pytest.raises(SchemaError):
        validate_config({"datum": {"type": "A1"}, "bogus": 1})
    with pytest.raises(SchemaError):
        validate_config({"datum": {"type": "A1"}, "eta": [0.5]})
    with pytest.raises(SchemaError):
        validate_config({"datum": {"type": "A1"}, "U": {"kind": "one_dim", "weight": ["1"], "extra": 2}})


def test_jantzen_b2(capsys):
    rep = report(["jantzen", "--config", CONFIGS / "b2_standard.json"], capsys)
    assert rep["status"] == "ok"
    assert rep["results"]["layer_dims"] == [3, 1, 1, 3]
    assert sorted(rep["results"]["snf_exponents"], key=str) == sorted([0, 0, 0, 1, 2, 3, 3, 3], key=str)


def test_jantzen_eta_zero(capsys):
    rep = report(["jantzen", "--config", CONFIGS / "b2_eta0.json"], capsys)
    assert rep["results"]["layer_dims"] == [3]
    assert rep["results"]["stabilized_tail_dim"] == 5


def test_radical_and_socle(capsys):
    assert report(["radical", "--config", CONFIGS / "b2_radical_Y.json"], capsys)["results"]["layer_dims"] == [3, 2, 3]
    assert report(["socle", "--config", CONFIGS / "b2_standard.json"], capsys)["results"]["layer_dims"] == [3, 2, 3]


def test_bad_directions_a2(capsys):
    res = report(["bad", "--config", CONFIGS / "a2_example.json"], capsys)["results"]
    assert res["bad"] == [["3/2", "0"]]
    assert res["good"] == [["1", "-1/2"]]


def test_ext1(capsys):
    res = report(["ext1", "--config", CONFIGS / "b2_ext1_YZ.json"], capsys)["results"]
    assert res["value"] == 1
    res = report(["ext1", "--config", CONFIGS / "b2_standard.json"], capsys)["results"]
    assert res["status"] == "hypothesis-unverified" and res["value"] is None
    res = report(["ext1", "--config", CONFIGS / "b2_standard.json", "--assume-ss-ext-vanishing"], capsys)["results"]
    assert res["status"] == "assumed"


def test_chain_check(capsys):
    res = report(["chain-check", "--config", CONFIGS / "b2_standard.json"], capsys)["results"]
    assert res["passed"] and res["r"] == 3


def test_datum_and_induce(capsys):
    res = report(["datum", "--config", CONFIGS / "b2_standard.json"], capsys)["results"]
    assert res["order_W"] == 8 and len(res["coset_minima"]) == 4
    res = report(["induce", "--config", CONFIGS / "a2_example.json"], capsys)["results"]
    assert res["dim"] == 6


def test_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["jantzen", "--config", str(CONFIGS / "b2_standard.json"), "--out", str(a)]) == 0
    assert main(["jantzen", "--config", str(CONFIGS / "b2_standard.json"), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_several_configs_in_parallel(capsys, tmp_path):
    cfgs = [CONFIGS / "a1_chain.json", CONFIGS / "a2_example.json"]
    code = main(["jantzen", "--jobs", "2", "--out", str(tmp_path)] + [x for c in cfgs for x in ("--config", str(c))])
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["a1_chain.json", "a2_example.json"]
    code, out, err = run(["jantzen"] + [x for c in cfgs for x in ("--config", c)], capsys)
    lines = out.strip().splitlines()
    assert [json.loads(line)["config"]["datum"]["type"] for line in lines] == ["A1", "A2"]


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"datum": {"type": "A1"}, "nonsense": True}))
    assert run(["datum", "--config", bad], capsys)[0] == 1
    sing = tmp_path / "sing.json"
    sing.write_text(json.dumps({"datum": {"type": "A1", "k": "1"}, "J": [],
                                "U": {"kind": "one_dim", "weight": ["0"]}, "eta": ["0"]}))
    code, out, err = run(["jantzen", "--config", sing, "--allow-nontempered"], capsys)
    assert code == 2
    rep = json.loads(out)
    assert rep["status"] == "math-error" and rep["error"]["type"] == "SingularNormalization"
    missing = tmp_path / "nou.json"
    missing.write_text(json.dumps({"datum": {"type": "A1"}}))
    assert run(["jantzen", "--config", missing], capsys)[0] == 1
    assert run(["jantzen", "--config", tmp_path / "does-not-exist.json"], capsys)[0] == 1


def test_verify_paper_filters(capsys):
    code, out, err = run(["verify-paper", "--filter", "jantzen"], capsys)
    assert code == 0
    assert "PASS  jantzen/b2_layers" in err
    assert run(["verify-paper", "--filter", "nonsense"], capsys)[0] == 1


def test_verify_paper_image_filter_runs_only_the_images(capsys):
    code, out, err = run(["verify-paper", "--filter", "appendixA"], capsys)
    rep = json.loads(out)
    assert [c["name"] for c in rep["results"]["checks"]] == ["delta_images"]
    assert len(rep["results"]["checks"][0]["detail"]["equations"]) == 8


def test_corrupted_fixture_is_a_named_failure(capsys, tmp_path):
    src = ROOT / "src" / "ghfilt" / "fixtures"
    for p in src.glob("*.json"):
        shutil.copy(p, tmp_path / p.name)
    (tmp_path / "a1_chain_element.json").write_text("{not json")
    code, out, err = run(["verify-paper", "--filter", "a1", "--fixtures", tmp_path], capsys)
    assert code == 1
    assert "first failing check: a1/chain_element" in err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ghfilt.cli", "datum", "--config", str(CONFIGS / "a1_chain.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["order_W"] == 2
