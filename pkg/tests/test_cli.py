import json
import subprocess
import sys

import pytest

from mukaifact.cli import main
from mukaifact.mukai import rank_one_model, surface_to_json


def write_model(tmp_path, name, surface, vector, m=None):
    doc = {"surface": surface_to_json(surface), "vector": vector}
    if m is not None:
        doc["m"] = m
    p = tmp_path / f"{name}.json"
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.fixture
def og_file(tmp_path):
    return write_model(tmp_path, "og", rank_one_model("k3", 2), {"r": 2, "c1": [0], "s": -2})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verdict_ogrady(capsys, og_file):
    code, out, _ = run(capsys, "verdict", og_file, "--target", "m")
    assert code == 0
    assert "TwoFactorial" in out and "trace:" in out


def test_verdict_json(capsys, og_file):
    code, out, _ = run(capsys, "verdict", og_file, "--json")
    obj = json.loads(out)
    assert code == 0 and obj["outcome"] == "TwoFactorial" and obj["trace"]


def test_verdict_multiplicity_override(capsys, tmp_path):
    f = write_model(tmp_path, "fam", rank_one_model("k3", 10), {"r": 2, "c1": [1], "s": 2}, m=2)
    code, out, _ = run(capsys, "verdict", f, "--json")
    assert code == 0 and json.loads(out)["outcome"] == "LocallyFactorial"


def test_verdict_not_generic(capsys, tmp_path):
    f = write_model(tmp_path, "ng", rank_one_model("k3", 2, generic=False), {"r": 2, "c1": [0], "s": -2})
    code, out, _ = run(capsys, "verdict", f)
    assert code == 3 and "IndeterminateAssumptionMissing" in out


def test_malformed_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"surface": ')
    code, _, err = run(capsys, "verdict", str(p))
    assert code == 1 and "malformed JSON" in err


def test_schema_errors_use_json_pointers(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"surface": {"kind": "k4", "ns": {"gram": [[2]]}}, "vector": {"r": "x", "c1": [], "s": 0}}))
    code, _, err = run(capsys, "verdict", str(p))
    assert code == 1
    assert "/surface/kind" in err and "/vector/r" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verdict", str(tmp_path / "nope.json"))
    assert code == 1


def test_c1_length_mismatch(capsys, tmp_path):
    f = write_model(tmp_path, "mm", rank_one_model("k3", 2), {"r": 2, "c1": [0, 0], "s": -2})
    code, _, err = run(capsys, "verdict", f)
    assert code == 1 and "/vector/c1" in err


def test_invalid_embedding_is_precondition(capsys, tmp_path):
    surface = surface_to_json(rank_one_model("k3", 2))
    surface["full_embedding"] = [[2, 2] + [0] * 20]
    surface["ns"]["gram"] = [[8]]
    p = tmp_path / "emb.json"
    p.write_text(json.dumps({"surface": surface, "vector": {"r": 2, "c1": [0], "s": -2}}))
    code, _, err = run(capsys, "verdict", str(p))
    assert code == 2 and "saturated" in err


def test_target_kind_mismatch(capsys, og_file):
    code, _, err = run(capsys, "verdict", og_file, "--target", "k")
    assert code == 2


def test_bad_flag(capsys, og_file):
    code, _, _ = run(capsys, "verdict", og_file, "--target", "q")
    assert code == 1


def test_lattice_pic(capsys, og_file):
    code, out, _ = run(capsys, "lattice", og_file, "--what", "pic", "--json")
    obj = json.loads(out)
    assert code == 0
    assert obj["lattice"]["rank"] == 2
    assert sorted(map(tuple, obj["lattice"]["gram"])) == [(-2, 0), (0, 2)]


def test_lattice_hv(capsys, og_file):
    code, out, _ = run(capsys, "lattice", og_file, "--what", "hv", "--json")
    fp = json.loads(out)["fingerprint"]
    assert code == 0
    assert fp["rank"] == 24 and fp["parity"] == "even" and fp["invariant_factors"] == []
    assert fp["signature"] == [4, 20]


def test_lattice_gamma_without_embedding(capsys, tmp_path):
    f = write_model(tmp_path, "ne", rank_one_model("k3", 2, embed=False), {"r": 2, "c1": [0], "s": -2})
    code, _, err = run(capsys, "lattice", f, "--what", "gamma")
    assert code == 2 and "full embedding required" in err


@pytest.mark.parametrize("what,rank", [("perp", 2), ("perp-full", 23), ("gamma", 24), ("beauville", 23)])
def test_lattice_reports(capsys, og_file, what, rank):
    code, out, _ = run(capsys, "lattice", og_file, "--what", what)
    assert code == 0 and f"rank: {rank}" in out and "signature" in out


def test_lattice_beauville_resolution(capsys, tmp_path):
    f = write_model(tmp_path, "ab", rank_one_model("abelian", 2), {"r": 2, "c1": [0], "s": -2})
    code, out, _ = run(capsys, "lattice", f, "--what", "beauville", "--target", "k-tilde", "--json")
    fp = json.loads(out)["fingerprint"]
    assert code == 0 and fp["rank"] == 8 and fp["signature"] == [3, 5]


def test_lattice_degenerate_pic(capsys, tmp_path):
    f = write_model(tmp_path, "d", rank_one_model("k3", 2), {"r": 1, "c1": [0], "s": 0})
    code, out, _ = run(capsys, "lattice", f, "--what", "perp")
    assert code == 0 and "degenerate" in out


def test_fuzz_empty(capsys):
    code, out, _ = run(capsys, "fuzz", "--cases", "0", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["cases"] == 0 and obj["disagreements"] == []


def test_fuzz_deterministic(capsys):
    a = run(capsys, "fuzz", "--seed", "7", "--cases", "4")
    b = run(capsys, "fuzz", "--seed", "7", "--cases", "4")
    assert a == b and a[0] == 0


def test_output_byte_identical(capsys, og_file):
    a = run(capsys, "lattice", og_file, "--what", "gamma", "--json")
    b = run(capsys, "lattice", og_file, "--what", "gamma", "--json")
    assert a == b


def test_module_entry_point(og_file):
    proc = subprocess.run([sys.executable, "-m", "mukaifact", "verdict", og_file], capture_output=True, text=True)
    assert proc.returncode == 0 and "TwoFactorial" in proc.stdout
