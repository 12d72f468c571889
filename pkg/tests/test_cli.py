import json
from fractions import Fraction

import pytest

from odoni.bundle import validate_schema, verify_bundle
from odoni.cli import RunConfig, dump_config, load_config, main


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.fixture
def p3(tmp_path):
    return write(tmp_path, "p3.toml", 'n = 3\na = 1\nA = "52/7"\ns_ram = []\n')


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_config_roundtrip(tmp_path):
    cfg = RunConfig(n=3, a=1, A=Fraction(52, 7), s_ram=[13], seed=4, workers=2, budget=10)
    path = write(tmp_path, "c.toml", dump_config(cfg))
    assert load_config(path) == cfg
    cfg2 = RunConfig(coeffs=[Fraction(1), Fraction(-1), Fraction(1)])
    assert load_config(write(tmp_path, "d.toml", dump_config(cfg2))) == cfg2


def test_search(capsys):
    code, out = run(capsys, ["search", "3", "--count", "2"])
    doc = json.loads(out)
    assert code == 0 and doc["a"] == 1 and len(doc["results"]) == 2
    assert all(r["report"]["valid"] for r in doc["results"])
    code, out = run(capsys, ["search", "9", "--count", "1"])
    assert json.loads(out)["results"][0]["params"]["a"] == 2
    code, out = run(capsys, ["search", "3", "--s-ram", "13", "--count", "2"])
    for r in json.loads(out)["results"]:
        assert 13 not in (r["report"]["p0"], r["report"]["pinf"])
    code, out = run(capsys, ["search", "3", "--height-bound", "5"])
    assert code == 1 and json.loads(out)["results"] == []


def test_certify_verify_roundtrip(capsys, tmp_path, p3):
    cert = str(tmp_path / "c.json")
    code, _ = run(capsys, ["certify", p3, "--k-max", "2", "--out", cert])
    assert code == 0
    doc = json.load(open(cert))
    validate_schema(doc)
    assert doc["summary"]["fully_witnessed"]
    assert [t["pk"] for t in doc["transpositions"]] == [61, 1021]
    code, out = run(capsys, ["verify", cert])
    assert code == 0 and json.loads(out)["valid"]


def tamper(doc, path, value):
    d = json.loads(json.dumps(doc))
    obj = d
    for key in path[:-1]:
        obj = obj[key]
    obj[path[-1]] = value(obj[path[-1]])
    return d


def test_tamper_detection(capsys, tmp_path, p3):
    cert = str(tmp_path / "c.json")
    run(capsys, ["certify", p3, "--k-max", "2", "--out", cert])
    doc = json.load(open(cert))
    cases = [
        (["transpositions", 0, "pk"], lambda v: 59),
        (["transpositions", 1, "pk"], lambda v: 199),
        (["eisenstein", "p0"], lambda v: 2),
        (["tame_infinity", "pinf"], lambda v: 3),
        (["orbit", 0, "c_k"], lambda v: [v[0][:-1] + str((int(v[0][-1]) + 1) % 10), v[1]]),
        (["orbit", 1, "ck_plus"], lambda v: str(int(v) + 10)),
        (["tame_infinity", "formula_valuations", 0], lambda v: ["3", "1"]),
    ]
    for path, value in cases:
        bad = write(tmp_path, "bad.json", json.dumps(tamper(doc, path, value)))
        code, out = run(capsys, ["verify", bad])
        assert code == 1, path
        assert not json.loads(out)["valid"]


def test_verify_malformed(capsys, tmp_path, p3):
    cert = str(tmp_path / "c.json")
    run(capsys, ["certify", p3, "--k-max", "1", "--out", cert])
    text = open(cert).read()
    code, _ = run(capsys, ["verify", write(tmp_path, "t.json", text[: len(text) // 2])])
    assert code == 2
    doc = json.loads(text)
    del doc["params"]
    code, _ = run(capsys, ["verify", write(tmp_path, "m.json", json.dumps(doc))])
    assert code == 2
    code, _ = run(capsys, ["verify", str(tmp_path / "missing.json")])
    assert code == 2


def test_certify_budget_zero_is_existential(capsys, tmp_path, p3):
    cert = str(tmp_path / "c.json")
    code, _ = run(capsys, ["certify", p3, "--k-max", "2", "--budget", "0", "--out", cert])
    doc = json.load(open(cert))
    assert code == 0
    assert doc["summary"]["existential_levels"] == [1, 2]
    assert all("nonsquare_witness" in t for t in doc["transpositions"])
    assert verify_bundle(doc).valid


def test_certify_invalid_params(capsys, tmp_path):
    bad = write(tmp_path, "bad.toml", 'n = 3\na = 1\nA = "20/7"\n')
    code, out = run(capsys, ["certify", bad])
    assert code == 2 and "A3" in json.loads(out)["failed"]
    code, _ = run(capsys, ["certify", write(tmp_path, "x.toml", "n = = 3")])
    assert code == 2
    code, _ = run(capsys, ["certify", write(tmp_path, "y.toml", 'n = 3\nbogus = 1\n')])
    assert code == 2


def test_deterministic_output(capsys, tmp_path, p3, monkeypatch):
    outs = []
    for i in range(2):
        cert = str(tmp_path / f"c{i}.json")
        run(capsys, ["certify", p3, "--k-max", "2", "--out", cert])
        d = json.load(open(cert))
        d.pop("timestamp")
        outs.append(json.dumps(d, sort_keys=True))
    assert outs[0] == outs[1]
    monkeypatch.setenv("ODONI_SEED", "17")
    cert = str(tmp_path / "s.json")
    run(capsys, ["certify", p3, "--k-max", "1", "--out", cert])
    assert json.load(open(cert))["seed"] == 17


def test_group(capsys):
    code, out = run(capsys, ["group", "2", "1", "3", "0"])
    doc = json.loads(out)
    assert code == 0 and doc["contains_gamma"] and doc["order"] == 128
    code, _ = run(capsys, ["group", "3", "2", "2", "0"])
    assert code == 2


def test_sample(capsys, tmp_path):
    cfg = write(tmp_path, "f.toml", 'n = 2\na = 1\nA = "1"\n')
    code, out = run(capsys, ["sample", cfg, "2", "3000", "--workers", "2"])
    doc = json.loads(out)
    assert code == 0 and doc["density"]["predictions"][1] == ["3", "8"]
    code, out = run(capsys, ["sample", cfg, "1", "50", "--stream"])
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert [l["p"] for l in lines[:-1]] == [2, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    assert lines[-1]["command"] == "sample"


def test_orbit_and_polygon(capsys, p3):
    code, out = run(capsys, ["orbit", p3, "2"])
    doc = json.loads(out)
    assert code == 0 and doc["c0"] == ["1", "3"]
    assert doc["records"][0]["c_k"] == ["12139", "1323"]
    code, out = run(capsys, ["--json", "polygon", "--coeffs", "1,0,0,-1/5", "--p", "5"])
    assert code == 0 and json.loads(out)["segments"] == [[["-1", "3"], 3]]
    code, _ = run(capsys, ["polygon", "--coeffs", "1,x", "--p", "5"])
    assert code == 2


def test_usage_errors():
    with pytest.raises(SystemExit) as e:
        main(["search"])
    assert e.value.code == 2
