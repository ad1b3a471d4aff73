import json
import os
import subprocess
import sys

import pytest

from hibikit.cli import main
from hibikit.errors import ParseError
from hibikit.io import dumps, load, parse_object, parse_text, planar_json, poset_json
from hibikit.poset import antichain


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def path(data_dir, name):
    return os.path.join(data_dir, name)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_text('{"type": "poset",\n "elements": [1, }')
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_object({"type": "poset", "elements": ["a"], "covers": [["a"]]})
    with pytest.raises(ParseError):
        parse_object({"type": "bogus"})
    with pytest.raises(ParseError):
        parse_object({"type": "planar_lattice", "points": [[0, 0], [1, 1]]})


def test_schema_round_trip():
    P = antichain(3)
    again = parse_object(json.loads(dumps(poset_json(P)))).obj
    assert again == P
    inp = parse_object({"type": "planar_lattice", "points": [[0, 0], [1, 0]]})
    assert parse_object(planar_json(inp.obj)).obj == inp.obj
    lat = parse_object({"type": "poset", "elements": ["0", "1"], "covers": [["0", "1"]], "as_ideal_lattice": False})
    assert lat.kind == "lattice"


def test_analyze_butterfly(capsys, data_dir):
    code, out, _ = run(capsys, "analyze", path(data_dir, "butterfly.json"))
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    assert rep["predicates"]["level"] is True
    assert rep["predicates"]["pseudo_gorenstein"] is False


def test_analyze_chain(capsys, data_dir):
    code, out, _ = run(capsys, "analyze", path(data_dir, "chain3.json"))
    rep = json.loads(out)
    assert code == 0 and rep["invariants"]["reg"] == 0
    assert rep["lattice"]["incomparable_pairs"] == 0


def test_analyze_nonpure8_betti(capsys, data_dir, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "analyze", path(data_dir, "nonpure8.json"), "--betti", "4,6", "--json", str(out_file))
    rep = json.loads(out_file.read_text())
    rows = {(r["i"], r["j"]): r["value"] for r in rep["betti"]["ideal"]}
    assert code == 0 and rows == {(0, 2): 5, (1, 3): 5, (2, 5): 1}
    assert rep["planar"]["pureres_predicted"] == "sporadic"


def test_analyze_with_r(capsys, data_dir):
    code, out, _ = run(capsys, "analyze", path(data_dir, "butterfly.json"), "--r", "3")
    rep = json.loads(out)
    assert code == 0
    assert any("P x chain(2)" in c["name"] for c in rep["checks"])


def test_analyze_non_distributive(capsys, data_dir):
    code, out, _ = run(capsys, "analyze", path(data_dir, "pentagon.json"))
    rep = json.loads(out)
    assert code == 0 and rep["lattice"]["distributive"] is False and rep["lattice"]["modular"] is False


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "poset", "elements": [')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "line" in err
    big = tmp_path / "big.json"
    big.write_text(json.dumps({"type": "poset", "elements": [str(k) for k in range(20)], "covers": []}))
    code, _, err = run(capsys, "analyze", str(big))
    assert code == 3 and "bound exceeded" in err
    code, _, _ = run(capsys, "sweep", "--max-elements", "9")
    assert code == 3


def test_groebner(capsys, data_dir):
    code, out, err = run(capsys, "groebner", path(data_dir, "diamond.json"), "--sample-orders", "all")
    rep = json.loads(out)
    assert code == 0
    assert rep["summary"] == "no squarefree initial ideal found (240 orders)"
    code, out, _ = run(capsys, "groebner", path(data_dir, "b3.json"))
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["checks"]
    code, out, _ = run(capsys, "groebner", path(data_dir, "pentagon.json"))
    rep = json.loads(out)
    assert code == 0 and rep["distributive"] is False and rep["checks"] == []
    assert len(rep["basis"]["basis"]) > len(rep["generators"])


def test_groebner_custom_order(capsys, data_dir):
    code, out, _ = run(capsys, "groebner", path(data_dir, "b3.json"), "--order", "lex")
    assert code == 0 and json.loads(out)["basis"]["order"] == "lex"
    code, _, _ = run(capsys, "groebner", path(data_dir, "b3.json"), "--order", "lex:(p)")
    assert code == 2


def test_betti_command(capsys, data_dir):
    code, out, _ = run(capsys, "betti", path(data_dir, "nonpure8.json"))
    rep = json.loads(out)
    assert code == 0 and rep["betti"]["complete"]


def test_planar_classify(capsys, data_dir):
    code, out, _ = run(capsys, "planar-classify", path(data_dir, "nonpure8.json"), "--observe")
    rep = json.loads(out)
    assert code == 0 and rep["observed"]["pure"] and rep["pass"]
    code, _, _ = run(capsys, "planar-classify", path(data_dir, "butterfly.json"))
    assert code == 2


def test_sweep_trivial(capsys):
    code, out, err = run(capsys, "sweep", "--max-elements", "1")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 and json.loads(lines[0])["pass"]
    assert json.loads(err)["summary"]["violations"] == 0


def test_sweep_small_posets(capsys):
    code, out, err = run(capsys, "sweep", "--max-elements", "4", "--checks", "regularity,gorenstein")
    assert code == 0
    assert json.loads(err)["summary"] == {"checks": 72, "failed": [], "instances": 24, "skipped": 0, "violations": 0}


def test_sweep_unknown_check(capsys):
    code, _, _ = run(capsys, "sweep", "--max-elements", "2", "--checks", "nope")
    assert code == 2


def test_sweep_jobs_deterministic(tmp_path):
    outs = []
    for jobs in ("1", "3"):
        target = tmp_path / f"s{jobs}.jsonl"
        subprocess.run(
            [sys.executable, "-m", "hibikit", "sweep", "--max-elements", "4", "--planar-frame", "1,2", "--checks", "regularity,level,hilbert", "--jobs", jobs, "--out", str(target)],
            check=True,
            capture_output=True,
        )
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    for line in outs[0].decode().splitlines():
        rec = json.loads(line)
        parse_object(rec["instance"])


def test_analyze_deterministic(tmp_path, data_dir):
    outs = []
    for k in range(2):
        target = tmp_path / f"a{k}.json"
        subprocess.run([sys.executable, "-m", "hibikit", "analyze", path(data_dir, "expseudo.json"), "--json", str(target)], check=True)
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


def test_load_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load(str(tmp_path / "nope.json"))
