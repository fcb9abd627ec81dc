import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from curvecover.cli import run

GOLDEN = str(Path(__file__).resolve().parents[1] / "oracle_golden.json")
SIX = "hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]"


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def js(*argv):
    code, out = call(*argv)
    assert code == 0, out
    return json.loads(out)


def test_curve_commands():
    info = js("curve", "info", "--spec", SIX)
    assert info["l_polynomial"] == [1, 2, 3] and info["weil"]["serre_refined"]
    assert js("curve", "count", "--spec", SIX, "--m", "3")["count"] == 18
    assert js("curve", "places", "--spec", "pline p=2 k=1", "--d", "2") == {"n_d": 1}
    out = js("curve", "places", "--spec", "pline p=2 k=1", "--d", "2", "--find")
    assert out["place"] == "u=[1,1,1]"


def test_jac_structure():
    out = js("jac", "structure", "--spec", SIX, "--n", "2")
    assert out["invariant_factors"] == [6] and out["n_rank"] == 1


def test_cover_commands(tmp_path):
    out = js("cover", "build", "--spec", "pline p=3 k=1", "--h", "1", "--lpoly")
    assert out["hurwitz_genus"] == 1 and out["l_polynomial"] == [1, 0, 3]
    path = tmp_path / "cover.json"
    path.write_text(json.dumps(out))
    again = js("cover", "verify", "--input", str(path))
    assert again["cover"] == out["cover"]
    tw = js("cover", "twist", "--spec", SIX, "--h", "4")
    assert tw["points"] >= tw["base_points"]
    nr = js("cover", "nrank", "--spec", SIX, "--n", "2", "--divisibility")
    assert nr["hurwitz_genus"] < nr["bound_7ng"] and nr["divides"]
    sp = js("cover", "split", "--spec", "pline p=5 k=1", "--h", "2")
    assert sp["points"] == 12


def test_domain_error_exit_code():
    code, out = call("cover", "split", "--spec", "pline p=3 k=1", "--h", "1")
    assert code == 2 and json.loads(out)["error"] == "NoSplittingPair"
    code, out = call("curve", "info", "--spec", "hyperelliptic p=3 k=1 f=[0,0,1,1] h=[]")
    assert code == 2 and json.loads(out)["error"] == "SingularModel"


def test_parse_error_exit_code():
    assert call("curve", "info", "--spec", "nonsense")[0] == 1
    assert call("curve", "frobnicate")[0] == 1
    assert call("bounds", "formula", "--which", "thm12")[0] == 1


def test_bounds_commands():
    assert js("bounds", "gs", "--ell", "2", "--q", "5", "--r", "5", "--s", "2")["satisfied"] is False
    assert js("bounds", "formula", "--which", "thm12", "--q", "4")["value"] == "2/5"
    c = js("bounds", "formula", "--which", "cor62", "--q", "9")
    assert c["certified_gt_1.226"] and c["certified_lt_1.227"]
    assert js("bounds", "formula", "--which", "crossover", "--j", "0")["first_failure"] == 211
    m = js("bounds", "formula", "--which", "modular", "--ell", "11", "--p", "5")
    assert m["genus"]["value"] == "1" and m["supersingular"]["value"] == "4"
    s = js("bounds", "serre", "--q", str(3**38))
    assert s["r"] == 20 and s["S"] == 80
    rows = js("bounds", "table", "--q", "3", "--gmax", "5", "--golden", GOLDEN)
    assert rows[1]["lower_bound"] == 7 and rows[4]["lower_bound"] == 7


def test_formats():
    code, out = call("--format", "csv", "bounds", "table", "--q", "2", "--gmax", "3")
    assert code == 0 and out.splitlines()[0] == "q,g,lower_bound,source,citation"
    code, out = call("--format", "text", "curve", "count", "--spec", SIX)
    assert "count: 6" in out.splitlines()


def test_oracle_commands():
    assert js("oracle", "nq", "--q", "2", "--g", "1")["nq"] == 5
    assert js("oracle", "golden", "--check", GOLDEN)["identical"] is True


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "curvecover", "curve", "count", "--spec", SIX],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["count"] == 6
