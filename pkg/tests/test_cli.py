import io
import json
import shutil
from importlib import resources

import jsonschema
import pytest

from curvekit.cli import run

SCHEMA = json.loads(resources.files("curvekit").joinpath("schema/report.schema.json").read_text())
DATA = resources.files("curvekit").joinpath("data")


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call("--json", *argv)
    report = json.loads(text)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_analyze_fermat():
    code, rep = call_json("analyze", "fermat-cubic.curve")
    assert code == 0
    r = rep["result"]
    assert (r["degree"], r["smooth"], r["genus"], r["class"], r["flexes"]) == (3, True, 1, 6, 9)


def test_plucker_quartic():
    code, text = call("plucker", "--n", "4", "--d", "0", "--k", "0", "--json")
    rep = json.loads(text)
    jsonschema.validate(rep, SCHEMA)
    assert code == 0
    r = rep["result"]
    assert (r["nu"], r["rho"], r["delta"], r["p"]) == (12, 24, 28, 3)


def test_space_bound():
    code, text = call("space", "bound", "--n", "6")
    assert code == 0 and text.strip() == "castelnuovo_bound: 4"
    _, rep = call_json("space", "bound", "--n", "6")
    assert rep["result"] == {"castelnuovo_bound": 4}


@pytest.mark.parametrize("argv", [
    ["--json", "--seed", "3", "space", "bound", "--n", "6"],
    ["space", "bound", "--n", "6", "--json", "--seed", "3"],
    ["space", "--json", "bound", "--seed", "3", "--n", "6"],
])
def test_flag_positions(argv):
    code, text = call(*argv)
    rep = json.loads(text)
    assert code == 0 and rep["seed"] == 3 and rep["result"]["castelnuovo_bound"] == 4


def test_domain_error_exit_1():
    code, rep = call_json("plucker", "--n", "3", "--d", "2")
    assert code == 1 and rep["status"] == "error"
    assert rep["error"]["type"] == "Inconsistent"
    code, rep = call_json("flexes", "tacnodal-quartic.curve")
    assert code == 1 and rep["error"]["type"] == "UnsupportedSingularity"
    code, text = call("flexes", "tacnodal-quartic.curve")
    assert code == 1 and text.startswith("error: UnsupportedSingularity")


@pytest.mark.parametrize("argv", [
    ["no-such-command"],
    ["analyze", "/nonexistent/curve.curve"],
    ["--precision", "1", "space", "bound", "--n", "6"],
    ["space", "bound"],
])
def test_usage_errors(argv):
    code, text = call(*argv)
    assert code == 2 and text == ""


def test_bad_polynomial(tmp_path):
    f = tmp_path / "bad.curve"
    f.write_text("curve: x^2 + * y\n")
    assert call("analyze", str(f))[0] == 2


def test_curve_file_format(tmp_path):
    # affine input is homogenized with z
    f = tmp_path / "aff.curve"
    f.write_text("# unit circle\ncurve: x^2 + y^2 - 1\n")
    code, rep = call_json("genus", str(f))
    assert code == 0 and rep["result"]["p"] == 0


def test_intersect_report():
    code, rep = call_json("intersect", "fermat-cubic.curve", "nodal-cubic.curve")
    assert code == 0
    r = rep["result"]
    assert r["bezout"] == 9
    assert sum(p["local_multiplicity"] * p["orbit_size"] for p in r["points"]) == 9


def test_deterministic_and_precision():
    a = call("--json", "flexes", "fermat-cubic.curve")[1]
    b = call("--json", "flexes", "fermat-cubic.curve")[1]
    assert a == b
    lo = call("--json", "--precision", "20", "flexes", "fermat-cubic.curve")[1]
    hi = call("--json", "--precision", "200", "flexes", "fermat-cubic.curve")[1]
    digits = lambda t: max(len(s) for s in json.loads(t)["result"]["flexes"][-1]["numeric"][0])
    assert digits(hi) > digits(lo)


def test_schema_rejects_floats():
    bad = {"command": [], "seed": 0, "precision": 53, "status": "ok", "result": {"x": 1.5}}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, SCHEMA)


# corpus


def _corpus_copy(tmp_path, keep, **overrides):
    base = tmp_path / "corpus"
    shutil.copytree(str(DATA), base)
    manifest = json.loads((base / "corpus.json").read_text())
    manifest["curves"] = [dict(c, **overrides) for c in manifest["curves"] if c["name"] in keep]
    manifest["complete_intersections"] = []
    manifest["rational_space_curves"] = []
    (base / "corpus.json").write_text(json.dumps(manifest))
    return base


def test_corpus_small_copy_passes(tmp_path):
    base = _corpus_copy(tmp_path, {"fermat-cubic"})
    code, text = call("corpus-verify", str(base))
    assert code == 0 and "FAIL" not in text


def test_corpus_wrong_genus_named(tmp_path):
    base = _corpus_copy(tmp_path, {"fermat-cubic"}, genus=2)
    code, text = call("corpus-verify", str(base))
    assert code == 1
    fails = [line for line in text.splitlines() if line.startswith("FAIL")]
    assert fails and all("fermat-cubic" in line and "genus" in line for line in fails)
    code, rep = call_json("corpus-verify", str(base))
    assert code == 1 and rep["result"]["failed"] >= 1


def test_corpus_missing_curve_file_is_named_failure(tmp_path):
    base = _corpus_copy(tmp_path, {"fermat-cubic"})
    (base / "fermat-cubic.curve").unlink()
    code, text = call("corpus-verify", str(base))
    assert code == 1 and "fermat-cubic" in text


@pytest.mark.parametrize("kind", ["empty-path", "missing", "empty-manifest", "bad-json"])
def test_corpus_usage_errors(tmp_path, kind):
    if kind == "empty-path":
        path = ""
    elif kind == "missing":
        path = str(tmp_path / "nowhere")
    else:
        (tmp_path / "corpus.json").write_text("{}" if kind == "empty-manifest" else "{not json")
        path = str(tmp_path)
    assert call("corpus-verify", path)[0] == 2
