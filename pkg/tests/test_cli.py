import io
import json
import random

import pytest

from diffmv.cli import run
from diffmv.diffcoh import diff_equal
from diffmv.gluing import glue
from diffmv.scene import SceneError, parse_scene, scene_digest, scene_from_dict


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_cohomology_of_circle():
    assert call("cohomology", "--scene", "circle.json", "--degree", "1", "--ring", "int") == (0, "Z\n")


@pytest.mark.parametrize(
    "scene,k,ring,expected",
    [("rp2", 2, "int", "Z/2"), ("rp2", 1, "ratmod", "Z/2"), ("torus", 1, "rat", "Q^2"), ("sphere", 1, "int", "0")],
)
def test_cohomology_command(scene, k, ring, expected):
    code, out = call("cohomology", "--scene", scene, "--degree", str(k), "--ring", ring)
    assert code == 0 and out.strip() == expected


def test_glue_circle_certificate(tmp_path):
    path = tmp_path / "glued.json"
    code, out = call(
        "glue", "--scene", "circle.json", "--degree", "1", "--fa", "jumpA", "--fb", "zeroB",
        "--out", str(path), "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    checks = {c["name"]: c["passed"] for c in doc["checks"]}
    assert checks["f|A = f_A"] and checks["f|B = f_B"]
    assert doc["facts"]["delta2(f)"] in ([1], [-1])
    space, g = parse_scene(str(path)).classes["glued"]
    assert space == "X"
    original = parse_scene("circle")
    f, _ = glue(original.classes["jumpA"][1], original.classes["zeroB"][1], original.dec, rng=random.Random(0))
    assert diff_equal(g, f)


def test_verify_lemmas_rp2_reports_lemma6():
    code, out = call("verify-lemmas", "--scene", "rp2.json", "--degree", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["facts"]["lemma 6 cardinalities"] == [2, 2]


def test_reports_are_byte_identical():
    argv = ("verify-diagram1", "--scene", "rp2", "--degree", "2", "--samples", "10", "--seed", "3", "--format", "json")
    assert call(*argv) == call(*argv)


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("DIFFMV_SEED", "17")
    _, out = call("verify-diagram1", "--scene", "circle", "--degree", "1", "--samples", "5", "--format", "json")
    assert json.loads(out)["seed"] == 17
    _, out = call("verify-diagram1", "--scene", "circle", "--degree", "1", "--samples", "5", "--seed", "2", "--format", "json")
    assert json.loads(out)["seed"] == 2


def test_timing_only_when_requested():
    _, out = call("obstruction", "--scene", "circle", "--degree", "1", "--format", "json")
    assert "timing_s" not in json.loads(out)
    _, out = call("obstruction", "--scene", "circle", "--degree", "1", "--format", "json", "--timing")
    assert "timing_s" in json.loads(out)


def test_fault_flags_exit_one():
    assert call("verify-diagram1", "--scene", "circle", "--degree", "1", "--samples", "10", "--fault", "flip_sign")[0] == 1
    assert call("verify-diagram2", "--scene", "circle", "--degree", "1", "--fault", "flip_delta")[0] == 1


def test_incoherent_pair_exits_one(tmp_path):
    raw = json.loads(json.dumps(parse_scene("circle").raw))
    raw["classes"]["halfA"] = {"space": "A", "degree": 1, "integer": {}, "rational": {"0": ["1/2"]}}
    path = tmp_path / "s.json"
    path.write_text(json.dumps(raw))
    code, out = call("glue", "--scene", str(path), "--degree", "1", "--fa", "halfA", "--fb", "zeroB")
    assert code == 1 and "coherent on D" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("cohomology", "--scene", "no-such-scene", "--degree", "1"),
        ("cohomology", "--scene", "circle", "--degree", "x"),
        ("glue", "--scene", "circle", "--degree", "1", "--fa", "missing", "--fb", "zeroB"),
        ("glue", "--scene", "circle", "--degree", "1", "--fa", "zeroB", "--fb", "jumpA"),
        ("frobnicate",),
    ],
)
def test_input_errors_exit_two(argv):
    assert call(*argv)[0] == 2


def test_scene_cover_error_names_missing_simplex():
    raw = {"complex": [[0, 1], [1, 2], [0, 2]], "decomposition": {"A": [[0, 1]], "B": [[0, 2]]}}
    with pytest.raises(SceneError, match=r"\[1, 2\]"):
        scene_from_dict(raw)


@pytest.mark.parametrize(
    "raw,where",
    [
        ({"complex": [[0, 1]]}, "scene: missing required field 'decomposition'"),
        ({"complex": [[0, 0]], "decomposition": {"A": [], "B": []}}, "complex[0]"),
        ({"complex": [[0]], "decomposition": {"A": [[0]], "B": [[0]]},
          "coefficients": [{"degree": 0, "rank": 1}, {"degree": 0, "rank": 1}]}, "coefficients"),
        ({"complex": [[0, 1]], "decomposition": {"A": [[0, 1]], "B": [[0, 1]]},
          "classes": {"bad": {"degree": 1, "integer": {"0": [1]}}}}, "classes.bad.integer"),
        ({"complex": [[0, 1]], "decomposition": {"A": [[0, 1]], "B": [[0, 1]]},
          "classes": {"bad": {"degree": 0, "integer": {"0": [1]}}}}, "classes.bad.integer"),
        ({"complex": [[0, 1]], "decomposition": {"A": [[0, 1]], "B": [[0, 1]]},
          "classes": {"bad": {"degree": 1, "rational": {"0,5": ["1"]}}}}, "classes.bad.rational"),
    ],
)
def test_scene_errors_are_positional(raw, where):
    with pytest.raises(SceneError) as exc:
        scene_from_dict(raw)
    assert str(exc.value).startswith(where)


def test_malformed_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"complex": [[0, 1]],\n  "decomposition": }')
    with pytest.raises(SceneError, match="line 2"):
        parse_scene(str(p))


def test_bundled_scenes_parse_with_closure():
    s = parse_scene("circle")
    assert s.X.count(0) == 3 and s.X.count(1) == 3
    assert len(scene_digest(s.raw)) == 64
