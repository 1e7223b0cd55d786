"""Scene files: a complex, a two-piece cover, graded coefficients and named classes.

A scene is JSON::

    {
      "name": "circle",
      "complex": [[0, 1], [1, 2], [0, 2]],
      "decomposition": {"A": [[0, 1], [1, 2]], "B": [[0, 2]]},
      "coefficients": [{"degree": 0, "rank": 1, "torsion": []}],
      "classes": {
        "jumpA": {"space": "A", "degree": 1,
                  "integer": {},
                  "rational": {"0": ["1"]}}
      }
    }

Only maximal simplices need to be listed.  A class of degree ``k`` has an
integer part ``c`` (degree ``k``) and a rational part ``h`` (degree ``k-1``);
each maps a simplex key ``"v0,v1,..."`` of dimension ``j`` to a vector over
the coefficient slots of shift ``k-j`` (resp. ``k-1-j``).  Rationals are
strings ``"p/q"``.
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .diffcoh import DiffClass, diff_make
from .simplicial import (
    CoeffRing,
    Cochain,
    DecompositionError,
    GradedCoefficients,
    SimplicialComplex,
    _label_key,
    model,
    validate_decomposition,
)

BUNDLED = ("point", "circle", "sphere", "rp2", "torus", "circle-torsion")


class SceneError(ValueError):
    """Malformed scene; the message names the offending location."""


@dataclass
class Scene:
    name: str
    dec: object
    coeffs: GradedCoefficients
    classes: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def X(self):
        return self.dec.X

    def space(self, name):
        return self.dec.piece(name)

    def model(self, piece="X"):
        return model(self.dec.piece(piece), self.coeffs)

    @property
    def digest(self):
        return scene_digest(self.raw)


def scene_digest(raw):
    text = json.dumps(raw, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode()).hexdigest()


def _label(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SceneError(f"{where}: vertex labels must be integers or strings, got {v!r}")
    return v


def _simplices(items, where):
    if not isinstance(items, list):
        raise SceneError(f"{where}: expected a list of simplices")
    out = []
    for i, s in enumerate(items):
        if not isinstance(s, list) or not s:
            raise SceneError(f"{where}[{i}]: a simplex is a nonempty list of vertex labels")
        labels = [_label(v, f"{where}[{i}]") for v in s]
        if len(set(labels)) != len(labels):
            raise SceneError(f"{where}[{i}]: repeated vertex in {s!r}")
        out.append(tuple(labels))
    return out


def _coefficients(items):
    if items is None:
        return GradedCoefficients.integers()
    if not isinstance(items, list):
        raise SceneError("coefficients: expected a list of {degree, rank, torsion}")
    comps = []
    for i, c in enumerate(items):
        where = f"coefficients[{i}]"
        if not isinstance(c, dict) or "degree" not in c:
            raise SceneError(f"{where}: expected an object with a degree")
        try:
            comps.append((int(c["degree"]), int(c.get("rank", 0)), tuple(int(t) for t in c.get("torsion", []))))
        except (TypeError, ValueError) as exc:
            raise SceneError(f"{where}: {exc}") from exc
    try:
        return GradedCoefficients(comps)
    except ValueError as exc:
        raise SceneError(f"coefficients: {exc}") from exc


def simplex_key(s):
    return ",".join(str(v) for v in s)


def _parse_key(key, complex_, where):
    parts = key.split(",") if key else []
    labels = []
    for p in parts:
        p = p.strip()
        try:
            labels.append(int(p))
        except ValueError:
            labels.append(p)
    s = tuple(sorted(labels, key=_label_key))
    if len(set(s)) != len(s) or s not in complex_:
        raise SceneError(f"{where}: {key!r} is not a simplex of the class's space")
    return s


def _cochain(data, m, degree, ring, where):
    vals = [ring.zero] * m.dim(degree)
    idx = m.index(degree)
    if not isinstance(data, dict):
        raise SceneError(f"{where}: expected a map from simplex keys to vectors")
    for key, vec in data.items():
        s = _parse_key(key, m.complex, f"{where}[{key!r}]")
        slots = m.coeffs.slots_with_shift(degree - (len(s) - 1))
        if not isinstance(vec, list) or len(vec) != len(slots):
            raise SceneError(f"{where}[{key!r}]: expected a vector of length {len(slots)}")
        for slot, x in zip(slots, vec):
            try:
                v = Fraction(x) if ring is CoeffRing.RAT else int(x)
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise SceneError(f"{where}[{key!r}]: bad entry {x!r}") from exc
            if ring is CoeffRing.INT and isinstance(x, str):
                raise SceneError(f"{where}[{key!r}]: integer parts take integers, got {x!r}")
            vals[idx[(s, slot)]] = v
    return Cochain(m, degree, vals, ring)


def cochain_to_json(c):
    out = {}
    m = c.model
    by_simplex = {}
    for (s, slot), v in zip(m.basis(c.degree), c.values):
        by_simplex.setdefault(s, []).append(v)
    for s, vec in by_simplex.items():
        if any(vec):
            if c.ring is CoeffRing.INT:
                out[simplex_key(s)] = [int(v) for v in vec]
            else:
                out[simplex_key(s)] = [str(Fraction(v)) for v in vec]
    return out


def class_to_json(f, space):
    return {
        "space": space,
        "degree": f.degree,
        "integer": cochain_to_json(f.c),
        "rational": cochain_to_json(f.h),
    }


def _class(name, data, dec, coeffs):
    where = f"classes.{name}"
    if not isinstance(data, dict):
        raise SceneError(f"{where}: expected an object")
    space = data.get("space", "X")
    if space not in ("X", "A", "B", "D"):
        raise SceneError(f"{where}.space: must be one of X, A, B, D")
    try:
        k = int(data["degree"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SceneError(f"{where}.degree: an integer degree is required") from exc
    m = model(dec.piece(space), coeffs)
    c = _cochain(data.get("integer", {}), m, k, CoeffRing.INT, f"{where}.integer")
    h = _cochain(data.get("rational", {}), m, k - 1, CoeffRing.RAT, f"{where}.rational")
    if not c.is_cocycle():
        raise SceneError(f"{where}.integer: not a cocycle")
    return space, diff_make(c, h)


def scene_from_dict(raw):
    if not isinstance(raw, dict):
        raise SceneError("scene: expected a JSON object")
    for key in ("complex", "decomposition"):
        if key not in raw:
            raise SceneError(f"scene: missing required field {key!r}")
    X = SimplicialComplex(_simplices(raw["complex"], "complex"))
    decraw = raw["decomposition"]
    if not isinstance(decraw, dict) or "A" not in decraw or "B" not in decraw:
        raise SceneError("decomposition: expected {A: [...], B: [...]}")
    A = _simplices(decraw["A"], "decomposition.A")
    B = _simplices(decraw["B"], "decomposition.B")
    try:
        dec = validate_decomposition(X, A, B)
    except DecompositionError as exc:
        raise SceneError(f"decomposition: {exc}") from exc
    coeffs = _coefficients(raw.get("coefficients"))
    classes = {}
    for name, data in (raw.get("classes") or {}).items():
        classes[name] = _class(name, data, dec, coeffs)
    return Scene(raw.get("name", ""), dec, coeffs, classes, raw)


def parse_scene(path):
    """Load a scene from a path, or a bundled scene by name (``"circle"``)."""
    text = None
    name = str(path)
    bundled = name[:-5] if name.endswith(".json") else name
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        if bundled in BUNDLED:
            text = resources.files("diffmv.scenes").joinpath(f"{bundled}.json").read_text(encoding="utf-8")
        else:
            raise SceneError(f"{name}: no such file or bundled scene") from None
    except OSError as exc:
        raise SceneError(f"{name}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError(f"{name}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return scene_from_dict(raw)


def load_bundled(name):
    return parse_scene(name)


def scene_to_dict(scene, extra_classes=None):
    raw = dict(scene.raw)
    if extra_classes:
        classes = dict(raw.get("classes") or {})
        for cname, (space, f) in extra_classes.items():
            classes[cname] = class_to_json(f, space)
        raw["classes"] = classes
    return raw


def get_class(scene, name):
    try:
        return scene.classes[name]
    except KeyError:
        raise SceneError(f"classes: no class named {name!r} (have {sorted(scene.classes)})") from None


__all__ = [
    "BUNDLED",
    "DiffClass",
    "Scene",
    "SceneError",
    "class_to_json",
    "cochain_to_json",
    "get_class",
    "load_bundled",
    "parse_scene",
    "scene_digest",
    "scene_from_dict",
    "scene_to_dict",
]
