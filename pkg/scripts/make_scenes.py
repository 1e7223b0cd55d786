"""Regenerate the bundled scene files under src/diffmv/scenes/."""

import json
import re
import pathlib
from fractions import Fraction

from diffmv.exactalg import IntegerSolver
from diffmv.diffcoh import diff_make, exact_primitive, restrict_class
from diffmv.scene import class_to_json
from diffmv.simplicial import CoeffRing, Cochain, GradedCoefficients, model, validate_decomposition

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "diffmv" / "scenes"
Z = [{"degree": 0, "rank": 1, "torsion": []}]


def lists(simplices):
    return [list(s) for s in simplices]


def torus():
    tris = set()
    for i in range(7):
        tris.add(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        tris.add(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    A = [(0, 1, 3), (0, 1, 5), (0, 2, 3), (0, 2, 6), (0, 4, 5), (1, 2, 6), (1, 5, 6)]
    B = sorted(tris - set(A))
    return sorted(tris), A, B


def rp2():
    # minimal 6-vertex triangulation; B is the star of vertex 0 (a disk), A the Möbius band
    tris = [(0, 1, 3), (0, 1, 5), (0, 2, 4), (0, 2, 5), (0, 3, 4),
            (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 5), (3, 4, 5)]
    B = [t for t in tris if 0 in t]
    A = [t for t in tris if 0 not in t]
    return tris, A, B


def sphere_classes(raw):
    X = [tuple(s) for s in raw["complex"]]
    dec = validate_decomposition(X, [tuple(s) for s in raw["decomposition"]["A"]],
                                 [tuple(s) for s in raw["decomposition"]["B"]])
    coeffs = GradedCoefficients.integers()
    m = model(dec.X, coeffs)
    c = Cochain(m, 2, [int(b[0] == (0, 1, 2)) for b in m.basis(2)])
    # spread the unit flux evenly: ω = ±1/4 on every triangle, pairing to 1 with c
    boundary = m.coboundary(1)
    # fundamental cycle: kernel of the transposed coboundary, normalized at (0,1,2)
    ker = IntegerSolver(boundary.T).kernel_basis[0]
    z = dict(zip((b[0] for b in m.basis(2)), ker))
    scale = z[(0, 1, 2)]
    omega = Cochain(m, 2, [Fraction(z[b[0]] * scale, 4) for b in m.basis(2)], CoeffRing.RAT)
    h = exact_primitive(omega - c.as_ring(CoeffRing.RAT))
    f = diff_make(c, h)
    return {
        "monopole": class_to_json(f, "X"),
        "monopoleA": class_to_json(restrict_class(f, dec.A), "A"),
        "monopoleB": class_to_json(restrict_class(f, dec.B), "B"),
    }


def scenes():
    out = {}
    out["point"] = {"name": "point", "complex": [[0]], "decomposition": {"A": [[0]], "B": [[0]]},
                    "coefficients": Z, "classes": {}}
    out["circle"] = {
        "name": "circle",
        "complex": [[0, 1], [1, 2], [0, 2]],
        "decomposition": {"A": [[0, 1], [1, 2]], "B": [[0, 2]]},
        "coefficients": Z,
        "classes": {
            "jumpA": {"space": "A", "degree": 1, "integer": {}, "rational": {"0": ["1"]}},
            "zeroB": {"space": "B", "degree": 1, "integer": {}, "rational": {}},
        },
    }
    sph = {
        "name": "sphere",
        "complex": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
        "decomposition": {"A": [[0, 1, 2], [0, 1, 3]], "B": [[0, 2, 3], [1, 2, 3]]},
        "coefficients": Z,
    }
    sph["classes"] = sphere_classes(sph)
    out["sphere"] = sph
    X, A, B = rp2()
    out["rp2"] = {"name": "rp2", "complex": lists(X), "decomposition": {"A": lists(A), "B": lists(B)},
                  "coefficients": Z, "classes": {}}
    X, A, B = torus()
    out["torus"] = {"name": "torus", "complex": lists(X), "decomposition": {"A": lists(A), "B": lists(B)},
                    "coefficients": Z, "classes": {}}
    out["circle-torsion"] = {
        "name": "circle-torsion",
        "complex": [[0, 1], [1, 2], [0, 2]],
        "decomposition": {"A": [[0, 1], [1, 2]], "B": [[0, 2]]},
        "coefficients": [{"degree": 0, "rank": 1, "torsion": [2]}],
        "classes": {},
    }
    return out


def dumps(raw):
    """Indented JSON with innermost lists kept on one line."""
    text = json.dumps(raw, indent=2, ensure_ascii=False)
    return re.sub(r"\[[^\[\]{}]*\]", lambda m: json.dumps(json.loads(m.group(0))), text)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, raw in scenes().items():
        (OUT / f"{name}.json").write_text(dumps(raw) + "\n", encoding="utf-8")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
