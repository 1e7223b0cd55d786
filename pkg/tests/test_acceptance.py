"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact.  Run alone with ``pytest tests/test_acceptance.py -v``
or as a script: ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import group_string, integral_cohomology  # noqa: E402

from diffmv.cohomology import cohomology_group, verify_diagram2  # noqa: E402
from diffmv.diffcoh import delta2, verify_diagram1  # noqa: E402
from diffmv.gluing import (  # noqa: E402
    coherent_pair,
    glue,
    j_o_group,
    obstruction_group,
    omega,
    verify_lemmas,
)
from diffmv.scene import BUNDLED, parse_scene  # noqa: E402
from diffmv.simplicial import CoeffRing  # noqa: E402

Z = CoeffRing.INT
_SCENES = {}
LINES = []  # shown in the terminal summary by conftest


def scene(name):
    if name not in _SCENES:
        _SCENES[name] = parse_scene(name)
    return _SCENES[name]


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f"  ({detail})"
    LINES.append(line)
    print(line)
    return ok


def test_criterion_1_golden_groups():
    cases = [("circle", 1, "Z"), ("sphere", 2, "Z"), ("rp2", 2, "Z/2"), ("torus", 1, "Z^2")]
    results = []
    for name, k, expected in cases:
        s = scene(name)
        t0 = time.perf_counter()
        got = str(cohomology_group(s.model(), k, Z))
        elapsed = time.perf_counter() - t0
        oracle = group_string(*integral_cohomology(s.raw["complex"], k))
        results.append((name, k, got, oracle, expected, elapsed))
    ok = all(g == o == e and t < 1.0 for _, _, g, o, e, t in results)
    detail = "; ".join(f"H^{k}({n})={g} oracle={o} {t:.3f}s" for n, k, g, o, _, t in results)
    assert report(1, "golden groups match the SNF oracle, each < 1 s", ok, detail)


def test_criterion_2_diagram1():
    failures = []
    for name in BUNDLED:
        s = scene(name)
        for k in (1, 2, 3):
            rep = verify_diagram1(s.X, k, s.coeffs, samples=100, seed=k)
            if not rep.passed:
                failures.append(f"{name} k={k}: {[c.name for c in rep.failures]}")
    c = scene("circle")
    flip = verify_diagram1(c.X, 1, c.coeffs, samples=100, fault="flip_sign")
    drop = verify_diagram1(c.X, 1, c.coeffs, samples=100, fault="drop_rho")
    faults_ok = not flip.passed and not drop.passed
    ok = not failures and faults_ok
    detail = f"{len(BUNDLED) * 3} runs x 100 samples; sign flip detected={not flip.passed}, dropped ρ(b) detected={not drop.passed}"
    if failures:
        detail += "; failing: " + "; ".join(failures)
    assert report(2, "Diagram 1 suite on all scenes, k=1..3, with fault controls", ok, detail)


def test_criterion_3_diagram2():
    failures = []
    signs = {}
    for name in BUNDLED:
        s = scene(name)
        for k in (1, 2, 3):
            rep = verify_diagram2(s.dec, k, s.coeffs)
            if not rep.passed:
                failures.append(f"{name} k={k}: {[c.name for c in rep.failures]}")
            signs[(name, k)] = rep.facts["signs"]
    recorded = all(set(v.values()) <= {1, -1} and len(v) == 6 for v in signs.values())
    ok = not failures and recorded
    assert report(3, "MV rows exact and squares commute up to recorded signs", ok, "; ".join(failures) or "18 runs")


def test_criterion_4_obstruction_groups():
    cases = [("circle", 1, (), 1), ("sphere", 2, (), 1), ("rp2", 2, (2,), 0)]
    got = []
    for name, k, tor, rank in cases:
        s = scene(name)
        W = obstruction_group(s.dec, k, s.coeffs)
        got.append((name, str(W), tuple(W.invariant_factors) == tor and W.free_rank == rank))
    ok = all(g for _, _, g in got)
    assert report(4, "obstruction groups W", ok, "; ".join(f"W({n})={w}" for n, w, _ in got))


def test_criterion_5_theorem_property():
    lines = []
    ok = True
    for name in BUNDLED:
        s = scene(name)
        t0 = time.perf_counter()
        glued = 0
        for k in (1, 2):
            rng = random.Random(1000 + k)
            for _ in range(100):
                fA, fB = coherent_pair(s.dec, k, s.coeffs, rng)
                _, cert = glue(fA, fB, s.dec, rng=rng)
                glued += cert.restricts_to_A is True and cert.restricts_to_B is True
        elapsed = time.perf_counter() - t0
        ok &= glued == 200 and elapsed < 60
        lines.append(f"{name} {glued}/200 {elapsed:.1f}s")
    assert report(5, "100 coherent pairs per scene and k=1,2 glue exactly, < 60 s per scene", ok, "; ".join(lines))


def test_criterion_6_lemmas():
    failures = []
    for name in BUNDLED:
        s = scene(name)
        for k in (1, 2, 3):
            rep = verify_lemmas(s.dec, k, s.coeffs, samples=20, seed=k)
            if not rep.passed:
                failures.append(f"{name} k={k}: {[c.name for c in rep.failures]}")
    s = scene("rp2")
    rep = verify_lemmas(s.dec, 2, s.coeffs)
    card = rep.facts["lemma 6 cardinalities"]
    bijection = rep.check("lemma 6: Ω is injective on torsion").passed and card == [2, 2]
    t = scene("circle-torsion")
    lemma2 = all(
        verify_lemmas(t.dec, k, t.coeffs).check("lemma 2: ker(φ) = tor(W)").passed for k in (1, 2, 3)
    )
    ok = not failures and bijection and lemma2
    detail = f"rp2 Lemma 6 cardinalities={card}, circle-torsion Lemma 2={lemma2}"
    if failures:
        detail += "; failing: " + "; ".join(failures)
    assert report(6, "lemma suite on all scenes", ok, detail)


def test_criterion_7_omega_invariance():
    lines = []
    ok = True
    for name in BUNDLED:
        s = scene(name)
        rng = random.Random(7)
        same = 0
        for i in range(50):
            k = 1 + i % 2
            jo = j_o_group(s.dec, k, s.coeffs)
            W = obstruction_group(s.dec, k, s.coeffs)
            v = jo.element([rng.randint(-9, 9) for _ in jo.generators()])
            values = {omega(v, W, rng=random.Random(seed)).coords for seed in range(5)}
            values.add(omega(v, W).coords)
            same += len(values) == 1
        ok &= same == 50
        lines.append(f"{name} {same}/50")
    assert report(7, "Ω independent of solver seeds on 50 random v per scene", ok, "; ".join(lines))


def test_criterion_8_winding():
    c = scene("circle")
    f, cert = glue(c.classes["jumpA"][1], c.classes["zeroB"][1], c.dec)
    g1 = cohomology_group(c.model(), 1, Z).generators()[0]
    circle_ok = cert.verified and delta2(f) in (g1, -g1)
    s = scene("sphere")
    f2, cert2 = glue(s.classes["monopoleA"][1], s.classes["monopoleB"][1], s.dec)
    monopole = delta2(s.classes["monopole"][1])
    g2 = cohomology_group(s.model(), 2, Z).generators()[0]
    sphere_ok = cert2.verified and delta2(f2) == monopole and monopole in (g2, -g2)
    detail = f"circle δ2(f)={delta2(f).coords}, sphere δ2(f)={delta2(f2).coords} (monopole class {monopole.coords})"
    assert report(8, "winding checks on circle and sphere", circle_ok and sphere_ok, detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
