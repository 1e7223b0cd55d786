"""Command-line front end: ``diffmv COMMAND --scene S --degree k ...``.

Exit codes: 0 success, 1 failed verification or incoherent pair, 2 bad input.
``--seed`` defaults to ``$DIFFMV_SEED`` (else 0).  Reports are deterministic
for a fixed scene, flags and seed; wall-clock timing is only included with
``--timing``.
"""

import argparse
import json
import os
import random
import sys
import time

from .cohomology import cohomology_group, verify_diagram2
from .diffcoh import delta1, delta2, diff_equal, verify_diagram1
from .gluing import GluingError, IncoherentPair, glue, j_o_group, obstruction_group, omega_hom, verify_lemmas
from .report import Report, _jsonable
from .scene import SceneError, get_class, parse_scene, scene_from_dict, scene_to_dict
from .simplicial import CoeffRing

RINGS = {"int": CoeffRing.INT, "rat": CoeffRing.RAT, "ratmod": CoeffRing.RATMOD}


class InputError(Exception):
    pass


def _default_seed():
    raw = os.environ.get("DIFFMV_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"DIFFMV_SEED must be an integer, got {raw!r}") from None


def build_parser():
    p = argparse.ArgumentParser(prog="diffmv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--scene", required=True, help="scene file, or a bundled scene name")
        sp.add_argument("--degree", "-k", type=int, required=True)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
        return sp

    sp = common("cohomology", "cohomology group of X")
    sp.add_argument("--ring", choices=sorted(RINGS), default="int")
    sp.add_argument("--space", choices=("X", "A", "B", "D"), default="X")
    sp = common("glue", "glue a coherent pair of named classes")
    sp.add_argument("--fa", required=True, help="name of a class on A")
    sp.add_argument("--fb", required=True, help="name of a class on B")
    sp.add_argument("--out", help="write the scene with the glued class added")
    sp.add_argument("--name", default="glued", help="class name for --out")
    sp.add_argument("--seed", type=int, default=None)
    sp = common("verify-diagram1", "check the hexagon identities by sampling")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--space", choices=("X", "A", "B", "D"), default="X")
    sp.add_argument("--fault", choices=("drop_rho", "flip_sign"), help="inject a fault (negative control)")
    sp = common("verify-diagram2", "check Mayer-Vietoris exactness and the b/ch squares")
    sp.add_argument("--fault", choices=("flip_delta",), help="inject a fault (negative control)")
    sp = common("verify-lemmas", "check the lemma chain behind the surjectivity of Ω")
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=None)
    common("obstruction", "the obstruction group W and the map Ω")
    return p


def _seed(args):
    s = getattr(args, "seed", None)
    return _default_seed() if s is None else s


def _cmd_cohomology(args, scene):
    ring = RINGS[args.ring]
    G = cohomology_group(scene.model(args.space), args.degree, ring)
    rep = Report(f"cohomology H^{args.degree}({args.space}; {args.ring})")
    if ring is CoeffRing.INT:
        group = str(G.group)
    elif ring is CoeffRing.RAT:
        group = "0" if G.dim == 0 else "Q" if G.dim == 1 else f"Q^{G.dim}"
    else:
        d = G.divisible_rank
        parts = ([f"(Q/Z)^{d}" if d > 1 else "Q/Z"] if d else []) + ([str(G.finite_part)] if G.finite_part.order > 1 else [])
        group = " + ".join(parts) or "0"
    rep.facts["group"] = group
    return rep, group


def _cmd_glue(args, scene):
    k = args.degree
    spA, fA = get_class(scene, args.fa)
    spB, fB = get_class(scene, args.fb)
    if spA != "A" or spB != "B":
        raise InputError(f"--fa must name a class on A and --fb one on B (got {spA} and {spB})")
    if fA.degree != k or fB.degree != k:
        raise InputError(f"classes have degrees {fA.degree} and {fB.degree}, expected {k}")
    rep = Report(f"glue k={k}")
    try:
        f, cert = glue(fA, fB, scene.dec, rng=random.Random(_seed(args)))
    except IncoherentPair as exc:
        rep.add("coherent on D", False, str(exc))
        return rep, None
    except GluingError as exc:
        rep.add("gluing algorithm", False, {"error": str(exc), "trace": exc.trace})
        return rep, None
    rep.add("coherent on D", True)
    rep.add("f|A = f_A", cert.restricts_to_A)
    rep.add("f|B = f_B", cert.restricts_to_B)
    t = cert.trace
    rep.facts.update(
        {
            "W": str(obstruction_group(scene.dec, k, scene.coeffs)),
            "delta2(f)": delta2(f).coords,
            "H^k(X;Z)": str(delta2(f).group.group),
            "v": t["v"],
            "w": t["w"],
            "v0": t["v0"],
            "curvature": delta1(f).values,
        }
    )
    if args.out:
        raw = scene_to_dict(scene, {args.name: ("X", f)})
        back = scene_from_dict(raw).classes[args.name][1]
        rep.add("written class re-parses to an equal class", diff_equal(back, f))
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(raw, fh, indent=2, sort_keys=False)
            fh.write("\n")
    return rep, f


def _cmd_diagram1(args, scene):
    return verify_diagram1(scene.space(args.space), args.degree, scene.coeffs, samples=args.samples, seed=_seed(args), fault=args.fault), None


def _cmd_diagram2(args, scene):
    return verify_diagram2(scene.dec, args.degree, scene.coeffs, fault=args.fault), None


def _cmd_lemmas(args, scene):
    return verify_lemmas(scene.dec, args.degree, scene.coeffs, samples=args.samples, seed=_seed(args)), None


def _cmd_obstruction(args, scene):
    k = args.degree
    W = obstruction_group(scene.dec, k, scene.coeffs)
    om = omega_hom(scene.dec, k, scene.coeffs)
    rep = Report(f"obstruction k={k}")
    rep.facts["W"] = str(W)
    rep.facts["invariant factors"] = list(W.invariant_factors)
    rep.facts["free rank"] = W.free_rank
    rep.facts["J^k_o"] = str(j_o_group(scene.dec, k, scene.coeffs).group)
    rep.facts["Omega on J^k_o generators"] = [w.coords for w in om.values]
    rep.add("Ω is surjective", om.hom.is_surjective())
    return rep, None


COMMANDS = {
    "cohomology": _cmd_cohomology,
    "glue": _cmd_glue,
    "verify-diagram1": _cmd_diagram1,
    "verify-diagram2": _cmd_diagram2,
    "verify-lemmas": _cmd_lemmas,
    "obstruction": _cmd_obstruction,
}


def run(argv=None, out=None):
    """Run one command; returns the exit code.  Output goes to ``out`` (stdout)."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        seed = _seed(args)
        scene = parse_scene(args.scene)
        if args.degree < 0:
            raise InputError("--degree must be non-negative")
        t0 = time.perf_counter()
        rep, _ = COMMANDS[args.command](args, scene)
        elapsed = time.perf_counter() - t0
    except (SceneError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {
        "command": args.command,
        "scene": scene.name,
        "scene_digest": scene.digest,
        "degree": args.degree,
        "seed": seed,
        **rep.to_dict(),
    }
    if args.timing:
        doc["timing_s"] = round(elapsed, 6)
    if args.format == "json":
        out.write(json.dumps(_jsonable(doc), indent=2, ensure_ascii=False) + "\n")
    elif args.command == "cohomology":
        out.write(rep.facts["group"] + "\n")
    else:
        out.write(rep.to_text() + "\n")
        if args.timing:
            out.write(f"  time: {elapsed:.3f}s\n")
    return 0 if rep.passed else 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
