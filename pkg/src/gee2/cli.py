"""Command-line front end: ``gee2 <subcommand> ...``.

Reports are JSON with a ``schema`` field.  Exit status: 0 on success,
1 on a domain or I/O error (an error object is printed), 2 on bad usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import generators as gen
from .classify import classify
from .complex import fhg_vectors, g3_consistency, read_facets, write_facets
from .enumeration import enumerate_small, parse_constraints
from .errors import Gee2Error
from .moves import MoveKind, apply_move
from .rigidity import rigidity_report
from .verify import Field, betti, is_homology_manifold, is_homology_sphere, normality

SCHEMA = 1


def _emit(obj: dict, out=None) -> None:
    obj = {"schema": SCHEMA, **obj}
    text = json.dumps(obj, indent=2, sort_keys=True)
    (out or sys.stdout).write(text + "\n")


def _write_complex(k, path: Optional[str], header: Optional[str] = None) -> None:
    if path is None or path == "-":
        sys.stdout.write(k.to_text())
    else:
        write_facets(k, path, header)


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def cmd_gen(args) -> int:
    name = args.name
    if name == "boundary-sphere":
        k = gen.boundary_sphere(args.d)
    elif name == "stacked":
        k = gen.stacked_sphere(args.d, args.count, args.seed)
    elif name == "join":
        k = gen.join_spheres(_ints(args.dims))
    elif name == "cross-polytope":
        k = gen.cross_polytope(args.d)
    elif name == "cyclic":
        k = gen.cyclic_sphere(args.n, args.d)
    elif name == "rp2-6":
        k = gen.rp2_6()
    elif name == "rp2-7":
        k = gen.rp2_7()
    elif name == "tower":
        if args.steps:
            base = gen.rp2_7() if args.base == "rp2-7" else gen.rp2_6()
            k, _ = gen.suspension_tower(base, _ints(args.steps))
        else:
            k = gen.rp2_tower(args.height, seven=args.base == "rp2-7")
    else:  # argparse restricts choices
        raise AssertionError(name)
    _write_complex(k, args.output, f"{name} f={list(k.f_vector[1:])} g2={k.g2}")
    return 0


def cmd_info(args) -> int:
    k = read_facets(args.file)
    v = fhg_vectors(k)
    _emit({
        "dim": k.dim,
        "pure": k.is_pure,
        "f": list(v.f[1:]),
        "h": list(v.h),
        "g": list(v.g),
        "g2": k.g2,
        "g3_check": g3_consistency(k),
        "prime": k.is_prime,
    })
    return 0


def cmd_verify(args) -> int:
    k = read_facets(args.file)
    rep = normality(k)
    _emit({
        **{key: val for key, val in rep.as_dict().items() if key != "is_normal"},
        "normal": rep.is_normal,
        "homology_manifold_gf2": is_homology_manifold(k, Field.GF2),
        "homology_manifold_q": is_homology_manifold(k, Field.Q),
        "homology_sphere_gf2": is_homology_sphere(k, Field.GF2),
        "homology_sphere_q": is_homology_sphere(k, Field.Q),
        "betti_gf2": list(betti(k, Field.GF2).reduced_betti),
        "betti_q": list(betti(k, Field.Q).reduced_betti),
    })
    return 0


def cmd_move(args) -> int:
    k = read_facets(args.file)
    params = json.loads(args.params)
    out, rec = apply_move(k, MoveKind(args.op), params)
    _write_complex(out, args.output)
    if args.output and args.output != "-":
        record_path = args.record or args.output + ".move.json"
        with open(record_path, "w", encoding="utf-8") as fh:
            _emit({"move": rec.to_json()}, fh)
    else:
        _emit({"move": rec.to_json()}, sys.stderr)
    return 0


def cmd_g2(args) -> int:
    k = read_facets(args.file)
    if args.method == "combinatorial":
        _emit({"method": "combinatorial", "g2": k.g2})
        return 0
    rep = rigidity_report(k, args.seed, args.trials)
    _emit({"method": "rigidity", "seed": args.seed, "trials": args.trials, "g2": rep.corank, **rep.as_dict()})
    return 0


def cmd_classify(args) -> int:
    k = read_facets(args.file)
    cert = classify(k)
    if args.base_out:
        write_facets(cert.base, args.base_out, f"base for {cert.verdict.value}")
    _emit({"certificate": cert.to_json()})
    return 0


def cmd_enumerate(args) -> int:
    cons = parse_constraints(args.filter) if args.filter else None
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, k in enumerate(enumerate_small(args.d, args.max_n, cons, order=args.order)):
        name = f"d{args.d}_n{k.f0}_{i:04d}.cplx"
        write_facets(k, outdir / name)
        entries.append({"file": name, "f": list(k.f_vector[1:]), "g2": k.g2, "prime": k.is_prime})
    with open(outdir / "manifest.json", "w", encoding="utf-8") as fh:
        _emit({"d": args.d, "max_n": args.max_n, "filter": args.filter or "", "order": args.order,
               "count": len(entries), "complexes": entries}, fh)
    _emit({"count": len(entries), "directory": str(outdir)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gee2", description="Simplicial complexes with small g2.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a named complex")
    g.add_argument("name", choices=["boundary-sphere", "stacked", "join", "cross-polytope", "cyclic",
                                    "rp2-6", "rp2-7", "tower"])
    g.add_argument("--d", type=int, default=3)
    g.add_argument("--n", type=int, default=7)
    g.add_argument("--dims", default="1,2,2", help="comma-separated simplex dimensions")
    g.add_argument("--count", type=int, default=0, help="facet subdivisions for 'stacked'")
    g.add_argument("--base", choices=["rp2-6", "rp2-7"], default="rp2-6")
    g.add_argument("--height", type=int, default=3)
    g.add_argument("--steps", default="", help="explicit suspension vertices for 'tower'")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_gen)

    i = sub.add_parser("info", help="f-, h-, g-vectors")
    i.add_argument("file")
    i.set_defaults(func=cmd_info)

    v = sub.add_parser("verify", help="normality and homology checks")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("move", help="apply a move")
    m.add_argument("file")
    m.add_argument("--op", required=True, choices=[k.value for k in MoveKind])
    m.add_argument("--params", required=True, help="JSON object of move parameters")
    m.add_argument("-o", "--output", default=None)
    m.add_argument("--record", default=None, help="where to write the move record")
    m.set_defaults(func=cmd_move)

    r = sub.add_parser("g2", help="g2 combinatorially or by rigidity")
    r.add_argument("file")
    r.add_argument("--method", choices=["combinatorial", "rigidity"], default="combinatorial")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trials", type=int, default=3)
    r.set_defaults(func=cmd_g2)

    c = sub.add_parser("classify", help="certificate for g2 <= 3")
    c.add_argument("file")
    c.add_argument("--base-out", default=None)
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("enumerate", help="exhaustive small enumeration")
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--max-n", type=int, required=True)
    e.add_argument("--filter", default="")
    e.add_argument("--order", choices=["smallest", "largest"], default="smallest")
    e.add_argument("-o", "--output", default="enumeration")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Gee2Error as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1
    except (OSError, ValueError, json.JSONDecodeError, TypeError) as exc:
        kind = "Io" if isinstance(exc, OSError) else "BadInput"
        _emit({"error": kind, "message": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
