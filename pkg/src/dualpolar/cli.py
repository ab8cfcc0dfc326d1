"""dualpolar: build dual polar graphs and check their spectral identities exactly.

    dualpolar build    --family C --d 2 --r 2 --out c22.json
    dualpolar spectrum --family C --d 2 --r 2
    dualpolar frame    --family C --d 3 --r 2 --j 1
    dualpolar norton   --family D --d 3 --r 2
    dualpolar verify   --all
    dualpolar export   --family C --d 2 --r 2 --format dot

Exit codes: 0 ok, 1 a check failed, 2 invalid spec, 3 over the |X| budget
(default 1000, override with DUALPOLAR_BUDGET).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import frames, norton, verify
from .forms import BadParameters, make_space
from .lattice import PolarLattice
from .scheme import intersection_numbers, to_dot
from .verify import BudgetExceeded, Instance, InstanceSpec, jsonable

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3

FAMILY_ALIASES = {
    "C": "C",
    "B": "B",
    "D": "D",
    "2D": "2D",
    "2A-odd": "2A_odd",
    "2A_odd": "2A_odd",
    "2A-even": "2A_even",
    "2A_even": "2A_even",
}


class InvalidSpec(Exception):
    pass


def _spec(args) -> InstanceSpec:
    if args.lattice:
        doc = json.loads(Path(args.lattice).read_text())
        lat_doc = doc.get("lattice", doc)
        return InstanceSpec(lat_doc["family"], lat_doc["d"], lat_doc["r"])
    if args.family is None or args.d is None or args.r is None:
        raise InvalidSpec("--family, --d and --r are required (or --lattice)")
    tag = FAMILY_ALIASES.get(args.family)
    if tag is None:
        raise InvalidSpec(f"unknown family {args.family!r}")
    return InstanceSpec(tag, args.d, args.r)


def _instance(args) -> Instance:
    spec = _spec(args)
    try:
        make_space(spec.family, spec.d, spec.r)
    except BadParameters as exc:
        raise InvalidSpec(str(exc)) from exc
    spec.check_budget()
    if args.lattice:
        doc = json.loads(Path(args.lattice).read_text())
        return Instance(spec, PolarLattice.from_json(doc.get("lattice", doc)))
    return Instance(spec)


def _emit(doc, out: str | None) -> None:
    text = json.dumps(jsonable(doc), indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    inst = _instance(args)
    g = inst.graph
    doc = {
        "params": inst.spec.params(),
        "lattice": inst.lattice.to_json(),
        "graph": {"vertices": len(g), "edges": [list(e) for e in g.edges()]},
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    inst = _instance(args)
    dec = inst.decomp
    dec.theta = inst.table.theta
    dec.lam = inst.lambdas
    doc = {"params": inst.spec.params(), **dec.to_json(), "lambda1": inst.lambdas[1]}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_frame(args) -> int:
    inst = _instance(args)
    d = inst.spec.d
    if not 0 <= args.j <= d:
        raise InvalidSpec(f"--j must lie in 0..{d}")
    lam = inst.lambdas[args.j]
    info = frames.verify_tight_frame(args.j, inst.lattice, inst.decomp, lam)
    doc = {"params": inst.spec.params(), "j": args.j, "lambda": lam,
           "dim": info["dim"], "vectors": info["vectors"]}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_norton(args) -> int:
    inst = _instance(args)
    try:
        rep = norton.verify_norton(inst.lattice, inst.decomp, seed=verify.SEED)
        rep["commutative_bilinear"] = norton.commutativity_bilinearity(inst.decomp, inst.lattice, seed=verify.SEED)
        status = EXIT_OK if rep["commutative_bilinear"] else EXIT_FAILED
    except AssertionError as exc:
        rep, status = {"witness": str(exc)}, EXIT_FAILED
    _emit({"params": inst.spec.params(), "ok": status == EXIT_OK, **rep}, args.out)
    return status


def cmd_verify(args) -> int:
    if args.all:
        specs = [InstanceSpec(*t) for t in verify.DEFAULT_MATRIX]
        for s in specs:
            s.check_budget()
        instances = [Instance(s) for s in specs]
    else:
        instances = [_instance(args)]
    reports = []
    for inst in instances:
        rep = verify.verify_instance(inst, args.check or None)
        if not args.quiet:
            print(f"# {inst.spec.name}", file=sys.stderr)
            for c in rep.checks:
                print(c.line(), file=sys.stderr)
        reports.append(rep)
    ok = all(r.ok for r in reports)
    timings = not args.no_timings
    doc = {"ok": ok, "reports": [r.to_json(timings) for r in reports]}
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_export(args) -> int:
    inst = _instance(args)
    if args.format == "dot":
        text = to_dot(inst.graph, inst.spec.name)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if args.table == "pij":
            w.writerow(["i", "j", "h", "p"])
            w.writerows(intersection_numbers(inst.graph).rows())
        else:
            d = inst.spec.d
            w.writerow(["i"] + [f"j={j}" for j in range(d + 1)])
            for i, row in enumerate(inst.table.p):
                w.writerow([i] + [str(x) for x in row])
        text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualpolar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def instance_args(sp, out_help="write JSON here instead of stdout"):
        sp.add_argument("--family", help="C | B | D | 2D | 2A-odd | 2A-even")
        sp.add_argument("--d", type=int, help="diameter (Witt index)")
        sp.add_argument("--r", type=int, help="field order; q = r^2 for the 2A families")
        sp.add_argument("--lattice", help="reuse a lattice JSON written by build")
        sp.add_argument("--out", help=out_help)

    sp = sub.add_parser("build", help="enumerate the lattice and the graph")
    instance_args(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("spectrum", help="eigenvalues, multiplicities, frame constants")
    instance_args(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("frame", help="tight frame on the j-th eigenspace")
    instance_args(sp)
    sp.add_argument("--j", type=int, default=1)
    sp.set_defaults(func=cmd_frame)

    sp = sub.add_parser("norton", help="Norton product report on V_1")
    instance_args(sp)
    sp.set_defaults(func=cmd_norton)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    instance_args(sp)
    sp.add_argument("--all", action="store_true", help="the whole default matrix")
    sp.add_argument("--check", type=int, action="append", choices=range(1, len(verify.CHECKS) + 1),
                    help="run only this check (repeatable)")
    sp.add_argument("--quiet", action="store_true")
    sp.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable output")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="DOT graph or CSV tables")
    instance_args(sp, "write here instead of stdout")
    sp.add_argument("--format", choices=["dot", "csv"], required=True)
    sp.add_argument("--table", choices=["pij", "eigen"], default="pij")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidSpec, BadParameters) as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
