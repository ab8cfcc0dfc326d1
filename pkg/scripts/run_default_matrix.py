"""Run every acceptance check on the default matrix and print a table.

    python scripts/run_default_matrix.py [--json out.json]
"""

import argparse
import json
import sys
import time

from dualpolar.verify import CHECKS, DEFAULT_MATRIX, Instance, InstanceSpec, verify_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", help="also write the full reports here")
    args = ap.parse_args()

    reports = []
    header = f"{'instance':12s} {'|X|':>5s} " + " ".join(f"{i:>3d}" for i in range(1, len(CHECKS) + 1)) + "   secs"
    print(header)
    for t in DEFAULT_MATRIX:
        spec = InstanceSpec(*t)
        t0 = time.perf_counter()
        rep = verify_instance(Instance(spec))
        marks = " ".join(f"{c.status[:3]:>3s}" for c in rep.checks)
        print(f"{spec.name:12s} {spec.vertices:5d} {marks} {time.perf_counter() - t0:6.1f}")
        reports.append(rep)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
