#!/usr/bin/env python3
"""Run the exhaustive case-check sweeps behind the connectivity argument
and write a JSON report.

Families:
  seq    geodesic-sum weak-dominance restoration (types A, D, E)
  empty  vanishing of the doubled-root admissible family
  o1/o2/o3/o0/zeta   folded (non-simply-laced) support lemmas

Usage:
  python3 scripts/run_appendix_sweeps.py --out sweeps.json
  python3 scripts/run_appendix_sweeps.py --family seq --scale large
"""

import argparse
import json
import sys
import time

from adlv import __version__
from adlv.folding import folding
from adlv.appendix_verify import (run_empty_sweep, run_o0_sweep, run_o1_sweep,
                                  run_o2_sweep, run_o3_sweep, run_seq_sweep,
                                  run_zeta_sweep)

SEQ_SCALES = {
    "small": [("A", 3), ("A", 4), ("A", 5), ("D", 4), ("D", 5), ("E", 6)],
    "large": [("A", 3), ("A", 4), ("A", 5), ("D", 4), ("D", 5), ("D", 6),
              ("D", 7), ("E", 6), ("E", 7), ("E", 8)],
}
EMPTY_SCALES = {
    "small": [("A", 5), ("D", 4), ("D", 5), ("E", 6)],
    "large": [("A", 3), ("A", 4), ("A", 5), ("D", 4), ("D", 5), ("D", 6),
              ("D", 7), ("E", 6)],
}
FOLD_SCALES = {
    "small": [("A", 3), ("A", 5), ("D", 4)],
    "large": [("A", 3), ("A", 5), ("D", 4), ("D", 5), ("D", 6), ("E", 6)],
}
FOLD_RUNNERS = {"o1": run_o1_sweep, "o2": run_o2_sweep, "o3": run_o3_sweep,
                "o0": run_o0_sweep, "zeta": run_zeta_sweep}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="all",
                    choices=["all", "seq", "empty"] + sorted(FOLD_RUNNERS))
    ap.add_argument("--scale", default="small", choices=["small", "large"])
    ap.add_argument("--kmax", type=int, default=3)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    report = {"version": __version__, "scale": args.scale, "runs": []}
    t_all = time.time()
    fams = ([args.family] if args.family != "all"
            else ["seq", "empty"] + sorted(FOLD_RUNNERS))
    for fam in fams:
        if fam == "seq":
            targets = SEQ_SCALES[args.scale]
        elif fam == "empty":
            targets = EMPTY_SCALES[args.scale]
        else:
            targets = FOLD_SCALES[args.scale]
        for label, rank in targets:
            t0 = time.time()
            if fam == "seq":
                rep = run_seq_sweep(label, rank, kmax=args.kmax)
            elif fam == "empty":
                rep = run_empty_sweep(label, rank)
            else:
                rep = FOLD_RUNNERS[fam](folding(label, rank))
            entry = {"family": fam, "type": f"{label}{rank}",
                     "runtime_seconds": round(time.time() - t0, 2)}
            entry.update({k: v for k, v in rep.items() if k != "graph"})
            report["runs"].append(entry)
            bad = rep.get("violations", rep.get("counterexamples", []))
            print(f"{fam:6s} {label}{rank}: {len(bad)} violations "
                  f"({entry['runtime_seconds']}s)", file=sys.stderr)
    report["runtime_seconds"] = round(time.time() - t_all, 2)
    report["total_violations"] = sum(
        len(r.get("violations", r.get("counterexamples", [])))
        for r in report["runs"])
    text = json.dumps(report, sort_keys=True, indent=2, default=str)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report["total_violations"] == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
