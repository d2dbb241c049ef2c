#!/usr/bin/env python3
"""Survey connectivity of the minimal-coset-representative graph over all
Hodge-Newton irreducible (lambda, short datum) pairs of a given type.

lambda ranges over mu + (non-negative simple-coroot combinations with
coefficients <= --coeff-max) intersected with the dominant cone.

Usage:
  python3 scripts/connectivity_survey.py --type A --rank 2
  python3 scripts/connectivity_survey.py --type D --rank 4 --coeff-max 1 \
      --out survey.json
"""

import argparse
import itertools
import json
import time

from adlv import __version__
from adlv.root_data import root_datum, vadd, vscale
from adlv.sigma import enumerate_short_data, hn_classify, pi0_prediction
from adlv.connectivity import verify_hyp_prime


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", required=True, dest="type_label")
    ap.add_argument("--rank", type=int, required=True)
    ap.add_argument("--isogeny", default="adjoint")
    ap.add_argument("--coeff-max", type=int, default=2)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    d = root_datum(args.type_label, args.rank, args.isogeny)
    t0 = time.time()
    rows = []
    disconnections = 0
    for sd in enumerate_short_data(d):
        for cs in itertools.product(range(args.coeff_max + 1),
                                    repeat=d.rank):
            lam = sd.mu
            for i, c in enumerate(cs):
                if c:
                    lam = vadd(lam, vscale(c, d.coroot(d.simple_roots[i])))
            if not d.is_dominant(lam):
                continue
            if hn_classify(d, lam, sd).tag != "Irreducible":
                continue
            rep = verify_hyp_prime(sd, lam)
            disconnections += not rep["connected"]
            rows.append({
                "mu": list(sd.mu), "J_nu": sorted(sd.J_nu),
                "lambda": list(lam),
                "connected": rep["connected"],
                "n_vertices": rep["n_vertices"],
                "n_edges": rep["n_edges"],
                "pi0_size": len(pi0_prediction(d, lam, sd)),
            })
    report = {
        "version": __version__,
        "datum": {"type": args.type_label, "rank": args.rank,
                  "isogeny": args.isogeny},
        "coeff_max": args.coeff_max,
        "instances": len(rows),
        "disconnections": disconnections,
        "rows": rows,
        "runtime_seconds": round(time.time() - t0, 2),
    }
    text = json.dumps(report, sort_keys=True, indent=2, default=str)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if disconnections == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
