#!/usr/bin/env python3
"""Replay every displayed G_2 Bruhat inequality chain and write the
per-chain dossier as JSON.

Usage:
  python3 scripts/run_g2_suite.py [--out g2_suite.json]
"""

import argparse
import json
import time

from adlv import __version__
from adlv.folding import g2_chain_suite


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    t0 = time.time()
    suite = g2_chain_suite()
    suite["version"] = __version__
    suite["runtime_seconds"] = round(time.time() - t0, 2)
    text = json.dumps(suite, sort_keys=True, indent=2, default=str)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if suite["all_pass"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
