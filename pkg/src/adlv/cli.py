"""Command-line front end.

Subcommands: adm, straight, classify, pi0, connect, verify, fold, export.
Exit codes: 0 = success/verified, 1 = counterexample found (report still
emitted), 2 = invalid input.  Output is deterministic for a fixed job and
every report embeds the datum configuration and tool version.

Coweights are entered as integer JSON arrays in fundamental-coweight
coordinates, e.g. ``--lambda "[2,0,1]"``.  Fold descriptors are JSON like
``{"ambient": "A5", "iota": "standard"}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .root_data import RootDatum, root_datum
from .affine import engine
from .admissible import compute_adm, straight_elements
from .sigma import hn_classify, make_short_datum, pi0_prediction
from .connectivity import build_graph, verify_hyp_prime
from .folding import folding, g2_chain_suite
from .serialize import coweight_to_json, element_to_json


@dataclass(frozen=True)
class JobSpec:
    """A validated unit of work for the dispatcher."""

    command: str
    type_label: str = "A"
    rank: int = 1
    isogeny: str = "adjoint"
    lam: Optional[tuple] = None
    mu: Optional[tuple] = None
    J: frozenset = frozenset()
    fold: Optional[dict] = None
    kmax: int = 3
    jobs: int = 1
    out: Optional[str] = None
    format: str = "json"
    verify_target: Optional[str] = None

    COMMANDS = ("adm", "straight", "classify", "pi0", "connect", "verify",
                "fold", "export")

    def validate(self) -> None:
        if self.command not in self.COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in ("json", "dot", "text"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.command == "verify" and self.verify_target not in (
                "seq", "empty", "o1", "zeta", "g2"):
            raise ValueError("verify target must be one of "
                             "seq, empty, o1, zeta, g2")


def _datum(job: JobSpec) -> RootDatum:
    return root_datum(job.type_label, job.rank, job.isogeny)


def _report(job: JobSpec, payload: dict) -> dict:
    return {
        "version": __version__,
        "datum": {"type": job.type_label, "rank": job.rank,
                  "isogeny": job.isogeny},
        **payload,
    }


def _fold_from_descriptor(desc: dict):
    amb = desc.get("ambient", "")
    if desc.get("iota", "standard") != "standard":
        raise ValueError("only the standard diagram involution is supported")
    if len(amb) < 2 or not amb[1:].isdigit():
        raise ValueError(f"bad ambient label {amb!r}")
    return folding(amb[0], int(amb[1:]))


# ------------------------------------------------------------ subcommands


def _cmd_adm(job: JobSpec) -> tuple:
    d = _datum(job)
    adm = compute_adm(d, job.lam)
    eng = engine(d)
    return 0, _report(job, {
        "lambda": list(job.lam),
        "count": len(adm),
        "elements": [element_to_json(d, x) for x in adm.elements],
        "lengths": [eng.length(x) for x in adm.elements],
    })


def _cmd_straight(job: JobSpec) -> tuple:
    d = _datum(job)
    adm = compute_adm(d, job.lam)
    groups = straight_elements(adm)
    return 0, _report(job, {
        "lambda": list(job.lam),
        "classes": [
            {"eta": list(eta), "newton": coweight_to_json(nu),
             "elements": [element_to_json(d, x) for x in xs]}
            for (eta, nu), xs in sorted(groups.items(),
                                        key=lambda kv: repr(kv[0]))
        ],
    })


def _short(job: JobSpec, d: RootDatum):
    return make_short_datum(d, job.J, job.mu)


def _cmd_classify(job: JobSpec) -> tuple:
    d = _datum(job)
    sd = _short(job, d)
    cls = hn_classify(d, job.lam, sd)
    return 0, _report(job, {
        "lambda": list(job.lam), "short": sd.to_json(),
        "newton": coweight_to_json(sd.nu),
        "class": cls.tag, "reason": cls.reason,
    })


def _cmd_pi0(job: JobSpec) -> tuple:
    d = _datum(job)
    sd = _short(job, d)
    comps = pi0_prediction(d, job.lam, sd)
    return 0, _report(job, {
        "lambda": list(job.lam), "short": sd.to_json(),
        "pi0_size": len(comps),
        "pi0": [list(c) for c in comps],
    })


def _cmd_connect(job: JobSpec) -> tuple:
    d = _datum(job)
    sd = _short(job, d)
    res = verify_hyp_prime(sd, job.lam)
    from .weyl import reduced_word
    payload = _report(job, {
        "lambda": list(job.lam), "short": sd.to_json(),
        "connected": res["connected"],
        "n_vertices": res["n_vertices"], "n_edges": res["n_edges"],
        "witness_paths": {
            "-".join(map(str, reduced_word(d, z))) or "e":
                [list(e.gamma) for e in path]
            for z, path in sorted(res["witness_paths"].items(),
                                  key=lambda kv: repr(kv[0]))},
        "missing": [list(reduced_word(d, z)) for z in res["missing"]],
    })
    return (0 if res["connected"] else 1), payload


def _cmd_fold(job: JobSpec) -> tuple:
    fd = _fold_from_descriptor(job.fold)
    return 0, {
        "version": __version__,
        "ambient": fd.ambient.type_label + str(fd.ambient.rank),
        "iota": list(fd.iota),
        "orbits": [list(o) for o in fd.orbits],
        "folded_cartan": [list(r) for r in fd.folded.cartan],
        "folded_rank": fd.folded.rank,
    }


def _cmd_export(job: JobSpec) -> tuple:
    d = _datum(job)
    sd = _short(job, d)
    graph = build_graph(sd, job.lam)
    if job.format == "dot":
        return 0, graph.to_dot()
    return 0, _report(job, graph.to_json())


def _cmd_verify(job: JobSpec) -> tuple:
    from . import appendix_verify as av
    t0 = time.time()
    if job.verify_target == "g2":
        suite = g2_chain_suite()
        ok = suite["all_pass"]
        payload = {"target": "g2",
                   "chains": suite["chains"], "all_pass": ok}
    elif job.verify_target == "seq":
        rep = _sharded_seq(job)
        ok = not rep["violations"]
        payload = {"target": "seq", **rep}
    elif job.verify_target == "empty":
        rep = av.run_empty_sweep(job.type_label, job.rank)
        ok = not rep["counterexamples"]
        payload = {"target": "empty", **rep}
    elif job.verify_target == "o1":
        fd = _fold_from_descriptor(job.fold)
        rep = av.run_o1_sweep(fd)
        ok = not rep["violations"]
        payload = {"target": "o1", **rep}
    else:
        fd = _fold_from_descriptor(job.fold)
        rep = av.run_zeta_sweep(fd)
        ok = not rep["violations"]
        payload = {"target": "zeta", **rep}
    payload["runtime_seconds"] = round(time.time() - t0, 3)
    return (0 if ok else 1), _report(job, payload)


def _seq_shard(args):
    from . import appendix_verify as av
    type_label, rank, kmax, shard, nshards = args
    counts: dict = {}
    violations = []
    fib = 0
    for i, cfg in enumerate(av.enumerate_seq_configs(type_label, rank,
                                                     kmax=kmax)):
        if i % nshards != shard:
            continue
        res = av.verify_seq(cfg)
        counts[res["case"]] = counts.get(res["case"], 0) + 1
        fib += cfg.fiber_minimal
        if res["violation"]:
            violations.append({"mu": list(cfg.mu), "J_nu": sorted(cfg.J_nu),
                               "alpha": cfg.alpha, "beta": cfg.beta})
    return counts, fib, violations


def _sharded_seq(job: JobSpec) -> dict:
    from . import appendix_verify as av
    if job.jobs <= 1:
        return av.run_seq_sweep(job.type_label, job.rank, kmax=job.kmax)
    import multiprocessing
    args = [(job.type_label, job.rank, job.kmax, s, job.jobs)
            for s in range(job.jobs)]
    with multiprocessing.Pool(job.jobs) as pool:
        parts = pool.map(_seq_shard, args)
    counts: dict = {}
    fib = 0
    violations = []
    for c, f, v in parts:
        for k, n in c.items():
            counts[k] = counts.get(k, 0) + n
        fib += f
        violations.extend(v)
    violations.sort(key=repr)
    return {"type": f"{job.type_label}{job.rank}", "counts": counts,
            "fiber_minimal": fib, "violations": violations}


_DISPATCH = {
    "adm": _cmd_adm, "straight": _cmd_straight, "classify": _cmd_classify,
    "pi0": _cmd_pi0, "connect": _cmd_connect, "verify": _cmd_verify,
    "fold": _cmd_fold, "export": _cmd_export,
}


def run(job: JobSpec) -> tuple:
    """Dispatch a job; returns (exit_status, report)."""
    try:
        job.validate()
    except ValueError as e:
        return 2, {"error": str(e)}
    try:
        return _DISPATCH[job.command](job)
    except (ValueError, KeyError, TypeError) as e:
        return 2, {"error": str(e)}


def export_graph(graph, fmt: str) -> bytes:
    """Serialize a connectivity graph as DOT or schema-1 JSON."""
    if fmt == "dot":
        return graph.to_dot().encode()
    if fmt == "json":
        return json.dumps(graph.to_json(), sort_keys=True,
                          indent=2).encode()
    raise ValueError(f"unsupported format {fmt!r}")


# --------------------------------------------------------------- argparse


def _parse_vec(s: Optional[str]):
    if s is None:
        return None
    v = json.loads(s)
    if not isinstance(v, list) or not all(isinstance(c, int) for c in v):
        raise ValueError(f"expected an integer array, got {s!r}")
    return tuple(v)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="adlv",
        description="Combinatorics of admissible sets, straight elements "
                    "and connected components over extended affine Weyl "
                    "groups.")
    p.add_argument("command", choices=JobSpec.COMMANDS)
    p.add_argument("target", nargs="?", default=None,
                   help="verify target: seq | empty | o1 | zeta | g2")
    p.add_argument("--type", default="A", dest="type_label")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--isogeny", default="adjoint")
    p.add_argument("--lambda", dest="lam", default=None,
                   help="dominant coweight, JSON array")
    p.add_argument("--mu", default=None, help="coweight, JSON array")
    p.add_argument("--J", default=None,
                   help="Newton-stabilizer node indices, JSON array")
    p.add_argument("--fold", default=None,
                   help='fold descriptor, e.g. {"ambient":"A5",'
                        '"iota":"standard"}')
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--format", default="json",
                   choices=("json", "dot", "text"))
    return p


def job_from_args(argv) -> JobSpec:
    ns = build_parser().parse_args(argv)
    fold = json.loads(ns.fold) if ns.fold else None
    J = frozenset(json.loads(ns.J)) if ns.J else frozenset()
    return JobSpec(
        command=ns.command, type_label=ns.type_label, rank=ns.rank,
        isogeny=ns.isogeny, lam=_parse_vec(ns.lam), mu=_parse_vec(ns.mu),
        J=J, fold=fold, kmax=ns.kmax, jobs=ns.jobs, out=ns.out,
        format=ns.format, verify_target=ns.target)


def main(argv=None) -> int:
    if "ADLV_CACHE_DIR" in os.environ:
        from .affine import save_caches, set_cache_dir
        os.makedirs(os.environ["ADLV_CACHE_DIR"], exist_ok=True)
        set_cache_dir(os.environ["ADLV_CACHE_DIR"])
        import atexit
        atexit.register(save_caches)
    try:
        job = job_from_args(argv if argv is not None else sys.argv[1:])
    except (ValueError, json.JSONDecodeError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 2
    status, report = run(job)
    if isinstance(report, str):        # DOT export
        text = report
    else:
        text = json.dumps(report, sort_keys=True, indent=2, default=str)
    if job.out:
        with open(job.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
