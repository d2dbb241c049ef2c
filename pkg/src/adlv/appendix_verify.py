"""Exhaustive machine verification of the case-checked combinatorial lemmas
on simply-laced (and folded) root systems.

Four families of checks:

* geodesic-sum weak dominance (``seq``): if mu + alpha^vee fails weak
  dominance, the pairing sum over the geodesic interior is at most 1 and
  one of three explicit conclusions holds (two exceptional E8 families);
* poset emptiness (``empty``): no downward-closed subset of the length-one
  pairing locus can satisfy all five closure/pairing conditions at its
  maximal elements;
* folded geodesic conclusions (``o1``): the four-case classification of a
  negative simple root under a diagram involution, each with a preceq
  conclusion against admissible lambda;
* folded reflection-pairing exclusion (``zeta``): clauses (1) and (2) of
  the folded pairing lemma can never hold simultaneously;
* folded support lemmas (``o2``/``o3``/``o0``): wedge decompositions of
  involution-congruent roots, coset minimality at maximal elements of
  A_phi, and the support constraint on A_alpha when A_{alpha+iota(alpha)}
  is empty.

Enumeration and verification are kept separate: generators emit
CaseConfig records, an independent validator re-checks every hypothesis,
and verifiers classify or search for counterexamples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .root_data import (RootDatum, Vec, _frac_inverse, retain_id, root_datum, vadd,
                        vdot, vneg, vsub)
from .weyl import FiniteWeyl, longest_element
from .affine import ExtAffine
from .sigma import make_short_datum, _noncentral_union
from .connectivity import _is_positive_root, max_elements_J, root_leq_J
from .folding import FoldingDatum, folded_coset_reps, in_levi_lattice, a_phi


# --------------------------------------------------------------- CaseConfig


@dataclass(frozen=True)
class CaseConfig:
    """A hypothesis instance for one of the case-checked lemmas."""

    datum: RootDatum = field(repr=False)
    J_nu: frozenset
    J: frozenset
    K: frozenset
    mu: Vec
    alpha: Optional[int] = None      # simple-root index
    beta: Optional[int] = None       # simple-root index
    fiber_minimal: bool = False


def _components_J(datum: RootDatum, mu: Vec, J_nu: frozenset):
    J = _noncentral_union(datum, J_nu, mu)
    K = frozenset(j for j in J if mu[j] == 0)
    return J, K


def validate_seq_config(cfg: CaseConfig) -> None:
    """Independent re-check of every hypothesis of a seq config; raises on
    the first violation (generator/validator separation)."""
    d = cfg.datum
    sd = make_short_datum(d, cfg.J_nu, cfg.mu)  # validates the mu shape
    assert sd.J == cfg.J and sd.K == cfg.K
    assert cfg.alpha not in cfg.J and cfg.beta not in cfg.J
    a = d.simple_roots[cfg.alpha]
    b = d.simple_roots[cfg.beta]
    assert vdot(cfg.mu, a) >= 0 and vdot(cfg.mu, b) == -1
    path = d.dynkin_path(cfg.beta, cfg.alpha)
    assert all(vdot(cfg.mu, d.simple_roots[k]) >= 0 for k in path[1:])


def _valid_mus(datum: RootDatum, J_nu: frozenset, low: int, high: int):
    """All mu giving a valid short datum with stabilizer J_nu, J_nu coords
    in {0, 1}, the rest in [low, high].

    For each bit pattern on J_nu the finite part w = w_K w_J is constant
    and the Newton point is linear in mu, so candidates are prefiltered in
    one numpy batch per pattern (weak dominance + Newton point dominant
    with zero set exactly J_nu) before confirming survivors exactly."""
    import numpy as np
    n = datum.rank
    R = np.array(datum.positive_roots, dtype=np.int64)
    off = [i for i in range(n) if i not in J_nu]
    Jn = sorted(J_nu)
    out = []
    for bits in itertools.product(range(2), repeat=len(Jn)):
        mu0 = [0] * n
        for j, b in zip(Jn, bits):
            mu0[j] = b
        mu0 = tuple(mu0)
        if not datum.is_levi_minuscule(mu0, J_nu):
            continue
        J = _noncentral_union(datum, J_nu, mu0)
        K = frozenset(j for j in J if mu0[j] == 0)
        w = longest_element(datum, K) * longest_element(datum, J)
        # the Levi length of t^mu w only involves pairings with Phi_{J_nu},
        # hence only the bit pattern: one length-zero check per pattern
        from .affine import engine as _engine
        if not _engine(datum, J_nu).is_omega(ExtAffine(mu0, w)):
            continue
        N = w.order()
        cols = []
        for i in range(n):
            v = tuple(int(i == j) for j in range(n))
            acc = [0] * n
            for _ in range(N):
                acc = vadd(acc, v)
                v = w.coweight(v)
            cols.append(acc)                  # sum_k w^k(e_i)
        M = np.array(cols, dtype=np.int64).T  # M @ mu = N * newton point
        grids = np.meshgrid(*[np.arange(low, high + 1, dtype=np.int64)
                              for _ in off], indexing="ij") or \
            [np.zeros((1,), dtype=np.int64)]
        Mu = np.tile(np.array(mu0, dtype=np.int64), (grids[0].size, 1))
        for k, i in enumerate(off):
            Mu[:, i] = grids[k].ravel()
        keep = (Mu @ R.T >= -1).all(axis=1)
        Nnu = Mu @ M.T
        if Jn:
            keep &= (Nnu[:, Jn] == 0).all(axis=1)
        if off:
            keep &= (Nnu[:, off] > 0).all(axis=1)
        out.extend(tuple(int(x) for x in row) for row in Mu[keep])
    return out


def enumerate_seq_configs(type_label: str, rank: int, kmax: int = 3,
                          low: int = -1) -> Iterator[CaseConfig]:
    """Hypothesis instances of the geodesic-sum lemma over the bounded
    coordinate box (Levi coords in {0,1}, others in [low, kmax]).

    For E types, configs where mu cannot be shrunk by a fundamental
    coweight within the same fiber (same Levi pairings, same roles of
    alpha and beta) are marked fiber_minimal.
    """
    d = root_datum(type_label, rank)
    n = d.rank
    for bits in itertools.product(range(2), repeat=n):
        J_nu = frozenset(i for i in range(n) if bits[i])
        valid = _valid_mus(d, J_nu, low, kmax)
        vset = set(valid)
        for mu in valid:
            # <mu, alpha_j> = mu[j] in these coordinates
            J, K = _components_J(d, mu, J_nu)
            betas = [i for i in range(n) if i not in J and mu[i] == -1]
            alphas = [i for i in range(n) if i not in J and mu[i] >= 0]
            for b, a in itertools.product(betas, alphas):
                path = d.dynkin_path(b, a)
                if any(mu[k] < 0 for k in path[1:]):
                    continue

                def shrinkable(i):
                    mu2 = tuple(mu[j] - int(j == i) for j in range(n))
                    return (mu2 in vset and mu2[a] >= 0
                            and all(mu2[k] >= 0 for k in path[1:-1]))

                fib_min = not any(shrinkable(i) for i in range(n)
                                  if i not in J_nu and i != b)
                yield CaseConfig(d, J_nu, J, K, mu, a, b, fib_min)


def verify_seq(cfg: CaseConfig) -> dict:
    """Classify a seq config: vacuous / case1 / case2 / case3 / violation.

    Non-vacuous configs additionally check the interior pairing bound
    sum_{k=2}^{m-1} <mu, delta_k> <= 1.
    """
    d = cfg.datum
    mu = cfg.mu
    a = d.simple_roots[cfg.alpha]
    if d.is_weakly_dominant(vadd(mu, d.coroot(a))):
        return {"case": "vacuous", "violation": False}
    path = d.dynkin_path(cfg.beta, cfg.alpha)       # delta_1 .. delta_m
    interior = sum(vdot(mu, d.simple_roots[k]) for k in path[1:-1])
    out = {"case": "violation", "violation": True,
           "bound_ok": interior <= 1}
    if not out["bound_ok"]:
        return out
    acc = mu
    for k in path:
        acc = vadd(acc, d.coroot(d.simple_roots[k]))
    if d.is_weakly_dominant(acc):
        return {"case": "1", "violation": False, "bound_ok": True}
    if d.type_label == "E" and d.rank == 8:
        tag = _e8_seq_case(cfg)
        if tag is not None:
            case, extra = tag
            final = acc
            for k in extra:
                final = vadd(final, d.coroot(d.simple_roots[k]))
            if d.is_weakly_dominant(final):
                return {"case": case, "violation": False, "bound_ok": True}
    return out


def _e8_seq_case(cfg: CaseConfig):
    """Match the two exceptional E8 families; returns (case, extra-coroot
    indices beyond the geodesic sum) or None.  0-indexed nodes: alpha_i is
    index i-1 in the standard E8 labeling."""
    d = cfg.datum
    n = d.rank
    S = frozenset(range(n))

    def omega_combo(coeffs: dict, k_node: Optional[int]):
        # mu == sum coeffs[i]*omega_i + k*omega_{k_node}, k >= 0?
        for i in range(n):
            want = coeffs.get(i, 0)
            have = cfg.mu[i]
            if i == k_node:
                if have < want:
                    return False
            elif have != want:
                return False
        return True

    # case 2, first family: mu = k w1 + w3 - w4 + w6, alpha=a1, beta=a4
    if (cfg.alpha, cfg.beta) == (0, 3) \
            and omega_combo({2: 1, 3: -1, 5: 1}, 0) \
            and cfg.J_nu == S - {0, 3} and cfg.J == cfg.J_nu - {1}:
        return "2", (1, 4, cfg.beta)        # xi = {a2, a5}, plus beta
    # case 2, second family: mu = w1 - w4 + w5 + k w8, alpha=a8, beta=a4
    if (cfg.alpha, cfg.beta) == (7, 3) \
            and omega_combo({0: 1, 3: -1, 4: 1}, 7) \
            and cfg.J_nu == S - {7, 3} and cfg.J == cfg.J_nu - {1}:
        return "2", (1, 2, cfg.beta)        # xi = {a2, a3}, plus beta
    # case 3: mu = w1 - w5 + w6 + k w8, alpha=a8, beta=a5
    if (cfg.alpha, cfg.beta) == (7, 4) \
            and omega_combo({0: 1, 4: -1, 5: 1}, 7) \
            and cfg.J_nu == S - {4, 7} and cfg.J == cfg.J_nu:
        return "3", (3, 3, 1, 2, cfg.beta)  # 2*eps + xi1 + xi2 + beta
    return None


def run_seq_sweep(type_label: str, rank: int, kmax: int = 3) -> dict:
    """Full seq verification sweep; returns counts and any violations."""
    counts: dict = {}
    violations = []
    fib = 0
    for cfg in enumerate_seq_configs(type_label, rank, kmax=kmax):
        res = verify_seq(cfg)
        counts[res["case"]] = counts.get(res["case"], 0) + 1
        fib += cfg.fiber_minimal
        if res["violation"]:
            violations.append({"mu": list(cfg.mu), "J_nu": sorted(cfg.J_nu),
                               "alpha": cfg.alpha, "beta": cfg.beta})
    return {"type": f"{type_label}{rank}", "counts": counts,
            "fiber_minimal": fib, "violations": violations}


# ----------------------------------------------------------------- empty


def theta_rep(datum: RootDatum, phi: Vec, J: Iterable[int]) -> Optional[Vec]:
    """The unique J-antidominant root in phi + Z Phi_J, or None."""
    J = frozenset(J)
    hits = [g for g in datum.roots
            if in_levi_lattice(datum, vsub(g, phi), J)
            and all(vdot(datum.coroot(datum.simple_roots[j]), g) <= 0
                    for j in J)]
    assert len(hits) <= 1, f"antidominant class representative not unique: {hits}"
    return hits[0] if hits else None


def enumerate_empty_configs(type_label: str, rank: int) -> Iterator[CaseConfig]:
    """Reduced hypothesis instances of the emptiness lemma: J is the
    complement of a single node beta, mu is J-minuscule, J-dominant,
    weakly dominant and noncentral on every component of J, <mu,beta>=-1,
    and the doubled class 2*beta has a J-antidominant root representative
    pairing to zero with mu."""
    d = root_datum(type_label, rank)
    n = d.rank
    for b in range(n):
        J = frozenset(range(n)) - {b}
        comps = d.components_of(J)
        beta = d.simple_roots[b]
        for bits in itertools.product(range(2), repeat=n - 1):
            mu = [0] * n
            mu[b] = -1
            for bit, j in zip(bits, sorted(J)):
                mu[j] = bit
            mu = tuple(mu)
            if any(all(mu[j] == 0 for j in comp) for comp in comps):
                continue        # central on some component
            if not d.is_weakly_dominant(mu):
                continue
            th = theta_rep(d, vadd(beta, beta), J)
            if th is None or vdot(mu, th) != 0:
                continue
            Jset, K = frozenset(J), frozenset(j for j in J if mu[j] == 0)
            yield CaseConfig(d, Jset, Jset, K, mu, beta=b)


def _xi1(datum: RootDatum, mu: Vec, J: frozenset) -> frozenset:
    out = set()
    for g in datum.positive_roots:
        if datum.support(g) <= J:
            continue
        gJ = datum.antidominant_root_rep(g, J)
        if vdot(mu, gJ) == -1:
            out.add(g)
    return frozenset(out)


def verify_empty(cfg: CaseConfig) -> Optional[dict]:
    """Search for a nonempty downward-closed D in the beta-class of the
    length-one pairing locus whose maximal elements satisfy all five
    conditions; returns the counterexample or None (the lemma asserts
    None).  Maximal-element candidates are pre-filtered by the conditions
    depending on the element alone."""
    d = cfg.datum
    J = cfg.J
    mu = cfg.mu
    beta = d.simple_roots[cfg.beta]
    w = longest_element(d, cfg.K) * longest_element(d, cfg.J)
    xi1 = _xi1(d, mu, J)
    klass = [g for g in d.positive_roots
             if in_levi_lattice(d, vsub(g, beta), J) and g in xi1]

    def cond15(a):
        # (1'): both pairings vanish
        if vdot(mu, a) != 0 or vdot(mu, w.root(a)) != 0:
            return False
        # (3'): a + w^{-1}(a) is a root outside the pairing locus
        s = vadd(a, w.inverse().root(a))
        return d.is_root(s) and tuple(s) not in xi1

    C = [g for g in klass if cond15(g)]
    down = {g: frozenset(h for h in klass if root_leq_J(d, h, g, J))
            for g in C}
    for r in range(1, len(C) + 1):
        for A in itertools.combinations(C, r):
            if any(root_leq_J(d, x, y, J)
                   for x in A for y in A if x != y):
                continue        # not an antichain
            D = frozenset().union(*(down[a] for a in A))
            if not all(a in max_elements_J(d, D, J) for a in A):
                continue
            ok = True
            for a in A:
                wa, wia = w.root(a), w.inverse().root(a)
                if tuple(wa) in D or tuple(wia) in D:       # (2')
                    ok = False
                    break
                good4 = True
                for e in d.levi_positive_roots(J):          # (4')
                    if d.is_root(vsub(wia, e)) and d.is_root(vadd(a, e)):
                        if tuple(vsub(wia, e)) not in D:
                            good4 = False
                            break
                if not good4:
                    ok = False
                    break
            if ok:
                return {"mu": list(mu), "beta": cfg.beta,
                        "D": sorted(map(list, D)),
                        "maximal": sorted(map(list, A))}
    return None


def run_empty_sweep(type_label: str, rank: int) -> dict:
    configs = 0
    counterexamples = []
    for cfg in enumerate_empty_configs(type_label, rank):
        configs += 1
        ce = verify_empty(cfg)
        if ce is not None:
            counterexamples.append(ce)
    return {"type": f"{type_label}{rank}", "configs": configs,
            "counterexamples": counterexamples}


# ------------------------------------------------------------------- o1


def o1_alpha(fd: FoldingDatum, mu_amb: Vec, z: FiniteWeyl) -> Optional[int]:
    """The distinguished negative simple node: among simple roots made
    negative by z, minimize the diagram distance to the involution image,
    then the mu-pairing; None if z is trivial on the simple roots."""
    amb = fd.ambient
    D = [i for i, a in enumerate(amb.simple_roots)
         if not _is_positive_root(z.root(a))]
    if not D:
        return None
    dmin = min(amb.dist(i, fd.iota[i]) for i in D)
    E = [i for i in D if amb.dist(i, fd.iota[i]) == dmin]
    return min(E, key=lambda i: (vdot(mu_amb, amb.simple_roots[i]), i))


def _o1_case4_pattern(fd: FoldingDatum, mu: Vec, Jp: frozenset, i_a: int):
    """The branch-chain pattern: <mu, c> = 1 at the geodesic midpoint c,
    then a path c = p_1, ..., p_e leaving the geodesic with interior
    pairings 0, all of p_1..p_{e-1} in J', and <mu, p_e> = -1.  Returns
    the coroot-increment node list [alpha-side handled by caller] or None.
    """
    amb = fd.ambient
    path = amb.dynkin_path(i_a, fd.iota[i_a])
    if len(path) % 2 == 0:
        return None
    c = path[len(path) // 2]
    if c not in Jp or vdot(mu, amb.simple_roots[c]) != 1:
        return None
    onpath = set(path)
    for target in range(amb.rank):
        if target in onpath or vdot(mu, amb.simple_roots[target]) != -1:
            continue
        p = amb.dynkin_path(c, target)
        if set(p[1:-1]) & onpath:
            continue
        if not set(p[:-1]) <= Jp:
            continue
        if any(vdot(mu, amb.simple_roots[k]) != 0 for k in p[1:-1]):
            continue
        return list(p)
    return None


def verify_o1(fd: FoldingDatum, sd, z: FiniteWeyl, lams: Iterable[Vec]) -> dict:
    """Classify the distinguished alpha of (sd, z) into the four cases and
    check the case's preceq conclusion against every lambda in lams
    (folded coordinates).  Returns {"case": tag, "violation": bool}."""
    amb, fold = fd.ambient, fd.folded
    mu_amb = fd.unfold_coweight(sd.mu)
    Jp = fd.unfold_nodes(sd.J)
    i_a = o1_alpha(fd, mu_amb, z)
    if i_a is None:
        return {"case": "trivial", "violation": False}
    a = amb.simple_roots[i_a]
    ia = fd.iota_root(a)

    def fold_cw(v):
        return fd.fold_coweight(v)

    def conclusion(incr_amb):
        dom, _ = fold.dominant_rep(vadd(sd.mu, fold_cw(incr_amb)))
        return all(fold.leq_coroot(dom, lam) for lam in lams)

    ca, cia = amb.coroot(a), amb.coroot(ia)
    if ia == a:
        if conclusion(ca):
            return {"case": "2", "violation": False}
        # E6 exceptional node: alpha = the short-branch node, with the
        # adjacent trivalent node pairing to -1
        if amb.type_label == "E" and amb.rank == 6 and i_a == 1 \
                and vdot(mu_amb, amb.simple_roots[3]) == -1:
            if conclusion(vadd(ca, amb.coroot(amb.simple_roots[3]))):
                return {"case": "3", "violation": False}
        return {"case": "violation", "violation": True}
    path = amb.dynkin_path(i_a, fd.iota[i_a])
    theta = [0] * amb.rank
    for k in path:
        theta = vadd(theta, amb.simple_roots[k])
    theta = tuple(theta)
    thetap = vsub(theta, vadd(a, ia))
    s = vdot(mu_amb, thetap)
    if s >= 1 and conclusion(vadd(ca, cia)):
        return {"case": "1", "violation": False}
    if s == 0 and conclusion(amb.coroot(theta)):
        return {"case": "1", "violation": False}
    p4 = _o1_case4_pattern(fd, mu_amb, Jp, i_a)
    if p4 is not None and vdot(mu_amb, a) >= 0:
        incr = vadd(ca, cia)
        for k in p4:
            incr = vadd(incr, amb.coroot(amb.simple_roots[k]))
        if conclusion(incr):
            return {"case": "4", "violation": False}
    return {"case": "violation", "violation": True}


def run_o1_sweep(fd: FoldingDatum, low: int = -1, high: int = 1,
                 lam_high: int = 2) -> dict:
    """Sweep folded short data x iota-fixed coset minima, classifying each
    and checking conclusions against all HN-irreducible lambda in a box."""
    from .sigma import enumerate_short_data, hn_classify
    fold = fd.folded
    counts: dict = {}
    violations = []
    reps: dict = {}
    for sd in enumerate_short_data(fold, low=low, high=high):
        lams = [lam for lam in itertools.product(range(0, lam_high + 1),
                                                 repeat=fold.rank)
                if hn_classify(fold, lam, sd).tag == "Irreducible"]
        if not lams:
            continue
        Jp = fd.unfold_nodes(sd.J)
        if Jp not in reps:
            reps[Jp] = folded_coset_reps(fd, Jp)
        for z in reps[Jp]:
            if z.is_identity():
                continue
            res = verify_o1(fd, sd, z, lams)
            counts[res["case"]] = counts.get(res["case"], 0) + 1
            if res["violation"]:
                violations.append({"mu": list(sd.mu), "J": sorted(sd.J)})
    return {"fold": fd.ambient.type_label + str(fd.ambient.rank),
            "counts": counts, "violations": violations}


# ------------------------------------------------------------------ zeta


def verify_zeta(fd: FoldingDatum, sd, z: FiniteWeyl, zeta: Vec) -> dict:
    """Check that clauses (1) and (2) cannot both hold for an applicable
    zeta; returns {"applicable": bool, "violation": bool, ...}."""
    amb = fd.ambient
    Jp = fd.unfold_nodes(sd.J)
    zeta = tuple(zeta)
    if in_levi_lattice(amb, zeta, Jp) or not _is_positive_root(zeta):
        return {"applicable": False, "violation": False}
    zJ = amb.antidominant_root_rep(zeta, Jp)
    if fd.iota_root(zJ) != zJ:
        return {"applicable": False, "violation": False}
    mu_amb = fd.unfold_coweight(sd.mu)
    if vdot(mu_amb, zJ) != -1:
        return {"applicable": False, "violation": False}
    try:
        a2, theta2 = a_phi(fd, z, Jp, vadd(zeta, zeta))
    except ValueError:
        return {"applicable": False, "violation": False}
    if not a2 or vdot(mu_amb, theta2) < 0:
        return {"applicable": False, "violation": False}
    w = fd.unfold_weyl(sd.w)
    iz = fd.iota_root(zeta)
    clause1 = vdot(mu_amb, zeta) == 0 and vdot(mu_amb, w.root(zeta)) == 0
    zv = amb.coroot(zeta)
    if iz == zeta:
        clause2 = vdot(zv, w.root(zeta)) == -1
    else:
        pair = {vdot(zv, w.root(zeta)), vdot(zv, w.root(iz))}
        clause2 = pair == {0, -1}
    return {"applicable": True, "violation": clause1 and clause2,
            "clause1": clause1, "clause2": clause2,
            "component": sorted(_zeta_component(fd, Jp, zJ))}


def _zeta_component(fd: FoldingDatum, Jp: frozenset, zJ: Vec) -> frozenset:
    """Nodes of J' lying in the connected component (of the extended
    diagram J' + the class representative) attached to the representative."""
    amb = fd.ambient
    zc = amb.coroot(zJ)
    frontier = {j for j in Jp if vdot(amb.coroot(amb.simple_roots[j]), zJ) != 0}
    comp = set(frontier)
    while frontier:
        nxt = set()
        for j in frontier:
            for k in amb.dynkin_neighbors(j):
                if k in Jp and k not in comp:
                    nxt.add(k)
        comp |= nxt
        frontier = nxt
    return frozenset(comp)


def run_zeta_sweep(fd: FoldingDatum, low: int = -1, high: int = 1) -> dict:
    from .sigma import enumerate_short_data
    applicable = 0
    violations = []
    reps: dict = {}
    for sd in enumerate_short_data(fd.folded, low=low, high=high):
        Jp = fd.unfold_nodes(sd.J)
        if Jp not in reps:
            reps[Jp] = folded_coset_reps(fd, Jp)
        for z in reps[Jp]:
            if z.is_identity():
                continue
            for zeta in fd.ambient.positive_roots:
                res = verify_zeta(fd, sd, z, zeta)
                if res["applicable"]:
                    applicable += 1
                    if res["violation"]:
                        violations.append({"mu": list(sd.mu),
                                           "zeta": list(zeta)})
    return {"fold": fd.ambient.type_label + str(fd.ambient.rank),
            "applicable": applicable, "violations": violations}


# ------------------------------------------------------------------ plus


def mu_restriction_pairing(datum: RootDatum, mu: Vec, H: Iterable[int],
                           aprime: Vec) -> Fraction:
    """<mu|_H, a'> where mu|_H is the component of mu in R Phi_H^vee
    (orthogonal projection characterized by <mu|_H, a_j> = <mu, a_j> for
    j in H)."""
    H = sorted(H)
    if not H:
        return Fraction(0)
    # solve sum_j c_j <a_j^vee, a_k> = mu[k] (k in H)
    A = tuple(tuple(Fraction(datum.cartan[j][k]) for j in H) for k in H)
    inv = _frac_inverse(A)
    rhs = [Fraction(mu[k]) for k in H]
    c = [sum(inv[i][k] * rhs[k] for k in range(len(H)))
         for i in range(len(H))]
    return sum((ci * vdot(datum.coroot(datum.simple_roots[j]), aprime)
                for ci, j in zip(c, H)), Fraction(0))


def verify_plus(cfg: CaseConfig, a_idx: int, ap_idx: int) -> dict:
    """Clause (1): the component-restriction pairings of mu against a'
    sum to strictly less than -1.  Clause (2): for types A and D (away
    from the fork), the geodesic interior (a, a') meets the positive
    pairing locus."""
    d = cfg.datum
    mu = cfg.mu
    ap = d.simple_roots[ap_idx]
    assert a_idx not in cfg.J and ap_idx not in cfg.J
    assert vdot(mu, ap) == -1
    total = sum((mu_restriction_pairing(d, mu, H, ap)
                 for H in d.components_of(cfg.J)), Fraction(0))
    out = {"clause1": total < -1, "clause1_value": total}
    n = d.rank
    applies2 = d.type_label == "A" or (
        d.type_label == "D" and a_idx not in (n - 2, n - 1)
        and ap_idx not in (n - 2, n - 1))
    if applies2 and a_idx != ap_idx:
        interior = d.dynkin_path(a_idx, ap_idx)[1:-1]
        out["clause2"] = any(vdot(mu, d.simple_roots[k]) >= 1
                             for k in interior)
    return out


# ----------------------------------------------------- wedge decomposition


def _pos_or_zero(datum: RootDatum, v: Vec) -> bool:
    return all(c == 0 for c in v) or \
        (datum.is_root(v) and _is_positive_root(v))


def run_o2_sweep(fd: FoldingDatum) -> dict:
    """Wedge decomposition of roots congruent to their involution image
    modulo the Levi: gamma ^ iota(gamma) and the remainder are positive
    roots or zero, and a Levi root pairing -1 with both gamma and
    iota(gamma) is iota-fixed and pairs -1 with the wedge."""
    from .folding import wedge
    amb = fd.ambient
    counts = {"basic": 0, "moreover": 0}
    violations = []
    for bits in itertools.product(range(2), repeat=fd.folded.rank):
        Jb = frozenset(i for i in range(fd.folded.rank) if bits[i])
        Jp = fd.unfold_nodes(Jb)
        levi_pos = set(amb.levi_positive_roots(Jp))
        levi_all = list(levi_pos) + [vneg(a) for a in levi_pos]
        for g in amb.positive_roots:
            if g in levi_pos:
                continue
            ig = fd.iota_root(g)
            if not in_levi_lattice(amb, vsub(g, ig), Jp):
                continue
            xi = wedge(g, ig)
            counts["basic"] += 1
            if not (_pos_or_zero(amb, xi) and _pos_or_zero(amb, vsub(g, xi))):
                violations.append({"J": sorted(Jp), "gamma": list(g),
                                   "clause": "basic"})
            if g == ig:
                continue
            for delta in levi_all:
                dv = amb.coroot(delta)
                if vdot(dv, g) != -1 or vdot(dv, ig) != -1:
                    continue
                counts["moreover"] += 1
                if fd.iota_root(delta) != tuple(delta) or vdot(dv, xi) != -1:
                    violations.append({"J": sorted(Jp), "gamma": list(g),
                                       "delta": list(delta),
                                       "clause": "moreover"})
    return {"fold": amb.type_label + str(amb.rank),
            "counts": counts, "violations": violations}


# --------------------------------------------- maximal-root coset minimality


_o3_img_cache: dict = {}


def _o3_minrep(fd: FoldingDatum, z: FiniteWeyl, Jp: frozenset, g) -> bool:
    """z s_g and z r_g are minimal coset representatives mod W_{J'};
    checked on precomputed images of the J'-simple roots, so no Weyl
    multiplication is needed."""
    from .weyl import root_reflection
    amb = fd.ambient
    key = (retain_id(fd), Jp, tuple(g))
    imgs = _o3_img_cache.get(key)
    if imgs is None:
        s = root_reflection(amb, g)
        r = fd.underline_reflection(g)
        imgs = tuple(itertools.chain(
            (s.root(amb.simple_roots[j]) for j in Jp),
            (r.root(amb.simple_roots[j]) for j in Jp)))
        _o3_img_cache[key] = imgs
    return all(_is_positive_root(z.root(a)) for a in imgs)


_o3_target_cache: dict = {}


def _o3_targets(fd: FoldingDatum, Jp: frozenset, A: frozenset,
                clause2: bool) -> tuple:
    """(gamma, clause) pairs to be minimality-checked; depends only on the
    set A_phi and on whether the doubled class is empty, never on z."""
    from .folding import wedge
    key = (retain_id(fd), Jp, A, clause2)
    out = _o3_target_cache.get(key)
    if out is not None:
        return out
    amb = fd.ambient
    targets = []
    afix = [g for g in A if fd.iota_root(g) == tuple(g)]
    if clause2 or afix:
        maxA = max_elements_J(amb, A, Jp)
        if clause2:
            targets += [(g, 2) for g in maxA]
        if afix:
            max_fix = set(max_elements_J(amb, afix, Jp))
            targets += [(g, 1) for g in maxA
                        if wedge(g, fd.iota_root(g)) in max_fix]
    out = _o3_target_cache[key] = tuple(targets)
    return out


def _o3_clauses(fd: FoldingDatum, z: FiniteWeyl, Jp: frozenset,
                A: frozenset, A2: Optional[frozenset]) -> dict:
    """The two minimality clauses, given the already-computed sets A_phi
    and A_{phi+iota(phi)} (A2 is None when the doubled class degenerates
    into the Levi lattice)."""
    out = {"checked": 0, "violations": []}
    for g, clause in _o3_targets(fd, Jp, A, A2 is not None and not A2):
        out["checked"] += 1
        if not _o3_minrep(fd, z, Jp, g):
            out["violations"].append({"gamma": list(g), "clause": clause})
    return out


def verify_o3(fd: FoldingDatum, z: FiniteWeyl, Jp: frozenset,
              phi: Vec) -> Optional[dict]:
    """Both clauses of the maximal-root minimality statement for one
    (z, phi): z s_gamma and z r_gamma stay minimal coset representatives
    for the distinguished maximal elements of A_phi."""
    amb = fd.ambient
    try:
        A, _ = a_phi(fd, z, Jp, phi)
    except ValueError:
        return None
    if not A:
        return None
    phi2 = vadd(phi, fd.iota_root(phi))
    if in_levi_lattice(amb, phi2, Jp):
        A2 = None
    else:
        A2, _ = a_phi(fd, z, Jp, phi2)
    return _o3_clauses(fd, z, Jp, A, A2)


def run_o3_sweep(fd: FoldingDatum) -> dict:
    amb = fd.ambient
    checked = 0
    violations = []
    for bits in itertools.product(range(2), repeat=fd.folded.rank):
        Jb = frozenset(i for i in range(fd.folded.rank) if bits[i])
        Jp = fd.unfold_nodes(Jb)
        phis = [a for a in amb.simple_roots if not in_levi_lattice(amb, a, Jp)]
        phis += [vadd(a, fd.iota_root(a)) for i, a in
                 enumerate(amb.simple_roots)
                 if fd.iota[i] != i and not in_levi_lattice(amb, a, Jp)]
        # congruence classes mod the Levi root lattice do not depend on z
        classes = []
        for phi in phis:
            cls = tuple(g for g in amb.roots
                        if in_levi_lattice(amb, vsub(g, phi), Jp))
            phi2 = vadd(phi, fd.iota_root(phi))
            cls2 = (None if in_levi_lattice(amb, phi2, Jp) else
                    tuple(g for g in amb.roots
                          if in_levi_lattice(amb, vsub(g, phi2), Jp)))
            classes.append((phi, cls, cls2))
        for z in folded_coset_reps(fd, Jp):
            if z.is_identity():
                continue
            neg = {g for g in amb.roots
                   if not _is_positive_root(z.root(g))}
            for phi, cls, cls2 in classes:
                A = frozenset(g for g in cls if g in neg)
                if not A:
                    continue
                A2 = (None if cls2 is None else
                      frozenset(g for g in cls2 if g in neg))
                res = _o3_clauses(fd, z, Jp, A, A2)
                checked += res["checked"]
                for v in res["violations"]:
                    violations.append({"J": sorted(Jp), "phi": list(phi), **v})
    return {"fold": amb.type_label + str(amb.rank),
            "checked": checked, "violations": violations}


# ------------------------------------------- support of A_alpha off the axis


def run_o0_sweep(fd: FoldingDatum, low: int = -1, high: int = 1) -> dict:
    """When the distinguished alpha is not iota-fixed and
    A_{alpha+iota(alpha)} is empty, every root of A_alpha is supported away
    from the iota-fixed nodes and is u(alpha) for an iota-fixed Levi u."""
    from .sigma import enumerate_short_data
    from .folding import lemma_o0_decompose
    amb = fd.ambient
    fixed = frozenset(i for i in range(amb.rank) if fd.iota[i] == i)
    in_scope = 0
    decomposed = 0
    violations = []
    reps: dict = {}
    for sd in enumerate_short_data(fd.folded, low=low, high=high):
        Jp = fd.unfold_nodes(sd.J)
        mu_amb = fd.unfold_coweight(sd.mu)
        if Jp not in reps:
            reps[Jp] = folded_coset_reps(fd, Jp)
        for z in reps[Jp]:
            if z.is_identity():
                continue
            i_a = o1_alpha(fd, mu_amb, z)
            if i_a is None or fd.iota[i_a] == i_a:
                continue
            alpha = amb.simple_roots[i_a]
            phi2 = vadd(alpha, fd.iota_root(alpha))
            if in_levi_lattice(amb, phi2, Jp):
                continue
            a2, _ = a_phi(fd, z, Jp, phi2)
            if a2:
                continue
            aset, _ = a_phi(fd, z, Jp, alpha)
            for g in aset:
                in_scope += 1
                if amb.support(g) & fixed:
                    violations.append({"mu": list(sd.mu), "gamma": list(g),
                                       "clause": "support"})
                    continue
                try:
                    u = lemma_o0_decompose(fd, z, Jp, alpha, g)
                except ValueError:
                    continue
                decomposed += 1
                if fd.iota_weyl(u) != u or u.root(alpha) != tuple(g):
                    violations.append({"mu": list(sd.mu), "gamma": list(g),
                                       "clause": "decompose"})
    return {"fold": amb.type_label + str(amb.rank),
            "in_scope": in_scope, "decomposed": decomposed,
            "violations": violations}
