"""The permissibility criterion, the certified relation <-> on W_0^J, and
connectivity verification with witness paths.

For a short datum (wtilde = t^mu w, J) and dominant lambda, the relation
z <->^gamma z' (z' = s_gamma z, both minimal coset representatives in
W_0^J) holds when z wtilde z^{-1} s_gamma and s_gamma z wtilde z^{-1} both
lie in Adm(lambda) and gamma is z wtilde z^{-1}-permissible.  Connectivity
of the resulting graph is the combinatorial core of the component-count
theorem; this module certifies every edge and can also replay the explicit
chain construction used in the simply-laced case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .root_data import RootDatum, Vec, retain_id, vadd, vdot, vneg, vsub
from .weyl import (FiniteWeyl, length as weyl_length, min_coset_reps,
                   reduced_word, root_orbit, root_reflection,
                   simple_reflection, weyl_identity)
from .affine import ExtAffine, engine, finite
from .admissible import adm_contains
from .sigma import ShortDatum


def conj(z: FiniteWeyl, x: ExtAffine, datum: RootDatum) -> ExtAffine:
    """z x z^{-1} for finite z."""
    zf = finite(z, datum)
    return zf * x * zf.inverse()


_conj_cache: dict = {}


def _conj_wtilde(sd: ShortDatum, z: FiniteWeyl) -> ExtAffine:
    key = (retain_id(sd), z)
    out = _conj_cache.get(key)
    if out is None:
        if len(_conj_cache) > 500_000:
            _conj_cache.clear()
        out = _conj_cache[key] = conj(z, sd.wtilde, sd.datum)
    return out


def _is_positive_root(a: Vec) -> bool:
    return any(c > 0 for c in a)


def root_leq_J(datum: RootDatum, a: Vec, b: Vec, J: Iterable[int]) -> bool:
    """a <=_J b for roots: b - a is a nonnegative sum of simple roots in J."""
    Jset = set(J)
    diff = vsub(b, a)
    return all(c >= 0 for c in diff) and \
        all(i in Jset for i, c in enumerate(diff) if c != 0)


def max_elements_J(datum: RootDatum, roots: Iterable[Vec], J: Iterable[int]) -> tuple:
    """Maximal elements of a set of roots under <=_J, in deterministic order."""
    roots = sorted(set(map(tuple, roots)),
                   key=lambda a: (datum.root_height(a), a))
    out = [a for a in roots
           if not any(b != a and root_leq_J(datum, a, b, J) for b in roots)]
    return tuple(out)


# -------------------------------------------------------------- permissibility


_perm_cache: dict = {}


def _perm_data(sd: ShortDatum, z: FiniteWeyl):
    """z-dependent permissibility data: (z(mu), zwz^{-1}, its inverse,
    the set z(Phi_J^+))."""
    key = (retain_id(sd), z)
    out = _perm_cache.get(key)
    if out is None:
        datum = sd.datum
        mu1 = z.coweight(sd.mu)
        w1 = z * sd.w * z.inverse()
        zlevi = frozenset(z.root(a)
                          for a in datum.levi_positive_roots(sd.J))
        if len(_perm_cache) > 500_000:
            _perm_cache.clear()
        out = _perm_cache[key] = (mu1, w1, w1.inverse(), zlevi)
    return out


def is_permissible(sd: ShortDatum, z: FiniteWeyl, alpha: Vec):
    """(permissible?, index of the first failing condition or None).

    With mu' = z(mu) and w' = z w z^{-1}, alpha in Phi^+ - z(Phi_J) is
    permissible for z wtilde z^{-1} iff one of these fails:
      (1) <mu', alpha> = <mu', w'(alpha)> = 0;
      (2) w'(alpha), w'^{-1}(alpha) < 0;
      (3) alpha + w'(alpha), alpha + w'^{-1}(alpha) in Phi^+;
      (4) <alpha^vee, w'(alpha)> = -1.
    """
    datum = sd.datum
    alpha = tuple(alpha)
    if alpha not in set(datum.positive_roots):
        raise ValueError("alpha must be a positive root")
    mu1, w1, w1i, zlevi = _perm_data(sd, z)
    if alpha in zlevi or vneg(alpha) in zlevi:
        raise ValueError("permissibility undefined for alpha in z(Phi_J)")
    wa = w1.root(alpha)
    wia = w1i.root(alpha)
    conds = (
        vdot(mu1, alpha) == 0 and vdot(mu1, wa) == 0,
        (not _is_positive_root(wa)) and (not _is_positive_root(wia)),
        (datum.is_root(vadd(alpha, wa)) and _is_positive_root(vadd(alpha, wa))
         and datum.is_root(vadd(alpha, wia))
         and _is_positive_root(vadd(alpha, wia))),
        vdot(datum.coroot(alpha), wa) == -1,
    )
    for i, c in enumerate(conds):
        if not c:
            return True, i + 1
    return False, None


def permissibility_symmetry_check(sd: ShortDatum, z: FiniteWeyl, alpha: Vec) -> bool:
    """is_permissible is invariant under z -> s_alpha z (both sides in
    W_0^J); asserts the agreement and returns the shared value."""
    datum = sd.datum
    other = root_reflection(datum, alpha) * z
    p1, _ = is_permissible(sd, z, alpha)
    p2, _ = is_permissible(sd, other, alpha)
    if p1 != p2:
        raise AssertionError(
            f"permissibility not symmetric at z={reduced_word(datum, z)}, "
            f"alpha={alpha}: {p1} vs {p2}")
    return p1


# ------------------------------------------------------------------- edges


@dataclass(frozen=True)
class EdgeCert:
    """A certified edge z <->^gamma z' with z' = s_gamma z."""

    z: FiniteWeyl
    zprime: FiniteWeyl
    gamma: Vec
    adm_right: bool   # z wtilde z^{-1} s_gamma in Adm(lambda)
    adm_left: bool    # s_gamma z wtilde z^{-1} in Adm(lambda)
    permissible: bool


def edge(sd: ShortDatum, lam: Vec, z: FiniteWeyl, gamma: Vec) -> Optional[EdgeCert]:
    """The certified edge z <->^gamma s_gamma z, or None if any of the three
    conditions fails (absence is a value, not an error)."""
    datum = sd.datum
    gamma = tuple(gamma)
    s = root_reflection(datum, gamma)
    zp = s * z
    if zp == z:
        return None
    x = _conj_wtilde(sd, z)
    sg = finite(s, datum)
    try:
        perm, _ = is_permissible(sd, z, gamma)
    except ValueError:
        return None
    if not perm:
        return None
    right = adm_contains(datum, lam, x * sg)
    if not right:
        return None
    left = adm_contains(datum, lam, sg * x)
    if not left:
        return None
    return EdgeCert(z, zp, gamma, right, left, perm)


# ------------------------------------------------------------------- graph


@dataclass
class ConnectivityGraph:
    """All certified edges between minimal coset representatives."""

    sd: ShortDatum
    lam: Vec
    vertices: tuple = field(default=())
    edges: tuple = field(default=())

    def neighbors(self, z: FiniteWeyl):
        for e in self.edges:
            if e.z == z:
                yield e.zprime, e
            elif e.zprime == z:
                yield e.z, e

    def to_dot(self) -> str:
        datum = self.sd.datum
        name = {z: "w" + "".join(map(str, reduced_word(datum, z)))
                for z in self.vertices}
        lines = ["graph connectivity {"]
        for z in self.vertices:
            lines.append(f'  "{name[z]}";')
        for e in self.edges:
            lines.append(f'  "{name[e.z]}" -- "{name[e.zprime]}" '
                         f'[label="{list(e.gamma)}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        datum = self.sd.datum
        idx = {z: i for i, z in enumerate(self.vertices)}
        return {
            "schema": 1,
            "lambda": list(self.lam),
            "short": self.sd.to_json(),
            "vertices": [list(reduced_word(datum, z)) for z in self.vertices],
            "edges": [{"z": idx[e.z], "zprime": idx[e.zprime],
                       "gamma": list(e.gamma)} for e in self.edges],
        }


def build_graph(sd: ShortDatum, lam: Vec) -> ConnectivityGraph:
    datum = sd.datum
    verts = min_coset_reps(datum, sd.J)
    vset = set(verts)
    pos = sorted(datum.positive_roots, key=lambda a: (datum.root_height(a), a))
    idx = {z: i for i, z in enumerate(verts)}
    edges = []
    seen = set()
    for z in verts:
        for gamma in pos:
            zp = root_reflection(datum, gamma) * z
            if zp not in vset or zp == z:
                continue
            key = tuple(sorted((idx[z], idx[zp]))) + (gamma,)
            if key in seen:
                continue
            seen.add(key)
            e = edge(sd, lam, z, gamma)
            if e is not None:
                edges.append(e)
    return ConnectivityGraph(sd, tuple(lam), verts, tuple(edges))


def _bfs(graph: ConnectivityGraph, start: FiniteWeyl):
    """Witness paths (lists of EdgeCert) from start to every reachable vertex;
    deterministic: vertices in canonical order, shortest paths first."""
    paths = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for z in frontier:
            for other, e in graph.neighbors(z):
                if other not in paths:
                    paths[other] = paths[z] + (e,)
                    nxt.append(other)
        frontier = nxt
    return paths


def find_descent(sd: ShortDatum, lam: Vec, z: FiniteWeyl,
                 graph: Optional[ConnectivityGraph] = None):
    """(gamma, path) with z s_gamma < z in W_0^J and an explicit <->-chain
    from z to z s_gamma; raises with a counterexample report if none exists."""
    datum = sd.datum
    if z.is_identity():
        raise ValueError("z must be nontrivial")
    if graph is None:
        graph = build_graph(sd, lam)
    paths = _bfs(graph, z)
    lz = weyl_length(datum, z)
    vset = set(graph.vertices)
    for gamma in sorted(datum.positive_roots,
                        key=lambda a: (datum.root_height(a), a)):
        target = z * root_reflection(datum, gamma)
        if target not in vset or weyl_length(datum, target) >= lz:
            continue
        if target in paths:
            return tuple(gamma), paths[target]
    raise AssertionError(
        f"no descent for z={reduced_word(datum, z)}: connectivity fails")


def verify_hyp_prime(sd: ShortDatum, lam: Vec) -> dict:
    """Connectivity of the full graph from the identity vertex, with a
    per-vertex witness path and the edge-certificate ledger."""
    datum = sd.datum
    graph = build_graph(sd, lam)
    paths = _bfs(graph, weyl_identity(datum))
    missing = [z for z in graph.vertices if z not in paths]
    return {
        "connected": not missing,
        "graph": graph,
        "witness_paths": paths,
        "missing": tuple(missing),
        "n_vertices": len(graph.vertices),
        "n_edges": len(graph.edges),
    }


# --------------------------------------------------------------- Xi sets


def xi_sets(sd: ShortDatum, lam: Vec):
    """(Xi_1^+(mu), Xi^+(lambda, mu)); the first is contained in the second
    (asserted).  alpha_J denotes the J-antidominant W_J-conjugate."""
    datum = sd.datum
    J = sd.J
    xi1, xi = [], []
    for a in datum.positive_roots:
        aJ = datum.antidominant_root_rep(a, J)
        if datum.preceq(vadd(sd.mu, datum.coroot(aJ)), lam):
            xi.append(a)
        if datum.support(a) <= J:
            continue
        if vdot(sd.mu, aJ) == -1:
            xi1.append(a)
    assert set(xi1) <= set(xi), "Xi_1^+ not contained in Xi^+"
    return tuple(xi1), tuple(xi)


# --------------------------------------------- simply-laced chain machinery


def is_simply_laced(datum: RootDatum) -> bool:
    c = datum.cartan
    n = datum.rank
    return all(c[i][j] in (0, -1) for i in range(n) for j in range(n) if i != j)


def seq_case(datum: RootDatum, mu: Vec, alpha_idx: int, beta_idx: int):
    """Classify the geodesic configuration (alpha, beta): returns
    (tag, delta_path, xi, eps) with tag in {"1", "2", "3"}, delta_path the
    geodesic indices from beta to alpha, xi the pair of off-path attaching
    nodes (tags 2/3) and eps the doubled node (tag 3)."""
    path = datum.dynkin_path(beta_idx, alpha_idx)
    delta = [datum.simple_roots[i] for i in path]
    v = tuple(mu)
    for a in delta:
        v = vadd(v, datum.coroot(a))
    if datum.is_weakly_dominant(v):
        return "1", tuple(path), None, None
    if not (datum.type_label == "E" and datum.rank == 8):
        raise AssertionError(
            f"geodesic case unmatched outside E8: mu={mu}, path={path}")
    # 0-indexed Bourbaki nodes: alpha_i <-> index i-1
    if beta_idx == 3:       # beta = alpha_4
        xi = (1, 4) if alpha_idx == 0 else (1, 2)
        return "2", tuple(path), xi, None
    if beta_idx == 4:       # beta = alpha_5
        return "3", tuple(path), (1, 2), 3
    raise AssertionError(f"unrecognized E8 configuration: beta index {beta_idx}")


def _eta_sequence(datum: RootDatum, tag: str, path, xi, eps):
    """The eta_1..eta_n node sequence for the given case and xi order."""
    if tag == "1":
        return tuple(path)
    if tag == "2":
        return (path[0], xi[0], xi[1]) + tuple(path)
    return (path[0], eps, xi[0], xi[1], eps) + tuple(path)


@dataclass
class ChainDossier:
    """All intermediate data of the simply-laced chain construction."""

    alpha_idx: int
    beta_idx: int
    tag: str
    path: tuple
    eta: tuple          # node indices eta_1..eta_n
    theta: Vec
    i0: int
    delta: Vec          # the root eta_n + ... + eta_{i0+1}
    gamma: Vec
    ladder: tuple       # z_0..z_{i0}
    ladder_prime: tuple
    chain: tuple        # EdgeCerts from z to z s_gamma


def simply_laced_chain_builder(sd: ShortDatum, lam: Vec, z: FiniteWeyl) -> ChainDossier:
    """The constructive descent chain for simply-laced root systems when
    Xi^+(lambda, mu) has no member sent negative by z.

    Builds the geodesic data, the eta-sequence, i_0, delta, gamma and the
    two coset ladders, validates the supporting properties (the
    gamma-vs-delta pairing equalities, ladder membership in W_0^J, and the
    permissibility disjunction), and certifies the resulting chain of
    <->-edges from z to z s_gamma.
    """
    datum = sd.datum
    if not is_simply_laced(datum):
        raise ValueError("chain construction requires a simply-laced system")
    if z.is_identity():
        raise ValueError("z must be nontrivial")
    _, xi = xi_sets(sd, lam)
    dprime = [a for a in xi if not _is_positive_root(z.root(a))]
    if dprime:
        raise ValueError(
            "Xi^+ meets z^{-1}(Phi^-): use the single-edge descent branch")
    mu = sd.mu
    d1 = [i for i in range(datum.rank)
          if not _is_positive_root(z.root(datum.simple_roots[i]))]
    d2 = [i for i in range(datum.rank) if vdot(mu, datum.simple_roots[i]) == -1]
    if not d1 or not d2:
        raise ValueError("empty D_1 or D_2: hypotheses unmet")
    a_idx, b_idx = min(((i, j) for i in d1 for j in d2),
                       key=lambda p: (datum.dist(p[0], p[1]), p))
    tag, path, xi_pair, eps = seq_case(datum, mu, a_idx, b_idx)

    def attempt(xi_order):
        eta = _eta_sequence(datum, tag, path, xi_order, eps)
        n = len(eta)
        # partial sums eta_n + ... + eta_{i+1}
        i0 = None
        for i in range(1, n):
            tail = (0,) * datum.rank
            for j in range(i, n):
                tail = vadd(tail, datum.simple_roots[eta[j]])
            if not _is_positive_root(z.root(tail)):
                i0 = i
                delta = tail
                break
        if i0 is None:
            return None
        # condition (*) on the exchangeable xi order
        crit = 4 if tag == "3" else 3 if tag == "2" else None
        if crit is not None and i0 == crit:
            for k in (i0, i0 - 1):
                probe = vadd(delta, datum.simple_roots[eta[k - 1]])
                if not _is_positive_root(z.root(probe)):
                    return None
        return eta, i0, delta

    orders = [xi_pair] if xi_pair is None else [xi_pair, xi_pair[::-1]]
    res = next((r for o in orders if (r := attempt(o)) is not None), None)
    if res is None:
        raise AssertionError("no xi ordering satisfies the descent condition")
    eta, i0, delta = res
    theta = (0,) * datum.rank
    for j in eta:
        theta = vadd(theta, datum.simple_roots[j])

    # gamma: maximal W_J-conjugate of delta with gamma >=_J delta, z(gamma) < 0
    cands = [g for g in root_orbit(datum, delta, sd.J)
             if root_leq_J(datum, delta, g, sd.J)
             and not _is_positive_root(z.root(g))]
    if not cands:
        raise AssertionError("no admissible W_J-conjugate gamma of delta")
    gammas = max_elements_J(datum, cands, sd.J)
    gamma = gammas[-1]

    # supporting properties: eta_{i0} not in supp(gamma - delta) and the
    # pairing equalities along the ladder
    diff = vsub(gamma, delta)
    assert diff[eta[i0 - 1]] == 0, "eta_{i0} occurs in gamma - delta"
    for i in range(1, i0 + 1):
        ei = datum.simple_roots[eta[i - 1]]
        assert vdot(datum.coroot(ei), gamma) == vdot(datum.coroot(ei), delta)

    sg = root_reflection(datum, gamma)
    # z_i = z s_{eta_i} ... s_{eta_1} = s_{z(eta_i)} z_{i-1}, and likewise
    # with z s_gamma in place of z
    ladder = [z]
    ladder_p = [z * sg]
    for i in range(1, i0 + 1):
        ei = datum.simple_roots[eta[i - 1]]
        ladder.append(root_reflection(datum, z.root(ei)) * ladder[-1])
        ladder_p.append(root_reflection(datum, (z * sg).root(ei)) * ladder_p[-1])
    def is_min_rep(u):
        return all(_is_positive_root(u.root(datum.simple_roots[j]))
                   for j in sd.J)

    for i in range(1, i0 + 1):
        ei = datum.simple_roots[eta[i - 1]]
        assert _is_positive_root(z.root(ei)) and \
            _is_positive_root((z * sg).root(ei)), "ladder root turned negative"
        assert is_min_rep(ladder[i]) and is_min_rep(ladder_p[i]), \
            "ladder left the minimal coset representatives"

    chain = []
    for i in range(1, i0 + 1):
        ei = datum.simple_roots[eta[i - 1]]
        e1 = edge(sd, lam, ladder[i - 1], z.root(ei))
        e2 = edge(sd, lam, ladder_p[i - 1], (z * sg).root(ei))
        assert e1 is not None and e2 is not None, "ladder edge not certified"
        assert e1.zprime == ladder[i] and e2.zprime == ladder_p[i]
        chain.append(e1)
        chain.append(e2)
    bridge = edge(sd, lam, ladder[i0], vneg(z.root(gamma)))
    assert bridge is not None and bridge.zprime == ladder_p[i0], \
        "bridge edge not certified"
    chain.append(bridge)
    return ChainDossier(a_idx, b_idx, tag, path, eta, theta, i0, delta,
                        gamma, tuple(ladder), tuple(ladder_p), tuple(chain))
