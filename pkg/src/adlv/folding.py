"""Realizing a non-simply-laced group inside the fixed points of a diagram
involution of a simply-laced one, plus the explicit G_2 chain suite.

For an ambient simply-laced system (type A with an odd number of nodes,
type D, or E_6) with diagram involution iota, the folded system has simple
roots underline(alpha) = (alpha + iota(alpha))/2 indexed by iota-orbits.
In the orbit-sum coordinates used here, underline(a) is the integer vector
of orbit sums of a's coefficients, so no half-integers ever appear.
Reflections fold as r_a = s_a s_{iota(a)} (commuting factors) when a is
not iota-fixed, and the Bruhat order of the ambient extended affine Weyl
group restricts to the folded one on iota-fixed elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .root_data import (RootDatum, Vec, _frac_inverse, datum_from_cartan,
                        root_datum, vadd, vdot, vneg, vsub)
from .weyl import (FiniteWeyl, min_coset_reps, parabolic_elements,
                   reduced_word, root_reflection, simple_reflection,
                   weyl_group, weyl_identity)
from .affine import ExtAffine, engine, finite, translation
from .admissible import adm_contains
from .sigma import ShortDatum
from .connectivity import _is_positive_root, max_elements_J


def _iota_for(type_label: str, rank: int) -> tuple:
    if type_label == "A":
        if rank % 2 == 0:
            raise ValueError("type A folding needs an odd number of nodes")
        return tuple(rank - 1 - i for i in range(rank))
    if type_label == "D":
        return tuple(range(rank - 2)) + (rank - 1, rank - 2)
    if type_label == "E" and rank == 6:
        return (5, 1, 4, 3, 2, 0)
    raise ValueError(f"no standard involution for {type_label}{rank}")


@dataclass(frozen=True)
class FoldingDatum:
    ambient: RootDatum = field(repr=False)
    iota: tuple
    orbits: tuple           # orbit tuples, ordered by smallest member
    folded: RootDatum = field(repr=False)

    # ------------------------------------------------------- basic maps

    def orbit_of(self, i: int) -> int:
        for k, o in enumerate(self.orbits):
            if i in o:
                return k
        raise ValueError(i)

    def iota_root(self, a: Vec) -> Vec:
        p = self.iota
        out = [0] * len(a)
        for i, c in enumerate(a):
            out[p[i]] = c
        return tuple(out)

    iota_coweight = iota_root  # both act by the same coordinate permutation

    def iota_weyl(self, w: FiniteWeyl) -> FiniteWeyl:
        n = self.ambient.rank
        p = self.iota
        m = tuple(tuple(w.m[p[i]][p[j]] for j in range(n)) for i in range(n))
        mi = tuple(tuple(w.minv[p[i]][p[j]] for j in range(n))
                   for i in range(n))
        return FiniteWeyl(m, mi)

    def fold_root(self, a: Vec) -> Vec:
        """underline(a) in orbit-sum coordinates (always integral)."""
        return tuple(sum(a[i] for i in o) for o in self.orbits)

    def fold_coweight(self, v: Vec) -> Vec:
        assert tuple(v) == self.iota_coweight(v), "coweight not iota-fixed"
        return tuple(v[o[0]] for o in self.orbits)

    def unfold_coweight(self, vb: Vec) -> Vec:
        out = [0] * self.ambient.rank
        for k, o in enumerate(self.orbits):
            for i in o:
                out[i] = vb[k]
        return tuple(out)

    def fold_weyl(self, w: FiniteWeyl) -> FiniteWeyl:
        assert self.iota_weyl(w) == w, "element not iota-fixed"
        r = len(self.orbits)
        cols = [self.fold_coweight(w.coweight(self.unfold_coweight(
            tuple(int(j == k) for j in range(r))))) for k in range(r)]
        m = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
        mi = tuple(tuple(int(x) for x in row) for row in _frac_inverse(m))
        return FiniteWeyl(m, mi)

    def unfold_weyl(self, wb: FiniteWeyl) -> FiniteWeyl:
        out = weyl_identity(self.ambient)
        for k in reduced_word(self.folded, wb):
            out = out * self.underline_reflection(
                self.ambient.simple_roots[self.orbits[k][0]])
        return out

    def fold_element(self, x: ExtAffine) -> ExtAffine:
        return ExtAffine(self.fold_coweight(x.mu), self.fold_weyl(x.w))

    def unfold_element(self, xb: ExtAffine) -> ExtAffine:
        return ExtAffine(self.unfold_coweight(xb.mu), self.unfold_weyl(xb.w))

    def underline_reflection(self, gamma: Vec) -> FiniteWeyl:
        """r_gamma = s_gamma s_{iota(gamma)} (= s_gamma when iota-fixed)."""
        gamma = tuple(gamma)
        ig = self.iota_root(gamma)
        s = root_reflection(self.ambient, gamma)
        if ig == gamma:
            return s
        return s * root_reflection(self.ambient, ig)

    def unfold_nodes(self, Jb: Iterable[int]) -> frozenset:
        return frozenset(j for k in Jb for j in self.orbits[k])

    def fold_nodes(self, Jp: Iterable[int]) -> frozenset:
        Jp = frozenset(Jp)
        if Jp != frozenset(self.iota[j] for j in Jp):
            raise ValueError("node set is not iota-stable")
        return frozenset(self.orbit_of(j) for j in Jp)


_foldings: dict = {}


def folding(type_label: str, rank: int) -> FoldingDatum:
    """The standard fold of the given simply-laced ambient type."""
    key = (type_label.upper(), rank)
    if key in _foldings:
        return _foldings[key]
    ambient = root_datum(type_label, rank)
    iota = _iota_for(type_label.upper(), rank)
    if iota == tuple(range(rank)):
        raise ValueError("involution is trivial")
    seen, orbits = set(), []
    for i in range(rank):
        if i in seen:
            continue
        o = (i,) if iota[i] == i else (i, iota[i])
        seen.update(o)
        orbits.append(o)
    orbits = tuple(orbits)
    # folded Cartan from the ambient inner product, computed on the doubled
    # underline roots U_o = alpha_i + alpha_{iota(i)} (scale cancels)
    c = ambient.cartan

    def ip(x, y):
        return sum(x[i] * c[i][j] * y[j]
                   for i in range(rank) for j in range(rank))

    U = [tuple((2 // len(o)) * int(i in o) for i in range(rank))
         for o in orbits]
    fc = tuple(tuple(2 * ip(U[a], U[b]) // ip(U[a], U[a])
                     for b in range(len(orbits)))
               for a in range(len(orbits)))
    folded = datum_from_cartan(fc, type_label=f"{type_label}{rank}fold")
    fd = FoldingDatum(ambient, iota, orbits, folded)
    # sanity: the underline image of the ambient roots is the folded root
    # set, and distinct iota-partners are orthogonal
    img = {fd.fold_root(a) for a in ambient.roots}
    assert img == frozenset(folded.roots), \
        "underline image is not the folded root system"
    for a in ambient.positive_roots:
        ia = fd.iota_root(a)
        if ia != a:
            assert vdot(ambient.coroot(a), ia) == 0
    _foldings[key] = fd
    return fd


# ------------------------------------------------------------- wedge, A_phi


def wedge(chi: Vec, chi2: Vec) -> Vec:
    """Coefficient-wise minimum in simple-root coordinates."""
    return tuple(min(a, b) for a, b in zip(chi, chi2))


def in_levi_lattice(datum: RootDatum, phi: Vec, J: Iterable[int]) -> bool:
    Jset = frozenset(J)
    return all(i in Jset for i, c in enumerate(phi) if c != 0)


def a_phi(fd: FoldingDatum, z: FiniteWeyl, Jp: Iterable[int], phi: Vec):
    """(the set A_phi, its unique J'-antidominant member or None) where
    A_phi = {gamma in Phi' : z(gamma) < 0, gamma - phi in Z Phi'_{J'}}."""
    amb = fd.ambient
    Jp = frozenset(Jp)
    if in_levi_lattice(amb, phi, Jp):
        raise ValueError("phi lies in the Levi root lattice")
    out = frozenset(
        g for g in amb.roots
        if not _is_positive_root(z.root(g))
        and in_levi_lattice(amb, vsub(g, phi), Jp))
    if not out:
        return out, None
    anti = [g for g in out
            if all(vdot(amb.coroot(amb.simple_roots[j]), g) <= 0
                   for j in Jp)]
    assert len(anti) == 1, f"J'-antidominant member not unique: {anti}"
    return out, anti[0]


_reps_cache: dict = {}


def folded_coset_reps(fd: FoldingDatum, Jp: Iterable[int]) -> tuple:
    """iota-fixed minimal coset representatives in (W_0')^{J'}, enumerated
    through the folded Weyl group (never the ambient one)."""
    amb = fd.ambient
    Jp = frozenset(Jp)
    if Jp != frozenset(fd.iota[j] for j in Jp):
        raise ValueError("J' must be iota-stable")
    key = (amb.type_label, amb.rank, Jp)
    hit = _reps_cache.get(key)
    if hit is not None:
        return hit
    out = []
    for wb in weyl_group(fd.folded):
        z = fd.unfold_weyl(wb)
        if all(_is_positive_root(z.root(amb.simple_roots[j])) for j in Jp):
            out.append(z)
    reps = tuple(sorted(
        out, key=lambda z: (len(reduced_word(amb, z)), reduced_word(amb, z))))
    _reps_cache[key] = reps
    return reps


def _is_min_rep(datum: RootDatum, z: FiniteWeyl, J: Iterable[int]) -> bool:
    return all(_is_positive_root(z.root(datum.simple_roots[j])) for j in J)


def lemma_o3_selector(fd: FoldingDatum, z: FiniteWeyl, Jp: Iterable[int],
                      phi: Vec):
    """A root gamma with z s_gamma and z r_gamma both minimal coset
    representatives: case 1 applies when A_phi has an iota-fixed wedge
    target, case 2 when A_{phi + iota(phi)} is empty; returns (gamma, case)."""
    amb = fd.ambient
    Jp = frozenset(Jp)
    aset, _ = a_phi(fd, z, Jp, phi)
    if not aset:
        raise ValueError("A_phi is empty")
    maxs = max_elements_J(amb, aset, Jp)
    afix = frozenset(g for g in aset if fd.iota_root(g) == g)
    if afix:
        maxfix = frozenset(max_elements_J(amb, afix, Jp))
        picks = [g for g in maxs if wedge(g, fd.iota_root(g)) in maxfix]
        if not picks:
            raise AssertionError("no maximal gamma with maximal wedge")
        gamma, case = picks[0], 1
    else:
        phi2 = vadd(phi, fd.iota_root(phi))
        if not in_levi_lattice(amb, phi2, Jp):
            a2, _ = a_phi(fd, z, Jp, phi2)
            if a2:
                raise ValueError("neither selector case applies")
        gamma, case = maxs[0], 2
    for s in (root_reflection(amb, gamma), fd.underline_reflection(gamma)):
        assert _is_min_rep(amb, z * s, Jp), \
            "selector output left the coset minima"
    return gamma, case


def lemma_o0_decompose(fd: FoldingDatum, z: FiniteWeyl, Jp: Iterable[int],
                       alpha: Vec, gamma: Vec) -> FiniteWeyl:
    """u = y iota(y) with iota(u) = u and u(alpha) = gamma, for gamma in
    A_alpha when alpha is not iota-fixed and A_{alpha+iota(alpha)} is
    empty; y lives in the parabolic on the non-iota-fixed part of J'."""
    amb = fd.ambient
    Jp = frozenset(Jp)
    alpha, gamma = tuple(alpha), tuple(gamma)
    if fd.iota_root(alpha) == alpha:
        raise ValueError("alpha must not be iota-fixed")
    if alpha not in amb.simple_roots:
        raise ValueError("alpha must be simple")
    i_a = amb.simple_roots.index(alpha)
    if i_a in Jp or _is_positive_root(z.root(alpha)):
        raise ValueError("alpha must be outside J' with z(alpha) negative")
    path = amb.dynkin_path(i_a, fd.iota[i_a])
    if len(path) % 2 == 0 or not set(path[1:-1]) <= Jp:
        raise ValueError("geodesic to iota(alpha) not of the required shape")
    a2, _ = a_phi(fd, z, Jp, vadd(alpha, fd.iota_root(alpha)))
    if a2:
        raise ValueError("A_{alpha+iota(alpha)} must be empty")
    aset, _ = a_phi(fd, z, Jp, alpha)
    if gamma not in aset:
        raise ValueError("gamma not in A_alpha")
    fixed = frozenset(i for i in range(amb.rank) if fd.iota[i] == i)
    assert not (amb.support(gamma) & fixed), \
        "support of gamma meets the iota-fixed nodes"
    moving = sorted(Jp - fixed)
    # find y in the parabolic on `moving` with y(alpha) = gamma
    frontier = {alpha: weyl_identity(amb)}
    boundary = [alpha]
    while boundary and gamma not in frontier:
        nxt = []
        for a in boundary:
            for j in moving:
                s = simple_reflection(amb, j)
                b = s.root(a)
                if b not in frontier:
                    frontier[b] = s * frontier[a]
                    nxt.append(b)
        boundary = nxt
    if gamma not in frontier:
        raise AssertionError("gamma is not conjugate to alpha under the "
                             "non-fixed part of the Levi")
    y = frontier[gamma]
    u = y * fd.iota_weyl(y)
    assert fd.iota_weyl(u) == u and u.root(alpha) == gamma, \
        "decomposition u = y iota(y) failed"
    return u


# ----------------------------------------------------------- chain replaying


def lemma_o5_check(fd: FoldingDatum, sd: ShortDatum, lam: Vec,
                   z: FiniteWeyl, gamma: Vec) -> dict:
    """Certify z wtilde r_gamma z^{-1} in Adm(lambda) of the folded group
    by replaying the relevant inequality chain through the ambient Bruhat
    engine.

    sd and lam live in the FOLDED datum; z and gamma are ambient, with z
    iota-fixed minimal on the unfolded J'.  Returns a report carrying the
    chain, the case tag, the chain verdict, and an independent folded-side
    Adm membership computed without the chain.
    """
    amb = fd.ambient
    fold = fd.folded
    eng = engine(amb)
    gamma = tuple(gamma)
    ig = fd.iota_root(gamma)
    Jp = fd.unfold_nodes(sd.J)
    mu_amb = fd.unfold_coweight(sd.mu)
    wt_amb = ExtAffine(mu_amb, fd.unfold_weyl(sd.w))
    zf = finite(z, amb)
    rg = finite(fd.underline_reflection(gamma), amb)
    target = zf * wt_amb * rg * zf.inverse()
    # independent certificate: fold the target and test folded membership
    direct = adm_contains(fold, lam, fd.fold_element(target))

    def tr(v):
        return translation(v, amb)

    def refl(a):
        return finite(root_reflection(amb, a), amb)

    gJ_f = fd.fold_root(amb.antidominant_root_rep(gamma, Jp))

    def find_u(chi_f):
        # u in the folded W_J with u^{-1}(chi_f) = fold gamma_{J'}
        u_f = next((u for u in parabolic_elements(fold, sd.J)
                    if u.inverse().root(chi_f) == gJ_f), None)
        assert u_f is not None, "no u in W_J aligning gamma_{J'}"
        return fd.unfold_weyl(u_f)

    if ig == gamma:
        umu = find_u(fd.fold_root(gamma)).coweight(mu_amb)
        top = tr(z.coweight(vadd(umu, amb.coroot(gamma))))
        chain = [top, target]
        case = "fixed"
    else:
        zeta = wedge(gamma, ig)
        eps = vsub(gamma, zeta)
        if not amb.is_root(zeta):
            raise ValueError("gamma wedge iota(gamma) is not a root")
        umu = find_u(fd.fold_root(zeta)).coweight(mu_amb)
        s1 = vdot(umu, vadd(zeta, vadd(eps, fd.iota_root(eps))))
        if s1 >= 1:
            case = "1"
            A = tr(z.coweight(vadd(umu, amb.coroot(zeta))))
            B = tr(z.coweight(umu)) * refl(z.root(zeta))
            C = B * refl(z.root(vadd(zeta, vadd(eps, fd.iota_root(eps)))))
            chain = [A, B, C, target]
        elif vdot(umu, vadd(zeta, eps)) >= 0:
            case = "2"
            A = tr(z.coweight(vadd(umu, amb.coroot(zeta))))
            B1 = tr(z.coweight(umu)) * refl(z.root(zeta))
            B2 = B1 * refl(z.root(eps))
            B3 = B2 * refl(z.root(fd.iota_root(eps)))
            B4 = B3 * refl(z.root(vneg(zeta)))
            chain = [A, B1, B2, B3, B4, target]
        else:
            assert vdot(umu, gamma) == -1 and vdot(umu, eps) == 0, \
                "pairings match none of the three chain cases"
            case = "3"
            A = tr(z.coweight(umu))
            B = A * refl(z.root(vneg(gamma))) * refl(z.root(vneg(ig)))
            chain = [A, B, target]
    chain_ok = all(eng.bruhat_leq(chain[i + 1], chain[i])
                   for i in range(len(chain) - 1))
    top_ok = adm_contains(fold, lam, fd.fold_element(chain[0]))
    return {"case": case, "ok": bool(chain_ok and top_ok), "chain": chain,
            "chain_ok": chain_ok, "top_in_adm": top_ok,
            "direct_membership": direct}


# ------------------------------------------------------------ G_2 chain suite


def _g2_chain_data():
    """(alpha, beta, gamma_i, delta_i) of the G_2 argument, 0-indexed
    simple roots: alpha = long = index 0, beta = short = index 1."""
    alpha, beta = (1, 0), (0, 1)
    gam = [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)]        # J = {alpha}
    dlt = [(1, 0), (1, 1), (2, 3), (1, 2), (1, 3)]        # J = {beta}
    return alpha, beta, gam, dlt


def g2_chain_suite() -> dict:
    """Replays every displayed inequality chain of the G_2 argument through
    bruhat_leq, for J = {long simple}, J = {short simple} and J = empty.

    One record per chain, reporting the Bruhat verdict of the chain and an
    independent Adm-membership check of the chain's endpoint.
    """
    from .sigma import enumerate_short_data, hn_classify
    d = root_datum("G", 2)
    eng = engine(d)
    alpha, beta, gam, dlt = _g2_chain_data()
    av, bv = d.coroot(alpha), d.coroot(beta)
    report = {"chains": [], "all_pass": True}

    def tr(v):
        return translation(v, d)

    def refl(a):
        return finite(root_reflection(d, a), d)

    def record(tag, chain, lam, target):
        assert chain[-1] == target
        chain_ok = all(eng.bruhat_leq(chain[i + 1], chain[i])
                       for i in range(len(chain) - 1))
        top_ok = adm_contains(d, lam, chain[0])
        direct = adm_contains(d, lam, target)
        rec = {"case": tag, "pass": bool(chain_ok and top_ok and direct),
               "chain_ok": chain_ok, "top_in_adm": top_ok,
               "direct_membership": direct}
        report["chains"].append(rec)
        if not rec["pass"]:
            report["all_pass"] = False

    def pick(J_want, increments):
        for sd in enumerate_short_data(d, low=-1, high=1):
            if sd.J != frozenset(J_want):
                continue
            for l1 in range(5):
                for l2 in range(5):
                    lam = (l1, l2)
                    if hn_classify(d, lam, sd).tag != "Irreducible":
                        continue
                    if all(d.preceq(vadd(sd.mu, inc), lam)
                           for inc in increments):
                        return sd, lam
        raise AssertionError(f"no usable short datum for J={set(J_want)}")

    # --- J = {alpha} (long): cases 1..5 on the gamma_i sign pattern
    sd, lam = pick({0}, [vadd(av, bv)])
    mu, wt = sd.mu, sd.wtilde
    assert vdot(mu, alpha) == 1 and vdot(mu, beta) >= 0
    seen = set()
    for z in min_coset_reps(d, sd.J):
        if z.is_identity():
            continue
        neg = [i for i, g in enumerate(gam)
               if not _is_positive_root(z.root(g))]
        assert neg == list(range(len(neg))), \
            "gamma sign pattern is not an initial interval"
        i = len(neg)
        seen.add(i)
        zf = finite(z, d)
        target = zf * wt * refl(gam[i - 1]) * zf.inverse()
        A = tr(z.coweight(vadd(mu, vadd(av, bv))))
        if i == 1:
            chain = [A, tr(z.coweight(vadd(mu, av))) * refl(z.root(beta)),
                     target]
        else:
            B1 = tr(z.coweight(mu)) * refl(z.root((1, 3)))
            if i == 2:
                chain = [A, B1, target]
            elif i == 3:
                B2 = B1 * refl(z.root((2, 3)))
                chain = [A, B1, B2, B2 * refl(z.root((1, 1))), target]
            elif i == 4:
                chain = [A, B1, B1 * refl(z.root(alpha)), target]
            else:
                B2 = B1 * refl(z.root((1, 2)))
                chain = [A, B1, B2, B2 * refl(z.root(alpha)), target]
        record(f"long-{i}", chain, lam, target)
    assert seen == {1, 2, 3, 4, 5}, f"missing long-node cases: {seen}"

    # --- J = {beta} (short): cases 1..5 on the delta_i sign pattern
    sd, lam = pick({1}, [av])
    mu, wt = sd.mu, sd.wtilde
    assert vdot(mu, beta) == 1 and vdot(mu, vadd(alpha, beta)) >= 0
    seen = set()
    for z in min_coset_reps(d, sd.J):
        if z.is_identity():
            continue
        neg = [i for i, g in enumerate(dlt)
               if not _is_positive_root(z.root(g))]
        assert neg == list(range(len(neg))), \
            "delta sign pattern is not an initial interval"
        i = len(neg)
        seen.add(i)
        zf = finite(z, d)
        target = zf * wt * refl(dlt[i - 1]) * zf.inverse()
        A = tr(z.coweight(vadd(mu, av)))
        B1 = tr(z.coweight(mu)) * refl(z.root(alpha))
        if i == 1:
            chain = [A, B1, target]
        elif i == 2:
            chain = [A, B1, B1 * refl(z.root((2, 3))), target]
        elif i == 3:
            chain = [A, B1, B1 * refl(z.root((1, 2))), target]
        elif i == 4:
            chain = [A, B1, B1 * refl(z.root((1, 3))), target]
        else:
            chain = [A, B1, B1 * refl(z.root(beta)), target]
        record(f"short-{i}", chain, lam, target)
    assert seen == {1, 2, 3, 4, 5}, f"missing short-node cases: {seen}"

    # --- J = empty: the three translation branches
    sd, lam = pick(set(), [av, vadd(av, bv)])
    mu, wt = sd.mu, sd.wtilde
    assert d.is_dominant(mu) and wt.is_translation()
    seen = set()
    for z in weyl_group(d):
        if z.is_identity():
            continue
        zf = finite(z, d)
        if not _is_positive_root(z.root(alpha)):
            tag, g = "empty-a", alpha
            chain = [tr(z.coweight(vadd(mu, av)))]
        elif not _is_positive_root(z.root((1, 3))):
            tag, g = "empty-a3b", (1, 3)
            chain = [tr(z.coweight(vadd(mu, vadd(av, bv))))]
        else:
            assert not _is_positive_root(z.root(beta))
            tag, g = "empty-b", beta
            top = tr(z.coweight(vadd(mu, vadd(av, bv))))
            # middle element: t^{z(mu)} s_{z(beta)} t^{z(alpha-vee)} s_{z(alpha)}
            chain = [top, top * refl(z.root((1, 3))),
                     tr(z.coweight(mu)) * refl(z.root(beta))
                     * tr(z.coweight(av)) * refl(z.root(alpha))]
        target = zf * wt * refl(g) * zf.inverse()
        chain.append(target)
        seen.add(tag)
        record(tag, chain, lam, target)
    assert seen == {"empty-a", "empty-a3b", "empty-b"}, \
        f"missing translation cases: {seen}"
    return report
