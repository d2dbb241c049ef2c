"""Combinatorial sigma-conjugacy data: short elements, Hodge-Newton
classification, the generator set C, and the component-group prediction.

A straight element x determines a class by its invariants (eta, dominant
Newton point).  The class has a canonical short representative
wtilde = t^mu w_K w_J living in the length-zero part of the Levi group on
J_nu = {simple nodes orthogonal to the dominant Newton point}, obtained
from x by conjugating with a minimal coset representative z in W_0^{J_nu}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .root_data import RootDatum, Vec, vadd, vdot, vneg, vsub
from .weyl import (FiniteWeyl, coset_min_rep, from_word, longest_element,
                   weyl_identity)
from .affine import (ExtAffine, engine, finite, is_straight, kottwitz,
                     newton_point, translation)
from .admissible import adm_contains


@dataclass(frozen=True)
class ShortDatum:
    """A short element wtilde = t^mu w_K w_J together with its derived data.

    nu is the (dominant) Newton point; J_nu its stabilizer nodes; J the
    union of connected components of J_nu where mu is noncentral;
    K = {j in J : <mu, alpha_j> = 0}; w = w_K w_J.
    """

    datum: RootDatum = field(repr=False)
    wtilde: ExtAffine
    mu: Vec
    nu: tuple
    J_nu: frozenset
    J: frozenset
    K: frozenset
    w: FiniteWeyl

    def validate(self) -> None:
        d = self.datum
        if tuple(self.wtilde.mu) != tuple(self.mu):
            raise ValueError("mu disagrees with the translation part")
        if not all(c >= 0 for c in self.nu):
            raise ValueError("Newton point not dominant")
        if frozenset(i for i, c in enumerate(self.nu) if c == 0) != self.J_nu:
            raise ValueError("J_nu is not the stabilizer of nu")
        if not engine(d, self.J_nu).is_omega(self.wtilde):
            raise ValueError("wtilde has positive length in the Levi")
        if not d.is_weakly_dominant(self.mu):
            raise ValueError("mu not weakly dominant")
        if not (d.is_levi_dominant(self.mu, self.J_nu)
                and d.is_levi_minuscule(self.mu, self.J_nu)):
            raise ValueError("mu not J_nu-dominant and J_nu-minuscule")
        if self.J != _noncentral_union(d, self.J_nu, self.mu):
            raise ValueError("J is not the noncentral component union")
        if self.K != frozenset(j for j in self.J if self.mu[j] == 0):
            raise ValueError("K is not the mu-stabilizer inside J")
        w = longest_element(d, self.K) * longest_element(d, self.J)
        if self.w != w or self.wtilde.w != w:
            raise ValueError("finite part is not w_K w_J")

    def to_json(self) -> dict:
        return {"mu": list(self.mu), "J": sorted(self.J), "K": sorted(self.K)}


def _noncentral_union(datum: RootDatum, J_nu: frozenset, mu: Vec) -> frozenset:
    out: set = set()
    for comp in datum.components_of(J_nu):
        if not datum.is_levi_central(mu, comp):
            out |= comp
    return frozenset(out)


def make_short_datum(datum: RootDatum, J_nu: Iterable[int], mu: Vec) -> ShortDatum:
    """Assemble the short datum with translation part mu for a class whose
    Newton stabilizer is J_nu; validates all consistency conditions."""
    J_nu = frozenset(J_nu)
    mu = tuple(mu)
    J = _noncentral_union(datum, J_nu, mu)
    K = frozenset(j for j in J if mu[j] == 0)
    w = longest_element(datum, K) * longest_element(datum, J)
    wtilde = ExtAffine(mu, w)
    nu = newton_point(datum, wtilde)
    sd = ShortDatum(datum, wtilde, mu, nu, J_nu, J, K, w)
    sd.validate()
    return sd


def short_from_straight(datum: RootDatum, x: ExtAffine):
    """(ShortDatum, z) with z in W_0^{J_nu}, z(nu_bar) = nu_x and
    wtilde = z^{-1} x z short."""
    if not is_straight(datum, x):
        raise ValueError("input element is not straight")
    nu = newton_point(datum, x)
    nubar, word = datum.dominant_rep(nu)
    J_nu = frozenset(i for i, c in enumerate(nubar) if c == 0)
    # from_word(word) sends nu to nubar; its inverse sends nubar to nu
    z = coset_min_rep(datum, from_word(datum, word).inverse(), J_nu)
    assert z.coweight(nubar) == nu
    zf = finite(z, datum)
    wtilde = zf.inverse() * x * zf
    sd = ShortDatum(datum, wtilde, wtilde.mu, nubar, J_nu,
                    _noncentral_union(datum, J_nu, wtilde.mu),
                    frozenset(), weyl_identity(datum))
    # recompute K and w from mu, then validate the whole datum
    K = frozenset(j for j in sd.J if wtilde.mu[j] == 0)
    w = longest_element(datum, K) * longest_element(datum, sd.J)
    sd = ShortDatum(datum, wtilde, wtilde.mu, nubar, J_nu, sd.J, K, w)
    sd.validate()
    return sd, z


def enumerate_short_data(datum: RootDatum, low: int = -1, high: int = 2):
    """All short data with Levi coordinates in {0, 1} and the remaining
    coordinates in [low, high]; yields each valid ShortDatum once."""
    n = datum.rank
    for bits in itertools.product(range(2), repeat=n):
        J_nu = frozenset(i for i in range(n) if bits[i])
        ranges = [(0, 1) if i in J_nu else tuple(range(low, high + 1))
                  for i in range(n)]
        for mu in itertools.product(*ranges):
            if not datum.is_weakly_dominant(mu):
                continue
            if not datum.is_levi_minuscule(mu, J_nu):
                continue
            try:
                yield make_short_datum(datum, J_nu, mu)
            except ValueError:
                continue


# ------------------------------------------------ Hodge-Newton classification


@dataclass(frozen=True)
class HNClass:
    tag: str  # "Irreducible" | "CentralTranslation" | "NotComparable"
    reason: str = ""


def hn_classify(datum: RootDatum, lam: Vec, sd: ShortDatum) -> HNClass:
    """Irreducible iff eta(t^lambda) = eta(wtilde) and every simple-coroot
    coefficient of lambda - nu is strictly positive."""
    if not datum.is_dominant(lam):
        raise ValueError("lambda must be dominant")
    eta_match = datum.pi1_class(lam) == kottwitz(datum, sd.wtilde)
    diff = tuple(Fraction(a) - Fraction(b) for a, b in zip(lam, sd.nu))
    coeffs = tuple(vdot(row, diff) for row in datum._coroot_basis_inv)
    if eta_match and all(c > 0 for c in coeffs):
        return HNClass("Irreducible")
    if (datum.is_central(lam) and eta_match
            and all(Fraction(a) == Fraction(b) for a, b in zip(lam, sd.nu))):
        return HNClass("CentralTranslation")
    if not eta_match:
        return HNClass("NotComparable", "eta mismatch")
    bad = next(i for i, c in enumerate(coeffs) if c <= 0)
    return HNClass("NotComparable",
                   f"coefficient of simple coroot {bad} in lambda - nu "
                   f"is {coeffs[bad]} <= 0")


def pi0_prediction(datum: RootDatum, lam: Vec, sd: ShortDatum) -> tuple:
    """The predicted component set: all of pi_1 (split group, trivial
    Frobenius on pi_1).  Defined only in the irreducible case."""
    cls = hn_classify(datum, lam, sd)
    if cls.tag != "Irreducible":
        raise ValueError(f"prediction undefined: hn_classify = {cls.tag}"
                         + (f" ({cls.reason})" if cls.reason else ""))
    return datum.pi1_elements()


# ----------------------------------------------------------- C generator set


def c_set(datum: RootDatum, lam: Vec, sd: ShortDatum) -> tuple:
    """Positive roots alpha outside Phi_J with mu + alpha_J^vee preceq
    lambda whose coroot is J-minuscule and J-antidominant; in G_2 with J
    the short simple node, just the long simple root."""
    J = sd.J
    if datum.type_label == "G" and J == frozenset({1}):
        return (datum.simple_roots[0],)
    out = []
    for a in datum.positive_roots:
        if datum.support(a) <= J:
            continue
        av = datum.coroot(a)
        if not datum.is_levi_minuscule(av, J):
            continue
        if any(av[j] > 0 for j in J):
            continue  # not J-antidominant
        if datum.preceq(vadd(sd.mu, av), lam):
            out.append(a)
    return tuple(out)


def span_check(datum: RootDatum, lam: Vec, sd: ShortDatum) -> bool:
    """Do the coroots of c_set generate Z Phi^vee / Z Phi_J^vee?"""
    from .root_data import smith_normal_form
    J = sorted(sd.J)
    off = [i for i in range(datum.rank) if i not in sd.J]
    if not off:
        return True
    cols = [[datum.simple_coroot_coeffs(datum.coroot(a))[i] for i in off]
            for a in c_set(datum, lam, sd)]
    if not cols:
        return False
    d, _, _ = smith_normal_form(tuple(zip(*cols)))
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    return len([x for x in diag if x != 0]) == len(off) and \
        all(abs(x) == 1 for x in diag if x != 0)


# ------------------------------------------------- translation-reflection test


def _positive(datum: RootDatum, a: Vec) -> Vec:
    return a if a in set(datum.positive_roots) else vneg(a)


def root_subsystem_span(datum: RootDatum, a: Vec, b: Vec) -> tuple:
    """All roots in (Z a + Z b) cap Phi."""
    out = []
    for r in datum.positive_roots:
        for sgn in (r, vneg(r)):
            # solve sgn = p*a + q*b over the rationals is overkill; the
            # coefficients are tiny, scan a small box
            if any(tuple(p * x + q * y for x, y in zip(a, b)) == sgn
                   for p in range(-4, 5) for q in range(-4, 5)):
                out.append(sgn)
                break
    return tuple(out)


def is_simply_laced_subsystem(datum: RootDatum, roots: Iterable[Vec]) -> bool:
    roots = tuple(roots)
    for a in roots:
        for b in roots:
            if b == a or b == vneg(a):
                continue
            if vdot(datum.coroot(a), b) not in (-1, 0, 1):
                return False
    return True


def teq_elements(datum: RootDatum, lam: Vec, sd: ShortDatum, alpha: Vec) -> dict:
    """For alpha in c_set: s = t^{w_J(alpha^vee)} s_{w_J(alpha)}; report the
    four Adm(lambda) memberships of wtilde, s wtilde, wtilde s, s wtilde s,
    the simply-lacedness of (Z alpha + Z w(alpha)) cap Phi, and the pairing
    bound <mu, w_J(alpha)> >= 2 when w_J(alpha) + w_K(alpha) is a root."""
    alpha = tuple(alpha)
    if alpha not in c_set(datum, lam, sd):
        raise ValueError("alpha is not in the generator set")
    from .weyl import root_reflection
    wJ = longest_element(datum, sd.J)
    wK = longest_element(datum, sd.K)
    a_J = wJ.root(alpha)
    s = ExtAffine(wJ.coweight(datum.coroot(alpha)),
                  root_reflection(datum, _positive(datum, a_J)))
    wt = sd.wtilde
    members = {
        "wtilde": adm_contains(datum, lam, wt),
        "s_wtilde": adm_contains(datum, lam, s * wt),
        "wtilde_s": adm_contains(datum, lam, wt * s),
        "s_wtilde_s": adm_contains(datum, lam, s * wt * s),
    }
    span = root_subsystem_span(datum, alpha, sd.w.root(alpha))
    simply_laced = is_simply_laced_subsystem(datum, span)
    a_K = wK.root(alpha)
    summed = vadd(a_J, a_K)
    pairing_ok = (not datum.is_root(summed)) or vdot(sd.mu, a_J) >= 2
    return {"s": s, "memberships": members, "simply_laced": simply_laced,
            "pairing_bound": pairing_ok}
