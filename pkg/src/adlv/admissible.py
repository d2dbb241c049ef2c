"""Admissible sets Adm(lambda) and their straight elements.

Adm(lambda) is the union of the lower Bruhat intervals below the
translations t^{u(lambda)}, u ranging over the W_0-orbit of a dominant
coweight lambda.  Full enumeration walks each interval downward by
length-decreasing reflections with a global dedup set; membership queries
avoid enumeration entirely by testing x <= t^{u(lambda)} per orbit point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .root_data import RootDatum, Vec, retain_id, vdot
from .affine import (AffineEngine, ExtAffine, engine, dominant_newton_point,
                     is_straight, kottwitz, translation)
from .weyl import reduced_word, weyl_orbit

#: refuse full enumeration beyond this length of t^lambda (intervals explode)
DEFAULT_LENGTH_CAP = 30


def _check_dominant(datum: RootDatum, lam: Vec) -> None:
    if not datum.is_dominant(lam):
        raise ValueError(f"lambda must be dominant, got {tuple(lam)}")


def _canonical_key(datum: RootDatum, x: ExtAffine):
    return (x.mu, reduced_word(datum, x.w))


@dataclass(frozen=True)
class AdmissibleSet:
    """Adm(lambda) with its straight subset marked."""

    datum: RootDatum = field(repr=False)
    lam: Vec
    elements: tuple  # ExtAffine, deterministic order
    straight_subset: tuple

    def __contains__(self, x: ExtAffine) -> bool:
        return x in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        from .serialize import element_to_json
        return {
            "lambda": list(self.lam),
            "count": len(self.elements),
            "straight": [element_to_json(self.datum, x)
                         for x in self.straight_subset],
        }


_orbit_cache: dict = {}


def orbit_translations(datum: RootDatum, lam: Vec) -> tuple:
    """The maximal elements t^{u(lambda)} of Adm(lambda), one per orbit
    point (the Stab(lambda) quotient is implicit in the orbit closure)."""
    key = (retain_id(datum), tuple(lam))
    out = _orbit_cache.get(key)
    if out is None:
        out = _orbit_cache[key] = tuple(
            translation(v, datum) for v in weyl_orbit(datum, lam))
    return out


def compute_adm(datum: RootDatum, lam: Vec,
                length_cap: int = DEFAULT_LENGTH_CAP) -> AdmissibleSet:
    """Enumerate Adm(lambda) for dominant lambda.

    Downward BFS from each t^{u(lambda)}; refuses when l(t^lambda)
    exceeds length_cap (membership via adm_contains stays available).
    """
    _check_dominant(datum, lam)
    eng = engine(datum)
    tops = orbit_translations(datum, lam)
    cap_len = eng.length(translation(lam, datum))
    if cap_len > length_cap:
        raise ValueError(
            f"l(t^lambda) = {cap_len} exceeds the enumeration cap "
            f"{length_cap}; use adm_contains for membership queries")
    seen: set = set()
    for t in tops:
        seen |= eng.lower_interval(t)
    ordered = tuple(sorted(
        seen, key=lambda x: (eng.length(x), _canonical_key(datum, x))))
    straight = tuple(x for x in ordered if is_straight(datum, x))
    return AdmissibleSet(datum, tuple(lam), ordered, straight)


_contains_cache: dict = {}
_chain_cache: dict = {}
_gen_cache: dict = {}
_top_cache: dict = {}


def _top_arrays(datum: RootDatum, lam: Vec):
    """Orbit tops of Adm(lambda) with their coweights and lengths as
    numpy arrays, for fast per-query ordering."""
    import numpy as np
    key = (retain_id(datum), tuple(lam))
    out = _top_cache.get(key)
    if out is None:
        eng = engine(datum)
        tops = orbit_translations(datum, lam)
        M = np.array([t.mu for t in tops], dtype=np.int64)
        lens = np.array([eng.length(t) for t in tops], dtype=np.int64)
        out = _top_cache[key] = (tops, M, lens)
    return out


def _gen_arrays(datum: RootDatum) -> tuple:
    """Integer matrices of the simple affine reflections: (coweight
    matrix, root-action matrix, translation part) per generator."""
    import numpy as np
    key = id(datum)
    out = _gen_cache.get(key)
    if out is None:
        eng = engine(datum)
        mats = []
        for s in eng.simple_affine():
            s_m = np.array(s.w.m, dtype=np.int64)
            # for a reflection m == minv, so the root action is m^T
            mats.append((s_m, s_m.T.copy(),
                         np.array(s.mu, dtype=np.int64)))
        out = _gen_cache[key] = tuple(mats)
    return out


def _descent_chain(datum: RootDatum, t: ExtAffine) -> tuple:
    """Left-descent chain of t: generator indices with s_L...s_1 t of
    length zero, paired with the base-alcove-positive form of each wall
    (the negated simple root at level zero, theta at level one)."""
    import numpy as np
    from .root_data import vneg
    key = (retain_id(datum), t)
    out = _chain_cache.get(key)
    if out is None:
        eng = engine(datum)
        walls = tuple(
            (np.array(vneg(a) if k == 0 else a, dtype=np.int64), k)
            for a, k in eng.simple_affine_data())
        gens = _gen_arrays(datum)
        # walk down with the same wall-sign descent test as the queries,
        # tracking y^{-1}
        yin = t.inverse()
        wm = np.array(yin.w.m, dtype=np.int64)
        rt = np.array(yin.w.minv, dtype=np.int64).T.copy()
        vmu = np.array(yin.mu, dtype=np.int64)
        ly = eng.length(t)
        chain = []
        while ly:
            for gi, (a, k) in enumerate(walls):
                wa = rt @ a
                kk = k + vmu @ wa
                if (kk < 1) if (wa > 0).any() else (kk < 0):
                    chain.append((gi, a, k))
                    s_m, s_rt, tr = gens[gi]
                    vmu = vmu + wm @ tr
                    wm = wm @ s_m
                    rt = rt @ s_rt
                    ly -= 1
                    break
            else:
                raise RuntimeError("no descent on a positive-length element")
        if len(_chain_cache) > 200_000:
            _chain_cache.clear()
        out = _chain_cache[key] = tuple(chain)
    return out


def _leq_translation(datum: RootDatum, x: ExtAffine, lx: int,
                     t: ExtAffine) -> bool:
    """x <= t for x in the same W^a-coset as t, by walking t's descent
    chain; at each step the pair descends jointly or only on t's side
    (the lifting property), so x <= t iff x's length is exhausted."""
    import numpy as np
    chain = _descent_chain(datum, t)
    L = len(chain)
    if lx > L:
        return False
    if lx == 0:
        return True
    gens = _gen_arrays(datum)
    xin = x.inverse()
    wm = np.array(xin.w.m, dtype=np.int64)
    rt = np.array(xin.w.minv, dtype=np.int64).T.copy()
    vmu = np.array(xin.mu, dtype=np.int64)
    lu = lx
    rem = L
    for gi, a, k in chain:
        if lu > rem:
            return False
        rem -= 1
        wa = rt @ a
        kk = k + vmu @ wa
        if (kk < 1) if (wa > 0).any() else (kk < 0):
            # the wall image is negative: descend jointly
            s_m, s_rt, tr = gens[gi]
            vmu = vmu + wm @ tr
            wm = wm @ s_m
            rt = rt @ s_rt
            lu -= 1
            if lu == 0:
                return True
    return lu == 0


def adm_contains(datum: RootDatum, lam: Vec, x: ExtAffine) -> bool:
    """x in Adm(lambda), without enumerating the set."""
    _check_dominant(datum, lam)
    key = (retain_id(datum), tuple(lam), x)
    out = _contains_cache.get(key)
    if out is None:
        eng = engine(datum)
        lx = eng.length(x)
        tops = orbit_translations(datum, lam)
        # same W^a-coset (full affine Weyl group) iff the translation
        # parts differ by an element of the coroot lattice
        from .root_data import vsub
        diff = datum.simple_coroot_coeffs(vsub(x.mu, lam))
        if not tops or not all(isinstance(c, int) for c in diff):
            out = False
        else:
            import numpy as np
            tops, M, lens = _top_arrays(datum, lam)
            # heuristic order: tops whose coweight aligns with x's
            # translation part first, so positive queries exit early
            dots = M @ np.array(x.mu, dtype=np.int64)
            out = False
            for i in np.argsort(-dots):
                if lens[i] >= lx and _leq_translation(datum, x, lx, tops[i]):
                    out = True
                    break
        if len(_contains_cache) > 2_000_000:
            _contains_cache.clear()
        _contains_cache[key] = out
    return out


def straight_elements(adm: AdmissibleSet) -> dict:
    """Straight elements of Adm(lambda), grouped by the sigma-conjugacy
    invariants (eta, dominant Newton point)."""
    datum = adm.datum
    groups: dict = {}
    for x in adm.straight_subset:
        key = (kottwitz(datum, x), dominant_newton_point(datum, x))
        groups.setdefault(key, []).append(x)
    return {k: tuple(v) for k, v in groups.items()}
