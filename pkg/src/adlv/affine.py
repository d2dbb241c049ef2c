"""Extended affine Weyl group W~ = Y x| W_0 and its Bruhat combinatorics.

An element t^mu w acts on coweights by v -> mu + w(v).  Affine roots are
pairs (a, k) acting as functions v -> -<a, v> + k; the element x = t^mu w
sends (a, k) to (w(a), k + <mu, w(a)>).  (a, k) is positive iff a > 0 and
k >= 1, or a < 0 and k >= 0.

AffineEngine bundles the length function, Bruhat order, and the Omega
component test for the group Y x| W_J attached to a subset J of simple
nodes (J = all nodes gives the full group).  Lengths count the positive
affine roots of the Levi made negative, evaluated in closed form; the
Bruhat order uses the left-descent lifting recursion with memoization, and
a downward closure by reflections is available as an independent route.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .root_data import RootDatum, Vec, retain_id, vadd, vdot, vneg, vsub
from .weyl import (FiniteWeyl, in_parabolic, root_reflection, simple_reflection,
                   weyl_group, weyl_identity)


class ExtAffine:
    """t^mu w with mu in fundamental-coweight coordinates."""

    __slots__ = ("mu", "w", "_hash")

    def __init__(self, mu: Vec, w: FiniteWeyl):
        self.mu = tuple(mu)
        self.w = w
        self._hash = hash((self.mu, w.m))

    def __eq__(self, other):
        return (isinstance(other, ExtAffine) and self.mu == other.mu
                and self.w == other.w)

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "ExtAffine") -> "ExtAffine":
        return ExtAffine(vadd(self.mu, self.w.coweight(other.mu)), self.w * other.w)

    def inverse(self) -> "ExtAffine":
        winv = self.w.inverse()
        return ExtAffine(vneg(winv.coweight(self.mu)), winv)

    def coweight(self, v: Vec) -> Vec:
        return vadd(self.mu, self.w.coweight(v))

    def affine_root(self, a: Vec, k: int):
        wa = self.w.root(a)
        return wa, k + vdot(self.mu, wa)

    def power(self, n: int) -> "ExtAffine":
        if n < 0:
            return self.inverse().power(-n)
        out = ExtAffine((0,) * len(self.mu), weyl_identity_like(self.w))
        x = self
        while n:
            if n & 1:
                out = out * x
            x = x * x
            n >>= 1
        return out

    def is_translation(self) -> bool:
        return self.w.is_identity()

    def __repr__(self):
        return f"ExtAffine(mu={self.mu}, w={self.w.m})"


def weyl_identity_like(w: FiniteWeyl) -> FiniteWeyl:
    n = len(w.m)
    e = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return FiniteWeyl(e, e)


def translation(mu: Vec, datum: RootDatum) -> ExtAffine:
    return ExtAffine(tuple(mu), weyl_identity(datum))


def finite(w: FiniteWeyl, datum: RootDatum) -> ExtAffine:
    return ExtAffine((0,) * datum.rank, w)


def affine_root_positive(a: Vec, k: int) -> bool:
    if all(x == 0 for x in a):
        raise ValueError("zero root")
    if any(x > 0 for x in a):
        return k >= 1
    return k >= 0


def affine_reflection(datum: RootDatum, a: Vec, k: int) -> ExtAffine:
    """s_{(a,k)} = t^{k a^vee} s_a."""
    pos = a if any(x > 0 for x in a) else vneg(a)
    if tuple(a) != pos:
        a, k = pos, -k
    return ExtAffine(tuple(k * c for c in datum.coroot(a)), root_reflection(datum, a))


class AffineEngine:
    """Length, Bruhat order and Omega test for Y x| W_J."""

    def __init__(self, datum: RootDatum, J: Optional[Iterable[int]] = None):
        self.datum = datum
        self.J = frozenset(range(datum.rank) if J is None else J)
        pos = datum.levi_positive_roots(self.J)
        self._signed_roots = tuple(pos) + tuple(vneg(a) for a in pos)
        self._k0 = {a: 1 for a in pos}
        self._k0.update({vneg(a): 0 for a in pos})
        self._len_cache: dict = {}
        self._leq_cache: dict = {}
        self._simple_affine = None

    # -------------------------------------------------------------- length

    def length(self, x: ExtAffine) -> int:
        out = self._len_cache.get(x)
        if out is None:
            import numpy as np
            if not self._signed_roots:
                self._len_cache[x] = 0
                return 0
            arrs = getattr(self, "_len_arrays", None)
            if arrs is None:
                A = np.array(self._signed_roots, dtype=np.int64)
                k0a = np.array([self._k0[a] for a in self._signed_roots],
                               dtype=np.int64)
                arrs = self._len_arrays = (A, k0a)
            A, k0a = arrs
            # row-wise root action: roots act through the inverse coweight
            # matrix, so w(a) per row is A @ minv
            WA = A @ np.array(x.w.minv, dtype=np.int64)
            # a root is positive iff any coordinate is positive
            k0wa = (WA > 0).any(axis=1).astype(np.int64)
            vals = k0wa - WA @ np.array(x.mu, dtype=np.int64) - k0a
            out = int(np.maximum(0, vals).sum())
            if len(self._len_cache) > 2_000_000:
                self._len_cache.clear()
            self._len_cache[x] = out
        return out

    # --------------------------------------------------------- Omega tests

    def in_affine_weyl(self, x: ExtAffine) -> bool:
        """Membership in W^a_J = Z Phi_J^vee x| W_J."""
        if not in_parabolic(self.datum, x.w, self.J):
            return False
        coeffs = self.datum.simple_coroot_coeffs(x.mu)
        return all(isinstance(c, int) and (c == 0 or i in self.J)
                   for i, c in enumerate(coeffs))

    def same_coset(self, x: ExtAffine, y: ExtAffine) -> bool:
        return self.in_affine_weyl(y * x.inverse())

    def is_omega(self, x: ExtAffine) -> bool:
        """x in Omega_J: length zero in the Levi."""
        return self.length(x) == 0

    # ------------------------------------------------- simple affine system

    def simple_affine(self) -> tuple:
        """Simple reflections of W^a_J: the s_j plus one affine node per
        connected component of J."""
        if self._simple_affine is None:
            datum = self.datum
            data = [(datum.simple_roots[j], 0) for j in sorted(self.J)]
            for comp in datum.components_of(self.J):
                theta = max((a for a in datum.positive_roots
                             if datum.support(a) <= comp),
                            key=lambda a: (sum(a), a))
                data.append((theta, 1))
            self._simple_affine_data = tuple(data)
            self._simple_affine = tuple(affine_reflection(datum, a, k)
                                        for a, k in data)
        return self._simple_affine

    def simple_affine_data(self) -> tuple:
        """The (root, k) pair of each simple affine reflection, parallel
        to simple_affine()."""
        self.simple_affine()
        return self._simple_affine_data

    # -------------------------------------------------------- Bruhat order

    def bruhat_leq(self, x: ExtAffine, y: ExtAffine) -> bool:
        if self.length(x) > self.length(y):
            return False
        if not self.same_coset(x, y):
            return False
        return self._leq(x, y)

    def _leq(self, x: ExtAffine, y: ExtAffine) -> bool:
        stack = [(x, y)]
        # iterative unwind of the descent recursion; every visited pair
        # lands in the memo
        while True:
            x, y = stack[-1]
            key = (x, y)
            cached = self._leq_cache.get(key)
            if cached is None:
                lx, ly = self.length(x), self.length(y)
                if lx > ly:
                    cached = False
                elif lx == ly:
                    cached = x == y
                elif lx == 0:
                    cached = True  # same W^a_J-coset was checked at entry
                else:
                    s = next(s for s in self.simple_affine()
                             if self.length(s * y) < ly)
                    sx = s * x
                    nxt = (sx, s * y) if self.length(sx) < lx else (x, s * y)
                    sub = self._leq_cache.get(nxt)
                    if sub is None:
                        stack.append(nxt)
                        continue
                    cached = sub
            self._leq_cache[key] = cached
            stack.pop()
            if not stack:
                return cached

    def inversions(self, x: ExtAffine) -> tuple:
        """Positive affine roots of the Levi sent to negatives by x^{-1};
        there are exactly length(x) of them."""
        out = []
        mu, winv = x.mu, x.w.inverse()
        for a in self._signed_roots:
            lo = self._k0[a]
            hi = vdot(mu, a) + self._k0[winv.root(a)] - 1
            for k in range(lo, hi + 1):
                out.append((a, k))
        return tuple(out)

    def lower_interval(self, y: ExtAffine) -> frozenset:
        """{x : x <= y}, by downward closure under length-decreasing
        reflections.  Exponential in the interval size; used for small
        enumerations and as an independent check on bruhat_leq."""
        seen = {y}
        frontier = [y]
        while frontier:
            nxt = []
            for z in frontier:
                for a, k in self.inversions(z):
                    r = affine_reflection(self.datum, a, k)
                    z2 = r * z
                    if z2 not in seen:
                        seen.add(z2)
                        nxt.append(z2)
            frontier = nxt
        return frozenset(seen)

    def reduced_word(self, x: ExtAffine):
        """(indices into simple_affine(), omega part) with x equal to the
        product of the listed simple reflections times the omega part."""
        word = []
        gens = self.simple_affine()
        while self.length(x) > 0:
            for i, s in enumerate(gens):
                if self.length(s * x) < self.length(x):
                    word.append(i)
                    x = s * x
                    break
            else:
                raise RuntimeError("no descent found")
        return tuple(word), x

    def subword_leq(self, x: ExtAffine, y: ExtAffine) -> bool:
        """Independent Bruhat oracle through the subword property."""
        word, tau = self.reduced_word(y)
        gens = self.simple_affine()
        target = x * tau.inverse()
        prods = {finite(weyl_identity(self.datum), self.datum)}
        for i in word:
            s = gens[i]
            prods |= {g * s for g in prods}
        return target in prods


_engines: dict = {}
_cache_dir: Optional[str] = None


def _cache_file(eng: AffineEngine) -> str:
    import os
    d = eng.datum
    name = (f"{d.type_label}{d.rank}-{d.isogeny.kind}-"
            f"{'_'.join(map(str, sorted(eng.J)))}.pkl")
    return os.path.join(_cache_dir, name)


def set_cache_dir(path: Optional[str]) -> None:
    """Persist Bruhat-order and length caches under path (None disables);
    existing caches are loaded lazily as engines are created."""
    global _cache_dir
    _cache_dir = path


def save_caches() -> None:
    import pickle
    if _cache_dir is None:
        return
    for eng in _engines.values():
        with open(_cache_file(eng), "wb") as f:
            pickle.dump({"len": eng._len_cache, "leq": eng._leq_cache}, f)


def engine(datum: RootDatum, J: Optional[Iterable[int]] = None) -> AffineEngine:
    key = (retain_id(datum), frozenset(range(datum.rank) if J is None else J))
    if key not in _engines:
        eng = AffineEngine(datum, key[1])
        if _cache_dir is not None:
            import os
            import pickle
            path = _cache_file(eng)
            if os.path.exists(path):
                with open(path, "rb") as f:
                    stored = pickle.load(f)
                eng._len_cache.update(stored["len"])
                eng._leq_cache.update(stored["leq"])
        _engines[key] = eng
    return _engines[key]


# ------------------------------------------------------------ invariants


def kottwitz(datum: RootDatum, x: ExtAffine) -> Vec:
    """Image in pi_1 = Y / Z Phi^vee (constant on W^a-cosets)."""
    return datum.pi1_class(x.mu)


def newton_point(datum: RootDatum, x: ExtAffine) -> tuple:
    """Exact rational Newton point: the translation part of x^n over n."""
    n = x.w.order()
    acc = (Fraction(0),) * datum.rank
    v = x.mu
    wi = weyl_identity(datum)
    for _ in range(n):
        acc = vadd(acc, wi.coweight(v))
        wi = wi * x.w
    # acc = sum of w^i(mu) with w applied progressively
    return tuple(Fraction(c, n) for c in acc)


def dominant_newton_point(datum: RootDatum, x: ExtAffine) -> tuple:
    nu, _ = datum.dominant_rep(newton_point(datum, x))
    return nu


def is_straight(datum: RootDatum, x: ExtAffine) -> bool:
    """length(x^n) == n * length(x) for n up to the order of the finite part."""
    eng = engine(datum)
    l1 = eng.length(x)
    n = x.w.order()
    p = x
    for k in range(2, n + 1):
        p = p * x
        if eng.length(p) != k * l1:
            return False
    return True


def straight_by_newton(datum: RootDatum, x: ExtAffine) -> bool:
    """Alternative characterization: length(x) = <nu_bar, 2 rho>."""
    nu = dominant_newton_point(datum, x)
    return engine(datum).length(x) == vdot(nu, datum.two_rho)


def omega_elements(datum: RootDatum, bound: int = 1) -> tuple:
    """All length-zero elements t^mu w with dominant-orbit mu coordinates in
    {0..bound}; for standard data with bound 1 this hits every pi_1 class."""
    import itertools
    eng = engine(datum)
    out = {}
    for mu0 in itertools.product(range(bound + 1), repeat=datum.rank):
        from .weyl import weyl_orbit
        for mu in weyl_orbit(datum, mu0):
            for w in weyl_group(datum):
                x = ExtAffine(mu, w)
                if eng.length(x) == 0:
                    out[x] = None
    return tuple(out)
