"""Finite Weyl group elements as exact integer matrices on the coweight lattice.

An element stores its matrix in fundamental-coweight coordinates together
with the inverse; equality and hashing go through the matrix, so equal
elements are equal regardless of how they were produced.  The action on
roots (simple-root coordinates) is the contragredient, which with these
bases is the transposed inverse matrix.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional

from .root_data import (RootDatum, Vec, identity_matrix, mat_mul, mat_transpose, retain_id,
                        mat_vec, vdot)


class FiniteWeyl:
    __slots__ = ("m", "minv", "_rt", "_hash")

    def __init__(self, m, minv):
        self.m = m
        self.minv = minv
        self._rt = mat_transpose(minv)
        self._hash = hash(m)

    def __eq__(self, other):
        return isinstance(other, FiniteWeyl) and self.m == other.m

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "FiniteWeyl") -> "FiniteWeyl":
        return FiniteWeyl(mat_mul(self.m, other.m), mat_mul(other.minv, self.minv))

    def inverse(self) -> "FiniteWeyl":
        return FiniteWeyl(self.minv, self.m)

    def coweight(self, v: Vec) -> Vec:
        return mat_vec(self.m, v)

    def root(self, a: Vec) -> Vec:
        return mat_vec(self._rt, a)

    def is_identity(self) -> bool:
        return self.m == identity_matrix(len(self.m))

    def order(self) -> int:
        n = 1
        w = self
        e = identity_matrix(len(self.m))
        while w.m != e:
            w = w * self
            n += 1
            if n > 10000:
                raise RuntimeError("runaway order computation")
        return n

    def __repr__(self):
        return f"FiniteWeyl({self.m})"


def weyl_identity(datum: RootDatum) -> FiniteWeyl:
    e = identity_matrix(datum.rank)
    return FiniteWeyl(e, e)


_reflection_cache: dict = {}


def simple_reflection(datum: RootDatum, i: int) -> FiniteWeyl:
    key = (retain_id(datum), i)
    out = _reflection_cache.get(key)
    if out is None:
        n = datum.rank
        c = datum.cartan
        m = tuple(tuple(int(j == k) - c[i][j] * int(k == i) for k in range(n))
                  for j in range(n))
        out = _reflection_cache[key] = FiniteWeyl(m, m)
    return out


def root_reflection(datum: RootDatum, a: Vec) -> FiniteWeyl:
    """s_a for an arbitrary root a: v -> v - <v, a> a^vee."""
    key = (retain_id(datum), tuple(a))
    out = _reflection_cache.get(key)
    if out is None:
        n = datum.rank
        av = datum.coroot(a)
        m = tuple(tuple(int(j == k) - av[j] * a[k] for k in range(n))
                  for j in range(n))
        out = _reflection_cache[key] = FiniteWeyl(m, m)
    return out


def from_word(datum: RootDatum, word: Iterable[int]) -> FiniteWeyl:
    w = weyl_identity(datum)
    for i in word:
        w = w * simple_reflection(datum, i)
    return w


def length(datum: RootDatum, w: FiniteWeyl) -> int:
    return sum(1 for a in datum.positive_roots if any(x < 0 for x in w.root(a)))


def reduced_word(datum: RootDatum, w: FiniteWeyl) -> tuple:
    """A reduced word for w, leftmost descent first."""
    word = []
    while True:
        for i in range(datum.rank):
            if any(x < 0 for x in w.root(datum.simple_roots[i])):
                # w(alpha_i) < 0, so s_i is a right descent
                word.append(i)
                w = w * simple_reflection(datum, i)
                break
        else:
            assert w.is_identity()
            return tuple(reversed(word))


class _WeylCache:
    def __init__(self, datum: RootDatum):
        self.datum = datum
        self._elements = None

    def elements(self) -> dict:
        """All of W_0 with a reduced word each (BFS by length)."""
        if self._elements is None:
            datum = self.datum
            gens = [simple_reflection(datum, i) for i in range(datum.rank)]
            out = {weyl_identity(datum): ()}
            frontier = list(out.items())
            while frontier:
                nxt = []
                for w, word in frontier:
                    for i, s in enumerate(gens):
                        w2 = w * s
                        if w2 not in out:
                            out[w2] = word + (i,)
                            nxt.append((w2, out[w2]))
                frontier = nxt
            self._elements = out
        return self._elements


_caches: dict = {}


def weyl_cache(datum: RootDatum) -> _WeylCache:
    key = retain_id(datum)
    if key not in _caches:
        _caches[key] = _WeylCache(datum)
    return _caches[key]


def weyl_group(datum: RootDatum) -> dict:
    return weyl_cache(datum).elements()


def longest_element(datum: RootDatum, J: Optional[Iterable[int]] = None) -> FiniteWeyl:
    """w_J, the longest element of the standard parabolic W_J (default W_0).

    Built by descent chasing on a strictly J-dominant coweight, so it does
    not require enumerating W_J.
    """
    J = sorted(range(datum.rank) if J is None else set(J))
    v = tuple(1 if i in J else 0 for i in range(datum.rank))
    w = weyl_identity(datum)
    while True:
        for j in J:
            if w.coweight(v)[j] > 0:
                w = simple_reflection(datum, j) * w
                break
        else:
            return w


def in_parabolic(datum: RootDatum, w: FiniteWeyl, J: Iterable[int]) -> bool:
    """Membership test for the standard parabolic W_J."""
    J = sorted(set(J))
    guard = 0
    while True:
        for j in J:
            if any(x < 0 for x in w.root(datum.simple_roots[j])):
                w = w * simple_reflection(datum, j)
                break
        else:
            return w.is_identity()
        guard += 1
        if guard > 10000:
            return False


def coset_min_rep(datum: RootDatum, w: FiniteWeyl, J: Iterable[int]) -> FiniteWeyl:
    """Minimal-length representative of the coset w W_J."""
    J = sorted(set(J))
    while True:
        for j in J:
            if any(x < 0 for x in w.root(datum.simple_roots[j])):
                w = w * simple_reflection(datum, j)
                break
        else:
            return w


def min_coset_reps(datum: RootDatum, J: Iterable[int]) -> tuple:
    """W_0^J: minimal representatives of W_0 / W_J, sorted by length."""
    J = sorted(set(J))
    reps = []
    for w in weyl_group(datum):
        if all(all(x >= 0 for x in w.root(datum.simple_roots[j])) for j in J):
            reps.append(w)
    return tuple(sorted(reps, key=lambda w: (length(datum, w),
                                             reduced_word(datum, w))))


def parabolic_elements(datum: RootDatum, J: Iterable[int]) -> tuple:
    """All of W_J, enumerated inside the Levi (no full W_0 needed)."""
    J = sorted(set(J))
    gens = [simple_reflection(datum, j) for j in J]
    out = {weyl_identity(datum)}
    frontier = list(out)
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                w2 = w * s
                if w2 not in out:
                    out.add(w2)
                    nxt.append(w2)
        frontier = nxt
    return tuple(out)


def weyl_orbit(datum: RootDatum, v: Vec) -> dict:
    """Orbit of a coweight, with a witness element w such that w(seed) = v.

    Does not enumerate W_0; the orbit closure under simple reflections
    suffices and is much smaller for singular coweights.
    """
    v = tuple(v)
    out = {v: weyl_identity(datum)}
    frontier = [v]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(datum.rank):
                s = simple_reflection(datum, i)
                y = s.coweight(x)
                if y not in out:
                    out[y] = s * out[x]
                    nxt.append(y)
        frontier = nxt
    return out


def root_orbit(datum: RootDatum, a: Vec, J: Optional[Iterable[int]] = None) -> frozenset:
    """W_J-orbit of the root a (default: full Weyl orbit)."""
    J = tuple(range(datum.rank) if J is None else sorted(set(J)))
    gens = [simple_reflection(datum, j) for j in J]
    out = {tuple(a)}
    frontier = [tuple(a)]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = s.root(x)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)
