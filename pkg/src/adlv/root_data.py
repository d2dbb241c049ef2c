"""Based root data for split simple groups, and coweight combinatorics.

Conventions.  A root datum of type X_n is stored through its Cartan matrix
``c`` with ``c[i][j] = <alpha_i^vee, alpha_j>`` (rows indexed by coroots).
Roots are integer tuples in simple-root coordinates; coweights are integer
tuples in fundamental-coweight coordinates, so the pairing of a coweight
``v`` with a root ``a`` is the plain dot product ``sum(v[i] * a[i])``.
Rational coweights (Newton points) use tuples of ``fractions.Fraction``.

The cocharacter lattice Y depends on the isogeny type: "adjoint" means all
of Z^n in fundamental-coweight coordinates, "simply_connected" means the
coroot lattice, and an explicit generator matrix is accepted for the
intermediate cases.  pi_1 = Y / Z Phi^vee is computed by Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

Vec = tuple  # integer or Fraction coordinate tuples

#: strong references for objects used as id()-based cache keys; without
#: this, a collected object could hand its id to a fresh one and caches
#: would serve stale entries
_retained: dict = {}


def retain_id(obj) -> int:
    """id(obj), pinned: the object stays alive for the process lifetime
    so the id can never be reused by another object."""
    i = id(obj)
    _retained[i] = obj
    return i


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vscale(k, a: Vec) -> Vec:
    return tuple(k * x for x in a)


def vdot(a: Vec, b: Vec):
    return sum(x * y for x, y in zip(a, b))


def vzero(n: int) -> Vec:
    return (0,) * n


def mat_vec(m: Sequence[Sequence], v: Vec) -> Vec:
    return tuple(vdot(row, v) for row in m)


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def mat_transpose(m):
    return tuple(zip(*m))


def identity_matrix(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _frac_inverse(m):
    """Exact inverse of a square integer matrix, as Fraction rows."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(a[i][n + j] for j in range(n)) for i in range(n))


def smith_normal_form(m):
    """Return (d, u, v) with u*m*v = d diagonal, u and v unimodular."""
    a = [list(row) for row in m]
    rows, cols = len(a), len(a[0])
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, f):  # row_i -= f*row_j
        a[i] = [x - f * y for x, y in zip(a[i], a[j])]
        u[i] = [x - f * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, f):  # col_i -= f*col_j
        for r in range(rows):
            a[r][i] -= f * a[r][j]
        for r in range(cols):
            v[r][i] -= f * v[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(rows, cols):
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_op(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_op(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty and all(a[i][t] == 0 for i in range(t + 1, rows)) \
                    and all(a[t][j] == 0 for j in range(t + 1, cols)):
                break
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, -1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    d = tuple(tuple(row) for row in a)
    return d, tuple(tuple(r) for r in u), tuple(tuple(r) for r in v)


def cartan_matrix(type_label: str, rank: int):
    """Standard Cartan matrix, Bourbaki numbering, c[i][j] = <alpha_i^vee, alpha_j>."""
    t = type_label.upper()
    n = rank
    c = [[2 * int(i == j) for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if t == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif t == "B":
        if n < 2:
            raise ValueError("type B needs rank >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_{n-1} long, alpha_n short
        link(n - 2, n - 1, -1, -2)
    elif t == "C":
        if n < 2:
            raise ValueError("type C needs rank >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_{n-1} short, alpha_n long
        link(n - 2, n - 1, -2, -1)
    elif t == "D":
        if n < 3:
            raise ValueError("type D needs rank >= 3")
        for i in range(n - 3):
            link(i, i + 1)
        link(n - 3, n - 2)
        link(n - 3, n - 1)
    elif t == "E":
        if n not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        # chain 1-3-4-5-...-n with 2 attached to 4 (Bourbaki)
        link(0, 2)
        for i in range(2, n - 1):
            link(i, i + 1)
        link(1, 3)
    elif t == "F":
        if n != 4:
            raise ValueError("type F needs rank 4")
        link(0, 1)
        link(1, 2, -1, -2)  # alpha_2 long, alpha_3 short
        link(2, 3)
    elif t == "G":
        if n != 2:
            raise ValueError("type G needs rank 2")
        # alpha_1 long, alpha_2 short
        link(0, 1, -1, -3)
    else:
        raise ValueError(f"unknown type {type_label!r}")
    return tuple(tuple(row) for row in c)


@dataclass(frozen=True)
class Isogeny:
    """Cocharacter lattice choice: kind in {adjoint, simply_connected, intermediate}.

    For the intermediate case, generators holds the columns of a generator
    matrix of Y in fundamental-coweight coordinates.
    """

    kind: str = "adjoint"
    generators: Optional[tuple] = None


class RootDatum:
    """A based root datum of an (almost) simple split group."""

    def __init__(self, type_label: str, rank: int, isogeny: Isogeny | str = "adjoint",
                 cartan=None):
        if isinstance(isogeny, str):
            isogeny = Isogeny(kind=isogeny)
        self.type_label = type_label.upper()
        self.rank = rank
        self.isogeny = isogeny
        self.cartan = cartan if cartan is not None else cartan_matrix(type_label, rank)
        n = self.rank
        self.simple_roots = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self._build_roots()
        self._coroot_basis_inv = _frac_inverse(mat_transpose(self.cartan))
        self._coeff_cache: dict = {}
        self.two_rho = tuple(sum(a[i] for a in self.positive_roots) for i in range(n))
        self._build_pi1()

    # ---------------------------------------------------------------- roots

    def _build_roots(self):
        """Close the simple root/coroot pairs under simple reflections."""
        n = self.rank
        c = self.cartan
        pairs = {(self.simple_roots[i], tuple(int(i == j) for j in range(n)))
                 for i in range(n)}
        frontier = set(pairs)
        while frontier:
            new = set()
            for root, coroot in frontier:
                for j in range(n):
                    p = sum(c[j][k] * root[k] for k in range(n))
                    r2 = tuple(root[k] - p * int(k == j) for k in range(n))
                    q = sum(coroot[k] * c[k][j] for k in range(n))
                    cr2 = tuple(coroot[k] - q * int(k == j) for k in range(n))
                    if (r2, cr2) not in pairs:
                        pairs.add((r2, cr2))
                        new.add((r2, cr2))
            frontier = new
        pos = sorted((r for r, _ in pairs if all(x >= 0 for x in r)),
                     key=lambda r: (sum(r), r))
        self.positive_roots = tuple(pos)
        self._coroot_of = {r: cr for r, cr in pairs}
        self.positive_coroots = tuple(self._coroot_of[r] for r in pos)
        self.roots = frozenset(r for r, _ in pairs)
        self.highest_root = pos[-1]

    def is_root(self, a: Vec) -> bool:
        return tuple(a) in self.roots

    def coroot_coeffs(self, a: Vec) -> Vec:
        """Coroot of the root a, in simple-coroot coordinates."""
        a = tuple(a)
        if a in self._coroot_of:
            return self._coroot_of[a]
        raise ValueError(f"{a} is not a root")

    def coroot(self, a: Vec) -> Vec:
        """Coroot of the root a, in fundamental-coweight coordinates."""
        cc = self.coroot_coeffs(a)
        n = self.rank
        return tuple(sum(cc[k] * self.cartan[k][j] for k in range(n)) for j in range(n))

    def pairing(self, v: Vec, a: Vec):
        """<v, a> for a coweight v and a root (or weight) a."""
        return vdot(v, a)

    def root_height(self, a: Vec) -> int:
        return sum(a)

    # ------------------------------------------------------------- diagram

    @property
    def dynkin_edges(self):
        n = self.rank
        return tuple((i, j) for i in range(n) for j in range(i + 1, n)
                     if self.cartan[i][j] != 0)

    def dynkin_neighbors(self, i: int):
        return tuple(j for j in range(self.rank)
                     if j != i and self.cartan[i][j] != 0)

    def dynkin_path(self, i: int, j: int) -> tuple:
        """The unique path between simple nodes i and j in the Dynkin tree."""
        if i == j:
            return (i,)
        prev = {i: None}
        queue = [i]
        while queue:
            nxt = []
            for x in queue:
                for y in self.dynkin_neighbors(x):
                    if y not in prev:
                        prev[y] = x
                        nxt.append(y)
            queue = nxt
        if j not in prev:
            raise ValueError("disconnected diagram nodes")
        path = [j]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        return tuple(reversed(path))

    def dist(self, i: int, j: int) -> int:
        """Graph distance between simple nodes in the Dynkin diagram."""
        return len(self.dynkin_path(i, j)) - 1

    def components_of(self, J: Iterable[int]) -> tuple:
        """Connected components of the sub-diagram on the node set J."""
        J = set(J)
        comps = []
        while J:
            seed = min(J)
            comp = {seed}
            queue = [seed]
            while queue:
                x = queue.pop()
                for y in self.dynkin_neighbors(x):
                    if y in J and y not in comp:
                        comp.add(y)
                        queue.append(y)
            comps.append(frozenset(comp))
            J -= comp
        return tuple(sorted(comps, key=min))

    def support(self, a: Vec) -> frozenset:
        """Simple nodes occurring in the root or coweight-difference a."""
        return frozenset(i for i, x in enumerate(a) if x != 0)

    def is_elementary(self, a: Vec) -> bool:
        """All simple-root coefficients of the positive root a are <= 1."""
        if not self.is_root(a) or any(x < 0 for x in a):
            raise ValueError("is_elementary expects a positive root")
        return all(x <= 1 for x in a)

    # -------------------------------------------------- coweight predicates

    def is_dominant(self, v: Vec) -> bool:
        return all(x >= 0 for x in v)

    def is_central(self, v: Vec) -> bool:
        return all(x == 0 for x in v)

    def is_weakly_dominant(self, v: Vec) -> bool:
        """<v, a> >= -1 for every positive root a."""
        for a in self.positive_roots:
            if vdot(v, a) < -1:
                return False
        return True

    def levi_positive_roots(self, J: Iterable[int]) -> tuple:
        J = frozenset(J)
        return tuple(a for a in self.positive_roots if self.support(a) <= J)

    def is_levi_dominant(self, v: Vec, J: Iterable[int]) -> bool:
        return all(v[j] >= 0 for j in J)

    def is_levi_minuscule(self, v: Vec, J: Iterable[int]) -> bool:
        """|<v, a>| <= 1 for every root a of the Levi on J."""
        return all(abs(vdot(v, a)) <= 1 for a in self.levi_positive_roots(J))

    def is_levi_central(self, v: Vec, J: Iterable[int]) -> bool:
        return all(v[j] == 0 for j in J)

    def dominant_rep(self, v: Vec):
        """Dominant Weyl-orbit representative and the word moving v to it.

        Returns (vbar, word) with word = (i_1, ..., i_k) such that
        s_{i_1} ... s_{i_k} (v) = vbar.
        """
        v = tuple(v)
        word = []
        while True:
            for i in range(self.rank):
                if v[i] < 0:
                    v = vsub(v, vscale(v[i], self.cartan[i]))
                    word.append(i)
                    break
            else:
                return v, tuple(reversed(word))

    def antidominant_root_rep(self, a: Vec, J: Iterable[int]) -> Vec:
        """The unique J-antidominant element of the W_J-orbit of the root a."""
        a = tuple(a)
        c = self.cartan
        n = self.rank
        J = sorted(set(J))
        while True:
            for j in J:
                p = sum(c[j][k] * a[k] for k in range(n))
                if p > 0:
                    a = tuple(a[k] - p * int(k == j) for k in range(n))
                    break
            else:
                return a

    # ------------------------------------------------------ coweight orders

    def simple_coroot_coeffs(self, v: Vec) -> Vec:
        """Coordinates of the coweight v in the simple-coroot basis (exact)."""
        v = tuple(v)
        out = self._coeff_cache.get(v)
        if out is None:
            out = tuple(vdot(row, v) for row in self._coroot_basis_inv)
            out = tuple(x if x.denominator != 1 else x.numerator for x in out)
            self._coeff_cache[v] = out
        return out

    def leq_coroot(self, v1: Vec, v2: Vec, J: Optional[Iterable[int]] = None) -> bool:
        """v1 <= v2: the difference is a nonnegative integral sum of simple
        coroots, supported on J when J is given."""
        c1 = self.simple_coroot_coeffs(v1)
        c2 = self.simple_coroot_coeffs(v2)
        diff = tuple(x if not isinstance(x, Fraction) or x.denominator != 1
                     else x.numerator for x in (b - a for a, b in zip(c1, c2)))
        Jset = set(range(self.rank)) if J is None else set(J)
        for i, x in enumerate(diff):
            if isinstance(x, Fraction):
                return False
            if x < 0 or (x > 0 and i not in Jset):
                return False
        return True

    def leq_coroot_rational(self, v1: Vec, v2: Vec) -> bool:
        """v1 <= v2 in the rational cone over simple coroots (Newton points)."""
        diff = tuple(vdot(row, vsub(v2, v1)) for row in self._coroot_basis_inv)
        return all(x >= 0 for x in diff)

    def leq_modulo(self, v1: Vec, v2: Vec, J: Iterable[int]) -> bool:
        """v1 <=^J v2: v2 - v1 in the simple-coroot cone up to Z Phi_J^vee."""
        diff = self.simple_coroot_coeffs(vsub(v2, v1))
        Jset = set(J)
        for i, x in enumerate(diff):
            if i in Jset:
                continue
            if isinstance(x, Fraction) or x < 0:
                return False
        return True

    def preceq(self, v1: Vec, v2: Vec) -> bool:
        """Dominance order on orbits: dominant representatives compare by <=."""
        b1, _ = self.dominant_rep(tuple(v1))
        b2, _ = self.dominant_rep(tuple(v2))
        return self.leq_coroot(b1, b2)

    # ------------------------------------------------------------ chase map

    def chase_step(self, v: Vec, gamma: Vec, direction: str = "up",
                   strict: bool = False) -> Optional[Vec]:
        """One chase move along the positive root gamma.

        direction "up": requires <v, gamma> <= -1 and returns v + gamma^vee;
        with strict=True requires <v, gamma> == -1 exactly.
        direction "down": requires <v, gamma> >= 1 and returns v - gamma^vee.
        Returns None when the pairing condition fails.
        """
        p = vdot(v, gamma)
        cv = self.coroot(gamma)
        if direction == "up":
            if strict and p != -1:
                return None
            if p <= -1:
                return vadd(v, cv)
            return None
        if direction == "down":
            if p >= 1:
                return vsub(v, cv)
            return None
        raise ValueError("direction must be 'up' or 'down'")

    # -------------------------------------------------------- condition (c)

    def condition_c_buckets(self, v: Vec):
        """Split the simple nodes by the pairing <v, alpha_i>: positive,
        zero, minus-one.  Raises if some pairing is <= -2."""
        plus, zero, minus = [], [], []
        for i in range(self.rank):
            p = v[i]
            if p >= 1:
                plus.append(i)
            elif p == 0:
                zero.append(i)
            elif p == -1:
                minus.append(i)
            else:
                raise ValueError("pairing <= -2: buckets undefined")
        return tuple(plus), tuple(zero), tuple(minus)

    def condition_c(self, v: Vec) -> bool:
        """True iff no simple pairing is <= -2 and every pair of distinct
        minus-one nodes has a positive node strictly inside their geodesic."""
        try:
            plus, _, minus = self.condition_c_buckets(v)
        except ValueError:
            return False
        plus = set(plus)
        for idx, i in enumerate(minus):
            for j in minus[idx + 1:]:
                interior = self.dynkin_path(i, j)[1:-1]
                if not any(k in plus for k in interior):
                    return False
        return True

    # ----------------------------------------------------------------- pi_1

    def _build_pi1(self):
        n = self.rank
        coroot_mat = mat_transpose(self.cartan)  # columns are simple coroots
        kind = self.isogeny.kind
        if kind == "adjoint":
            y_basis = identity_matrix(n)
        elif kind == "simply_connected":
            y_basis = coroot_mat
        elif kind == "intermediate":
            if self.isogeny.generators is None:
                raise ValueError("intermediate isogeny needs a generator matrix")
            y_basis = tuple(tuple(row) for row in self.isogeny.generators)
        else:
            raise ValueError(f"unknown isogeny kind {kind!r}")
        self.y_basis = y_basis
        y_inv = _frac_inverse(y_basis)
        rel = mat_mul(y_inv, coroot_mat)
        rel_int = []
        for row in rel:
            r = []
            for x in row:
                if x.denominator != 1:
                    raise ValueError("coroot lattice not contained in Y")
                r.append(x.numerator)
            rel_int.append(tuple(r))
        d, u, _ = smith_normal_form(tuple(rel_int))
        self._pi1_divisors = tuple(d[i][i] for i in range(n))
        self._pi1_u = u
        self._y_inv = y_inv

    def y_coords(self, v: Vec) -> Vec:
        """Coordinates of the coweight v in the chosen basis of Y."""
        out = []
        for row in self._y_inv:
            x = vdot(row, v)
            if x.denominator != 1:
                raise ValueError(f"{v} is not in the cocharacter lattice")
            out.append(x.numerator)
        return tuple(out)

    def contains_coweight(self, v: Vec) -> bool:
        try:
            self.y_coords(v)
            return True
        except ValueError:
            return False

    def pi1_class(self, v: Vec) -> Vec:
        """Class of the coweight v in pi_1 = Y / Z Phi^vee."""
        y = self.y_coords(v)
        c = mat_vec(self._pi1_u, y)
        return tuple(x % d if d else x for x, d in zip(c, self._pi1_divisors))

    def pi1_elements(self) -> tuple:
        """All elements of pi_1 (finite for semisimple data)."""
        import itertools
        if any(d == 0 for d in self._pi1_divisors):
            raise ValueError("pi_1 is infinite")
        return tuple(itertools.product(*(range(d) for d in self._pi1_divisors)))

    def pi1_order(self) -> int:
        out = 1
        for d in self._pi1_divisors:
            out *= d
        return out

    def __repr__(self):
        return f"RootDatum({self.type_label}{self.rank}, {self.isogeny.kind})"


@lru_cache(maxsize=None)
def root_datum(type_label: str, rank: int, isogeny: str = "adjoint") -> RootDatum:
    """Cached standard root datum constructor."""
    return RootDatum(type_label, rank, isogeny)


def datum_from_cartan(cartan, type_label: str = "X", isogeny: str = "adjoint") -> RootDatum:
    """Root datum built from an explicit Cartan matrix (used by folding)."""
    return RootDatum(type_label, len(cartan), isogeny, cartan=tuple(map(tuple, cartan)))
