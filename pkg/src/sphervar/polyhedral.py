"""Exact rational lattice and cone algebra.

Everything here is computed over Q with arbitrary-precision integers and
fractions; no floating point is used anywhere.  Cones carry a canonical
double description (extreme rays modulo lineality, plus a minimal facet
description), which makes equality of cones a tuple comparison and the
dual an involution on the nose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Vec = tuple[int, ...]
QVec = tuple[Fraction, ...]


class PolyhedralError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer / rational linear algebra
# ---------------------------------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def primitive(v) -> Vec:
    """Scale a nonzero rational vector to the primitive integer vector on
    the same ray (direction preserved)."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise PolyhedralError("zero vector has no primitive representative")
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def hnf(rows) -> list[Vec]:
    """Row Hermite normal form of an integer matrix.

    Returns the nonzero rows: pivot columns strictly increasing, pivots
    positive, entries above each pivot reduced into [0, pivot).  This is
    the canonical basis of the lattice spanned by the input rows.
    """
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return []
    n = len(mat[0])
    result: list[list[int]] = []
    work = mat
    col = 0
    while col < n and work:
        live = [r for r in work if r[col] != 0]
        if not live:
            col += 1
            continue
        piv = live[0]
        for r in live[1:]:
            g, x, y = _xgcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            piv_new = [x * p + y * q for p, q in zip(piv, r)]
            r_new = [-b * p + a * q for p, q in zip(piv, r)]
            piv[:] = piv_new
            r[:] = r_new
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        result.append(piv)
        work = [r for r in work if r is not piv and any(r)]
        col += 1
    # reduce entries above each pivot, in increasing pivot order so that a
    # later reduction never dirties an already-normalized earlier column
    for i in range(len(result)):
        p = next(j for j in range(n) if result[i][j] != 0)
        for k in range(i):
            q = result[k][p] // result[i][p]
            if q:
                result[k] = [a - q * b for a, b in zip(result[k], result[i])]
    return [tuple(r) for r in result]


def smith_diagonalize(rows) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix by unimodular transforms.

    Returns (D, S, T) with S A T = D and D nonzero only on the diagonal.
    The divisibility chain of full Smith normal form is not enforced; no
    caller needs it.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    S = [[int(i == j) for j in range(m)] for i in range(m)]
    T = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i1, i2, x, y, u, v):
        for M in (A, S):
            r1, r2 = M[i1], M[i2]
            for j in range(len(r1)):
                a, b = r1[j], r2[j]
                r1[j] = x * a + y * b
                r2[j] = u * a + v * b

    def col_op(j1, j2, x, y, u, v):
        for M in (A, T):
            for r in M:
                a, b = r[j1], r[j2]
                r[j1] = x * a + y * b
                r[j2] = u * a + v * b

    k = 0
    while k < min(m, n):
        piv = next(((i, j) for i in range(k, m) for j in range(k, n) if A[i][j]), None)
        if piv is None:
            break
        i, j = piv
        if i != k:
            row_op(k, i, 0, 1, 1, 0)
        if j != k:
            col_op(k, j, 0, 1, 1, 0)
        while True:
            done = True
            for i in range(k + 1, m):
                if A[i][k]:
                    done = False
                    if A[i][k] % A[k][k] == 0:
                        # plain elimination keeps row k intact
                        row_op(k, i, 1, 0, -(A[i][k] // A[k][k]), 1)
                    else:
                        g, x, y = _xgcd(A[k][k], A[i][k])
                        a, b = A[k][k] // g, A[i][k] // g
                        row_op(k, i, x, y, -b, a)
            for j in range(k + 1, n):
                if A[k][j]:
                    done = False
                    if A[k][j] % A[k][k] == 0:
                        col_op(k, j, 1, 0, -(A[k][j] // A[k][k]), 1)
                    else:
                        g, x, y = _xgcd(A[k][k], A[k][j])
                        a, b = A[k][k] // g, A[k][j] // g
                        col_op(k, j, x, y, -b, a)
            if done:
                break
        if A[k][k] < 0:
            for j in range(n):
                A[k][j] = -A[k][j]
            for j in range(m):
                S[k][j] = -S[k][j]
        k += 1
    return A, S, T


def integer_kernel(rows) -> list[Vec]:
    """Basis of the (saturated) lattice {x in Z^n : A x = 0}."""
    A = [list(map(int, r)) for r in rows]
    if not A:
        raise PolyhedralError("integer_kernel needs at least one row")
    n = len(A[0])
    D, _, T = smith_diagonalize(A)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    return [tuple(T[i][j] for i in range(n)) for j in range(rank, n)]


def integer_solve(cols: list, target) -> list[int] | None:
    """Solve sum_i c_i * cols[i] = target over Z; None if no integer solution."""
    target = [int(x) for x in target]
    if not cols:
        return [] if not any(target) else None
    n = len(cols[0])
    m = len(cols)
    A = [[int(cols[j][i]) for j in range(m)] for i in range(n)]
    D, S, T = smith_diagonalize(A)
    st = [sum(S[i][j] * target[j] for j in range(n)) for i in range(n)]
    y = [0] * m
    for i in range(n):
        d = D[i][i] if i < min(n, m) else 0
        if d == 0:
            if st[i] != 0:
                return None
        else:
            if st[i] % d != 0:
                return None
            y[i] = st[i] // d
    return [sum(T[i][j] * y[j] for j in range(m)) for i in range(m)]


def rational_solve(cols: list, target) -> list[Fraction] | None:
    """Solve sum_i c_i * cols[i] = target over Q; None if inconsistent."""
    if not cols:
        return [] if all(Fraction(x) == 0 for x in target) else None
    n = len(cols[0])
    m = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(m)] + [Fraction(target[i])]
           for i in range(n)]
    piv_cols: list[int] = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        fac = aug[r][c]
        aug[r] = [x / fac for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, n):
        if aug[i][m] != 0:
            return None
    sol = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][m]
    return sol


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^dim given by its canonical (HNF) basis."""

    dim: int
    basis: tuple[Vec, ...]

    @staticmethod
    def span(vectors, dim: int | None = None) -> "Lattice":
        vectors = [tuple(map(int, v)) for v in vectors]
        if dim is None:
            if not vectors:
                raise PolyhedralError("ambient dimension needed for empty span")
            dim = len(vectors[0])
        for v in vectors:
            if len(v) != dim:
                raise PolyhedralError("mixed dimensions in lattice span")
        return Lattice(dim, tuple(hnf(vectors)))

    @staticmethod
    def full(dim: int) -> "Lattice":
        ident = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
        return Lattice(dim, ident)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coords(self, v) -> QVec | None:
        """Coordinates of v in the lattice basis; None if v is outside the
        rational span."""
        sol = rational_solve(list(self.basis), v)
        return tuple(sol) if sol is not None else None

    def contains(self, v) -> bool:
        c = self.coords(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def from_coords(self, c) -> QVec:
        out = [Fraction(0)] * self.dim
        for x, b in zip(c, self.basis):
            if x:
                fx = Fraction(x)
                for i in range(self.dim):
                    out[i] += fx * b[i]
        return tuple(out)

    def primitive_vector(self, v) -> Vec:
        """The unique primitive lattice element w with v = c*w, c > 0."""
        c = self.coords(v)
        if c is None:
            raise PolyhedralError("vector is not in the rational span of the lattice")
        if all(x == 0 for x in c):
            raise PolyhedralError("zero vector has no primitive representative")
        w = self.from_coords(primitive(c))
        return tuple(int(x) for x in w)

    def reduce_mod(self, v) -> Vec:
        """Canonical representative of v modulo this lattice (HNF reduction)."""
        out = [int(x) for x in v]
        for b in self.basis:
            p = next(j for j in range(self.dim) if b[j] != 0)
            q = out[p] // b[p]
            if q:
                out = [a - q * c for a, c in zip(out, b)]
        return tuple(out)

    def saturation(self) -> "Lattice":
        """The saturated lattice span_Q(basis) ∩ Z^dim."""
        if not self.basis:
            return self
        ann = integer_kernel([list(b) for b in self.basis])
        if not ann:
            return Lattice.full(self.dim)
        sat = integer_kernel(ann)
        return Lattice(self.dim, tuple(hnf(sat)))

    def annihilator_rows(self) -> list[Vec]:
        """Primitive integer functionals vanishing on the lattice."""
        if not self.basis:
            return [tuple(int(i == j) for j in range(self.dim))
                    for i in range(self.dim)]
        return integer_kernel([list(b) for b in self.basis])


def lattice_span(vectors, dim: int | None = None) -> Lattice:
    return Lattice.span(vectors, dim)


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------

def _dd(dim: int, inequalities) -> tuple[list[Vec], list[Vec]]:
    """Double description of {x : a.x >= 0 for a in inequalities}.

    Returns (lineality basis, extreme rays).  The lineality basis spans the
    kernel of the constraint matrix; the rays are extreme modulo the
    lineality space.

    Invariants carried through the incremental construction: the lineality
    list always spans the kernel of the processed constraints, the ray set
    is minimal modulo it, and each ray's bit mask records exactly which
    processed constraints vanish on it (needed for the combinatorial
    adjacency test of Fukuda–Prodon).
    """
    lin: list[QVec] = [tuple(Fraction(int(i == j)) for j in range(dim))
                       for i in range(dim)]
    rays: list[QVec] = []
    masks: list[int] = []
    n_processed = 0

    seen = set()
    todo: list[Vec] = []
    for a in inequalities:
        af = [Fraction(x) for x in a]
        if all(x == 0 for x in af):
            continue
        ap = primitive(af)
        if ap not in seen:
            seen.add(ap)
            todo.append(ap)

    def dot(a, r) -> Fraction:
        return sum(Fraction(x) * y for x, y in zip(a, r))

    for a in todo:
        k = n_processed
        v0_orig = next((v for v in lin if dot(a, v) != 0), None)
        if v0_orig is not None:
            # constraint cuts the lineality space: one dimension of it
            # becomes a new extreme ray, everything else is projected into
            # the constraint hyperplane along v0.  Earlier constraints all
            # vanish on v0, so existing masks stay valid.
            v0 = v0_orig if dot(a, v0_orig) > 0 else tuple(-x for x in v0_orig)
            pv = dot(a, v0)
            new_lin = []
            for v in lin:
                if v is v0_orig:
                    continue
                w = tuple(x - dot(a, v) / pv * y for x, y in zip(v, v0))
                if any(x != 0 for x in w):
                    new_lin.append(w)
            lin = new_lin
            # every projected ray now lies inside {a = 0}; v0 does not
            rays = [tuple(x - dot(a, r) / pv * y for x, y in zip(r, v0))
                    for r in rays]
            masks = [mk | (1 << k) for mk in masks]
            rays.append(v0)
            masks.append((1 << k) - 1)
            n_processed += 1
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            for i in zero:
                masks[i] |= 1 << k
            n_processed += 1
            continue
        zero_set = set(zero)
        new_rays: list[QVec] = []
        new_masks: list[int] = []
        for i in pos:
            new_rays.append(rays[i])
            new_masks.append(masks[i])
        for i in zero:
            new_rays.append(rays[i])
            new_masks.append(masks[i] | (1 << k))
        for i, j in itertools.product(pos, neg):
            common = masks[i] & masks[j]
            adjacent = True
            for t in range(len(rays)):
                if t != i and t != j and (masks[t] & common) == common:
                    adjacent = False
                    break
            if not adjacent:
                continue
            w = tuple(vals[i] * x - vals[j] * y for x, y in zip(rays[j], rays[i]))
            new_rays.append(w)
            new_masks.append(common | (1 << k))
        rays = new_rays
        masks = new_masks
        n_processed += 1

    lin_basis = [primitive(v) for v in lin if any(x != 0 for x in v)]
    ray_vecs = [primitive(r) for r in rays if any(x != 0 for x in r)]
    return lin_basis, ray_vecs


def _project_off(rays, lin: Lattice) -> list[Vec]:
    """Orthogonal projection of rays off the lineality span, primitivized,
    deduplicated and sorted: the canonical ray list modulo lineality."""
    if lin.rank == 0:
        return sorted(set(primitive(r) for r in rays))
    basis = [tuple(Fraction(x) for x in b) for b in lin.basis]
    gram_cols = [tuple(sum(a * b for a, b in zip(bi, bj)) for bi in basis)
                 for bj in basis]
    out = set()
    for r in rays:
        rv = [Fraction(x) for x in r]
        rhs = [sum(a * b for a, b in zip(bi, rv)) for bi in basis]
        sol = rational_solve(gram_cols, rhs)
        proj = rv[:]
        for c, bi in zip(sol, basis):
            proj = [p - c * b for p, b in zip(proj, bi)]
        if any(x != 0 for x in proj):
            out.add(primitive(proj))
    return sorted(out)


@dataclass(frozen=True)
class RationalCone:
    """Rational polyhedral cone in canonical form.

    rays: extreme rays modulo lineality, primitive, orthogonal to the
        lineality span, sorted.
    lineality: canonical (HNF) basis of the lineality lattice.
    facet_normals: minimal inequality description, canonical modulo
        span_equations.
    span_equations: primitive functionals cutting out the linear span.
    """

    dim: int
    rays: tuple[Vec, ...]
    lineality: tuple[Vec, ...]
    facet_normals: tuple[Vec, ...]
    span_equations: tuple[Vec, ...]

    @staticmethod
    def from_generators(generators, lines=(), dim: int | None = None) -> "RationalCone":
        gens = [primitive(g) for g in generators if any(Fraction(x) != 0 for x in g)]
        lns = [primitive(l) for l in lines if any(Fraction(x) != 0 for x in l)]
        if dim is None:
            probe = gens + lns
            if not probe:
                raise PolyhedralError("ambient dimension needed for the zero cone")
            dim = len(probe[0])
        for v in gens + lns:
            if len(v) != dim:
                raise PolyhedralError("mixed dimensions among cone generators")
        # facets of the cone = extreme rays of {phi : phi.g >= 0, phi.l = 0}
        ieqs = gens + lns + [tuple(-x for x in l) for l in lns]
        ann, facets = _dd(dim, ieqs)
        return RationalCone._from_facets(dim, facets, ann)

    @staticmethod
    def from_inequalities(normals, equations=(), dim: int | None = None) -> "RationalCone":
        nrm = [primitive(n) for n in normals if any(Fraction(x) != 0 for x in n)]
        eqs = [primitive(e) for e in equations if any(Fraction(x) != 0 for x in e)]
        if dim is None:
            probe = nrm + eqs
            if not probe:
                raise PolyhedralError("ambient dimension needed for the full cone")
            dim = len(probe[0])
        return RationalCone._from_facets(dim, nrm, eqs)

    @staticmethod
    def _from_facets(dim: int, facets, ann) -> "RationalCone":
        ieqs = list(facets) + list(ann) + [tuple(-x for x in a) for a in ann]
        lin, rays = _dd(dim, ieqs)
        # recompute the minimal facet description from the generator side so
        # that redundant input constraints are dropped and the form is
        # canonical
        ieqs2 = rays + lin + [tuple(-x for x in l) for l in lin]
        ann2, facets2 = _dd(dim, ieqs2)
        lin_lat = Lattice.span(lin, dim) if lin else Lattice(dim, ())
        ann_lat = Lattice.span(ann2, dim) if ann2 else Lattice(dim, ())
        return RationalCone(
            dim,
            tuple(_project_off(rays, lin_lat)),
            lin_lat.basis,
            tuple(_project_off(facets2, ann_lat)),
            ann_lat.basis,
        )

    @staticmethod
    def full_space(dim: int) -> "RationalCone":
        return RationalCone.from_inequalities([], dim=dim)

    @staticmethod
    def zero(dim: int) -> "RationalCone":
        eqs = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        return RationalCone.from_inequalities([], eqs, dim=dim)

    @property
    def lineality_rank(self) -> int:
        return len(self.lineality)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def span_rank(self) -> int:
        return self.dim - len(self.span_equations)

    def contains(self, v) -> bool:
        vf = [Fraction(x) for x in v]
        for e in self.span_equations:
            if sum(a * b for a, b in zip(e, vf)) != 0:
                return False
        for n in self.facet_normals:
            if sum(a * b for a, b in zip(n, vf)) < 0:
                return False
        return True

    def dual(self) -> "RationalCone":
        """The cone {phi : phi.v >= 0 for all v in this cone}."""
        return RationalCone.from_inequalities(
            list(self.rays), list(self.lineality), dim=self.dim)

    def intersection(self, other: "RationalCone") -> "RationalCone":
        if self.dim != other.dim:
            raise PolyhedralError("dimension mismatch")
        return RationalCone.from_inequalities(
            list(self.facet_normals) + list(other.facet_normals),
            list(self.span_equations) + list(other.span_equations),
            dim=self.dim)


def dual_cone(cone: RationalCone) -> RationalCone:
    return cone.dual()


def cone_facets(cone: RationalCone) -> list[Vec]:
    """Minimal facet normals (valid within the cone's linear span)."""
    return list(cone.facet_normals)


# ---------------------------------------------------------------------------
# Hilbert bases
# ---------------------------------------------------------------------------

def _box_residues(coord_rows: list[list[int]]) -> list[Vec]:
    """Canonical coset representatives of Z^s modulo the row lattice of a
    full-rank integer matrix, as the HNF pivot box."""
    s = len(coord_rows)
    H = hnf(coord_rows)
    if len(H) != s:
        raise PolyhedralError("internal: expected a full-rank residue lattice")
    diag = []
    for j in range(s):
        row = next((r for r in H if next(i for i in range(s) if r[i]) == j), None)
        if row is None:
            raise PolyhedralError("internal: expected a full-rank residue lattice")
        diag.append(row[j])
    return [combo for combo in itertools.product(*(range(d) for d in diag))]


def _parallelepiped_points(rays: list[Vec], dim: int) -> list[Vec]:
    """Nonzero lattice points of {sum t_i r_i : 0 <= t_i < 1} for linearly
    independent integer rays."""
    sat = Lattice.span(list(rays), dim).saturation()
    coord_rows = [[int(x) for x in sat.coords(r)] for r in rays]
    out: set[Vec] = set()
    for rep in _box_residues(coord_rows):
        amb = sat.from_coords(rep)
        t = rational_solve(list(rays), amb)
        t_frac = [x - (x.numerator // x.denominator) for x in t]
        pt = [Fraction(0)] * dim
        for c, r in zip(t_frac, rays):
            if c:
                for i in range(dim):
                    pt[i] += c * r[i]
        if any(x != 0 for x in pt):
            if any(x.denominator != 1 for x in pt):
                raise PolyhedralError("internal: non-integral parallelepiped point")
            out.add(tuple(int(x) for x in pt))
    return sorted(out)


def hilbert_basis_with_units(cone: RationalCone, lattice: Lattice
                             ) -> tuple[Lattice, list[Vec]]:
    """Minimal generators of cone ∩ lattice.

    Returns (units, basis): `units` is the lattice of invertible elements
    (cone lineality ∩ lattice) and `basis` is the unique minimal generating
    set of the quotient monoid, lifted to canonical representatives modulo
    the units.
    """
    dim = cone.dim
    if lattice.dim != dim:
        raise PolyhedralError("dimension mismatch")
    cone = cone.intersection(RationalCone.from_inequalities(
        [], lattice.annihilator_rows(), dim=dim))
    m = lattice.rank
    unit_rows: list[Vec] = []
    if cone.lineality and m:
        constraints = list(cone.facet_normals) + list(cone.span_equations)
        rows = [[sum(c[i] * b[i] for i in range(dim)) for b in lattice.basis]
                for c in constraints]
        if rows:
            kernel = integer_kernel(rows)
        else:
            kernel = [tuple(int(i == j) for j in range(m)) for i in range(m)]
        for k in kernel:
            unit_rows.append(tuple(int(x) for x in lattice.from_coords(k)))
    units = Lattice.span(unit_rows, dim) if unit_rows else Lattice(dim, ())

    if m == 0:
        return units, []
    u = units.rank
    if u:
        unit_coords = [[int(x) for x in lattice.coords(b)] for b in units.basis]
        quot_rows = integer_kernel(unit_coords)
    else:
        quot_rows = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    q = len(quot_rows)
    if q == 0:
        return units, []

    def to_quotient(vec_ambient) -> QVec:
        c = lattice.coords(vec_ambient)
        if c is None:
            raise PolyhedralError("internal: point outside lattice span")
        return tuple(sum(Fraction(r[i]) * c[i] for i in range(m))
                     for r in quot_rows)

    proj_rays = []
    for r in cone.rays:
        img = to_quotient(r)
        if any(img):
            proj_rays.append(primitive(img))
    proj_rays = sorted(set(proj_rays))
    if not proj_rays:
        return units, []
    qcone = RationalCone.from_generators(proj_rays, dim=q)
    if qcone.lineality:
        raise PolyhedralError("internal: quotient cone not pointed")

    grading = tuple(sum(n[i] for n in qcone.facet_normals) for i in range(q))

    def grade(p) -> int:
        return sum(a * b for a, b in zip(grading, p))

    candidates: set[Vec] = set(proj_rays)
    ray_list = list(proj_rays)
    for size in range(2, min(len(ray_list), q) + 1):
        for sub in itertools.combinations(ray_list, size):
            if len(hnf([list(r) for r in sub])) != size:
                continue
            for p in _parallelepiped_points(list(sub), q):
                if qcone.contains(p):
                    candidates.add(p)
    ordered = sorted(candidates, key=lambda p: (grade(p), p))
    kept: list[Vec] = []
    for p in ordered:
        reducible = False
        for kvec in kept:
            diff = tuple(a - b for a, b in zip(p, kvec))
            if not any(diff) or qcone.contains(diff):
                reducible = True
                break
        if not reducible:
            kept.append(p)

    # lift canonically: any preimage lies in the cone because the kernel of
    # the quotient map spans the cone's lineality
    lift_cols = [tuple(int(x) for x in to_quotient(b)) for b in lattice.basis]
    lifted: list[Vec] = []
    for p in kept:
        sol = integer_solve(lift_cols, p)
        if sol is None:
            raise PolyhedralError("internal: quotient lift failed")
        amb = lattice.from_coords(sol)
        vec = tuple(int(x) for x in amb)
        if u:
            vec = units.reduce_mod(vec)
        if not cone.contains(vec):
            raise PolyhedralError("internal: lifted generator left the cone")
        lifted.append(vec)
    return units, sorted(lifted)


def hilbert_basis(cone: RationalCone, lattice: Lattice) -> list[Vec]:
    """Unique minimal generating set of the pointed monoid cone ∩ lattice."""
    units, basis = hilbert_basis_with_units(cone, lattice)
    if units.rank:
        raise PolyhedralError(
            "cone has invertible directions on the lattice; "
            "use hilbert_basis_with_units")
    return basis


# ---------------------------------------------------------------------------
# monoid membership by bounded search
# ---------------------------------------------------------------------------

def _int_det(mat: list[list[int]]) -> int:
    # Bareiss fraction-free determinant
    a = [row[:] for row in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _max_abs_minor(rows: list[list[int]], cap: int = 500000) -> int:
    m = len(rows)
    n = len(rows[0]) if rows else 0
    best = max((abs(x) for r in rows for x in r), default=1)
    count = 0
    for k in range(2, min(m, n) + 1):
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                count += 1
                if count > cap:
                    return best
                sub = [[rows[i][j] for j in ci] for i in ri]
                best = max(best, abs(_int_det(sub)))
    return max(best, 1)


def monoid_membership(v, generators) -> tuple[bool, list[int] | None]:
    """Decide v ∈ Z≥0-span(generators), with a certificate.

    Termination: if a nonnegative integer combination exists then one
    exists with every coefficient bounded by the largest absolute minor of
    the augmented matrix [generators | v] (Borosh–Treybig), so the search
    space is finite.
    """
    v = tuple(map(int, v))
    gens = [tuple(map(int, g)) for g in generators]
    if not any(v):
        return True, [0] * len(gens)
    if not gens:
        return False, None
    dim = len(v)
    aug_rows = [[g[i] for g in gens] + [v[i]] for i in range(dim)]
    bound = _max_abs_minor(aug_rows)

    order = sorted(range(len(gens)), key=lambda i: gens[i], reverse=True)
    n = len(order)
    # per-suffix coordinate facts for pruning
    supp = [[False] * dim for _ in range(n + 1)]
    nneg = [[True] * dim for _ in range(n + 1)]
    npos = [[True] * dim for _ in range(n + 1)]
    for pos in reversed(range(n)):
        g = gens[order[pos]]
        for i in range(dim):
            supp[pos][i] = supp[pos + 1][i] or g[i] != 0
            nneg[pos][i] = nneg[pos + 1][i] and g[i] >= 0
            npos[pos][i] = npos[pos + 1][i] and g[i] <= 0

    coeffs = [0] * len(gens)

    def search(pos: int, residual: tuple[int, ...]) -> bool:
        if not any(residual):
            for p in range(pos, n):
                coeffs[order[p]] = 0
            return True
        if pos >= n:
            return False
        for i in range(dim):
            r = residual[i]
            if r != 0 and not supp[pos][i]:
                return False
            if r < 0 and nneg[pos][i]:
                return False
            if r > 0 and npos[pos][i]:
                return False
        g = gens[order[pos]]
        for c in range(bound + 1):
            coeffs[order[pos]] = c
            if search(pos + 1, tuple(r - c * x for r, x in zip(residual, g))):
                return True
        return False

    if search(0, v):
        return True, coeffs[:]
    return False, None


# ---------------------------------------------------------------------------
# polytopes from half-spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polytope:
    """Polyhedron {x : n.x >= c} in coordinate space, reported relative to
    an affine basepoint."""

    dim: int
    halfspaces: tuple[tuple[Vec, Fraction], ...]
    basepoint: QVec

    @staticmethod
    def from_halfspaces(basepoint, constraints) -> "Polytope":
        base = tuple(Fraction(x) for x in basepoint)
        dim = len(base)
        hs = []
        for normal, offset in constraints:
            nf = [Fraction(x) for x in normal]
            if len(nf) != dim:
                raise PolyhedralError("constraint dimension mismatch")
            off = Fraction(offset)
            den = 1
            for x in list(nf) + [off]:
                den = den * x.denominator // gcd(den, x.denominator)
            hs.append((tuple(int(x * den) for x in nf), off * den))
        return Polytope(dim, tuple(hs), base)

    def _homogenized(self) -> RationalCone:
        ieqs = []
        for nvec, c in self.halfspaces:
            ieqs.append(tuple(c.denominator * x for x in nvec) + (-c.numerator,))
        ieqs.append(tuple([0] * self.dim) + (1,))
        return RationalCone.from_inequalities(ieqs, dim=self.dim + 1)

    def vertex_description(self) -> tuple[list[QVec], list[Vec], list[Vec]]:
        """(vertices, recession rays, lines); vertices are translated by the
        basepoint.  With lines present the 'vertices' are representatives of
        the minimal faces."""
        cone = self._homogenized()
        verts: list[QVec] = []
        rays: list[Vec] = []
        lines: list[Vec] = []
        for l in cone.lineality:
            if l[-1] != 0:
                raise PolyhedralError("internal: homogenization lineality hits t!=0")
            lines.append(l[:-1])
        for r in cone.rays:
            if r[-1] > 0:
                t = Fraction(r[-1])
                verts.append(tuple(Fraction(x) / t + b
                                   for x, b in zip(r[:-1], self.basepoint)))
            elif r[-1] == 0:
                rays.append(r[:-1])
            else:
                raise PolyhedralError("internal: homogenization ray with t<0")
        return sorted(verts), sorted(rays), sorted(lines)

    def is_empty(self) -> bool:
        return not any(r[-1] > 0 for r in self._homogenized().rays)

    def is_bounded(self) -> bool:
        if self.is_empty():
            return True
        _, rays, lines = self.vertex_description()
        return not rays and not lines

    def vertices(self) -> list[QVec]:
        return self.vertex_description()[0]


def polytope_from_halfspaces(basepoint, constraints) -> Polytope:
    return Polytope.from_halfspaces(basepoint, constraints)
