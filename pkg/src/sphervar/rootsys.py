"""Root data for products of simple Dynkin types with a central torus.

Weight coordinates are the fundamental-weight basis per simple factor
followed by the standard basis of the central characters, so a coroot
pairing is a coordinate read.  Covectors live in the dual basis (simple
coroots + dual central basis) and pair with weights by dot product.

Numbering is Bourbaki within each factor, except G2 where the first
simple root is the long one (the classical-reference convention used in
the spherical-variety literature); translate to Bourbaki G2 by swapping
the two indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyhedral import rational_solve

VALID_TYPES = {"A", "B", "C", "D", "E", "F", "G"}


class RootDataError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    """A reductive group shape: ordered simple factors plus a central torus."""

    factors: tuple[tuple[str, int], ...]
    central_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors",
                           tuple((str(t), int(r)) for t, r in self.factors))
        if self.central_rank < 0:
            raise RootDataError("central rank must be nonnegative")

    @property
    def simple_rank(self) -> int:
        return sum(r for _, r in self.factors)

    @property
    def dim(self) -> int:
        return self.simple_rank + self.central_rank


def _check_factor(dynkin: str, rank: int) -> None:
    if dynkin not in VALID_TYPES:
        raise RootDataError(f"unknown Dynkin type {dynkin!r}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[dynkin]
    if not ok:
        raise RootDataError(f"invalid rank {rank} for type {dynkin}")


def _cartan_block(dynkin: str, n: int) -> list[list[int]]:
    """Cartan matrix with entries C[i][j] = <coroot_i, root_j>."""
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if dynkin in ("A", "B", "C"):
        for i in range(n - 1):
            edge(i, i + 1)
        if dynkin == "B" and n >= 2:
            # last root short
            C[n - 1][n - 2] = -2
        if dynkin == "C" and n >= 2:
            # last root long
            C[n - 2][n - 1] = -2
    elif dynkin == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)
    elif dynkin == "E":
        chain = [(0, 2), (2, 3), (3, 4), (4, 5)]
        if n >= 7:
            chain.append((5, 6))
        if n == 8:
            chain.append((6, 7))
        for i, j in chain:
            edge(i, j)
        edge(1, 3)
    elif dynkin == "F":
        edge(0, 1)
        edge(1, 2, -1, -2)
        edge(2, 3)
    elif dynkin == "G":
        # first root long, second short
        edge(0, 1, -1, -3)
    return C


def _length_block(dynkin: str, n: int) -> list[Fraction]:
    """Half squared lengths d_i = (a_i, a_i)/2, normalized to 1 on long roots."""
    half = Fraction(1, 2)
    if dynkin == "B":
        return [Fraction(1)] * (n - 1) + [half]
    if dynkin == "C":
        return [half] * (n - 1) + [Fraction(1)]
    if dynkin == "F":
        return [Fraction(1), Fraction(1), half, half]
    if dynkin == "G":
        return [Fraction(1), Fraction(1, 3)]
    return [Fraction(1)] * n


@dataclass(frozen=True)
class WeightVec:
    """Element of the rational weight space, in fundamental-weight + central
    coordinates."""

    spec: GroupSpec
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))
        if len(self.coords) != self.spec.dim:
            raise RootDataError("weight length does not match the group")

    def __add__(self, other: "WeightVec") -> "WeightVec":
        _same_spec(self, other)
        return WeightVec(self.spec, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "WeightVec") -> "WeightVec":
        _same_spec(self, other)
        return WeightVec(self.spec, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "WeightVec":
        return WeightVec(self.spec, tuple(-a for a in self.coords))

    def scale(self, c) -> "WeightVec":
        c = Fraction(c)
        return WeightVec(self.spec, tuple(c * a for a in self.coords))

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.coords)

    def int_coords(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise RootDataError("weight has non-integer coordinates")
        return tuple(int(x) for x in self.coords)


@dataclass(frozen=True)
class CovectorVec:
    """Functional on the weight space, in coroot + dual central coordinates."""

    spec: GroupSpec
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))
        if len(self.coords) != self.spec.dim:
            raise RootDataError("covector length does not match the group")

    def __add__(self, other: "CovectorVec") -> "CovectorVec":
        _same_spec(self, other)
        return CovectorVec(self.spec, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CovectorVec") -> "CovectorVec":
        _same_spec(self, other)
        return CovectorVec(self.spec, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "CovectorVec":
        c = Fraction(c)
        return CovectorVec(self.spec, tuple(c * a for a in self.coords))


def _same_spec(a, b) -> None:
    if a.spec != b.spec:
        raise RootDataError("mismatched group specs")


@dataclass(frozen=True)
class ParabolicSet:
    """A standard parabolic P_Sigma, named by the simple roots of its Levi."""

    roots: frozenset[int]

    @staticmethod
    def of(indices) -> "ParabolicSet":
        return ParabolicSet(frozenset(int(i) for i in indices))


@dataclass(frozen=True)
class RootData:
    spec: GroupSpec
    cartan: tuple[tuple[int, ...], ...]
    root_lengths: tuple[Fraction, ...]
    factor_of: tuple[int, ...]
    sym_form: tuple[tuple[Fraction, ...], ...]

    @property
    def n_simple(self) -> int:
        return len(self.cartan)

    @property
    def dim(self) -> int:
        return self.spec.dim

    def weight(self, coords) -> WeightVec:
        return WeightVec(self.spec, tuple(Fraction(x) for x in coords))

    def covector(self, coords) -> CovectorVec:
        return CovectorVec(self.spec, tuple(Fraction(x) for x in coords))

    def zero_weight(self) -> WeightVec:
        return self.weight([0] * self.dim)

    def simple_root(self, i: int) -> WeightVec:
        """alpha_i in fundamental-weight coordinates: the i-th Cartan column."""
        coords = [Fraction(0)] * self.dim
        for r in range(self.n_simple):
            coords[r] = Fraction(self.cartan[r][i])
        return self.weight(coords)

    def simple_coroot(self, i: int) -> CovectorVec:
        coords = [Fraction(0)] * self.dim
        coords[i] = Fraction(1)
        return self.covector(coords)

    def fundamental_weight(self, i: int) -> WeightVec:
        coords = [Fraction(0)] * self.dim
        coords[i] = Fraction(1)
        return self.weight(coords)

    @property
    def simple_roots(self) -> tuple[WeightVec, ...]:
        return tuple(self.simple_root(i) for i in range(self.n_simple))

    @property
    def simple_coroots(self) -> tuple[CovectorVec, ...]:
        return tuple(self.simple_coroot(i) for i in range(self.n_simple))

    @property
    def fundamental_weights(self) -> tuple[WeightVec, ...]:
        return tuple(self.fundamental_weight(i) for i in range(self.n_simple))

    def coroot_pairing(self, i: int, w: WeightVec) -> Fraction:
        if w.spec != self.spec:
            raise RootDataError("mismatched group specs")
        return w.coords[i]

    def root_name(self, i: int) -> str:
        if len(self.spec.factors) <= 1:
            return f"alpha{i + 1}"
        f = self.factor_of[i]
        start = sum(r for _, r in self.spec.factors[:f])
        return f"f{f + 1}.alpha{i - start + 1}"

    def is_dominant(self, w: WeightVec, levi=None) -> bool:
        idx = range(self.n_simple) if levi is None else sorted(levi)
        return all(w.coords[i] >= 0 for i in idx)


def build_root_data(spec: GroupSpec) -> RootData:
    """Assemble Cartan matrices, root lengths and the invariant form."""
    for t, r in spec.factors:
        _check_factor(t, r)
    blocks = [_cartan_block(t, r) for t, r in spec.factors]
    lengths: list[Fraction] = []
    factor_of: list[int] = []
    for f, (t, r) in enumerate(spec.factors):
        lengths.extend(_length_block(t, r))
        factor_of.extend([f] * r)
    n = spec.simple_rank
    cartan = [[0] * n for _ in range(n)]
    pos = 0
    for blk in blocks:
        b = len(blk)
        for i in range(b):
            for j in range(b):
                cartan[pos + i][pos + j] = blk[i][j]
        pos += b
    # invariant form on weight coordinates: per-factor block is
    # (omega_i, omega_j) = (C^{-1})_{ji} d_j; the central block is the identity
    dim = spec.dim
    sym = [[Fraction(0)] * dim for _ in range(dim)]
    pos = 0
    for blk in blocks:
        b = len(blk)
        inv = _invert_rational([[Fraction(x) for x in row] for row in blk])
        for i in range(b):
            for j in range(b):
                sym[pos + i][pos + j] = inv[j][i] * lengths[pos + j]
        pos += b
    for i in range(spec.central_rank):
        sym[n + i][n + i] = Fraction(1)
    return RootData(
        spec=spec,
        cartan=tuple(tuple(row) for row in cartan),
        root_lengths=tuple(lengths),
        factor_of=tuple(factor_of),
        sym_form=tuple(tuple(row) for row in sym),
    )


def _invert_rational(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        fac = aug[c][c]
        aug[c] = [x / fac for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def pairing(c: CovectorVec, w: WeightVec) -> Fraction:
    """<c, w>: dot product in the dual coordinate pair."""
    _same_spec(c, w)
    return sum(a * b for a, b in zip(c.coords, w.coords))


def support(w: WeightVec, rd: RootData) -> frozenset[int]:
    """Indices of simple roots appearing in the simple-root expansion of w.

    Raises if w has a central component or otherwise leaves the root span.
    """
    n = rd.n_simple
    for x in w.coords[n:]:
        if x != 0:
            raise RootDataError("weight is not in the span of the simple roots")
    cols = [tuple(Fraction(rd.cartan[r][j]) for r in range(n)) for j in range(n)]
    sol = rational_solve(cols, [Fraction(x) for x in w.coords[:n]])
    if sol is None:
        raise RootDataError("weight is not in the span of the simple roots")
    return frozenset(j for j, c in enumerate(sol) if c != 0)


def root_coefficients(w: WeightVec, rd: RootData) -> tuple[Fraction, ...]:
    """Coefficients of w in the simple-root basis (error off the root span)."""
    n = rd.n_simple
    for x in w.coords[n:]:
        if x != 0:
            raise RootDataError("weight is not in the span of the simple roots")
    cols = [tuple(Fraction(rd.cartan[r][j]) for r in range(n)) for j in range(n)]
    sol = rational_solve(cols, [Fraction(x) for x in w.coords[:n]])
    if sol is None:
        raise RootDataError("weight is not in the span of the simple roots")
    return tuple(sol)


def levi_root_subset(rd: RootData, p: ParabolicSet) -> frozenset[int]:
    """Simple roots of the standard Levi of P_Sigma (the Sigma itself)."""
    return frozenset(p.roots)


def symmetric_form(rd: RootData, w1: WeightVec, w2: WeightVec) -> Fraction:
    _same_spec(w1, w2)
    if w1.spec != rd.spec:
        raise RootDataError("mismatched group specs")
    total = Fraction(0)
    for i, a in enumerate(w1.coords):
        if a == 0:
            continue
        row = rd.sym_form[i]
        for j, b in enumerate(w2.coords):
            if b != 0:
                total += a * row[j] * b
    return total
