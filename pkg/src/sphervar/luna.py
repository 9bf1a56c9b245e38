"""Shared value types for B-divisor data.

A divisor's valuation vector is primarily a functional on the weight
lattice X, stored by its values on the canonical lattice basis; when the
divisor comes from an explicit coroot formula the coroot presentation is
kept alongside for cross-checks against simple roots outside X.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .monoid import WeightMonoid
from .polyhedral import Lattice
from .rootsys import CovectorVec, ParabolicSet, RootData, WeightVec


class LunaError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeFunctional:
    """A rational functional on a weight lattice, given by its values on
    the canonical lattice basis."""

    lattice: Lattice
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(x) for x in self.values))
        if len(self.values) != self.lattice.rank:
            raise LunaError("functional length does not match the lattice rank")

    @staticmethod
    def from_covector(cov: CovectorVec, lattice: Lattice) -> "LatticeFunctional":
        vals = tuple(sum(c * Fraction(b) for c, b in zip(cov.coords, basis))
                     for basis in lattice.basis)
        return LatticeFunctional(lattice, vals)

    @staticmethod
    def from_values(lattice: Lattice, values) -> "LatticeFunctional":
        return LatticeFunctional(lattice, tuple(Fraction(x) for x in values))

    def evaluate(self, vec) -> Fraction:
        coords = self.lattice.coords(vec)
        if coords is None:
            raise LunaError("vector outside the lattice span")
        return sum(v * c for v, c in zip(self.values, coords))

    def eval_weight(self, w: WeightVec) -> Fraction:
        return self.evaluate([Fraction(x) for x in w.coords])

    def __add__(self, other: "LatticeFunctional") -> "LatticeFunctional":
        if self.lattice != other.lattice:
            raise LunaError("functionals on different lattices")
        return LatticeFunctional(self.lattice,
                                 tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "LatticeFunctional") -> "LatticeFunctional":
        if self.lattice != other.lattice:
            raise LunaError("functionals on different lattices")
        return LatticeFunctional(self.lattice,
                                 tuple(a - b for a, b in zip(self.values, other.values)))

    def sort_key(self):
        return self.values


@dataclass(frozen=True)
class BDivisorRecord:
    """One recovered B-divisor: valuation functional, stabilizer, origin."""

    divisor_id: str
    phi: LatticeFunctional
    stabilizer: ParabolicSet | None
    source: str
    source_roots: tuple[int, ...] = ()
    coroot_form: CovectorVec | None = None

    def moved_roots(self, n_simple: int) -> frozenset[int]:
        """Simple roots alpha with P_alpha not contained in the stabilizer."""
        if self.stabilizer is None:
            raise LunaError("stabilizer not computed yet")
        return frozenset(range(n_simple)) - self.stabilizer.roots

    def with_stabilizer(self, p: ParabolicSet) -> "BDivisorRecord":
        return BDivisorRecord(self.divisor_id, self.phi, p, self.source,
                              self.source_roots, self.coroot_form)


@dataclass(frozen=True)
class LunaDatum:
    """Assembled combinatorial data of an affine spherical variety (or of a
    localization of one, when levi_roots is a proper subset)."""

    rd: RootData
    monoid: WeightMonoid
    psi: tuple[WeightVec, ...]
    type_table: "RootTypeTable"
    divisors: tuple[BDivisorRecord, ...]
    levi_roots: frozenset[int]

    @property
    def lattice(self) -> Lattice:
        return self.monoid.lattice

    def divisors_moved_by(self, alpha: int) -> tuple[BDivisorRecord, ...]:
        """D(alpha): divisors whose stabilizer does not contain P_alpha."""
        out = []
        for d in self.divisors:
            if d.stabilizer is None:
                raise LunaError("stabilizers not computed yet")
            if alpha not in d.stabilizer.roots:
                out.append(d)
        return tuple(out)


@dataclass(frozen=True)
class RootTypeTable:
    """Luna type (a/b/c/d) of each active simple root, with the recorded
    partner for paired d-roots."""

    entries: tuple[tuple[int, str], ...]
    partners: tuple[tuple[int, int], ...] = ()

    def type_of(self, i: int) -> str:
        for j, t in self.entries:
            if j == i:
                return t
        raise LunaError(f"no type recorded for simple root {i}")

    def roots_of_type(self, t: str) -> tuple[int, ...]:
        return tuple(j for j, tt in self.entries if tt == t)

    def partner_of(self, i: int) -> int | None:
        for a, b in self.partners:
            if a == i:
                return b
            if b == i:
                return a
        return None
