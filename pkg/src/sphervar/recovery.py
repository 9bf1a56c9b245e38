"""Recovery of the B-divisor set from a weight monoid and spherical roots.

The divisors split into two groups.  Those attached to type-c and type-d
simple roots are written down directly from the root (one divisor per
root, or per partnered pair of d-roots).  The rest — the stable divisors
and the pairs attached to type-b roots — are recovered by walking the
subsets of the minimal generator set from largest to smallest: each
subset localizes the monoid, and at each node one of five exclusive
situations determines which new divisors appear with which valuation
functionals.  Stabilizers are then read off from the pairing of the
functional against the type-b roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .luna import BDivisorRecord, LatticeFunctional, LunaDatum, RootTypeTable
from .monoid import WeightMonoid
from .polyhedral import (
    Lattice,
    Polytope,
    RationalCone,
    hilbert_basis_with_units,
    integer_kernel,
)
from .rootsys import CovectorVec, ParabolicSet, RootData, WeightVec, support
from .spherical import (
    SphericalRootSet,
    classify_root_types,
    elementary_forms,
    make_spherical_roots,
    validate_roots_in_lattice,
)

MAX_MINIMAL_GENERATORS = 12


class RecoveryError(ValueError):
    pass


@dataclass(frozen=True)
class RecursionNode:
    """Trace of one localization node of the recovery walk."""

    subset: tuple[int, ...]
    mu: tuple[Fraction, ...]
    levi_roots: tuple[int, ...]
    case: str
    minted: tuple[tuple[Fraction, ...], ...]
    note: str = ""


def _half_coroot(rd: RootData, i: int) -> CovectorVec:
    return rd.simple_coroot(i).scale(Fraction(1, 2))


def _phi_from_covector(cov: CovectorVec, lattice: Lattice) -> LatticeFunctional:
    return LatticeFunctional.from_covector(cov, lattice)


def recover_type_cd_divisors(m: WeightMonoid, psi: SphericalRootSet,
                             table: RootTypeTable) -> list[BDivisorRecord]:
    """Divisors attached to type-c and type-d roots: one per c-root with
    half the coroot, one per d-root or partnered d-pair with the coroot."""
    rd = m.rd
    X = m.lattice
    out: list[BDivisorRecord] = []
    for i in table.roots_of_type("c"):
        cov = _half_coroot(rd, i)
        out.append(BDivisorRecord("?", _phi_from_covector(cov, X), None,
                                  "type_c", (i,), cov))
    done: set[int] = set()
    for i in table.roots_of_type("d"):
        if i in done:
            continue
        j = table.partner_of(i)
        cov = rd.simple_coroot(i)
        phi = _phi_from_covector(cov, X)
        if j is None:
            out.append(BDivisorRecord("?", phi, None, "type_d", (i,), cov))
            done.add(i)
        else:
            phi_j = _phi_from_covector(rd.simple_coroot(j), X)
            if phi_j.values != phi.values:
                raise RecoveryError(
                    "invalid datum: partnered d-roots restrict differently "
                    "to the weight lattice")
            out.append(BDivisorRecord(
                "?", phi, None, "type_d", tuple(sorted((i, j))), cov))
            done.update((i, j))
    return out


def _class_functional(m: WeightMonoid, loc: WeightMonoid) -> LatticeFunctional:
    """The functional on the weight lattice vanishing on the invertible
    part of a corank-1 localization, normalized to 1 on the class
    generator of the localized monoid."""
    X = m.lattice
    inv = loc.invertible_lattice
    inv_coords = [[int(x) for x in X.coords(b)] for b in inv.basis]
    if inv_coords:
        kernel = integer_kernel(inv_coords)
    else:
        kernel = [(1,)] if X.rank == 1 else []
    if len(kernel) != 1:
        raise RecoveryError("internal: localization is not of corank one")
    f = kernel[0]

    def f_of(w: WeightVec) -> Fraction:
        c = X.coords(w.int_coords())
        return sum(Fraction(a) * b for a, b in zip(f, c))

    images = [(g, f_of(g)) for g in m.minimal_generators]
    nonzero = [v for _, v in images if v != 0]
    if not nonzero:
        raise RecoveryError("internal: corank-one localization with no class")
    if any(v > 0 for v in nonzero) and any(v < 0 for v in nonzero):
        raise RecoveryError("internal: localization class monoid not pointed")
    sign = 1 if nonzero[0] > 0 else -1
    vals = [sign * v for _, v in images]
    pos = sorted(v for v in vals if v > 0)
    g0 = pos[0]
    if any(v % g0 != 0 for v in pos):
        raise RecoveryError(
            "invalid monoid: localized class monoid has no single generator")
    values = tuple(Fraction(sign * x, 1) / g0 for x in f)
    return LatticeFunctional(X, values)


def recover_prime(m: WeightMonoid, psi: SphericalRootSet,
                  trace: list[RecursionNode] | None = None,
                  warnings: list[str] | None = None) -> list[BDivisorRecord]:
    """The stable divisors and the type-b divisor pairs, with their
    valuation functionals, recovered over the subset lattice of the
    minimal generators (largest subsets first)."""
    rd = m.rd
    X = m.lattice
    mins = m.minimal_generators
    k = len(mins)
    if k > MAX_MINIMAL_GENERATORS:
        raise RecoveryError(
            f"recovery limited to {MAX_MINIMAL_GENERATORS} minimal generators")
    table = classify_root_types(m, psi)
    pi_a = frozenset(table.roots_of_type("a"))
    pi_b = frozenset(table.roots_of_type("b"))
    active = sorted(m.active_roots)

    pool: list[BDivisorRecord] = []
    local_cache: dict[tuple[Fraction, ...], WeightMonoid] = {}
    zero = rd.zero_weight()

    for size in range(k, -1, -1):
        for subset in itertools.combinations(range(k), size):
            mu = zero
            for i in subset:
                mu = mu + mins[i]
            levi = frozenset(i for i in active if mu.coords[i] == 0)
            overline = [rec for rec in pool if rec.phi.eval_weight(mu) == 0]
            minted: list[BDivisorRecord] = []
            case = ""
            note = ""
            if levi == pi_a:
                loc = local_cache.get(mu.coords)
                if loc is None:
                    loc = m.localize(mu) if not mu.is_zero else m
                    local_cache[mu.coords] = loc
                inv_rank = loc.invertible_lattice.rank
                if inv_rank == X.rank:
                    case = "1a"
                elif inv_rank <= X.rank - 2:
                    case = "1b"
                    note = "rank drop >= 2; no divisors at this node"
                else:
                    case = "1c"
                    phi = _class_functional(m, loc)
                    if any(r.phi.values == phi.values for r in overline):
                        note = "class divisor already recovered above"
                    else:
                        _check_node_pattern(phi, mins, subset)
                        minted.append(BDivisorRecord(
                            "?", phi, None, "case_1c", ()))
            else:
                extra = levi - pi_a
                case2 = False
                if len(extra) == 1:
                    (alpha,) = extra
                    if alpha in pi_b:
                        signs_ok = all(
                            rec.phi.eval_weight(rd.simple_root(alpha)) <= 0
                            for rec in overline)
                        if signs_ok:
                            case = "2"
                            case2 = True
                            cov = _half_coroot(rd, alpha)
                            phi = _phi_from_covector(cov, X)
                            _check_node_pattern(phi, mins, subset)
                            for _ in range(2):
                                minted.append(BDivisorRecord(
                                    "?", phi, None, "case_2", (alpha,), cov))
                        else:
                            if warnings is not None:
                                warnings.append(
                                    "case-2 sign hypothesis failed at node "
                                    f"{tuple(i + 1 for i in subset)}; "
                                    "falling through")
                if not case2:
                    case = "3"
                    excluded = set()
                    for alpha in levi:
                        if any(mins[j].coords[alpha] == 0
                               for j in range(k) if j not in subset):
                            excluded.add(alpha)
                    new: dict[tuple[Fraction, ...], tuple[list[int], BDivisorRecord]] = {}
                    for alpha in sorted((levi & pi_b) - excluded):
                        a_wt = rd.simple_root(alpha)
                        ones = [rec for rec in overline
                                if rec.phi.eval_weight(a_wt) == 1]
                        if len(ones) != 1:
                            continue
                        base = ones[0]
                        phi = _phi_from_covector(rd.simple_coroot(alpha), X) - base.phi
                        cov = rd.simple_coroot(alpha) - base.coroot_form \
                            if base.coroot_form is not None else None
                        if phi.values in new:
                            new[phi.values][0].append(alpha)
                        else:
                            new[phi.values] = ([alpha],
                                               BDivisorRecord("?", phi, None,
                                                              "case_3", (), cov))
                    for values in sorted(new):
                        roots, rec = new[values]
                        if any(r.phi.values == values for r in overline):
                            raise RecoveryError(
                                "invalid datum: reconstructed divisor "
                                "duplicates a recovered one")
                        _check_node_pattern(rec.phi, mins, subset)
                        minted.append(BDivisorRecord(
                            "?", rec.phi, None, "case_3",
                            tuple(sorted(roots)), rec.coroot_form))
            pool.extend(minted)
            if trace is not None:
                trace.append(RecursionNode(
                    tuple(i + 1 for i in subset), mu.coords,
                    tuple(sorted(levi)), case or "-",
                    tuple(r.phi.values for r in minted), note))
    return pool


def _check_node_pattern(phi: LatticeFunctional, mins, subset) -> None:
    """A divisor recovered at a node must pair to zero with exactly the
    node's minimal generators."""
    for j, g in enumerate(mins):
        v = phi.eval_weight(g)
        if j in subset and v != 0:
            raise RecoveryError(
                "invalid datum: recovered divisor does not vanish on its node")
        if j not in subset and v <= 0:
            raise RecoveryError(
                "invalid datum: recovered divisor escapes its node")


def stabilizer_of(rec: BDivisorRecord, table: RootTypeTable,
                  m: WeightMonoid) -> ParabolicSet:
    """The parabolic stabilizer, from the origin of the divisor.

    For the recovered (stable or type-b) divisors the moved roots are the
    type-b roots pairing to one with the functional; an empty set means
    the divisor is stable under the whole group.
    """
    rd = m.rd
    active = frozenset(m.active_roots)
    if rec.source in ("case_1c", "case_2", "case_3"):
        moved = set()
        for beta in table.roots_of_type("b"):
            if rec.phi.eval_weight(rd.simple_root(beta)) == 1:
                moved.add(beta)
        if rec.coroot_form is not None:
            cross = set()
            for beta in active:
                val = sum(a * b for a, b in zip(
                    rec.coroot_form.coords, rd.simple_root(beta).coords))
                if val == 1:
                    cross.add(beta)
            if cross != moved:
                raise RecoveryError(
                    "invalid datum: coroot presentation moves roots "
                    f"{sorted(cross)} but the functional moves {sorted(moved)}")
        if rec.source == "case_2" and moved != set(rec.source_roots):
            raise RecoveryError(
                "invalid datum: a type-b pair divisor moves unexpected roots")
        return ParabolicSet(active - frozenset(moved))
    if rec.source == "type_c":
        (alpha,) = rec.source_roots
        cross = {beta for beta in active
                 if sum(a * b for a, b in zip(rec.coroot_form.coords,
                                              rd.simple_root(beta).coords)) == 1}
        if cross != {alpha}:
            raise RecoveryError(
                "invalid datum: type-c divisor moves roots other than its root")
        return ParabolicSet(active - {alpha})
    if rec.source == "type_d":
        return ParabolicSet(active - frozenset(rec.source_roots))
    raise RecoveryError(f"unknown divisor source {rec.source!r}")


def recover_divisors(m: WeightMonoid, psi: SphericalRootSet,
                     trace: list[RecursionNode] | None = None,
                     warnings: list[str] | None = None) -> LunaDatum:
    """Full divisor recovery: the recursive walk plus the c/d divisors,
    stabilizers filled in, assembled and validated."""
    validate_roots_in_lattice(psi, m.lattice)
    table = classify_root_types(m, psi)
    recs = recover_prime(m, psi, trace, warnings) \
        + recover_type_cd_divisors(m, psi, table)
    recs = [r.with_stabilizer(stabilizer_of(r, table, m)) for r in recs]
    recs.sort(key=lambda r: (r.phi.values, r.source, r.source_roots))
    final = [BDivisorRecord(f"D{i + 1}", r.phi, r.stabilizer, r.source,
                            r.source_roots, r.coroot_form)
             for i, r in enumerate(recs)]
    datum = LunaDatum(m.rd, m, psi.roots, table, tuple(final),
                      frozenset(m.active_roots))
    report = validate_luna_datum(datum)
    if not report.passed:
        raise RecoveryError(
            "recovered datum fails validation: "
            + "; ".join(f"{c}: {d}" for c, d in report.violations))
    return datum


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    passed: bool = True
    violations: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def fail(self, code: str, detail: str) -> None:
        self.passed = False
        self.violations.append((code, detail))


def validate_luna_datum(datum: LunaDatum) -> ValidationReport:
    """Check the structural constraints a divisor set must satisfy against
    its monoid, root types and spherical roots."""
    rep = ValidationReport()
    rd = datum.rd
    m = datum.monoid
    X = m.lattice
    table = datum.type_table
    psi = SphericalRootSet(rd, datum.psi)
    n_active = sorted(datum.levi_roots)

    # (i) every functional is nonnegative on the monoid and kills units
    for d in datum.divisors:
        for g in m.generators:
            if d.phi.eval_weight(g) < 0:
                rep.fail("phi_nonnegative",
                         f"{d.divisor_id} is negative on a monoid generator")
                break
        for b in m.invertible_lattice.basis:
            if d.phi.evaluate(b) != 0:
                rep.fail("phi_invertible_vanishing",
                         f"{d.divisor_id} does not vanish on the invertible part")
                break

    # type-a roots move no divisor
    for i in table.roots_of_type("a"):
        moved = datum.divisors_moved_by(i)
        if moved:
            rep.fail("type_a_moved",
                     f"type-a root {i + 1} moves {moved[0].divisor_id}")

    # (ii) type-b pairs
    for i in table.roots_of_type("b"):
        alpha = rd.simple_root(i)
        moved = datum.divisors_moved_by(i)
        if len(moved) != 2:
            rep.fail("b_pair_count",
                     f"type-b root {i + 1} moves {len(moved)} divisors, not 2")
            continue
        bad_pairing = [d for d in moved if d.phi.eval_weight(alpha) != 1]
        if bad_pairing:
            rep.fail("b_pair_pairing",
                     f"divisor {bad_pairing[0].divisor_id} pairs "
                     f"{bad_pairing[0].phi.eval_weight(alpha)} with type-b "
                     f"root {i + 1}, not 1")
        total = moved[0].phi + moved[1].phi
        coroot = LatticeFunctional.from_covector(rd.simple_coroot(i), X)
        if total.values != coroot.values:
            rep.fail("b_pair_sum",
                     f"functionals at type-b root {i + 1} do not sum to the coroot")

    # (iii) type-c roots
    for i in table.roots_of_type("c"):
        moved = datum.divisors_moved_by(i)
        if len(moved) != 1:
            rep.fail("c_count",
                     f"type-c root {i + 1} moves {len(moved)} divisors, not 1")
            continue
        half = LatticeFunctional.from_covector(_half_coroot(rd, i), X)
        if moved[0].phi.values != half.values:
            rep.fail("c_phi",
                     f"type-c divisor at root {i + 1} is not half the coroot")

    # (iv) type-d roots
    for i in table.roots_of_type("d"):
        moved = datum.divisors_moved_by(i)
        if len(moved) != 1:
            rep.fail("d_count",
                     f"type-d root {i + 1} moves {len(moved)} divisors, not 1")
            continue
        coroot = LatticeFunctional.from_covector(rd.simple_coroot(i), X)
        if moved[0].phi.values != coroot.values:
            rep.fail("d_phi",
                     f"type-d divisor at root {i + 1} is not the coroot")
        partner = table.partner_of(i)
        allowed = {frozenset({i})} | \
            ({frozenset({i, partner})} if partner is not None else set())
        got = moved[0].moved_roots(rd.n_simple) & frozenset(n_active)
        if got not in allowed:
            rep.fail("d_stabilizer",
                     f"type-d divisor at root {i + 1} has moved set "
                     f"{sorted(x + 1 for x in got)}")

    # shared divisors must pair compatible root types
    for d in datum.divisors:
        moved = sorted(d.moved_roots(rd.n_simple) & frozenset(n_active))
        types = {table.type_of(i) for i in moved}
        if len(moved) >= 2:
            if types == {"b"}:
                pass
            elif types == {"d"} and len(moved) == 2 and \
                    table.partner_of(moved[0]) == moved[1]:
                pass
            else:
                rep.fail("sharing",
                         f"divisor {d.divisor_id} is moved by an incompatible "
                         f"set of roots {[x + 1 for x in moved]}")

    # (v) sign constraint for elementary-form roots
    tags = elementary_forms(psi, rd)
    for g, tag in zip(datum.psi, tags):
        if tag.kind == "none":
            continue
        alpha1 = tag.roots[0]
        moved_ids = {d.divisor_id for d in datum.divisors_moved_by(alpha1)}
        for d in datum.divisors:
            if d.divisor_id in moved_ids:
                continue
            if d.phi.eval_weight(g) > 0:
                rep.fail("lemma_sign",
                         f"divisor {d.divisor_id} outside the moved set of an "
                         "elementary root pairs positively with it")

    # (vi) monoid recovery from the divisor half-spaces (saturated case)
    try:
        saturated = m.is_saturated()
    except Exception:
        saturated = None
        rep.warnings.append("saturation not checked (lattice too large)")
    if saturated:
        if not _monoid_recovery_identity(datum):
            rep.fail("monoid_recovery",
                     "the monoid is not cut out of its lattice by the "
                     "divisor functionals")

    # diagnostic: a locally-effective datum with the root supports and the
    # type-a set covering everything must already be covered by supports
    supports: set[int] = set()
    for g in datum.psi:
        supports |= set(support(g, rd))
    pia = set(table.roots_of_type("a"))
    if pia | supports == set(n_active) and supports != set(n_active) and pia:
        rep.warnings.append(
            "type-a roots complete the support cover; for a locally "
            "effective action the supports alone should cover")
    return rep


def _monoid_recovery_identity(datum: LunaDatum) -> bool:
    m = datum.monoid
    X = m.lattice
    rank = X.rank
    if rank == 0:
        return True
    rows = [tuple(d.phi.values) for d in datum.divisors]
    cone = RationalCone.from_inequalities(rows, dim=rank) if rows \
        else RationalCone.full_space(rank)
    units, basis = hilbert_basis_with_units(cone, Lattice.full(rank))
    inv = m.invertible_lattice
    for u in units.basis:
        amb = X.from_coords(u)
        if not (inv.contains(amb) if inv.rank else not any(amb)):
            return False
    for h in basis:
        amb = tuple(int(x) for x in X.from_coords(h))
        if not m.contains_vector(amb)[0]:
            return False
    return True


# ---------------------------------------------------------------------------
# localization of a datum and moment polytopes
# ---------------------------------------------------------------------------

def localize_datum(datum: LunaDatum, mu: WeightVec) -> LunaDatum:
    """The datum of the localization at mu: monoid localized, roots
    restricted to the Levi, divisors filtered to those pairing to zero
    with mu, stabilizers intersected with the Levi."""
    m = datum.monoid
    if not m.contains(mu):
        raise RecoveryError("can only localize a datum at a monoid element")
    loc = m.localize(mu)
    return _assemble_localized(datum, loc, loc.active_roots, mu)


def _assemble_localized(datum: LunaDatum, loc: WeightMonoid,
                        new_levi: frozenset[int], mu: WeightVec) -> LunaDatum:
    rd = datum.rd
    new_roots = []
    for g in datum.psi:
        if support(g, rd) <= new_levi:
            new_roots.append(g)
    psi = make_spherical_roots(rd, new_roots)
    table = classify_root_types(loc, psi)
    divisors = []
    for d in datum.divisors:
        if d.phi.eval_weight(mu) != 0:
            continue
        divisors.append(BDivisorRecord(
            d.divisor_id, d.phi,
            ParabolicSet(d.stabilizer.roots & new_levi),
            d.source, d.source_roots, d.coroot_form))
    return LunaDatum(rd, loc, psi.roots, table, tuple(divisors), new_levi)


@dataclass(frozen=True)
class MomentPolytope:
    """Half-space description of a moment polytope inside the rational
    span of the weight lattice, translated by a base weight."""

    polytope: Polytope
    lattice: Lattice
    base: WeightVec

    def vertices_ambient(self) -> list[tuple[Fraction, ...]]:
        out = []
        for v in self.polytope.vertices():
            amb = self.lattice.from_coords(v)
            out.append(tuple(a + b for a, b in zip(amb, self.base.coords)))
        return sorted(out)

    def rays_ambient(self) -> list[tuple[Fraction, ...]]:
        _, rays, _ = self.polytope.vertex_description()
        return sorted(tuple(self.lattice.from_coords(r)) for r in rays)

    def is_bounded(self) -> bool:
        return self.polytope.is_bounded()

    def is_empty(self) -> bool:
        return self.polytope.is_empty()


def moment_polytope(datum: LunaDatum, base: WeightVec,
                    orders: dict[str, int]) -> MomentPolytope:
    """The polytope {lambda : <lambda, phi_D> >= -ord_D} + base, one
    half-space per divisor."""
    X = datum.monoid.lattice
    constraints = []
    for d in datum.divisors:
        if d.divisor_id not in orders:
            raise RecoveryError(f"no order given for divisor {d.divisor_id}")
        constraints.append((tuple(d.phi.values),
                            Fraction(-int(orders[d.divisor_id]))))
    poly = Polytope.from_halfspaces([Fraction(0)] * X.rank, constraints)
    return MomentPolytope(poly, X, base)


def thin_to_elementary(psi: SphericalRootSet, rd: RootData) -> SphericalRootSet:
    """Keep only the roots of one of the three elementary forms."""
    tags = elementary_forms(psi, rd)
    kept = tuple(g for g, t in zip(psi.roots, tags) if t.kind != "none")
    return SphericalRootSet(rd, kept)
