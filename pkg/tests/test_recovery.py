import itertools
from fractions import Fraction

import pytest

from corpus import build_corpus, corpus_by_name
from sphervar.luna import BDivisorRecord, LatticeFunctional, LunaDatum
from sphervar.monoid import WeightMonoid
from sphervar.recovery import (
    RecoveryError,
    localize_datum,
    moment_polytope,
    recover_divisors,
    recover_prime,
    recover_type_cd_divisors,
    thin_to_elementary,
    validate_luna_datum,
)
from sphervar.rootsys import GroupSpec, ParabolicSet, build_root_data
from sphervar.spherical import (
    classify_root_types,
    hidden_divisors,
    hidden_spherical_roots,
    make_spherical_roots,
)


def recover_entry(e):
    return recover_divisors(e.monoid, e.psi)


# -- type c/d construction ---------------------------------------------------

def test_cd_single_d_root():
    e = corpus_by_name()["so3_x0"]
    table = classify_root_types(e.monoid, e.psi)
    recs = recover_type_cd_divisors(e.monoid, e.psi, table)
    assert len(recs) == 1
    assert recs[0].source == "type_d"
    # the coroot takes value 2 on the root alpha = (2)
    assert recs[0].phi.values == (Fraction(2),)


def test_cd_type_c():
    e = corpus_by_name()["sl2_mod_normalizer"]
    table = classify_root_types(e.monoid, e.psi)
    recs = recover_type_cd_divisors(e.monoid, e.psi, table)
    assert len(recs) == 1
    assert recs[0].source == "type_c"
    assert recs[0].phi.values == (Fraction(2),)  # half coroot on basis (4)


def test_cd_merged_pair():
    e = corpus_by_name()["a1a1_pair_root"]
    table = classify_root_types(e.monoid, e.psi)
    recs = recover_type_cd_divisors(e.monoid, e.psi, table)
    assert len(recs) == 1
    assert recs[0].source_roots == (0, 1)


# -- the recursive walk -------------------------------------------------------

def test_prime_so3_x1_two_half_coroots():
    e = corpus_by_name()["so3_x1"]
    recs = recover_prime(e.monoid, e.psi)
    assert len(recs) == 2
    for r in recs:
        assert r.source == "case_2"
        assert r.phi.values == (Fraction(1),)  # half coroot on the basis (2)


def test_prime_torus_coordinates():
    e = corpus_by_name()["toric2"]
    recs = recover_prime(e.monoid, e.psi)
    assert sorted(r.phi.values for r in recs) == [(0, 1), (1, 0)]
    assert all(r.source == "case_1c" for r in recs)


def test_prime_so3_x0_empty():
    e = corpus_by_name()["so3_x0"]
    assert recover_prime(e.monoid, e.psi) == []


def test_prime_slanted_toric():
    e = corpus_by_name()["toric_slanted"]
    recs = recover_prime(e.monoid, e.psi)
    assert sorted(r.phi.values for r in recs) == [(0, 1), (2, -1)]


def test_prime_twisted_torus_b_pair_from_class_divisors():
    e = corpus_by_name()["sl2_torus_twisted"]
    warnings = []
    recs = recover_prime(e.monoid, e.psi, warnings=warnings)
    assert len(recs) == 2
    assert all(r.source == "case_1c" for r in recs)
    alpha = e.rd.simple_root(0)
    assert [r.phi.eval_weight(alpha) for r in recs] == [1, 1]
    total = recs[0].phi + recs[1].phi
    coroot = LatticeFunctional.from_covector(e.rd.simple_coroot(0),
                                             e.monoid.lattice)
    assert total.values == coroot.values
    # the pair is already recovered when the full-Levi node is reached, so
    # the case-2 sign hypothesis fails there by design
    assert warnings


def test_prime_case3_reconstruction():
    e = corpus_by_name()["sl2_torus_case3"]
    warnings = []
    trace = []
    recs = recover_prime(e.monoid, e.psi, trace=trace, warnings=warnings)
    assert sorted(r.source for r in recs) == ["case_1c", "case_1c", "case_3"]
    # the case-2 sign hypothesis fails at the bottom node and case 3 takes
    # over, reconstructing the missing member of the pair from the coroot
    assert warnings
    alpha = e.rd.simple_root(0)
    pair = [r for r in recs if r.phi.eval_weight(alpha) == 1]
    assert len(pair) == 2
    total = pair[0].phi + pair[1].phi
    coroot = LatticeFunctional.from_covector(e.rd.simple_coroot(0),
                                             e.monoid.lattice)
    assert total.values == coroot.values
    stable = [r for r in recs if r.phi.eval_weight(alpha) != 1]
    assert len(stable) == 1 and stable[0].source == "case_1c"
    bottom = next(n for n in trace if n.subset == ())
    assert bottom.case == "3" and len(bottom.minted) == 1


def test_recover_case3_stabilizers():
    e = corpus_by_name()["sl2_torus_case3"]
    datum = recover_entry(e)
    # two pair members moved by alpha, one stable divisor
    moved = [d for d in datum.divisors if 0 not in d.stabilizer.roots]
    stable = [d for d in datum.divisors if 0 in d.stabilizer.roots]
    assert len(moved) == 2 and len(stable) == 1


def test_half_pair_merged_divisor():
    e = corpus_by_name()["a1a1_half_pair"]
    datum = recover_entry(e)
    assert len(datum.divisors) == 1
    d = datum.divisors[0]
    assert d.source == "type_d"
    assert d.source_roots == (0, 1)
    assert datum.type_table.partners == ((0, 1),)


def test_prime_g2_recursion_trace():
    e = corpus_by_name()["g2_hidden"]
    trace = []
    recs = recover_prime(e.monoid, e.psi, trace=trace)
    assert len(recs) == 2
    cases = {n.subset: n.case for n in trace}
    # minimal generators sort canonically: index 1 is omega2, index 2 omega1
    assert cases[(1, 2)] == "1a"
    assert cases[(2,)] == "2"
    assert cases[(1,)] == "3"
    assert cases[()] == "3"


# -- stabilizers and full recovery --------------------------------------------

def test_recover_so3_pair():
    e = corpus_by_name()["so3_x1"]
    datum = recover_entry(e)
    assert len(datum.divisors) == 2
    for d in datum.divisors:
        assert d.stabilizer.roots == frozenset()  # G_D = B
        assert d.phi.eval_weight(e.rd.simple_root(0)) == 1


def test_recover_so3_x0():
    e = corpus_by_name()["so3_x0"]
    datum = recover_entry(e)
    assert len(datum.divisors) == 1
    assert datum.divisors[0].stabilizer.roots == frozenset()
    assert datum.divisors[0].phi.values == (Fraction(2),)


def test_recover_toric_stabilizers():
    e = corpus_by_name()["toric2"]
    datum = recover_entry(e)
    assert len(datum.divisors) == 2
    for d in datum.divisors:
        assert d.stabilizer.roots == frozenset()  # the whole (torus) group


def test_recover_twisted_not_stable():
    e = corpus_by_name()["sl2_torus_twisted"]
    datum = recover_entry(e)
    for d in datum.divisors:
        assert d.moved_roots(1) == frozenset({0})  # G_D = B despite case 1c


def test_recover_counts_whole_corpus():
    for e in build_corpus():
        datum = recover_entry(e)
        assert len(datum.divisors) == e.n_divisors, e.name


def test_recover_validates_whole_corpus():
    for e in build_corpus():
        datum = recover_entry(e)
        rep = validate_luna_datum(datum)
        assert rep.passed, (e.name, rep.violations)


def test_recover_deterministic():
    for e in build_corpus()[:6]:
        d1 = recover_entry(e)
        d2 = recover_entry(e)
        assert [(x.divisor_id, x.phi.values, x.stabilizer.roots, x.source)
                for x in d1.divisors] == \
               [(x.divisor_id, x.phi.values, x.stabilizer.roots, x.source)
                for x in d2.divisors]


def test_b_pair_sum_property():
    for e in build_corpus():
        datum = recover_entry(e)
        for i in datum.type_table.roots_of_type("b"):
            moved = datum.divisors_moved_by(i)
            assert len(moved) == 2
            total = moved[0].phi + moved[1].phi
            coroot = LatticeFunctional.from_covector(
                e.rd.simple_coroot(i), e.monoid.lattice)
            assert total.values == coroot.values


def test_intersection_identity():
    # zero sets of the functionals intersect as the zero set of the sum
    for e in build_corpus():
        datum = recover_entry(e)
        mins = e.monoid.minimal_generators
        k = len(mins)
        for r in range(1, min(k, 3) + 1):
            for I in itertools.combinations(range(k), r):
                for J in itertools.combinations(range(k), r):
                    zero = e.rd.zero_weight()
                    mu_i = sum((mins[i] for i in I), zero)
                    mu_j = sum((mins[j] for j in J), zero)
                    mu_u = sum((mins[t] for t in set(I) | set(J)), zero)
                    for d in datum.divisors:
                        both = d.phi.eval_weight(mu_i) == 0 and \
                            d.phi.eval_weight(mu_j) == 0
                        assert both == (d.phi.eval_weight(mu_u) == 0)


def test_hidden_divisors_cross_check():
    # hidden = in no localization node with nonempty subset
    for e in build_corpus():
        datum = recover_entry(e)
        mins = e.monoid.minimal_generators
        hid = hidden_divisors(datum)
        for d in datum.divisors:
            in_some_node = any(d.phi.eval_weight(g) == 0 for g in mins)
            assert (d.divisor_id in hid) == (not in_some_node and bool(mins))


def test_hidden_divisor_counts():
    for e in build_corpus():
        if e.hidden_divisor_count is None:
            continue
        datum = recover_entry(e)
        assert len(hidden_divisors(datum)) == e.hidden_divisor_count, e.name


def test_hidden_roots_on_corpus():
    for e in build_corpus():
        datum = recover_entry(e)
        hid = hidden_spherical_roots(datum)
        got = {tuple(int(x) for x in datum.psi[i].coords) for i in hid}
        assert got == e.hidden_root_coords, e.name


def test_no_hidden_divisors_in_toric_data():
    e = corpus_by_name()["toric2"]
    datum = recover_entry(e)
    assert hidden_divisors(datum) == frozenset()


def test_group_stable_divisor_blocks_hiddenness():
    # a group-stable divisor is moved by no simple root, so no spherical
    # root can satisfy the covering condition
    e = corpus_by_name()["a1_torus2_mixed"]
    datum = recover_entry(e)
    assert any(d.stabilizer.roots == datum.levi_roots for d in datum.divisors)
    assert hidden_spherical_roots(datum) == frozenset()


def test_thinned_root_set_regression():
    for e in build_corpus():
        full = recover_prime(e.monoid, e.psi)
        thin = recover_prime(e.monoid, thin_to_elementary(e.psi, e.rd))
        assert [(r.phi.values, r.source) for r in full] == \
            [(r.phi.values, r.source) for r in thin], e.name


def test_monoid_recovery_identity_on_corpus():
    for e in build_corpus():
        datum = recover_entry(e)
        rep = validate_luna_datum(datum)
        assert rep.passed
        assert not any(c == "monoid_recovery" for c, _ in rep.violations)


# -- validator fault injection -------------------------------------------------

def _tamper(datum, **changes):
    divisors = list(datum.divisors)
    idx = changes.pop("index", 0)
    d = divisors[idx]
    if "phi" in changes:
        d = BDivisorRecord(d.divisor_id, changes["phi"], d.stabilizer,
                           d.source, d.source_roots, d.coroot_form)
    if "stabilizer" in changes:
        d = BDivisorRecord(d.divisor_id, d.phi, changes["stabilizer"],
                           d.source, d.source_roots, d.coroot_form)
    divisors[idx] = d
    if changes.get("drop"):
        divisors.pop(idx)
    return LunaDatum(datum.rd, datum.monoid, datum.psi, datum.type_table,
                     tuple(divisors), datum.levi_roots)


def test_fault_wrong_phi_scale():
    e = corpus_by_name()["so3_x1"]
    datum = recover_entry(e)
    X = e.monoid.lattice
    bad = _tamper(datum, phi=LatticeFunctional.from_covector(
        e.rd.simple_coroot(0), X))
    rep = validate_luna_datum(bad)
    codes = {c for c, _ in rep.violations}
    assert not rep.passed
    assert "b_pair_pairing" in codes or "b_pair_sum" in codes


def test_fault_missing_divisor():
    e = corpus_by_name()["toric2"]
    datum = recover_entry(e)
    bad = LunaDatum(datum.rd, datum.monoid, datum.psi, datum.type_table,
                    datum.divisors[:1], datum.levi_roots)
    rep = validate_luna_datum(bad)
    assert not rep.passed
    assert "monoid_recovery" in {c for c, _ in rep.violations}


def test_fault_wrong_stabilizer():
    e = corpus_by_name()["so3_x1"]
    datum = recover_entry(e)
    bad = _tamper(datum, stabilizer=ParabolicSet(frozenset({0})))
    rep = validate_luna_datum(bad)
    assert not rep.passed
    assert "b_pair_count" in {c for c, _ in rep.violations}


def test_fault_broken_pair_sum():
    e = corpus_by_name()["so3_x1"]
    datum = recover_entry(e)
    X = e.monoid.lattice
    bad_phi = LatticeFunctional.from_values(X, (Fraction(2),))
    bad = _tamper(datum, phi=bad_phi)
    rep = validate_luna_datum(bad)
    assert not rep.passed
    assert "b_pair_sum" in {c for c, _ in rep.violations} or \
        "b_pair_pairing" in {c for c, _ in rep.violations}


def test_fault_lemma_sign():
    e = corpus_by_name()["c2_hidden_k1"]
    datum = recover_entry(e)
    # the type-d divisor is outside the moved set of the elementary root
    # alpha1; give it a functional pairing positively with alpha1
    X = e.monoid.lattice
    d_index = next(i for i, d in enumerate(datum.divisors)
                   if d.source == "type_d")
    # alpha1 has lattice coordinates (1, -1); this functional pairs +1 with it
    bad_phi = LatticeFunctional.from_values(X, (Fraction(1), Fraction(0)))
    bad = _tamper(datum, index=d_index, phi=bad_phi)
    rep = validate_luna_datum(bad)
    assert not rep.passed
    assert "lemma_sign" in {c for c, _ in rep.violations}


def test_fault_invertible_vanishing():
    e = corpus_by_name()["sl2_torus_twisted"]
    # localize so that the monoid has an invertible direction
    datum = recover_entry(e)
    mu = e.rd.weight((2, 0))
    loc = localize_datum(datum, mu)
    assert loc.monoid.invertible_lattice.rank >= 0
    # build a datum with a functional not vanishing on invertibles
    e2 = corpus_by_name()["toric2"]
    m2 = e2.monoid.localize(e2.rd.weight((1, 0)))
    psi2 = make_spherical_roots(e2.rd, ())
    datum2 = recover_divisors(m2, psi2)
    X = m2.lattice
    bad_phi = LatticeFunctional.from_values(X, (Fraction(1), Fraction(1)))
    bad = _tamper(datum2, phi=bad_phi)
    rep = validate_luna_datum(bad)
    assert not rep.passed
    assert "phi_invertible_vanishing" in {c for c, _ in rep.violations}


# -- localization of data -------------------------------------------------------

def test_localize_datum_sl2_pair():
    e = corpus_by_name()["so3_x1"]
    datum = recover_entry(e)
    loc = localize_datum(datum, e.rd.weight((2,)))
    assert loc.divisors == ()
    assert loc.levi_roots == frozenset()
    assert loc.psi == ()


def test_localize_datum_toric():
    e = corpus_by_name()["toric2"]
    datum = recover_entry(e)
    loc = localize_datum(datum, e.rd.weight((1, 0)))
    assert len(loc.divisors) == 1
    assert loc.divisors[0].phi.eval_weight(e.rd.weight((0, 1))) == 1


def test_localize_datum_orthogonal_direction_keeps_all():
    e = corpus_by_name()["a1a1_trivial_factor"]
    datum = recover_entry(e)
    # localizing at an element pairing zero with every functional keeps all
    zero_pairing = [d for d in datum.divisors]
    mu = e.rd.weight((0, 0))
    loc = localize_datum(datum, mu)
    assert len(loc.divisors) == len(zero_pairing)


def test_localize_datum_requires_membership():
    e = corpus_by_name()["toric2"]
    datum = recover_entry(e)
    with pytest.raises(RecoveryError):
        localize_datum(datum, e.rd.weight((-1, 0)))


def test_localize_datum_at_invertible_keeps_everything():
    # localizing at an element pairing to zero with every functional keeps
    # the full divisor set while the monoid only gains invertibles
    e = corpus_by_name()["toric2"]
    base = recover_entry(e)
    once = localize_datum(base, e.rd.weight((1, 0)))
    again = localize_datum(once, e.rd.weight((1, 0)))
    assert len(again.divisors) == len(once.divisors) == 1
    assert once.monoid.localize(e.rd.weight((1, 0))).equals(again.monoid)


def test_recovery_generator_count_guard():
    rd = build_root_data(GroupSpec((), 1))
    gens = tuple(rd.weight((13 + i,)) for i in range(13))
    m = WeightMonoid(rd, gens)
    assert len(m.minimal_generators) == 13
    psi = make_spherical_roots(rd, ())
    with pytest.raises(RecoveryError):
        recover_prime(m, psi)


# -- moment polytopes -----------------------------------------------------------

def test_moment_polytope_ray():
    e = corpus_by_name()["so3_x0"]
    datum = recover_entry(e)
    mp = moment_polytope(datum, e.rd.weight((0,)),
                         {d.divisor_id: 0 for d in datum.divisors})
    assert mp.vertices_ambient() == [(Fraction(0),)]
    assert not mp.is_bounded()
    assert mp.rays_ambient() == [(Fraction(2),)]  # the ray through alpha


def test_moment_polytope_tighter_constraint():
    e = corpus_by_name()["so3_x1"]
    datum = recover_entry(e)
    orders = {datum.divisors[0].divisor_id: 0, datum.divisors[1].divisor_id: 1}
    mp = moment_polytope(datum, e.rd.weight((0,)), orders)
    assert mp.vertices_ambient() == [(Fraction(0),)]
    assert not mp.is_empty()


def test_moment_polytope_shifted_orthant():
    e = corpus_by_name()["toric2"]
    datum = recover_entry(e)
    orders = {d.divisor_id: 1 for d in datum.divisors}
    mp = moment_polytope(datum, e.rd.weight((0, 0)), orders)
    assert mp.vertices_ambient() == [(Fraction(-1), Fraction(-1))]
