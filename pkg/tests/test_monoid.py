import pytest

from sphervar.monoid import (
    MonoidError,
    WeightMonoid,
    is_decomposable,
    torus_monoid,
    trivial_factors,
)
from sphervar.polyhedral import lattice_span
from sphervar.rootsys import GroupSpec, build_root_data


def torus(rank):
    return build_root_data(GroupSpec((), rank))


def a1():
    return build_root_data(GroupSpec((("A", 1),)))


def a1a1():
    return build_root_data(GroupSpec((("A", 1), ("A", 1))))


def test_dominance_enforced():
    rd = a1()
    with pytest.raises(MonoidError):
        WeightMonoid(rd, (rd.weight((-1,)),))
    torus_monoid(rd, [(-1,)])  # raw constructor skips the check


def test_invertible_part_examples():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (0, 1)])
    assert m.invertible_lattice.rank == 0

    m = torus_monoid(rd, [(1, 0), (-1, 0), (0, 1)])
    assert m.invertible_lattice.basis == ((1, 0),)

    m = torus_monoid(rd, [(2, 3), (-2, -3), (1, 1)])
    assert m.invertible_lattice.basis == lattice_span([(2, 3)]).basis


def test_minimal_generators_a1():
    rd = a1()
    alpha = rd.simple_root(0)
    m = WeightMonoid(rd, (alpha,))
    assert m.minimal_generators == (alpha,)


def test_minimal_generators_numerical():
    rd = torus(1)
    m = torus_monoid(rd, [(2,), (3,)])
    assert tuple(g.int_coords() for g in m.minimal_generators) == ((2,), (3,))
    m2 = torus_monoid(rd, [(2,), (3,), (5,)])
    assert tuple(g.int_coords() for g in m2.minimal_generators) == ((2,), (3,))


def test_minimal_generators_mod_invertibles():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (-1, 0), (1, 1)])
    # the only class is (1,1) mod Z(1,0); the canonical representative is (0,1)
    assert tuple(g.int_coords() for g in m.minimal_generators) == ((0, 1),)


def test_localize_everything_invertible():
    rd = a1()
    alpha = rd.simple_root(0)
    m = WeightMonoid(rd, (alpha,))
    loc = m.localize(alpha)
    assert loc.invertible_lattice.rank == 1
    assert loc.minimal_generators == ()
    assert loc.active_roots == frozenset()


def test_localize_orthant():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (0, 1)])
    loc = m.localize(rd.weight((1, 0)))
    assert loc.invertible_lattice.basis == ((1, 0),)
    assert tuple(g.int_coords() for g in loc.minimal_generators) == ((0, 1),)


def test_localize_composes():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (0, 1)])
    e1, e2 = rd.weight((1, 0)), rd.weight((0, 1))
    twice = m.localize(e1).localize(e2)
    once = m.localize(rd.weight((1, 1)))
    assert twice.equals(once)


def test_localize_requires_membership():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (0, 1)])
    with pytest.raises(MonoidError):
        m.localize(rd.weight((-1, 0)))


def test_localize_idempotent():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (0, 1)])
    e1 = rd.weight((1, 0))
    assert m.localize(e1).localize(e1).equals(m.localize(e1))


def test_saturation():
    rd = torus(2)
    assert torus_monoid(rd, [(1, 0), (0, 1)]).is_saturated()
    # saturation is relative to the spanned lattice: two independent
    # generators always span exactly their Z-grid
    assert torus_monoid(rd, [(1, 0), (1, 2)]).is_saturated()
    assert not torus_monoid(rd, [(2, 0), (3, 0), (0, 1)]).is_saturated()
    rd1 = torus(1)
    assert not torus_monoid(rd1, [(2,), (3,)]).is_saturated()
    assert torus_monoid(rd1, [(2,)]).is_saturated()  # lattice is 2Z


def test_saturation_stable_under_localization():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (1, 1), (1, 2)])
    assert m.is_saturated()
    for g in [(1, 0), (1, 1), (1, 2)]:
        assert m.localize(rd.weight(g)).is_saturated()


def test_decomposability():
    rd = a1a1()
    a, b = rd.simple_root(0), rd.simple_root(1)
    m = WeightMonoid(rd, (a, b))
    assert is_decomposable(m, {0}, set())
    m2 = WeightMonoid(rd, (a + b,))
    assert not is_decomposable(m2, {0}, set())


def test_decomposability_c2a1_pair_shape():
    rd = build_root_data(GroupSpec((("C", 2), ("A", 1))))
    gen = rd.simple_root(0) + rd.simple_root(2)  # alpha1 + alpha1'
    m = WeightMonoid(rd, (gen,), enforce_dominance=False)
    assert not is_decomposable(m, {0}, set())


def test_decomposability_with_mixed_invertibles():
    rd = torus(2)
    # invertible part Z(1,1) is not split along the axes
    m = torus_monoid(rd, [(1, 1), (-1, -1), (1, 0)])
    assert not is_decomposable(m, set(), {0})


def test_trivial_factors():
    rd = a1a1()
    m = WeightMonoid(rd, (rd.simple_root(0),))
    triv, kernel = trivial_factors(m)
    assert triv == frozenset({1})
    assert kernel.dim == 0

    m2 = WeightMonoid(rd, (rd.simple_root(0) + rd.simple_root(1),))
    assert trivial_factors(m2)[0] == frozenset()


def test_trivial_central_direction():
    rd = build_root_data(GroupSpec((("A", 1),), 1))
    m = WeightMonoid(rd, (rd.weight((2, 0)),))
    _, kernel = trivial_factors(m)
    assert kernel.basis == ((1,),)

    m2 = WeightMonoid(rd, (rd.weight((2, 1)),))
    assert trivial_factors(m2)[1].rank == 0


def test_span_identity():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (-1, 0), (1, 1), (2, 1)])
    mins = [g.int_coords() for g in m.minimal_generators]
    inv = m.invertible_lattice
    together = list(mins) + list(inv.basis)
    assert lattice_span(together, 2).basis == m.lattice.basis


def test_no_minimal_generator_is_a_sum():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (1, 1), (1, 2), (2, 2)])
    mins = [g.int_coords() for g in m.minimal_generators]
    assert sorted(mins) == [(1, 0), (1, 1), (1, 2)]
    # no minimal generator minus another is again a monoid element
    for v in mins:
        for w in mins:
            if v != w:
                diff = tuple(a - b for a, b in zip(v, w))
                assert not m.contains_vector(diff)[0]


def test_localize_by_all_minimal_generators_trivializes():
    rd = torus(2)
    m = torus_monoid(rd, [(1, 0), (1, 2)])
    total = rd.weight((2, 2))
    loc = m.localize(total)
    assert loc.invertible_lattice.basis == loc.lattice.basis


def test_saturation_rank_guard():
    rd = torus(7)
    gens = [tuple(int(i == j) for j in range(7)) for i in range(7)]
    m = torus_monoid(rd, gens)
    with pytest.raises(MonoidError):
        m.is_saturated()
