"""Hypothesis-driven property tests for the algebraic invariants."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sphervar.polyhedral import (
    Lattice,
    RationalCone,
    hnf,
    lattice_span,
    primitive,
    smith_diagonalize,
)
from sphervar.rootsys import GroupSpec, build_root_data, pairing, symmetric_form

vec2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
vec3 = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))


@settings(max_examples=80, deadline=None)
@given(st.lists(vec2, min_size=0, max_size=4))
def test_dual_involution_property(gens):
    gens = [g for g in gens if any(g)]
    cone = RationalCone.from_generators(gens, dim=2) if gens \
        else RationalCone.zero(2)
    assert cone.dual().dual() == cone


@settings(max_examples=60, deadline=None)
@given(st.lists(vec3, min_size=1, max_size=4))
def test_facets_support_generators(gens):
    gens = [g for g in gens if any(g)]
    if not gens:
        return
    cone = RationalCone.from_generators(gens, dim=3)
    for g in gens:
        assert cone.contains(g)
        for n in cone.facet_normals:
            assert sum(a * b for a, b in zip(n, g)) >= 0
        for e in cone.span_equations:
            assert sum(a * b for a, b in zip(e, g)) == 0


@settings(max_examples=80, deadline=None)
@given(st.lists(vec3, min_size=1, max_size=5))
def test_hnf_is_canonical_for_the_span(rows):
    rows = [r for r in rows if any(r)]
    if not rows:
        return
    basis = hnf(rows)
    # adding a lattice element changes nothing
    extra = tuple(sum(b[i] for b in basis) for i in range(3))
    assert hnf(rows + [list(extra)]) == basis
    lat = lattice_span(rows, 3)
    for r in rows:
        assert lat.contains(r)


@settings(max_examples=80, deadline=None)
@given(vec3, st.integers(1, 5))
def test_primitive_absorbs_positive_scaling(v, c):
    if not any(v):
        return
    assert primitive(tuple(c * x for x in v)) == primitive(v)
    p = primitive(v)
    # direction is preserved
    k = next(Fraction(a, b) for a, b in zip(v, p) if b != 0)
    assert k > 0


@settings(max_examples=50, deadline=None)
@given(st.lists(vec3, min_size=1, max_size=3))
def test_smith_transforms_are_consistent(rows):
    D, S, T = smith_diagonalize([list(r) for r in rows])
    m, n = len(rows), 3
    SA = [[sum(S[i][k] * rows[k][j] for k in range(m)) for j in range(n)]
          for i in range(m)]
    SAT = [[sum(SA[i][k] * T[k][j] for k in range(n)) for j in range(n)]
           for i in range(m)]
    assert SAT == D
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
       st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
       st.integers(-3, 3), st.integers(-3, 3))
def test_pairing_bilinear(c1, c2, a, b):
    rd = build_root_data(GroupSpec((("C", 2),)))
    cov = rd.covector(c1)
    w1 = rd.weight(c2)
    w2 = rd.weight((1, 1))
    lhs = pairing(cov, w1.scale(a) + w2.scale(b))
    assert lhs == a * pairing(cov, w1) + b * pairing(cov, w2)


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
       st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_symmetric_form_symmetric(u, v):
    rd = build_root_data(GroupSpec((("G", 2),)))
    w1, w2 = rd.weight(u), rd.weight(v)
    assert symmetric_form(rd, w1, w2) == symmetric_form(rd, w2, w1)


@settings(max_examples=40, deadline=None)
@given(st.lists(vec2, min_size=1, max_size=3))
def test_cone_rays_lie_in_cone(gens):
    gens = [g for g in gens if any(g)]
    if not gens:
        return
    cone = RationalCone.from_generators(gens, dim=2)
    for r in cone.rays:
        assert cone.contains(r)
    for l in cone.lineality:
        assert cone.contains(l)
        assert cone.contains(tuple(-x for x in l))
