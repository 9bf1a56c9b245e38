"""Shared corpus of spherical data for the test suite.

Each entry carries a group, a weight monoid, a spherical root set, and a
few expectations.  All monoids here are saturated in the lattice they
span, so the monoid-recovery identity applies to every one of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sphervar.monoid import WeightMonoid
from sphervar.rootsys import GroupSpec, RootData, build_root_data
from sphervar.spherical import SphericalRootSet, make_spherical_roots


@dataclass
class Entry:
    name: str
    rd: RootData
    monoid: WeightMonoid
    psi: SphericalRootSet
    n_divisors: int
    hidden_divisor_count: int | None = None
    hidden_root_coords: set = field(default_factory=set)


def _entry(name, factors, central, gens, psi_coords, n_div, **kw):
    rd = build_root_data(GroupSpec(tuple(factors), central))
    monoid = WeightMonoid(rd, tuple(rd.weight(g) for g in gens))
    psi = make_spherical_roots(rd, tuple(rd.weight(p) for p in psi_coords))
    return Entry(name, rd, monoid, psi, n_div, **kw)


def _cn_long_root_coords(n):
    # alpha1 + alpha_n + 2(alpha2+...+alpha_{n-1}) in fundamental-weight
    # coordinates is the second fundamental weight
    return tuple(1 if i == 1 else 0 for i in range(n))


def build_corpus() -> list[Entry]:
    out = []
    out.append(_entry("toric1", (), 1, [(1,)], [], 1))
    out.append(_entry("toric2", (), 2, [(1, 0), (0, 1)], [], 2))
    out.append(_entry("toric3", (), 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], [], 3))
    out.append(_entry("toric_slanted", (), 2, [(1, 0), (1, 1), (1, 2)], [], 2))
    # the quadric cone and the smooth quadric: same monoid, different roots
    out.append(_entry("so3_x0", (("A", 1),), 0, [(2,)], [], 1,
                      hidden_divisor_count=1))
    out.append(_entry("so3_x1", (("A", 1),), 0, [(2,)], [(2,)], 2,
                      hidden_divisor_count=2))
    out.append(_entry("sl2_mod_normalizer", (("A", 1),), 0, [(4,)], [(4,)], 1))
    out.append(_entry("sl2_plane", (("A", 1),), 0, [(1,)], [], 1))
    out.append(_entry("a1a1_pair_root", (("A", 1), ("A", 1)), 0,
                      [(2, 2)], [(2, 2)], 1))
    out.append(_entry("a1a1_product", (("A", 1), ("A", 1)), 0,
                      [(2, 0), (0, 2)], [(2, 0), (0, 2)], 4))
    out.append(_entry("a1a1_trivial_factor", (("A", 1), ("A", 1)), 0,
                      [(2, 0)], [(2, 0)], 2))
    out.append(_entry("sl2_torus_twisted", (("A", 1),), 1,
                      [(1, 1), (1, -1)], [(2, 0)], 2))
    out.append(_entry("g2_hidden", (("G", 2),), 0,
                      [(1, 0), (0, 1)], [(-1, 2), (1, -1)], 3,
                      hidden_root_coords={(1, -1)}))
    out.append(_entry("c2_hidden_k1", (("C", 2),), 0,
                      [(2, 0), (0, 1)], [(2, -1), (0, 1)], 3,
                      hidden_root_coords={(0, 1)}))
    out.append(_entry("c2_hidden_k2", (("C", 2),), 0,
                      [(4, 0), (0, 1)], [(4, -2), (0, 1)], 2,
                      hidden_root_coords={(0, 1)}))
    out.append(_entry("c3_hidden_k1", (("C", 3),), 0,
                      [(2, 0, 0), (0, 1, 0)], [(2, -1, 0), (0, 1, 0)], 3,
                      hidden_root_coords={(0, 1, 0)}))
    out.append(_entry("c2a1_hidden", (("C", 2), ("A", 1)), 0,
                      [(0, 1, 0), (2, 0, 2)], [(2, -1, 2), (0, 1, 0)], 2,
                      hidden_root_coords={(0, 1, 0)}))
    out.append(_entry("b4_hidden", (("B", 4),), 0,
                      [(1, 0, 0, 0), (0, 0, 0, 2)],
                      [(-1, 0, 0, 2), (1, 0, 0, 0)], 2,
                      hidden_root_coords={(1, 0, 0, 0)}))
    out.append(_entry("c4_hidden_k1", (("C", 4),), 0,
                      [(2, 0, 0, 0), (0, 1, 0, 0)],
                      [(2, -1, 0, 0), (0, 1, 0, 0)], 3,
                      hidden_root_coords={(0, 1, 0, 0)}))
    # a single full-support root with two unpaired d-divisors sharing the
    # same functional
    out.append(_entry("a2_cone", (("A", 2),), 0,
                      [(1, 1)], [(1, 1)], 2,
                      hidden_root_coords={(1, 1)}))
    # three minimal generators: a twisted pair plus a plain toric direction
    out.append(_entry("a1_torus2_mixed", (("A", 1),), 2,
                      [(1, 1, 0), (1, -1, 0), (0, 0, 1)], [(2, 0, 0)], 3))
    # asymmetric twist: one member of the type-b pair appears at a
    # localization node, the other only by subtracting from the coroot;
    # there is also a stable divisor
    out.append(_entry("sl2_torus_case3", (("A", 1),), 1,
                      [(1, 1), (2, 0)], [(2, 0)], 3,
                      hidden_divisor_count=1))
    # partnered d-roots with the half-sum as the spherical root
    out.append(_entry("a1a1_half_pair", (("A", 1), ("A", 1)), 0,
                      [(1, 1)], [(1, 1)], 1))
    return out


def corpus_by_name() -> dict[str, Entry]:
    return {e.name: e for e in build_corpus()}


def entry_to_document(e: Entry) -> dict:
    """The CLI input document for a corpus entry."""
    spec = e.rd.spec
    return {
        "schema": 1,
        "group": {"factors": [[t, r] for t, r in spec.factors],
                  "central_rank": spec.central_rank},
        "monoid_generators": [list(g.int_coords()) for g in e.monoid.generators],
        "spherical_roots": [list(g.int_coords()) for g in e.psi.roots],
    }
