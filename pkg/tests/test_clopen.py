import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorhaar.clopen import (
    ClopenInterval,
    ClopenSet,
    coarsen,
    from_paper_endpoints,
    partition_atoms,
    refine,
    same_set,
    set_complement,
    set_difference,
    set_intersect,
    set_union,
)
from cantorhaar.errors import EmptyInterval, FormatError, LevelTooSmall, MixedSystems, RankOutOfRange
from cantorhaar.radix import DigitProvider, LevelPoint, RadixSystem, level_points

from oracles import lex_sorted_points

S = RadixSystem((5, 2, 7), (2,))
S23 = RadixSystem((2, 3), (2,))


def pt(system, *digits):
    return LevelPoint(system, digits)


def pointset(s: ClopenSet, level: int):
    """Digit tuples of C_level lying in ``s``, by prefix membership."""
    return {p for p in lex_sorted_points(s.system.radices(level)) if s.contains_rank(_rank(p[: s.level], s.system))}


def _rank(digits, system):
    pts = lex_sorted_points(system.radices(len(digits)))
    return pts.index(tuple(digits))


@st.composite
def clopen_sets(draw, system=S, max_level=4):
    level = draw(st.integers(0, max_level))
    size = system.size(level)
    raw = draw(st.lists(st.tuples(st.integers(0, size - 1), st.integers(0, size - 1)), max_size=5))
    return ClopenSet.from_ranges(system, level, [(min(a, b), max(a, b)) for a, b in raw])


class TestConstruction:
    def test_endpoint_pair_example(self):
        s = from_paper_endpoints(pt(S23, 0, 1), pt(S23, 1, 0))
        assert s.ranges == ((1, 2),)
        assert [p.digits for p in s.points()] == [(0, 1), (0, 2)]

    def test_endpoint_pair_empty(self):
        with pytest.raises(EmptyInterval):
            from_paper_endpoints(pt(S23, 1, 0), pt(S23, 1, 0))

    def test_interval_rejects_reversed(self):
        with pytest.raises(EmptyInterval):
            ClopenInterval(pt(S23, 1, 0), pt(S23, 0, 2))

    def test_interval_rejects_level_mismatch(self):
        with pytest.raises(LevelTooSmall):
            ClopenInterval(pt(S23, 1), pt(S23, 1, 0))

    def test_noncanonical_rejected(self):
        with pytest.raises(ValueError):
            ClopenSet(S23, 2, ((0, 1), (2, 3)))
        with pytest.raises(RankOutOfRange):
            ClopenSet(S23, 2, ((0, 6),))

    def test_from_ranges_merges_adjacent(self):
        assert ClopenSet.from_ranges(S23, 2, [(2, 3), (0, 1), (5, 5)]).ranges == ((0, 3), (5, 5))

    def test_from_intervals_refines(self):
        s = ClopenSet.from_intervals([
            ClopenInterval(pt(S23, 1), pt(S23, 1)),
            ClopenInterval(pt(S23, 0, 0), pt(S23, 0, 0)),
        ])
        assert s.level == 2 and s.ranges == ((0, 0), (3, 5))

    def test_membership_of_provider(self):
        s = ClopenSet.from_ranges(S23, 1, [(1, 1)])
        assert DigitProvider.periodic(S23, (1,), (0,)) in s
        assert pt(S23, 0, 2) not in s
        with pytest.raises(MixedSystems):
            pt(RadixSystem.constant(2), 1) in s

    def test_json_roundtrip_and_errors(self, tmp_path):
        s = ClopenSet.from_ranges(S, 3, [(0, 4), (30, 69)])
        path = tmp_path / "s.json"
        path.write_text(json.dumps(s.to_json()))
        assert ClopenSet.load(S, path) == s
        path.write_text("{not json")
        with pytest.raises(FormatError):
            ClopenSet.load(S, path)
        with pytest.raises(FormatError):
            ClopenSet.from_json(S, [{"lo": [0]}])
        with pytest.raises(FormatError):
            ClopenSet.from_json(S, [{"lo": [0], "hi": [1], "level": 2}])


class TestRefineCoarsen:
    def test_refine_example(self):
        s = RadixSystem((2, 3, 5), (2,))
        c = refine(ClopenSet.from_ranges(s, 1, [(1, 1)]), 3)
        assert c.ranges == ((15, 29),)
        assert Fraction(c.count(), s.size(3)) == Fraction(15, 30)

    @settings(max_examples=200, deadline=None)
    @given(clopen_sets(), st.integers(0, 2))
    def test_refine_preserves_points(self, s, extra):
        m = s.level + extra
        assert pointset(refine(s, m), m) == pointset(s, m)

    @settings(max_examples=200, deadline=None)
    @given(clopen_sets())
    def test_coarsen_is_minimal_and_equal(self, s):
        c = coarsen(s)
        assert c.level <= s.level and same_set(c, s)
        if c.level > 0:
            assert not representable_at(c, c.level - 1)

    def test_refine_down_rejected(self):
        with pytest.raises(LevelTooSmall):
            refine(ClopenSet.full(S, 2), 1)


def representable_at(s, level):
    scale = s.system.size(s.level) // s.system.size(level)
    return all(lo % scale == 0 and (hi + 1) % scale == 0 for lo, hi in s.ranges)


class TestBooleanAlgebra:
    @settings(max_examples=1000, deadline=None)
    @given(clopen_sets(), clopen_sets())
    def test_matches_point_sets(self, a, b):
        n = max(a.level, b.level)
        pa, pb = pointset(a, n), pointset(b, n)
        universe = set(lex_sorted_points(S.radices(n)))
        assert pointset(set_union(a, b), n) == pa | pb
        assert pointset(set_intersect(a, b), n) == pa & pb
        assert pointset(set_complement(a), n) == universe - pa
        assert pointset(set_difference(a, b), n) == pa - pb

    @settings(max_examples=300, deadline=None)
    @given(clopen_sets(), clopen_sets(), clopen_sets())
    def test_laws(self, a, b, c):
        assert same_set(set_complement(set_complement(a)), a)
        assert same_set(set_union(a, b), set_union(b, a))
        assert same_set(set_intersect(a, set_union(b, c)), set_union(set_intersect(a, b), set_intersect(a, c)))
        assert same_set(set_complement(set_union(a, b)), set_intersect(set_complement(a), set_complement(b)))
        assert set_intersect(a, set_complement(a)).is_empty()
        assert set_union(a, set_complement(a)).is_full()

    @settings(max_examples=300, deadline=None)
    @given(clopen_sets(), clopen_sets())
    def test_results_are_canonical(self, a, b):
        for r in (set_union(a, b), set_intersect(a, b), set_complement(a)):
            assert ClopenSet.from_ranges(r.system, r.level, r.ranges) == r

    def test_mixed_systems(self):
        with pytest.raises(MixedSystems):
            set_union(ClopenSet.full(S), ClopenSet.full(S23))


class TestAtoms:
    def test_no_generators(self):
        assert partition_atoms([], S23) == [ClopenSet.full(S23)]

    def test_two_overlapping_intervals(self):
        a = ClopenSet.from_ranges(S23, 2, [(0, 3)])
        b = ClopenSet.from_ranges(S23, 2, [(2, 5)])
        atoms = partition_atoms([a, b])
        assert [x.ranges for x in atoms] == [((0, 1),), ((2, 3),), ((4, 5),)]

    def test_atom_with_two_segments(self):
        a = ClopenSet.from_ranges(S23, 2, [(1, 1), (4, 4)])
        atoms = partition_atoms([a])
        assert [x.ranges for x in atoms] == [((0, 0), (2, 3), (5, 5)), ((1, 1), (4, 4))]

    @settings(max_examples=200, deadline=None)
    @given(st.lists(clopen_sets(max_level=3), min_size=1, max_size=4))
    def test_partition_properties(self, gens):
        atoms = partition_atoms(gens)
        n = max(g.level for g in gens)
        universe = set(lex_sorted_points(S.radices(n)))
        covered = set()
        for atom in atoms:
            pts = pointset(atom, n)
            assert pts and not (pts & covered)
            covered |= pts
            for g in gens:
                pg = pointset(g, n)
                assert pts <= pg or not (pts & pg)
        assert covered == universe
        for g in gens:
            pg = pointset(g, n)
            assert pg == set().union(*(pointset(x, n) for x in atoms if pointset(x, n) <= pg))

    def test_level_points_count(self):
        assert len(list(level_points(S, 3))) == ClopenSet.full(S, 3).count() == 70
