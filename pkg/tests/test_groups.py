import json
import random
from fractions import Fraction
from math import gcd

import pytest

from cantorhaar.errors import FormatError, TrivialBase, TrivialKernel
from cantorhaar.groups import (
    FiniteGroup,
    GroupHom,
    Tower,
    abelianize_tower,
    compose,
    cyclic_hom,
    haar_finite,
    kernel_size,
    load_group,
    load_tower,
    save_group,
    save_tower,
    standard_towers,
    uniform_pushforward_check,
    validate_group,
    validate_hom,
    validate_tower,
)

Z2, Z3, Z6 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(6)
D4, Q8 = FiniteGroup.dihedral(4), FiniteGroup.quaternion()
D4_TO_Z2 = GroupHom(D4, Z2, tuple(x // 4 for x in range(8)))


def brute_group_axioms(table):
    """Independent check by explicit loops; returns True iff a group with identity 0."""
    n = len(table)
    elems = range(n)
    if any(sorted(row) != list(elems) for row in table):
        return False
    if any(sorted(table[a][b] for a in elems) != list(elems) for b in elems):
        return False
    if any(table[0][a] != a or table[a][0] != a for a in elems):
        return False
    return all(table[table[a][b]][c] == table[a][table[b][c]] for a in elems for b in elems for c in elems)


class TestValidateGroup:
    def test_examples(self):
        assert validate_group(FiniteGroup(((0, 1), (1, 0)))) is None
        v = validate_group(FiniteGroup(((0, 0), (1, 0))))
        assert v.kind == "latin-square"
        assert validate_group(D4) is None

    @pytest.mark.parametrize("g", [D4, Q8, FiniteGroup.dihedral(5), FiniteGroup.cyclic(12)], ids=str)
    def test_agrees_with_loops(self, g):
        assert brute_group_axioms(g.table)
        assert validate_group(g) is None

    def test_associativity_failure_named(self):
        # a Latin square with identity 0 that is not associative (order 5 loop)
        table = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
        assert not brute_group_axioms(table)
        v = validate_group(FiniteGroup(table))
        assert v.kind == "associativity" and len(v.witness) == 3
        a, b, c = v.witness
        assert table[table[a][b]][c] != table[a][table[b][c]]

    def test_bad_identity_and_range(self):
        assert validate_group(FiniteGroup(((1, 0), (0, 1)))).kind == "identity"
        assert validate_group(FiniteGroup(((0, 2), (1, 0)))).kind == "range"

    def test_quaternion_relations(self):
        i, j, k, minus_one = 1, 2, 3, 4
        assert Q8.mul(i, i) == Q8.mul(j, j) == Q8.mul(k, k) == minus_one
        assert Q8.mul(Q8.mul(i, j), k) == minus_one
        assert Q8.mul(i, j) == k and Q8.mul(j, i) == Q8.mul(minus_one, k)


class TestHoms:
    def test_examples(self):
        assert validate_hom(GroupHom(Z2, Z2, (0, 1))) is None
        assert validate_hom(GroupHom(Z2, Z2, (0, 0))).kind == "surjectivity"
        assert validate_hom(D4_TO_Z2) is None
        assert validate_hom(GroupHom(Z3, Z2, (0, 1, 0))).kind == "homomorphism"

    def test_kernel_examples(self):
        assert kernel_size(GroupHom(Z6, Z6, tuple(range(6)))) == 1
        assert kernel_size(D4_TO_Z2) == 4
        assert kernel_size(cyclic_hom(6, 3)) == 2

    def test_lagrange_cross_check(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(1, 20)
            m = n * rng.randint(1, 5)
            mult = rng.choice([u for u in range(1, n + 1) if gcd(u, n) == 1])
            f = cyclic_hom(m, n, mult)
            assert validate_hom(f) is None
            assert m == kernel_size(f) * n


class TestTowers:
    def test_standard_towers_valid(self):
        for tower in standard_towers().values():
            assert validate_tower(tower) is None

    def test_abelianize_examples(self):
        towers = standard_towers()
        assert abelianize_tower(towers["z2-z4"]).preperiod == (2, 2)
        assert abelianize_tower(towers["z2-d4"]).preperiod == (2, 4)
        assert abelianize_tower(towers["z3-z6-z12"]).preperiod == (3, 2, 2)
        assert abelianize_tower(towers["z2-q8"]).preperiod == (2, 4)
        assert abelianize_tower(towers["z2-d4"]).period == (2,)

    def test_product_law(self):
        for tower in standard_towers().values():
            s = abelianize_tower(tower)
            for k, g in enumerate(tower.levels, start=1):
                assert s.size(k) == g.order

    def test_trivial_cases(self):
        with pytest.raises(TrivialBase):
            abelianize_tower(Tower((FiniteGroup.trivial(),), ()))
        iso = Tower.chain(Z2, [0, 1], Z2)
        assert validate_tower(iso).kind == "strictness"
        with pytest.raises(TrivialKernel):
            abelianize_tower(iso)

    def test_file_roundtrip(self, tmp_path):
        tower = standard_towers()["z3-z6-z12"]
        save_tower(tower, tmp_path)
        assert json.loads((tmp_path / "tower.json").read_text())["levels"][0] == "level1.grp"
        loaded = load_tower(tmp_path)
        assert loaded == tower
        assert (tmp_path / "step1.hom").read_text().split() == [str(x % 3) for x in range(6)]

    def test_group_file_format(self, tmp_path):
        path = tmp_path / "z2.grp"
        path.write_text("2 0\n0 1\n1 0\n")
        assert load_group(path) == Z2
        save_group(D4, path)
        assert load_group(path) == D4
        path.write_text("2 0\n0 1\n")
        with pytest.raises(FormatError):
            load_group(path)
        with pytest.raises(FormatError):
            load_tower(tmp_path / "missing")


class TestPushforward:
    def test_examples(self):
        to_trivial = GroupHom(D4, FiniteGroup.trivial(), (0,) * 8)
        assert uniform_pushforward_check(to_trivial).masses == (Fraction(1),)
        rep = uniform_pushforward_check(D4_TO_Z2)
        assert rep.masses == (Fraction(1, 2),) * 2 and rep.equal
        assert uniform_pushforward_check(cyclic_hom(6, 3)).masses == (Fraction(1, 3),) * 3

    def test_non_surjective_detected(self):
        rep = uniform_pushforward_check(GroupHom(Z2, Z2, (0, 0)))
        assert not rep.equal and rep.masses == (1, 0)

    def test_composition(self):
        t = standard_towers()["z3-z6-z12"]
        direct = compose(t.steps[0], t.steps[1])
        assert validate_hom(direct) is None
        assert uniform_pushforward_check(direct).masses == (Fraction(1, 3),) * 3
        # push in two stages
        mid = uniform_pushforward_check(t.steps[1]).masses
        two_stage = [Fraction(0)] * 3
        for x, mass in enumerate(mid):
            two_stage[t.steps[0](x)] += mass
        assert tuple(two_stage) == uniform_pushforward_check(direct).masses

    def test_haar_finite(self):
        assert haar_finite(FiniteGroup.trivial()) == (1,)
        assert haar_finite(Z2) == (Fraction(1, 2),) * 2
        h = haar_finite(D4)
        assert h == (Fraction(1, 8),) * 8
        for row in D4.table:
            assert tuple(h[y] for y in row) == h
