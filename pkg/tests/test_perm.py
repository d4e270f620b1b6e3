from __future__ import annotations

import pytest

from geodex import perm
from geodex.errors import (
    GroupTooLarge,
    MalformedPermutation,
    MixedDegree,
    NotASubgroup,
    NotInvariant,
    PointOutOfRange,
)
from geodex.oracles import multiplication_closure_order
from geodex.perm import Permutation, build_group


def cyc(degree, *cycles):
    return Permutation.from_cycles(cycles, degree)


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(MalformedPermutation):
            Permutation((0, 0, 1))
        with pytest.raises(MalformedPermutation):
            Permutation((0, 2))

    def test_composition_order(self):
        # apply left factor first
        a = cyc(3, (0, 1))
        b = cyc(3, (1, 2))
        assert (a * b)(0) == b(a(0)) == 2

    def test_inverse_and_order(self):
        g = cyc(6, (0, 1, 2), (3, 4))
        assert (g * g.inverse()).is_identity()
        assert g.order() == 6

    def test_cycle_string_round_trip(self):
        g = cyc(7, (0, 3, 5), (1, 2))
        parsed = perm.parse_cycle_string(g.cycle_string(), 7)
        assert parsed == g
        assert perm.parse_cycle_string("()", 4).is_identity()

    def test_from_cycles_range_check(self):
        with pytest.raises(PointOutOfRange):
            cyc(3, (0, 5))


class TestBuildGroup:
    def test_trivial_group_needs_degree(self):
        g = build_group([], degree=5)
        assert g.order() == 1
        assert g.degree == 5
        with pytest.raises(MixedDegree):
            build_group([])

    def test_cyclic_group(self):
        g = build_group([cyc(5, (0, 1, 2, 3, 4))])
        assert g.order() == 5

    def test_mixed_degrees_rejected(self):
        with pytest.raises(MixedDegree):
            build_group([cyc(3, (0, 1)), cyc(4, (0, 1))])

    def test_symmetric_group_chain(self):
        s6 = build_group([cyc(6, tuple(range(6))), cyc(6, (0, 1))])
        assert s6.order() == 720
        # order equals the product of the basic orbit sizes
        product = 1
        for size in s6.basic_orbit_sizes():
            product *= size
        assert product == 720
        # every generator passes membership sifting
        assert all(g in s6 for g in s6.generators)

    def test_m11(self):
        m11 = build_group(
            [cyc(11, tuple(range(11))), cyc(11, (2, 6, 10, 7), (3, 9, 4, 5))]
        )
        assert m11.order() == 7920
        assert m11.order() == multiplication_closure_order(m11.generators)

    def test_order_matches_closure_oracle(self):
        import random

        rng = random.Random(4242)
        for _ in range(60):
            n = rng.randrange(1, 8)
            gens = []
            for _ in range(rng.randrange(0, 4)):
                images = list(range(n))
                rng.shuffle(images)
                gens.append(Permutation(tuple(images)))
            group = build_group(gens, degree=n)
            assert group.order() == multiplication_closure_order(gens)

    def test_elements_enumeration(self):
        s4 = build_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
        elements = s4.elements()
        assert len(elements) == 24
        assert len(set(elements)) == 24
        tiny = build_group([cyc(3, (0, 1, 2))])
        with pytest.raises(GroupTooLarge):
            tiny.raw_elements(cap=2)

    def test_json_round_trip(self):
        s3 = build_group([cyc(3, (0, 1, 2)), cyc(3, (0, 1))])
        data = s3.to_json()
        again = perm.group_from_json(data)
        assert again.order() == 6
        # cycle-notation strings allowed at the parse boundary
        assert perm.group_from_json(
            {"degree": 3, "generators": ["(0 1 2)", "(0 1)"]}
        ).order() == 6


class TestOrbits:
    def test_trivial_group_singletons(self):
        g = build_group([], degree=5)
        assert perm.orbits(g, range(5)) == [(0,), (1,), (2,), (3,), (4,)]

    def test_two_cycles(self):
        g = build_group([cyc(6, (0, 1, 2), (3, 4, 5))])
        assert perm.orbits(g, range(6)) == [(0, 1, 2), (3, 4, 5)]

    def test_point_out_of_range(self):
        g = build_group([cyc(3, (0, 1, 2))])
        with pytest.raises(PointOutOfRange):
            perm.orbits(g, [0, 7])

    def test_foster_normal_orbits(self, foster_n):
        cells = perm.orbits(foster_n, range(90))
        assert len(cells) == 30
        assert all(len(c) == 3 for c in cells)
        # independent flood fill over the generator images
        gens = [g.images for g in foster_n.generators]
        seen = set()
        count = 0
        for p in range(90):
            if p in seen:
                continue
            cell = {p}
            stack = [p]
            while stack:
                x = stack.pop()
                for g in gens:
                    if g[x] not in cell:
                        cell.add(g[x])
                        stack.append(g[x])
            seen |= cell
            count += 1
        assert count == 30


class TestPointwiseStabilizer:
    def test_empty_tuple_returns_group(self):
        s4 = build_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
        assert perm.pointwise_stabilizer(s4, []) is s4

    def test_regular_action_trivial_stabilizer(self):
        c5 = build_group([cyc(5, (0, 1, 2, 3, 4))])
        assert perm.pointwise_stabilizer(c5, [0]).order() == 1

    def test_orbit_stabilizer_identity(self):
        import random

        rng = random.Random(99)
        s5 = build_group([cyc(5, (0, 1, 2, 3, 4)), cyc(5, (0, 1))])
        for _ in range(20):
            tup = rng.sample(range(5), rng.randrange(1, 4))
            stab = perm.pointwise_stabilizer(s5, tup)
            # orbit of the tuple by explicit closure
            orbit = {tuple(tup)}
            stack = [tuple(tup)]
            gens = [g.images for g in s5.generators]
            while stack:
                t = stack.pop()
                for g in gens:
                    img = tuple(g[x] for x in t)
                    if img not in orbit:
                        orbit.add(img)
                        stack.append(img)
            assert len(orbit) * stab.order() == 120

    def test_petersen_two_geodesic_stabilizer(self, petersen, petersen_aut):
        from geodex.graph import first_geodesic

        rep = first_geodesic(petersen, 2)
        stab = perm.pointwise_stabilizer(petersen_aut, rep)
        assert petersen_aut.order() == 120
        assert stab.order() == 2


class TestNormalStructure:
    def test_s3_normal_subgroups(self):
        s3 = build_group([cyc(3, (0, 1, 2)), cyc(3, (0, 1))])
        a3 = build_group([cyc(3, (0, 1, 2))])
        is_normal, closure = perm.normal_test_and_closure(s3, a3)
        assert is_normal and perm.same_group(closure, a3)
        flip = build_group([cyc(3, (0, 1))])
        is_normal, closure = perm.normal_test_and_closure(s3, flip)
        assert not is_normal
        assert closure.order() == 6

    def test_not_a_subgroup(self):
        c4 = build_group([cyc(4, (0, 1, 2, 3))])
        with pytest.raises(NotASubgroup):
            perm.normal_test_and_closure(c4, [cyc(4, (0, 1))])

    def test_minimal_normals_s3(self):
        s3 = build_group([cyc(3, (0, 1, 2)), cyc(3, (0, 1))])
        minimals, socle = perm.normal_structure(s3)
        assert [m.order() for m in minimals] == [3]
        assert socle.order() == 3

    def test_minimal_normals_cyclic(self):
        c5 = build_group([cyc(5, (0, 1, 2, 3, 4))])
        minimals, socle = perm.normal_structure(c5)
        assert len(minimals) == 1 and minimals[0].order() == 5
        assert socle.order() == 5

    def test_foster_normal_subgroup(self, foster_aut, foster_n):
        is_normal, closure = perm.normal_test_and_closure(foster_aut, foster_n)
        assert is_normal
        assert perm.same_group(closure, foster_n)

    def test_closure_minimality_small(self):
        # on every group of modest order the closures are normal, contain H,
        # and the reported minimal normal subgroups are inclusion-minimal
        s4 = build_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
        minimals, _ = perm.normal_structure(s4)
        assert [m.order() for m in minimals] == [4]  # the Klein subgroup
        for m in minimals:
            is_normal, closure = perm.normal_test_and_closure(s4, m)
            assert is_normal and perm.same_group(closure, m)

    def test_closures_in_s4_hit_known_normal_lattice(self):
        # the normal subgroups of S4 are 1, V4, A4, S4; each closure must be
        # the least of them containing its seed
        s4 = build_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
        for seed, want in [
            ((0, 1), 24),           # transpositions generate S4
            (((0, 1), (2, 3)), 4),  # double transpositions generate V4
            ((0, 1, 2), 12),        # 3-cycles generate A4
            ((0, 1, 2, 3), 24),     # 4-cycles are odd
        ]:
            cycles = seed if isinstance(seed[0], tuple) else (seed,)
            _, closure = perm.normal_test_and_closure(s4, [cyc(4, *cycles)])
            assert closure.order() == want


class TestSemiregular:
    def test_regular_cyclic(self):
        c5 = build_group([cyc(5, (0, 1, 2, 3, 4))])
        assert perm.is_semiregular(c5, range(5))

    def test_s3_not_semiregular(self):
        s3 = build_group([cyc(3, (0, 1, 2)), cyc(3, (0, 1))])
        assert not perm.is_semiregular(s3, range(3))

    def test_empty_domain_rejected(self):
        c5 = build_group([cyc(5, (0, 1, 2, 3, 4))])
        with pytest.raises(PointOutOfRange):
            perm.is_semiregular(c5, [])

    def test_foster_normal_semiregular(self, foster_n):
        assert perm.is_semiregular(foster_n, range(90))


class TestInducedAction:
    def test_singleton_blocks(self):
        s4 = build_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
        quotient, kernel = perm.induced_action(s4, [(0,), (1,), (2,), (3,)])
        assert quotient.order() == 24
        assert kernel.order() == 1

    def test_c4_halving(self):
        c4 = build_group([cyc(4, (0, 1, 2, 3))])
        quotient, kernel = perm.induced_action(c4, [(0, 2), (1, 3)])
        assert quotient.order() == 2
        assert kernel.order() == 2

    def test_not_invariant(self):
        s3 = build_group([cyc(3, (0, 1, 2)), cyc(3, (0, 1))])
        with pytest.raises(NotInvariant):
            perm.induced_action(s3, [(0, 1), (2,)])

    def test_foster_block_action(self, foster_aut, foster_n):
        blocks = perm.orbits(foster_n, range(90))
        quotient, kernel = perm.induced_action(foster_aut, blocks)
        assert quotient.order() == 1440
        assert kernel.order() == 3
        assert quotient.order() * kernel.order() == foster_aut.order()
        # the kernel contains N
        assert perm.is_subgroup_of(foster_n, kernel)


class TestRestriction:
    def test_faithful_restriction(self):
        g = build_group([cyc(6, (0, 1, 2), (3, 4, 5))])
        restricted, faithful = perm.restriction(g, [0, 1, 2])
        assert restricted.order() == 3
        assert faithful

    def test_unfaithful_restriction(self):
        g = build_group([cyc(6, (0, 1, 2)), cyc(6, (3, 4, 5))])
        restricted, faithful = perm.restriction(g, [0, 1, 2])
        assert restricted.order() == 3
        assert not faithful

    def test_non_invariant_rejected(self):
        g = build_group([cyc(4, (0, 1, 2, 3))])
        with pytest.raises(PointOutOfRange):
            perm.restriction(g, [0, 1])
