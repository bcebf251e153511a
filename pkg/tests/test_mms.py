"""The mixed-symbol lattice: presentation, reduction, and structural maps."""

import random
from fractions import Fraction

import pytest

from mixsym.mms import (InvalidInputError, boundary, build_space,
                        cusp_cokernel_invariants, expected_homology_index,
                        expected_manin_index, homology_index_in_kernel,
                        kernel_pi_invariants, manin_index, pi_classical,
                        reduce_pair, reduce_pair_rational, space_from_dict,
                        space_to_dict)
from mixsym.sl2 import GroupSpec, MAT_ID, MAT_S, MAT_T, mmul, mpow_t

# rank must equal 2*genus + 2*(cusps - 1)
RANK_TABLE = {("gamma0", 5): 2, ("gamma0", 7): 2, ("gamma0", 9): 6,
              ("gamma0", 11): 4, ("gamma0", 13): 2, ("gamma0", 23): 6,
              ("gamma0", 25): 10, ("gamma1", 5): 6, ("gamma1", 7): 10,
              ("gamma1", 11): 20, ("gamma1", 13): 26, ("full", 1): 0}


def _space(family, level, _cache={}):
    if (family, level) not in _cache:
        _cache[(family, level)] = build_space(GroupSpec(family, level))
    return _cache[(family, level)]


class TestBuild:
    @pytest.mark.parametrize("family,level", sorted(RANK_TABLE))
    def test_rank(self, family, level):
        sp = _space(family, level)
        assert sp.rank == RANK_TABLE[(family, level)]
        assert sp.rank == 2 * sp.genus + 2 * (sp.n_cusp - 1)

    def test_generators_integral(self):
        sp = _space("gamma0", 11)
        for i in range(sp.n_manin):
            assert all(isinstance(x, int) for x in sp.manin_gen(i))
        for c in range(sp.n_cusp):
            assert any(sp.cusp_gen(c))


class TestReduce:
    def test_t_power_is_cusp_generator_multiple(self):
        sp = _space("gamma0", 5)
        # {1, T^5} telescopes to five copies of the infinity cusp generator
        assert reduce_pair(sp, MAT_ID, mpow_t(5)) == \
            [5 * x for x in sp.cusp_gen(0)]

    def test_s_is_manin_generator(self):
        sp = _space("gamma0", 5)
        assert reduce_pair(sp, MAT_ID, MAT_S) == sp.manin_gen(0)

    def test_cocycle_law(self):
        sp = _space("gamma0", 11)
        rng = random.Random(20)

        def rnd():
            m = MAT_ID
            for _ in range(8):
                m = mmul(m, MAT_S if rng.random() < 0.5
                         else (1, rng.randint(-3, 3), 0, 1))
            return m

        for _ in range(25):
            g, gp, gpp = rnd(), rnd(), rnd()
            lhs = [a + b for a, b in zip(reduce_pair(sp, g, gp),
                                         reduce_pair(sp, gp, gpp))]
            assert lhs == reduce_pair(sp, g, gpp)
            # group invariance: {gamma*g, gamma*g'} = {g, g'}
            gamma = (1, 0, 11, 1)
            assert reduce_pair(sp, mmul(gamma, g), mmul(gamma, gp)) == \
                reduce_pair(sp, g, gp)

    def test_antisymmetry(self):
        sp = _space("gamma0", 7)
        g, gp = (1, 2, 0, 1), MAT_S
        assert reduce_pair(sp, g, gp) == [-x for x in reduce_pair(sp, gp, g)]

    def test_invalid_input(self):
        sp = _space("gamma0", 5)
        with pytest.raises(InvalidInputError):
            reduce_pair(sp, (2, 0, 0, 1), MAT_ID)


class TestRationalReduce:
    def test_half_translation(self):
        sp = _space("gamma0", 5)
        m = (1, Fraction(1, 2), 0, 1)
        assert reduce_pair_rational(sp, MAT_ID, m) == \
            [Fraction(x, 2) for x in sp.cusp_gen(0)]

    def test_agrees_with_integral_route(self):
        sp = _space("gamma0", 11)
        for g, gp in (((1, 2, 0, 1), MAT_S), (MAT_S, mmul(MAT_S, MAT_T))):
            assert reduce_pair_rational(sp, g, gp) == \
                [Fraction(x) for x in reduce_pair(sp, g, gp)]

    def test_scaling_invariance(self):
        sp = _space("gamma0", 5)
        m = (Fraction(3), Fraction(3, 2), 0, Fraction(3))
        assert reduce_pair_rational(sp, MAT_ID, m) == \
            reduce_pair_rational(sp, MAT_ID, (1, Fraction(1, 2), 0, 1))

    def test_nonpositive_determinant_rejected(self):
        sp = _space("gamma0", 5)
        with pytest.raises(InvalidInputError):
            reduce_pair_rational(sp, MAT_ID, (1, 0, 0, -1))


class TestStructureMaps:
    def test_boundary_of_manin_generator(self):
        sp = _space("gamma0", 11)
        # {g, gS} has boundary [gS*oo] - [g*oo]
        for i in range(sp.n_manin):
            div = boundary(sp, sp.manin_gen(i))
            assert sum(div) == 0

    def test_boundary_of_cusp_generator_vanishes(self):
        sp = _space("gamma0", 11)
        for c in range(sp.n_cusp):
            assert not any(boundary(sp, sp.cusp_gen(c)))

    def test_pi_kills_cusp_generators(self):
        for fam, lvl in (("gamma0", 11), ("gamma1", 5)):
            sp = _space(fam, lvl)
            for c in range(sp.n_cusp):
                assert not any(pi_classical(sp, sp.cusp_gen(c)))

    def test_kernel_pi_matches_cusp_cokernel(self):
        for fam, lvl in (("gamma0", 5), ("gamma0", 9), ("gamma0", 11),
                         ("gamma0", 25), ("gamma1", 5), ("gamma1", 7)):
            sp = _space(fam, lvl)
            assert kernel_pi_invariants(sp) == cusp_cokernel_invariants(sp)

    def test_kernel_pi_is_z_for_prime_level(self):
        for p in (5, 7, 11, 13):
            assert kernel_pi_invariants(_space("gamma0", p)) == (1, [])


MANIN_TABLE = {("gamma0", 5): 3, ("gamma0", 7): 1, ("gamma0", 11): 3,
               ("gamma0", 13): 1, ("gamma0", 25): 3, ("gamma0", 49): 1,
               ("gamma1", 5): 3, ("gamma1", 7): 3, ("full", 1): 1}


class TestIndices:
    @pytest.mark.parametrize("family,level", sorted(MANIN_TABLE))
    def test_manin_index(self, family, level):
        sp = _space(family, level)
        assert manin_index(sp) == MANIN_TABLE[(family, level)]
        assert manin_index(sp) == expected_manin_index(sp)

    def test_homology_index(self):
        for fam, lvl in (("gamma0", 5), ("gamma0", 7), ("gamma0", 11),
                         ("gamma0", 13), ("gamma0", 9), ("gamma1", 5)):
            sp = _space(fam, lvl)
            assert homology_index_in_kernel(sp) == expected_homology_index(sp)

    def test_homology_index_prime_value(self):
        for p in (5, 7, 11, 13):
            assert homology_index_in_kernel(_space("gamma0", p)) == p


class TestSerialization:
    def test_round_trip(self):
        sp = _space("gamma0", 11)
        doc = space_to_dict(sp)
        sp2 = space_from_dict(doc)
        assert space_to_dict(sp2) == doc

    def test_tampered_document_rejected(self):
        doc = space_to_dict(_space("gamma0", 5))
        doc["basis_rank"] = "99"
        with pytest.raises(InvalidInputError):
            space_from_dict(doc)

    def test_strings_only(self):
        doc = space_to_dict(_space("gamma1", 5))
        assert all(isinstance(x, str) for row in doc["project"] for x in row)
        assert len(doc["cusps"]) == 4
