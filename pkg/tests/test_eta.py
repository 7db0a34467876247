"""The Donnelly engine: displayed values, orders, symmetries, certificates."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from etakit.eta import (EtaValue, LensSpec, ManifoldSpec, Modulus,
                        eta_donnelly, eta_donnelly_float, eta_lens_bundle,
                        eta_lens_cyclic, eta_lens_cyclic_float, eta_of,
                        eta_order, eta_vector, rational_determinant,
                        recursion_check, span_order_lower_bound, thm31_modulus)
from etakit.grouprep import (InclusionMap, NotFreeError, OddLengthError,
                             builtin_group, character_table, cyclic_free_rep,
                             quaternion_free_rep, restrict_virtual)


def c8_char(expr_j, minus_j=None):
    t = character_table("c8")
    chi = t.irreducible(f"r{expr_j}")
    if minus_j is not None:
        chi = chi - t.irreducible(f"r{minus_j}")
    return chi


class TestQuaternionClosedForms:
    @pytest.mark.parametrize("k", range(4))
    def test_first_power(self, k):
        t = character_table("q8")
        value = eta_donnelly(quaternion_free_rep(k), 2 - t.irreducible("tau"))
        assert value == Fraction(1, 2 ** (2 * k + 3)) + Fraction(3, 2 ** (k + 2))

    def test_square_at_k1(self):
        t = character_table("q8")
        value = eta_donnelly(quaternion_free_rep(1), (2 - t.irreducible("tau")) ** 2)
        assert value == Fraction(2, 16) + Fraction(3, 4) == Fraction(7, 8)

    def test_cube_at_k2(self):
        t = character_table("q8")
        value = eta_donnelly(quaternion_free_rep(2), (2 - t.irreducible("tau")) ** 3)
        assert value == Fraction(2, 16) + Fraction(6, 8) == Fraction(7, 8)

    def test_non_reduced_character_allowed(self):
        # differences of manifolds evaluate non-reduced characters
        t = character_table("q8")
        value = eta_donnelly(quaternion_free_rep(0),
                             t.irreducible("k1") + t.irreducible("k3"))
        assert value.denominator % 2 == 0 or value.denominator == 1


class TestLensValues:
    def test_dimension_three(self):
        # the displayed sum has trace factor 1 - lambda^4, i.e. r0 - r4;
        # the engine evaluates characters strictly, so r4 - r0 negates it
        spec = LensSpec(8, (1, 1))
        assert eta_lens_cyclic(spec, c8_char(0, 4)) == -1
        assert eta_lens_cyclic(spec, c8_char(4, 0)) == 1

    def test_dimension_seven(self):
        assert eta_lens_cyclic(LensSpec(8, (1, 1, 1, 1)), c8_char(0, 4)) == \
            Fraction(3, 2)

    def test_dimension_eleven_sphere(self):
        # no displayed value exists for this one; frozen from the engine
        # after cross-checking against the double-precision oracle
        spec = LensSpec(8, (1,) * 6)
        value = eta_lens_cyclic(spec, c8_char(0, 1))
        assert value == Fraction(-105, 256)
        assert abs(float(value) - eta_lens_cyclic_float(spec, c8_char(0, 1))) < 1e-9

    def test_bundle_values(self):
        b5 = LensSpec(8, (1, 1), kind="bundle")
        b13 = LensSpec(8, (1,) * 6, kind="bundle")
        assert b5.chern == (2, 0)
        assert eta_lens_bundle(b5, c8_char(0, 1)) == Fraction(-7, 8)
        assert eta_lens_bundle(b5, c8_char(0, 3)) == Fraction(-5, 8)
        assert eta_lens_bundle(b13, c8_char(0, 1)) == Fraction(-69, 32)
        assert eta_lens_bundle(b13, c8_char(0, 3)) == Fraction(-67, 32)

    def test_zero_chern_annihilates(self):
        spec = LensSpec(8, (1, 1), kind="bundle", chern=(0, 0))
        for j in (1, 3, 4):
            assert eta_lens_bundle(spec, c8_char(0, j)) == 0

    def test_weight_validation(self):
        with pytest.raises(NotFreeError):
            LensSpec(8, (2, 1))
        with pytest.raises(OddLengthError):
            LensSpec(8, (1, 1, 5))

    def test_virtual_dimension_zero_required(self):
        t = character_table("c8")
        with pytest.raises(ValueError):
            eta_lens_cyclic(LensSpec(8, (1, 1)), t.irreducible("r0"))


class TestOrders:
    def test_examples(self):
        assert eta_order(Fraction(3, 2), Modulus.Z) == 2
        assert eta_order(Fraction(-1), Modulus.TWO_Z) == 2
        assert eta_order(Fraction(7, 8), Modulus.TWO_Z) == 16

    def test_integers(self):
        assert eta_order(Fraction(5), Modulus.Z) == 1
        assert eta_order(Fraction(4), Modulus.TWO_Z) == 1
        assert eta_order(Fraction(3), Modulus.TWO_Z) == 2

    def test_eta_value_wrapper(self):
        v = EtaValue(Fraction(7, 8), Modulus.TWO_Z)
        assert v.order == 16
        assert str(v) == "7/8 (order 16 mod 2Z)"


class TestAgreement:
    """The closed lens formula against the eigenvalue-data engine."""

    @pytest.mark.parametrize("a", [(1, 1), (1, 3), (3, 5, 7, 1), (1, 1, 5, 5)])
    def test_fixed_tuples(self, a):
        spec = LensSpec(8, a)
        rep = cyclic_free_rep(8, a)
        for j in (1, 3, 4):
            chi = c8_char(0, j)
            assert eta_lens_cyclic(spec, chi) == eta_donnelly(rep, chi)

    @settings(max_examples=25, deadline=None)
    @given(a=st.lists(st.sampled_from((1, 3, 5, 7)), min_size=2, max_size=6)
           .filter(lambda v: len(v) % 2 == 0))
    def test_random_tuples(self, a):
        spec = LensSpec(8, tuple(a))
        rep = cyclic_free_rep(8, tuple(a))
        chi = c8_char(0, 4)
        assert eta_lens_cyclic(spec, chi) == eta_donnelly(rep, chi)


class TestSymmetries:
    @settings(max_examples=25, deadline=None)
    @given(a=st.lists(st.sampled_from((1, 3, 5, 7)), min_size=2, max_size=6)
           .filter(lambda v: len(v) % 2 == 0),
           g=st.sampled_from((3, 5, 7)))
    def test_galois_stability(self, a, g):
        # the substitution lambda -> lambda^g permutes the summands, which
        # is the same as multiplying every weight by g (without reducing:
        # a shift by 8 would flip the canonical determinant square root)
        chi = c8_char(0, 4)
        left = eta_lens_cyclic(LensSpec(8, tuple(a)), chi)
        right = eta_lens_cyclic(LensSpec(8, tuple(x * g for x in a)), chi)
        assert left == right

    @settings(max_examples=25, deadline=None)
    @given(a=st.lists(st.sampled_from((1, 3, 5, 7)), min_size=2, max_size=6)
           .filter(lambda v: len(v) % 2 == 0),
           j=st.sampled_from((1, 2, 3, 4)))
    def test_conjugation_parity(self, a, j):
        # a_j -> l - a_j is complex conjugation on the action
        chi = c8_char(0, j)
        left = eta_lens_cyclic(LensSpec(8, tuple(a)), chi)
        right = eta_lens_cyclic(LensSpec(8, tuple(8 - x for x in a)),
                                chi.conjugate())
        assert left == right


class TestFloatOracle:
    @settings(max_examples=25, deadline=None)
    @given(a=st.lists(st.sampled_from((1, 3, 5, 7)), min_size=2, max_size=6)
           .filter(lambda v: len(v) % 2 == 0),
           j=st.sampled_from((1, 2, 3, 4)))
    def test_sphere(self, a, j):
        spec = LensSpec(8, tuple(a))
        chi = c8_char(0, j)
        assert abs(float(eta_lens_cyclic(spec, chi))
                   - eta_lens_cyclic_float(spec, chi)) < 1e-9

    @pytest.mark.parametrize("k,p", [(k, p) for k in range(3) for p in (1, 2, 3)])
    def test_quaternion(self, k, p):
        chi = (2 - character_table("q8").irreducible("tau")) ** p
        rep = quaternion_free_rep(k)
        assert abs(float(eta_donnelly(rep, chi))
                   - eta_donnelly_float(rep, chi)) < 1e-9


class TestRecursion:
    @pytest.mark.parametrize("a", [(1, 1), (1, 1, 1, 1), (3, 5, 7, 1)])
    def test_documented_cases(self, a):
        assert recursion_check(a)

    def test_base_value(self):
        # -1/2 versus (1/2)(-1) after one application
        spec = LensSpec(8, (1, 1, 1, 1, 5, 5))
        assert eta_lens_cyclic(spec, c8_char(4, 0)) == Fraction(1, 2)


class TestCertificates:
    def _mq(self, k, power):
        t = character_table("q8")
        return eta_donnelly(quaternion_free_rep(k), (2 - t.irreducible("tau")) ** power)

    def test_dimension_eleven(self):
        m = 1
        rows = [[self._mq(2 * m, 1), self._mq(2 * m - 2, 1)],
                [self._mq(2 * m, 2) / 2, self._mq(2 * m - 2, 2) / 2]]
        assert span_order_lower_bound(rows) == 2 ** 9

    def test_dimension_fifteen(self):
        m = 1
        rows = [[self._mq(2 * m + 1, 1) / 2, self._mq(2 * m - 1, 1) / 2],
                [self._mq(2 * m + 1, 3) / 2, self._mq(2 * m - 1, 3) / 2]]
        assert span_order_lower_bound(rows) == 2 ** 12

    def test_identity_matrix(self):
        assert span_order_lower_bound([[Fraction(1), Fraction(0)],
                                       [Fraction(0), Fraction(1)]]) == 1

    def test_integer_determinant_gives_trivial_bound(self):
        assert span_order_lower_bound([[Fraction(3, 2), Fraction(1, 2)],
                                       [Fraction(1, 2), Fraction(3, 2)]]) == 1

    def test_determinant_against_permutation_expansion(self):
        rng = random.Random(3)
        for _ in range(10):
            n = rng.randint(1, 4)
            m = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                  for _ in range(n)] for _ in range(n)]
            import itertools
            expected = Fraction(0)
            for perm in itertools.permutations(range(n)):
                sign = 1
                for i in range(n):
                    for j in range(i + 1, n):
                        if perm[i] > perm[j]:
                            sign = -sign
                term = Fraction(1)
                for i in range(n):
                    term *= m[i][perm[i]]
                expected += sign * term
            assert rational_determinant(m) == expected


class TestModulusRule:
    def test_two_minus_tau(self):
        t = character_table("q8")
        chi = 2 - t.irreducible("tau")
        assert thm31_modulus(3, chi) is Modulus.Z       # quaternion, dim 3
        assert thm31_modulus(7, chi) is Modulus.TWO_Z   # quaternion, dim 7
        assert thm31_modulus(3, chi ** 2) is Modulus.TWO_Z  # real, dim 3
        assert thm31_modulus(7, chi ** 2) is Modulus.Z

    def test_doubled_real_in_dimension_seven(self):
        t = character_table("c8")
        doubled = 2 * (t.irreducible("r4") - t.irreducible("r0"))
        assert thm31_modulus(7, doubled) is Modulus.TWO_Z


class TestManifoldsAndVectors:
    def test_naturality_through_inclusion(self):
        sd = builtin_group("sd16")
        inc = InclusionMap.from_images(builtin_group("c8"), sd, {"g": "s"})
        t = character_table("sd16")
        chi = t.trivial() - t.irreducible("chi3")
        manifold = ManifoldSpec(lens=LensSpec(8, (1, 1)), inclusion=inc)
        direct = eta_lens_cyclic(LensSpec(8, (1, 1)), restrict_virtual(chi, inc))
        assert eta_of(manifold, chi) == direct

    def test_bott_shift_keeps_value(self):
        base = ManifoldSpec(quaternion_k=0)
        shifted = ManifoldSpec(quaternion_k=0, bott_power=1)
        t = character_table("q8")
        chi = 2 - t.irreducible("tau")
        assert base.dimension == 3 and shifted.dimension == 11
        assert eta_of(base, chi) == eta_of(shifted, chi)

    def test_vector_on_trivial_characters(self):
        t = character_table("q8")
        zero = t.constant(0)
        vec = eta_vector(ManifoldSpec(quaternion_k=1), [zero, zero])
        assert all(e.value == 0 for e in vec.entries)

    def test_quadruple_moduli(self):
        # dimension 3 mod 8: real columns upgrade to R/2Z, quaternion stay
        t = character_table("q8")
        tau = t.irreducible("tau")
        rhos = [t.irreducible("r0") - t.irreducible("k1"), 2 - tau, (2 - tau) ** 2]
        vec = eta_vector(ManifoldSpec(quaternion_k=0), rhos)
        assert [e.modulus for e in vec.entries] == \
            [Modulus.TWO_Z, Modulus.Z, Modulus.TWO_Z]
