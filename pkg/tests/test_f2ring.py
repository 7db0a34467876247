"""Presented F2 algebras: normal forms, bases, homs, Steenrod, duality."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from etakit.f2ring import (DegeneratePairingError, DegreeBoundExceededError,
                           F2AlgebraElement, F2ParseError, GradedHom,
                           InconsistentSteenrodDataError, PresentedF2Algebra,
                           SteenrodData, circle_bundle_cohomology,
                           circle_bundle_steenrod, circle_bundle_to_lens,
                           d8_to_v2_restriction, dihedral_cohomology,
                           dual_pushforward, dual_pushforward_map, gf2_echelon,
                           klein_cohomology, lens_space_cohomology,
                           sd_to_circle_bundle, sd_to_d8_restriction,
                           semidihedral_cohomology, semidihedral_steenrod,
                           sq1_branch_enumerate, stiefel_whitney, wu_classes)


@pytest.fixture(scope="module")
def sd():
    return semidihedral_cohomology()


@pytest.fixture(scope="module")
def d8():
    return dihedral_cohomology()


@pytest.fixture(scope="module")
def v2():
    return klein_cohomology()


@pytest.fixture(scope="module")
def m8():
    return circle_bundle_cohomology(4)


class TestNormalForms:
    def test_defining_rewrites(self, sd):
        assert str(sd.parse("x*y")) == "x^2"
        assert str(sd.parse("u*u")) == "x^2*P + y^2*P"

    def test_chain_of_rewrites(self, sd):
        assert str(sd.parse("y*u^3")) == "y^3*u*P"

    def test_idempotent_and_linear(self, sd):
        e = sd.parse("y*u^3 + x*y + u^2")
        assert sd.normal_form(e) == e
        assert sd.parse("x*y + x^2") == sd.zero  # the relation itself

    def test_total_space_completion(self, m8):
        # s*t -> t^2 forces the derived rule t^3 -> 0
        assert m8.parse("t^3") == m8.zero
        assert str(m8.parse("s*t")) == "t^2"


class TestGradedBases:
    def test_dihedral_degree_three(self, d8):
        assert [d8.format_monomial(m) for m in d8.graded_basis(3)] == \
            ["a^3", "a*d", "b^3", "b*d"]

    def test_klein_degree_two(self, v2):
        assert [v2.format_monomial(m) for m in v2.graded_basis(2)] == \
            ["p^2", "p*q", "q^2"]

    def test_semidihedral_degree_three(self, sd):
        assert [sd.format_monomial(m) for m in sd.graded_basis(3)] == ["y^3", "u"]

    @pytest.mark.parametrize("n", range(13))
    def test_dihedral_rank_n_plus_one(self, d8, n):
        size = len(d8.graded_basis(n))
        assert size == (n + 1 if n > 0 else 1)
        assert size == d8.brute_quotient_dimension(n)

    def test_degree_bound(self):
        alg = dihedral_cohomology(degree_bound=10)
        with pytest.raises(DegreeBoundExceededError):
            alg.graded_basis(11)


class TestConfluenceOracle:
    @pytest.mark.parametrize("factory", [semidihedral_cohomology,
                                         dihedral_cohomology, klein_cohomology])
    def test_group_cohomologies(self, factory):
        factory().validate_dimensions(16)

    def test_total_space(self, m8):
        m8.validate_dimensions(8)
        # every degree above the formal dimension vanishes
        assert all(len(m8.graded_basis(n)) == 0 for n in range(9, 16))

    def test_semidihedral_basis_shape(self, sd):
        # normal basis: y^a P^c, y^a u P^c, x P^c, x^2 P^c
        for n in range(2, 20):
            expected = set()
            for c in range(n // 4 + 1):
                if n - 4 * c >= 0:
                    expected.add((0, n - 4 * c, 0, c))
                if n - 4 * c - 3 >= 0:
                    expected.add((0, n - 4 * c - 3, 1, c))
            if (n - 1) % 4 == 0:
                expected.add((1, 0, 0, (n - 1) // 4))
            if (n - 2) % 4 == 0:
                expected.add((2, 0, 0, (n - 2) // 4))
            assert set(sd.graded_basis(n)) == expected


class TestConfluenceFailureDetection:
    def test_tampered_system_is_caught(self):
        from etakit.f2ring import NonConfluentPresentationError
        # drop the completion-derived rule t^3 -> 0; the dimension oracle
        # must notice the disagreement
        alg = circle_bundle_cohomology(4)
        alg._rules = [r for r in alg._rules if r[0] != (0, 3, 0)]
        alg._basis_cache.clear()
        with pytest.raises(NonConfluentPresentationError):
            alg.validate_dimensions(8)


class TestParser:
    def test_unknown_generator_position(self, sd):
        with pytest.raises(F2ParseError) as err:
            sd.parse("x*w + y")
        assert err.value.col == 3

    def test_dangling_exponent(self, sd):
        with pytest.raises(F2ParseError):
            sd.parse("y*u^")

    def test_integer_literals(self, sd):
        assert sd.parse("3") == sd.one
        assert sd.parse("2") == sd.zero
        assert sd.parse("1 + x + x") == sd.one

    def test_multiline_position(self, sd):
        with pytest.raises(F2ParseError) as err:
            sd.parse("x +\n q")
        assert (err.value.line, err.value.col) == (2, 2)


class TestHoms:
    def test_dihedral_to_klein_images(self, d8, v2):
        f = d8_to_v2_restriction(d8, v2)
        assert str(f("d")) == "p*q + q^2"
        assert f("b") == v2.zero

    def test_semidihedral_to_dihedral(self, sd, d8):
        f = sd_to_d8_restriction(sd, d8)
        assert str(f("y*u*P")) == "a^2*d^3"

    def test_identity_hom(self, sd):
        ident = GradedHom(sd, sd, {g: g for g in sd.gen_names})
        for expr in ("y*u^3", "P^2 + x^2*P", "u"):
            e = sd.parse(expr)
            assert ident(e) == e

    def test_relation_violation_rejected(self, sd, d8):
        with pytest.raises(ValueError, match="does not map to zero"):
            GradedHom(sd, d8, {"x": "a", "y": "a", "u": "a*d", "P": "d^2"})

    def test_multiplicativity_on_random_elements(self, sd, d8):
        f = sd_to_d8_restriction(sd, d8)
        rng = random.Random(11)
        for _ in range(15):
            n1, n2 = rng.randint(1, 6), rng.randint(1, 6)
            e1 = F2AlgebraElement(sd, frozenset(
                rng.sample(sd.graded_basis(n1), min(2, len(sd.graded_basis(n1))))))
            e2 = F2AlgebraElement(sd, frozenset(
                rng.sample(sd.graded_basis(n2), min(2, len(sd.graded_basis(n2))))))
            assert f(e1 * e2) == f(e1) * f(e2)
            assert f(e1 + e1) == d8.zero


class TestRingLaws:
    @settings(max_examples=30, deadline=None)
    @given(data=st.data())
    def test_associative_commutative(self, data):
        sd = semidihedral_cohomology()
        picks = []
        for _ in range(3):
            n = data.draw(st.integers(min_value=1, max_value=6))
            basis = sd.graded_basis(n)
            mons = data.draw(st.sets(st.sampled_from(basis), max_size=2))
            picks.append(F2AlgebraElement(sd, frozenset(mons)))
        a, b, c = picks
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


class TestDualPushforward:
    def test_klein_to_dihedral_degree_six(self, d8, v2):
        f = d8_to_v2_restriction(d8, v2)
        push = dual_pushforward_map(f, 6)
        assert push[(3, 3)] == frozenset({(0, 0, 3)})  # xi(p^3 q^3) -> xi(d^3)

    def test_dihedral_to_semidihedral_singletons(self, sd, d8):
        f = sd_to_d8_restriction(sd, d8)
        for n in range(4, 24, 2):
            push = dual_pushforward_map(f, n)
            for i in range(2, n, 2):
                for j in range(1, n, 2):
                    if i + 2 * j == n:
                        assert push[(i, 0, j)] == \
                            frozenset({(0, i - 1, 1, (j - 1) // 2)})

    def test_zero_hom_gives_zero_matrix(self, v2):
        trivial = PresentedF2Algebra("pt", [("e", 1)], ["e"])
        f = GradedHom(v2, trivial, {"p": 0, "q": 0})
        matrix = dual_pushforward(f, 2)
        assert all(all(x == 0 for x in row) for row in matrix)

    def test_transpose_duality(self, sd, d8):
        f = sd_to_d8_restriction(sd, d8)
        for n in (5, 8, 11):
            src, tgt = sd.graded_basis(n), d8.graded_basis(n)
            matrix = dual_pushforward(f, n)
            for i, t in enumerate(tgt):
                for j, s in enumerate(src):
                    image = f(F2AlgebraElement(sd, frozenset({s})))
                    assert matrix[i][j] == (1 if t in image.monomials else 0)


class TestSteenrod:
    def test_semidihedral_squares(self, sd):
        data = semidihedral_steenrod(sd)
        assert str(data.sq(2, sd.parse("P"))) == "x^2*P + y^2*P"
        assert data.sq(1, sd.parse("u")) == sd.zero
        assert data.sq(1, sd.parse("x")) == sd.parse("x^2")

    def test_top_square_is_squaring(self, sd):
        data = semidihedral_steenrod(sd)
        for g in sd.gen_names:
            e = sd.gen(g)
            assert data.sq(e.degree(), e) == e * e

    def test_sq_zero_is_identity(self, sd):
        data = semidihedral_steenrod(sd)
        e = sd.parse("y^2*u + x^2*P")
        assert data.sq(0, e) == e

    def test_vanishing_above_degree(self, sd):
        data = semidihedral_steenrod(sd)
        assert data.sq(4, sd.parse("u")) == sd.zero

    def test_bockstein_of_pulled_back_class(self, m8):
        for branch in ("Z*s", "Z*(t+s)"):
            data = circle_bundle_steenrod(m8, m8.parse(branch))
            assert data.sq(1, m8.parse("Z*(t+s)")) == m8.zero

    def test_cartan_formula_sample(self, m8):
        data = circle_bundle_steenrod(m8, m8.parse("Z*s"))
        a, b = m8.parse("Z"), m8.parse("t^2")
        lhs = data.sq(1, a * b)
        rhs = data.sq(1, a) * b + a * data.sq(1, b)
        assert lhs == rhs

    def test_inconsistent_data_rejected(self, sd):
        with pytest.raises(InconsistentSteenrodDataError):
            SteenrodData(sd, {("u", 1): "P", ("u", 2): "y^2*u + y*P + x*P",
                              ("P", 1): 0, ("P", 2): "u^2", ("P", 3): 0})

    def test_missing_value_rejected(self, sd):
        with pytest.raises(InconsistentSteenrodDataError, match="missing"):
            SteenrodData(sd, {("u", 1): 0, ("P", 1): 0, ("P", 2): "u^2",
                              ("P", 3): 0})


class TestWuAndStiefelWhitney:
    def test_spin_branch(self, m8):
        data = circle_bundle_steenrod(m8, m8.parse("Z*s"))
        v = wu_classes(m8, data)
        assert v[0] == m8.one
        assert v[1] == m8.zero and v[2] == m8.zero
        w = stiefel_whitney(m8, data)
        assert w[0] == m8.one and w[1] == m8.zero and w[2] == m8.zero

    def test_nonspin_branch(self, m8):
        data = circle_bundle_steenrod(m8, m8.parse("Z*(t+s)"))
        assert str(wu_classes(m8, data)[1]) == "t"
        assert str(stiefel_whitney(m8, data)[1]) == "t"

    def test_degenerate_pairing_detected(self):
        bad = PresentedF2Algebra("bad", [("x", 1), ("y", 1)],
                                 ["x^2", "x*y"], poincare=(2, "y^2"))
        data = SteenrodData(bad, {})
        with pytest.raises(DegeneratePairingError):
            wu_classes(bad, data)


class TestBranchEnumeration:
    @pytest.mark.parametrize("n", [4, 8])
    def test_two_branches(self, n):
        alg = circle_bundle_cohomology(n)
        branches = sq1_branch_enumerate(alg)
        assert [str(b) for b in branches] == ["s*Z", "s*Z + t*Z"]

    def test_w1_filter(self, m8):
        assert [str(b) for b in sq1_branch_enumerate(m8, require_w1_zero=True)] \
            == ["s*Z"]


class TestPullbackScenario:
    def test_relations_vanish_for_both_candidates(self, sd, m8):
        sd_to_circle_bundle(sd, m8)                     # Z^2 + Z t^2
        sd_to_circle_bundle(sd, m8, p_image="Z^2")      # also a ring map
        # but only the first is compatible with Sq^2 on P
        data = circle_bundle_steenrod(m8, m8.parse("Z*s"))
        good = sd_to_circle_bundle(sd, m8)
        alt = sd_to_circle_bundle(sd, m8, p_image="Z^2")
        assert data.sq(2, good("P")) == good("u") ** 2
        assert data.sq(2, alt("P")) != alt("u") ** 2

    def test_w1_restricts_to_lens_generator(self, m8):
        lens = lens_space_cohomology(4)
        to_lens = circle_bundle_to_lens(m8, lens)
        data = circle_bundle_steenrod(m8, m8.parse("Z*(t+s)"))
        w1 = stiefel_whitney(m8, data)[1]
        assert str(to_lens(w1)) == "t"


def test_binomial_parity_fact():
    # C(4J+3, 4I+3) = C(4J+3, 4I+1) mod 2, checked against a Lucas oracle
    def lucas_parity(n, k):
        while n or k:
            if (k & 1) > (n & 1):
                return 0
            n >>= 1
            k >>= 1
        return 1

    for J in range(33):
        for I in range(J + 1):
            lhs = lucas_parity(4 * J + 3, 4 * I + 3)
            rhs = lucas_parity(4 * J + 3, 4 * I + 1)
            assert lhs == math.comb(4 * J + 3, 4 * I + 3) % 2
            assert rhs == math.comb(4 * J + 3, 4 * I + 1) % 2
            assert lhs == rhs


def test_gf2_echelon_rank():
    # 0b1101 = 0b1011 ^ 0b0110, so the span has rank 2
    rows = [0b1011, 0b0110, 0b1101, 0b0110]
    basis = gf2_echelon(rows)
    assert len(basis) == 2
    # adding a span member leaves the echelon form unchanged
    assert gf2_echelon(basis + [0b1011 ^ 0b0110]) == basis
    assert len(gf2_echelon([0b100, 0b010, 0b001])) == 3
