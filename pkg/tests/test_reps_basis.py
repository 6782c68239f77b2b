from fractions import Fraction

import pytest
from hypothesis import given

from conftest import biquaternion
from nregular.diff_ops import is_n_regular
from nregular.func_algebra import N_FN, Z11, Z12, Z21, Z22, LaurentFn, TensorFn, homogeneous_split, substitute
from nregular.lie_actions import span_dimension
from nregular.quat_core import ZERO, gr
from nregular.reps_basis import (
    FAMILIES,
    BasisIndex,
    F_basis,
    F_basis_alt,
    Fp_basis,
    Fp_recursion_alt,
    G_basis,
    Gp_basis,
    IndexOutOfRange,
    basis,
    family_degree,
    family_side,
    half_str,
    index_ok,
    index_range,
    indices,
    recursion_check,
    t_coeff,
    t_coeff_inverted,
)
from nregular.tensor_space import COLUMN, ROW

INV_N = LaurentFn.const(1).div_N(1)
INVERSE_IMAGES = (Z22.div_N(1), -Z12.div_N(1), -Z21.div_N(1), Z11.div_N(1))
ZERO_FN = LaurentFn.zero()


def row(*entries):
    return TensorFn(ROW, 1, list(entries))


def col(*entries):
    return TensorFn(COLUMN, 1, list(entries))


def _s_poly_mul(p, q):
    out = [ZERO_FN] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def t_by_expansion(l2, nu2, mu2):
    """Independent route: multiply out the generating polynomial in s and read off a coefficient."""
    p = [LaurentFn.const(1)]
    for _ in range((l2 - mu2) // 2):
        p = _s_poly_mul(p, [Z21, Z11])
    for _ in range((l2 + mu2) // 2):
        p = _s_poly_mul(p, [Z22, Z12])
    return p[(l2 - nu2) // 2]


def levels(l2):
    return range(-l2, l2 + 1, 2)


class TestIndices:
    def test_index_rules(self):
        assert index_ok(1, 0, -1, 0) and index_ok(1, 0, 1, 0)
        assert not index_ok(1, 0, 0, 0)
        assert not index_ok(2, 1, 1, 0)
        with pytest.raises(IndexOutOfRange):
            F_basis(2, 1, 1, 0)
        with pytest.raises(ValueError):
            BasisIndex("H", 1, 0, 1, 0)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_counts(self, n):
        for l2 in range(6):
            mus, nus = index_range(n, l2)
            assert len(mus) * len(nus) == (l2 + n + 1) * (l2 + 1)
        assert sum(1 for _ in indices(n, 3)) == sum((l2 + n + 1) * (l2 + 1) for l2 in range(4))

    def test_labels(self):
        assert half_str(3) == "3/2" and half_str(-1) == "-1/2" and half_str(4) == "2"
        assert str(BasisIndex("Fp", 2, 1, -3, 1)) == "Fp^(2)[l=1/2,mu=-3/2,nu=1/2]"

    def test_sides_and_degrees(self):
        assert family_side("F") == family_side("Fp") == COLUMN
        assert family_side("G") == family_side("Gp") == ROW
        assert family_degree("F", 2, 3) == 3
        assert family_degree("Gp", 2, 0) == -4


class TestMatrixCoefficients:
    def test_low_levels(self):
        assert t_coeff(0, 0, 0) == LaurentFn.const(1)
        assert t_coeff(1, -1, -1) == Z11
        assert t_coeff(1, -1, 1) == Z12
        assert t_coeff(1, 1, -1) == Z21
        assert t_coeff(1, 1, 1) == Z22
        assert t_coeff(2, 0, 0) == Z11 * Z22 + Z12 * Z21

    def test_out_of_range_is_zero(self):
        assert t_coeff(2, 4, 0).is_zero() and t_coeff(2, 1, 0).is_zero()

    @pytest.mark.parametrize("l2", range(0, 6))
    def test_matches_expansion(self, l2):
        for nu2 in levels(l2):
            for mu2 in levels(l2):
                assert t_coeff(l2, nu2, mu2) == t_by_expansion(l2, nu2, mu2)

    @pytest.mark.parametrize("l2", [1, 2, 3])
    @given(Z=biquaternion, W=biquaternion)
    def test_representation_property(self, l2, Z, W):
        # t^l(ZW) is the matrix product of t^l(Z) and t^l(W)
        for nu2 in levels(l2):
            for mu2 in levels(l2):
                lhs = t_coeff(l2, nu2, mu2).evaluate(Z * W)
                rhs = sum((t_coeff(l2, nu2, k).evaluate(Z) * t_coeff(l2, k, mu2).evaluate(W) for k in levels(l2)), ZERO)
                assert lhs == rhs

    def test_inverted_examples(self):
        assert t_coeff_inverted(0, 0, 0) == INV_N
        assert t_coeff_inverted(1, -1, -1) == Z22.div_N(2)

    @pytest.mark.parametrize("l2", range(0, 5))
    def test_inverted_by_substitution(self, l2):
        for nu2 in levels(l2):
            for mu2 in levels(l2):
                want = substitute(t_coeff(l2, nu2, mu2), INVERSE_IMAGES) * INV_N
                got = t_coeff_inverted(l2, nu2, mu2)
                assert got == want
                assert [p.degree for p in homogeneous_split(got)] == [-l2 - 2]


class TestExplicitRankOne:
    @pytest.mark.parametrize("l2", range(0, 4))
    def test_F1(self, l2):
        l = Fraction(l2, 2)
        for mu2 in range(-l2 - 1, l2 + 2, 2):
            mu = Fraction(mu2, 2)
            for nu2 in levels(l2):
                want = col(
                    t_coeff(l2, nu2, mu2 + 1) * gr(l - mu + Fraction(1, 2)),
                    t_coeff(l2, nu2, mu2 - 1) * gr(l + mu + Fraction(1, 2)),
                )
                assert F_basis(1, l2, mu2, nu2) == want

    def test_F1_lowest(self):
        assert F_basis(1, 0, -1, 0) == col(LaurentFn.const(1), ZERO_FN)
        assert F_basis(1, 0, 1, 0) == col(ZERO_FN, LaurentFn.const(1))

    @pytest.mark.parametrize("l2", range(0, 4))
    def test_G1(self, l2):
        for mu2 in range(-l2 - 1, l2 + 2, 2):
            for nu2 in levels(l2):
                want = row(t_coeff(l2, mu2 + 1, nu2), t_coeff(l2, mu2 - 1, nu2))
                assert G_basis(1, l2, mu2, nu2) == want

    def test_G1_level_zero(self):
        assert G_basis(1, 0, -1, 0) == row(LaurentFn.const(1), ZERO_FN)
        assert G_basis(1, 0, 1, 0) == row(ZERO_FN, LaurentFn.const(1))

    @pytest.mark.parametrize("l2", range(0, 4))
    def test_Fp1_and_Gp1_by_substitution(self, l2):
        l = Fraction(l2, 2)
        for mu2 in range(-l2 - 1, l2 + 2, 2):
            for nu2 in levels(l2):
                nu = Fraction(nu2, 2)

                def inv(a, b, c):
                    return substitute(t_coeff(a, b, c), INVERSE_IMAGES) * INV_N

                want_f = col(inv(l2 + 1, nu2 - 1, mu2) * gr(l - nu + 1), inv(l2 + 1, nu2 + 1, mu2) * gr(l + nu + 1))
                want_g = row(inv(l2 + 1, mu2, nu2 - 1), inv(l2 + 1, mu2, nu2 + 1))
                assert Fp_basis(1, l2, mu2, nu2) == want_f
                assert Gp_basis(1, l2, mu2, nu2) == want_g

    def test_Fp1_level_zero(self):
        for mu2 in (-1, 1):
            want = col(substitute(t_coeff(1, -1, mu2), INVERSE_IMAGES) * INV_N, substitute(t_coeff(1, 1, mu2), INVERSE_IMAGES) * INV_N)
            assert Fp_basis(1, 0, mu2, 0) == want


class TestHigherRank:
    def test_F2_level_zero_constants_span_symmetric(self):
        members = [F_basis(2, 0, mu2, 0) for mu2 in (-2, 0, 2)]
        assert all(m.degrees() == {0} for m in members)
        assert span_dimension(members) == 3
        assert all(m.is_symmetric() for m in members)

    def test_Fp2_level_zero_degree(self):
        for mu2 in (-2, 0, 2):
            assert Fp_basis(2, 0, mu2, 0).degrees() == {-4}
        assert Fp_basis(2, 0, 0, 0).degree() == family_degree("Fp", 2, 0)

    def test_Gp2_concatenation(self):
        for mu2 in (-2, 0, 2):
            G = Gp_basis(2, 0, mu2, 0)
            assert G.comps == Gp_basis(1, 1, mu2, -1).comps + Gp_basis(1, 1, mu2, 1).comps

    @pytest.mark.parametrize("n", [2, 3])
    def test_F_closed_forms_agree(self, n):
        for l2, mu2, nu2 in indices(n, 2):
            assert F_basis(n, l2, mu2, nu2) == F_basis_alt(n, l2, mu2, nu2)

    @pytest.mark.parametrize("family", FAMILIES)
    @pytest.mark.parametrize("n", [2, 3])
    def test_recursions(self, family, n):
        rep = recursion_check(family, n, 2)
        assert rep["checked"] > 0 and rep["mismatches"] == []

    def test_Fp_branches(self):
        count = 0
        for l2, mu2, nu2 in indices(2, 2):
            alt = Fp_recursion_alt(2, l2, mu2, nu2)
            if alt is not None:
                count += 1
                assert alt == Fp_basis(2, l2, mu2, nu2)
        assert count > 0

    def test_recursion_needs_rank_two(self):
        with pytest.raises(ValueError):
            recursion_check("F", 1, 1)


class TestInvariants:
    @pytest.mark.parametrize("family", FAMILIES)
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_regular_symmetric_homogeneous(self, family, n):
        for l2, mu2, nu2 in indices(n, 2):
            F = basis(family, n, l2, mu2, nu2)
            assert F.side == family_side(family)
            assert not F.is_zero()
            assert is_n_regular(F)
            assert F.is_symmetric()
            assert F.degrees() == {family_degree(family, n, l2)}

    @pytest.mark.parametrize("family", FAMILIES)
    @pytest.mark.parametrize("n", [1, 2])
    def test_level_members_independent(self, family, n):
        for l2 in range(3):
            mus, nus = index_range(n, l2)
            members = [basis(family, n, l2, m, v) for m in mus for v in nus]
            assert span_dimension(members) == len(members)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_degree_zero_F_are_constants(self, n):
        mus, nus = index_range(n, 0)
        for mu2 in mus:
            F = F_basis(n, 0, mu2, 0)
            assert F.is_polynomial() and all(set(c.terms) <= {(0, 0, 0, 0)} for c in F.comps)

    def test_Fp_not_polynomial(self):
        assert not Fp_basis(1, 0, 1, 0).is_polynomial()
        assert N_FN * Fp_basis(1, 0, 1, 0).comps[0] != ZERO_FN
