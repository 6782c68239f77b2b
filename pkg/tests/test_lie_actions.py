from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gaussian_int
from nregular.diff_ops import is_n_regular
from nregular.func_algebra import LaurentFn, TensorFn, conj_dagger
from nregular.kernel_pairing import bilinear_pairing, laurent_coefficients, reconstruct
from nregular.lie_actions import (
    INVERSION,
    MATRIX_UNITS,
    GlElement,
    KTypeLabel,
    act_algebra,
    act_algebra_left,
    act_algebra_right,
    act_group,
    bracket,
    definiteness,
    diagonal,
    generation_check,
    gram_matrix,
    ktype_census,
    one_block_generators,
    pairing_invariance_check,
    regular_dimension,
    regularity_preservation_check,
    sigma_intertwine_check,
    space_basis,
    torus_weight_check,
    translation,
    u22_generators,
    unitarity_check,
)
from nregular.quat_core import E_UNITS, Biquaternion, I, NonInvertible, gr
from nregular.reps_basis import F_basis, Fp_basis, G_basis, Gp_basis, index_range
from nregular.tensor_space import COLUMN, ROW, SpinorTensor, slot_apply

E0, E1, E2, E3 = E_UNITS
ID = Biquaternion(1, 0, 0, 1)
E12, E21 = MATRIX_UNITS[1], MATRIX_UNITS[2]


def derivative_at_zero(curve, m=6):
    """d/dt at t=0 of a curve polynomial in t of degree <= m, from its values at t = 0..m."""
    nodes = range(m + 1)
    acc = None
    for j in nodes:
        den = 1
        for k in nodes:
            if k != j:
                den *= j - k
        num = 0
        for i in nodes:
            if i == j:
                continue
            p = 1
            for k in nodes:
                if k not in (i, j):
                    p *= -k
            num += p
        term = curve(j) * gr(Fraction(num, den))
        acc = term if acc is None else acc + term
    return acc


SAMPLES = [F_basis(2, 1, 1, 1), F_basis(1, 2, 1, 0), Fp_basis(1, 1, 0, 1), Fp_basis(2, 0, 2, 0),
           G_basis(2, 1, 1, 1), G_basis(1, 1, 2, -1), Gp_basis(1, 0, 1, 0), Gp_basis(2, 1, -1, 1)]


class TestGroupDerivative:
    """The algebra action is the derivative of the substitution action along one-parameter subgroups."""

    @pytest.mark.parametrize("f", SAMPLES)
    @pytest.mark.parametrize("E", [E12, E21])
    def test_A_and_D_blocks(self, f, E):
        dA = derivative_at_zero(lambda t: act_group(diagonal(ID + E * gr(t), ID), f))
        dD = derivative_at_zero(lambda t: act_group(diagonal(ID, ID + E * gr(t)), f))
        assert dA == act_algebra(GlElement(A=E), f)
        assert dD == act_algebra(GlElement(D=E), f)

    @pytest.mark.parametrize("f", [s for s in SAMPLES if s.is_polynomial()])
    @pytest.mark.parametrize("u", MATRIX_UNITS)
    def test_B_block(self, f, u):
        dB = derivative_at_zero(lambda t: act_group(translation(u * gr(t)), f))
        assert dB == act_algebra(GlElement(B=u), f)


class TestAlgebra:
    def test_block_constructor(self):
        assert GlElement.block("C", E1).C == E1
        with pytest.raises(ValueError):
            GlElement.block("E", E1)

    def test_B_on_constants_vanishes(self):
        c = TensorFn.constant(SpinorTensor(COLUMN, 2, [1, 2, 2, 5]))
        for u in MATRIX_UNITS:
            assert act_algebra_left(GlElement(B=u), c).is_zero()

    def test_D_on_constants(self):
        s = SpinorTensor(COLUMN, 2, [1, 2, 2, gr(0, 5)])
        c = TensorFn.constant(s)
        D = Biquaternion(gr(1, 1), 2, -3, gr(0, 4))
        want = s * D.trace() + slot_apply(D, 1, s) + slot_apply(D, 2, s)
        assert act_algebra_left(GlElement(D=D), c) == TensorFn.constant(want)

    @pytest.mark.parametrize("f", [F_basis(2, 1, 1, 1), Fp_basis(2, 1, 1, 1), G_basis(1, 2, 1, 0), Gp_basis(2, 0, 0, 0)])
    def test_C_raises_degree(self, f):
        for u in MATRIX_UNITS:
            img = act_algebra(GlElement(C=u), f)
            assert img.is_zero() or img.degree() == f.degree() + 1
            img = act_algebra(GlElement(B=u), f)
            assert img.is_zero() or img.degree() == f.degree() - 1

    def test_wrong_side(self):
        with pytest.raises(ValueError):
            act_algebra_left(GlElement(A=E1), G_basis(1, 0, 1, 0))
        with pytest.raises(ValueError):
            act_algebra_right(GlElement(A=E1), F_basis(1, 0, 1, 0))

    @pytest.mark.parametrize("f", [F_basis(1, 1, 0, 1), F_basis(2, 0, 0, 0) + F_basis(2, 2, 2, 0),
                                   G_basis(2, 1, 1, -1), Fp_basis(1, 0, 1, 0)])
    def test_bracket_compatibility(self, f):
        gens = one_block_generators()
        images = [act_algebra(X, f) for X in gens]
        for (X, xf), (Y, yf) in product(zip(gens, images), repeat=2):
            lhs = act_algebra(bracket(X, Y), f)
            assert lhs == act_algebra(X, yf) - act_algebra(Y, xf)

    def test_u22_generators(self):
        gens = u22_generators()
        assert len(gens) == 16 and all(X.is_u22() for X in gens)
        assert all(bracket(X, Y).is_u22() for X in gens[:6] for Y in gens[6:])
        assert not GlElement(B=E1).is_u22()


class TestGroup:
    def test_diagonal_identity(self):
        for f in SAMPLES:
            assert act_group(diagonal(ID, ID), f) == f

    def test_diagonal_needs_invertible(self):
        with pytest.raises(NonInvertible):
            diagonal(Biquaternion(1, 1, 1, 1), ID)

    def test_inversion_lands_in_minus_space(self):
        f = F_basis(1, 0, -1, 0)
        g = act_group(INVERSION, f)
        assert g.degree() == -3 and is_n_regular(g)
        t = laurent_coefficients(g, 1)
        assert t["a"] == {} and reconstruct(1, t) == g

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_inversion_twice(self, n):
        signs = set()
        for build in (F_basis, Fp_basis, G_basis, Gp_basis):
            mus, nus = index_range(n, 1)
            for mu2 in mus[:2]:
                f = build(n, 1, mu2, nus[0])
                twice = act_group(INVERSION, act_group(INVERSION, f))
                if twice == f:
                    signs.add((f.side, 1))
                else:
                    assert twice == -f
                    signs.add((f.side, -1))
        # one sign per side
        assert len({s for s, _ in signs}) == len(signs)

    def test_translation_rejects_laurent(self):
        with pytest.raises(ValueError):
            act_group(translation(E1), Fp_basis(1, 0, 1, 0))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_torus_weights(self, n):
        for l2 in range(3):
            for nu2 in range(-l2, l2 + 1, 2):
                assert torus_weight_check(n, l2, nu2)


class TestChecks:
    def test_C_block_keeps_F2_regular(self):
        for mu2 in (-2, 0, 2):
            for u in MATRIX_UNITS:
                assert regularity_preservation_check(GlElement(C=u), F_basis(2, 0, mu2, 0))

    def test_all_generators_on_F1(self):
        mus, nus = index_range(1, 1)
        for X in one_block_generators():
            for mu2 in mus:
                for nu2 in nus:
                    assert regularity_preservation_check(X, F_basis(1, 1, mu2, nu2))

    def test_right_B_block(self):
        mus, nus = index_range(2, 1)
        for u in MATRIX_UNITS:
            for mu2 in mus:
                assert regularity_preservation_check(GlElement(B=u), G_basis(2, 1, mu2, nus[0]))

    def test_regularity_not_automatic(self):
        f = TensorFn(COLUMN, 1, [LaurentFn({(0, 0, 0, 1): 1}), LaurentFn.zero()])
        assert not regularity_preservation_check(GlElement(A=E0), f)

    def test_invariance_examples(self):
        f = F_basis(1, 1, 0, 1)
        g = Gp_basis(1, 0, 1, 0)
        for u in MATRIX_UNITS:
            assert pairing_invariance_check(GlElement(B=u), f, g)
        for mu2 in (-2, 0, 2):
            f2, g2 = F_basis(2, 0, mu2, 0), Gp_basis(2, 1, 1, 1)
            for u in MATRIX_UNITS:
                assert pairing_invariance_check(GlElement(C=u), f2, g2)
                assert pairing_invariance_check(GlElement(A=u), f2, Gp_basis(2, 0, -mu2, 0))

    def test_invariance_fails_for_non_action(self):
        # flipping the sign of the right action breaks the identity for some generator
        f, g = F_basis(1, 1, 0, 1), Gp_basis(1, 1, 0, 1)
        diffs = [
            bilinear_pairing(act_algebra_left(X, f), g) - bilinear_pairing(f, act_algebra_right(X, g))
            for X in one_block_generators()
        ]
        assert any(diffs)

    def test_sigma_examples(self):
        for mu2 in (-2, 0, 2):
            for nu2 in (-1, 1):
                assert sigma_intertwine_check("B", E0, F_basis(1, 1, mu2, nu2))
        for mu2 in (-2, 0, 2):
            assert sigma_intertwine_check("C", E2, F_basis(2, 0, mu2, 0))
        assert sigma_intertwine_check("B", E1 * I, F_basis(1, 1, 0, 1))
        assert sigma_intertwine_check("C", E3 * gr(2, -1), Fp_basis(1, 0, 1, 0))
        with pytest.raises(ValueError):
            sigma_intertwine_check("A", E0, F_basis(1, 0, 1, 0))

    def test_sigma_swaps_sides(self):
        f = F_basis(1, 1, 0, 1)
        assert conj_dagger(f).side == ROW and is_n_regular(conj_dagger(f))

    @settings(max_examples=15)
    @given(st.lists(gaussian_int, min_size=4, max_size=4))
    def test_sigma_complex_B(self, coeffs):
        B = Biquaternion(*coeffs)
        assert sigma_intertwine_check("B", B, F_basis(1, 1, 2, -1) + F_basis(1, 0, 1, 0))


class TestKTypes:
    def test_labels(self):
        assert KTypeLabel("F+", 2, 2).expected_dimension() == 15
        assert KTypeLabel("F-", 1, -2).expected_dimension() == 0
        assert KTypeLabel("G+", 3, 0).expected_dimension() == 4
        assert KTypeLabel("F-", 2, -5).l2 == 1

    def test_examples(self):
        assert len(space_basis("F+", 2, 2)) == 15
        assert space_basis("F-", 1, -2) == []
        assert len(space_basis("G+", 3, 0)) == 4
        with pytest.raises(ValueError):
            space_basis("H+", 1, 0)

    def test_regular_dimension_oracle(self):
        assert regular_dimension(2, 2) == 15
        assert regular_dimension(1, -2, 1) == 0
        assert regular_dimension(3, 0, 0, ROW) == 4
        assert regular_dimension(1, -1) == 0

    @pytest.mark.parametrize("space", ["F+", "F-", "G+", "G-"])
    @pytest.mark.parametrize("n", [1, 2])
    def test_census(self, space, n):
        for row in ktype_census(space, n, 2):
            assert row["span"] == row["expected"] == row["oracle"]

    def test_generation_examples(self):
        r = generation_check("F+", 1, 1, 2)
        assert r["down"] and r["up"] and r["closed"]
        r = generation_check("F-", 2, -5, 2)
        assert r["down"] and r["up"] and r["closed"]
        r = generation_check("G+", 1, 0, 2)
        assert r["down"] and r["up"] and r["closed"]


class TestUnitarity:
    def test_definiteness_helper(self):
        assert definiteness([[gr(2), gr(0, 1)], [gr(0, -1), gr(1)]]) == 1
        assert definiteness([[gr(-1), 0], [0, gr(-3)]]) == -1
        assert definiteness([[gr(1), 0], [0, gr(-1)]]) == 0
        assert definiteness([[gr(1), gr(1)], [gr(2), gr(1)]]) == 0

    def test_F1_plus(self):
        rep = unitarity_check("F+", 1, 2)
        assert set(rep["block_signs"].values()) == {1}
        assert rep["invariance_failures"] == []

    @pytest.mark.parametrize("space", ["F-", "G-"])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_minus_space_sign(self, space, n):
        rep = unitarity_check(space, n, 1)
        assert rep["invariance_failures"] == []
        for d, s in rep["block_signs"].items():
            prod_ = 1
            for m in range(2, n + 1):
                prod_ *= d + m
            assert s == (1 if prod_ > 0 else -1)

    def test_gram_positive_on_F2_plus(self):
        for d in range(3):
            assert definiteness(gram_matrix(space_basis("F+", 2, d))) == 1
            assert definiteness(gram_matrix(space_basis("G+", 2, d))) == 1

    def test_B_block_invariance_F2_plus(self):
        from nregular.kernel_pairing import inner_product_F

        fs = space_basis("F+", 2, 0) + space_basis("F+", 2, 1)
        for u in MATRIX_UNITS:
            X = GlElement(B=u, C=u.adjoint())
            for f1 in fs:
                for f2 in fs:
                    assert inner_product_F(act_algebra_left(X, f1), f2) + inner_product_F(f1, act_algebra_left(X, f2)) == 0
