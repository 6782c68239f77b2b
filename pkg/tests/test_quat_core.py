from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given

from conftest import biquaternion, gaussian, real_coords
from nregular.quat_core import (
    E_UNITS,
    I,
    ONE,
    ZERO,
    Biquaternion,
    GaussianRational,
    NonInvertible,
    bar,
    conj_plus,
    coords_to_matrix,
    from_coords,
    gr,
    invert,
    matrix_to_coords,
    mul,
    norm,
)

E0, E1, E2, E3 = E_UNITS


class TestGaussianRational:
    def test_arithmetic(self):
        a = gr(Fraction(1, 2), 3)
        b = gr(-1, Fraction(1, 3))
        assert a + b == gr(Fraction(-1, 2), Fraction(10, 3))
        assert a * b == gr(Fraction(-1, 2) - 1, Fraction(1, 6) - 3)
        assert (a / b) * b == a
        assert I * I == -ONE

    def test_int_and_fraction_mix(self):
        assert gr(2) * Fraction(1, 2) == ONE
        assert 1 - gr(0, 1) == gr(1, -1)

    @pytest.mark.parametrize("text", ["0", "-3", "5/7", "2/3*i", "-1/2+3/4*i", "1/2-3/4*i", "-1*i"])
    def test_str_parse_round_trip(self, text):
        assert str(GaussianRational.parse(text)) == text

    def test_parse_leading_plus(self):
        assert GaussianRational.parse("+1/2+3/4*i") == gr(Fraction(1, 2), Fraction(3, 4))

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            GaussianRational.parse("1.5")

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    @given(gaussian)
    def test_parse_inverts_str(self, z):
        assert GaussianRational.parse(str(z)) == z


class TestEmbedding:
    def test_units_anticommute_and_triple_product(self):
        imag = (E1, E2, E3)
        for a, b in product(range(3), repeat=2):
            if a != b:
                assert imag[a] * imag[b] == -(imag[b] * imag[a])
        assert E1 * E2 * E3 == -E0

    def test_examples(self):
        assert mul(E1, E2) == E3
        Z = from_coords(1, 2, -3, 4)
        assert mul(E0, Z) == Z
        assert mul(E1, E1) == -E0

    def test_entry_dictionary(self):
        # the fixed entry dictionary z11 = c0 - i c3, z12 = -c2 - i c1, z21 = c2 - i c1, z22 = c0 + i c3
        Z = from_coords(1, 2, 3, 4)
        assert Z.entries == (gr(1, -4), gr(-3, -2), gr(3, -2), gr(1, 4))

    def test_coords_examples(self):
        assert coords_to_matrix((1, 0, 0, 0)) == Biquaternion(1, 0, 0, 1)

    @given(real_coords)
    def test_norm_is_sum_of_squares(self, c):
        assert norm(coords_to_matrix(c)) == gr(sum(x * x for x in c))

    @given(biquaternion)
    def test_coords_round_trip(self, Z):
        assert coords_to_matrix(matrix_to_coords(Z)) == Z


class TestConjugations:
    def test_conj_plus_examples(self):
        assert conj_plus(E0) == E0
        assert conj_plus(E1) == -E1
        Z = E0 + E1
        assert conj_plus(Z) * Z == E0 * gr(2)

    def test_bar_examples(self):
        assert bar(E0) == E0
        assert bar(E0 * I) == -(E0 * I)

    @given(real_coords)
    def test_bar_fixes_real_quaternions(self, c):
        Z = coords_to_matrix(c)
        assert bar(Z) == Z
        assert Z.is_real_quaternion()

    @given(biquaternion)
    def test_bar_fixed_set_is_real(self, Z):
        assert (bar(Z) == Z) == Z.is_real_quaternion()

    @given(biquaternion, gaussian)
    def test_bar_antilinear_involution(self, Z, c):
        assert bar(bar(Z)) == Z
        assert bar(Z * c) == bar(Z) * c.conjugate()

    @given(biquaternion, biquaternion)
    def test_plus_reverses_products(self, Z, W):
        assert conj_plus(Z * W) == conj_plus(W) * conj_plus(Z)
        assert conj_plus(conj_plus(Z)) == Z


class TestNormInverse:
    def test_examples(self):
        assert norm(E0) == ONE
        assert norm(E0 + E2) == gr(2)
        assert invert(E0) == E0
        assert invert(E0 * gr(2)) == E0 * gr(Fraction(1, 2))

    def test_null_cone_raises(self):
        Z = Biquaternion(1, 1, I, I)  # det = i - i = 0
        with pytest.raises(NonInvertible):
            invert(Z)

    @given(biquaternion, biquaternion)
    def test_norm_multiplicative(self, Z, W):
        assert norm(Z * W) == norm(Z) * norm(W)

    @given(biquaternion)
    def test_inverse(self, Z):
        if not norm(Z):
            with pytest.raises(NonInvertible):
                invert(Z)
            return
        Zi = invert(Z)
        assert Z * Zi == E0 == Zi * Z
        assert norm(Z) * norm(Zi) == ONE
