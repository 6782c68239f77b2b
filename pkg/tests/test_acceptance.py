"""The ten acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <k> PASS|FAIL`` line (run with ``-s``
to see them inline); the lines are also repeated in the terminal summary.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

from nregular.diff_ops import (
    Dn,
    Dn_inverse,
    deg_op,
    is_n_regular,
    laplacian,
    mul_by_Z,
    mul_by_Z_plus,
    nabla_plus_slot,
    nabla_slot,
)
from nregular.func_algebra import LaurentFn, TensorFn
from nregular.kernel_pairing import (
    bilinear_pairing,
    expansion_taylor,
    float_expansion_errors,
    kernel_taylor,
    laurent_coefficients,
    monte_carlo_moments,
    reconstruct,
    sphere_moment,
    truncated_expansion,
)
from nregular.lie_actions import (
    MATRIX_UNITS,
    act_algebra_left,
    act_algebra_right,
    generation_check,
    ktype_census,
    one_block_generators,
    sigma_intertwine_check,
    unitarity_check,
)
from nregular.quat_core import E_UNITS, I, from_coords, gr
from nregular.reps_basis import FAMILIES, basis, family_side, indices
from nregular.suites import (
    EXTERIOR_POINTS,
    INTERIOR_POINTS,
    orthogonality_failures,
    random_regular,
    reproduce_failures,
)
from nregular.tensor_space import COLUMN, MAX_RANK, ROW, casimir_slot_sum, symmetric_basis

RESULTS = []


@contextmanager
def criterion(k, title):
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        line = f"ACCEPTANCE {k:>2} {status}  {title}  ({time.perf_counter() - t0:.1f} s)"
        RESULTS.append(line)
        print("\n" + line)


def _laurent_monomials(dmax):
    """z^a N^-k of every degree d in [-dmax, dmax], for the two smallest k that reach d."""
    for d in range(-dmax, dmax + 1):
        kmin = max(0, (-d + 1) // 2)
        for k in (kmin, kmin + 1):
            m = d + 2 * k
            for a in range(m + 1):
                for b in range(m + 1 - a):
                    for c in range(m + 1 - a - b):
                        yield LaurentFn({(a, b, c, m - a - b - c): 1}, k)


def test_1_regularity():
    with criterion(1, "every F, G, F', G' with n <= 3, l <= 3/2 is n-regular on its side"):
        count = 0
        for n in (1, 2, 3):
            for fam in FAMILIES:
                for idx in indices(n, 3):
                    F = basis(fam, n, *idx)
                    assert is_n_regular(F, side=family_side(fam)), (fam, n, idx)
                    count += 1
        assert count == 4 * sum(len(list(indices(n, 3))) for n in (1, 2, 3))


def test_2_operator_identities():
    with criterion(2, "2(deg+2) = Z+ nabla+ + nabla Z = nabla+ Z+ + Z nabla and box = nabla+ nabla = nabla nabla+, |d| <= 4"):
        zero = LaurentFn.zero()
        two = gr(2)
        degrees = set()
        for f in _laurent_monomials(4):
            degrees.add(f.degree())
            for i in (0, 1):
                F = TensorFn(COLUMN, 1, [f if j == i else zero for j in (0, 1)])
                lhs = (deg_op(F) + F * two) * two
                assert lhs == mul_by_Z_plus(nabla_plus_slot(F, 1), 1) + nabla_slot(mul_by_Z(F, 1), 1)
                assert lhs == nabla_plus_slot(mul_by_Z_plus(F, 1), 1) + mul_by_Z(nabla_slot(F, 1), 1)
                box = F.map(laplacian)
                assert nabla_plus_slot(nabla_slot(F, 1), 1) == box == nabla_slot(nabla_plus_slot(F, 1), 1)
        assert degrees == set(range(-4, 5))


def test_3_slot_antisymmetry():
    with criterion(3, "casimir slot sum vanishes on the symmetric subspace, n <= 4, all slot pairs"):
        assert MAX_RANK >= 4
        for n in range(2, 5):
            for side in (COLUMN, ROW):
                for t in symmetric_basis(side, n):
                    for j, k in combinations(range(1, n + 1), 2):
                        assert casimir_slot_sum(t, j, k).is_zero()


def test_4_orthogonality():
    with criterion(4, "full pairing matrix, n <= 3, l, l' <= 3/2: delta pattern with sign (-1)^(n-1)"):
        for n in (1, 2, 3):
            assert orthogonality_failures(n, 3) == []


def test_5_reproducing_formula():
    with criterion(5, "reproducing formula exact at 5 interior points, zero at 3 exterior points, 2l <= 3, n <= 2"):
        assert len(INTERIOR_POINTS) == 5 and len(EXTERIOR_POINTS) == 3
        assert all(W.norm().re < 1 for W in INTERIOR_POINTS)
        assert all(W.norm().re > 1 for W in EXTERIOR_POINTS)
        for n in (1, 2):
            for l2 in range(4):
                assert reproduce_failures(n, l2) == []


def test_6_expansion_consistency():
    with criterion(6, "both expansions match the kernel's W-Taylor data to degree 2 (n <= 2); float error < 1e-3 at l_max = 4"):
        for n in (1, 2):
            taylor = kernel_taylor(n, 2)
            for form in ("FGp", "FpG"):
                assert expansion_taylor(truncated_expansion(n, 2, form), 2) == taylor
        Z, W = from_coords(2), from_coords(0, Fraction(1, 2))
        for form in ("FGp", "FpG"):
            errs = float_expansion_errors(2, Z, W, 8, form)
            assert all(b < a for a, b in zip(errs, errs[1:]))
            assert errs[-1] < 1e-3


def test_7_dn_inverse_and_laurent():
    with criterion(7, "D_n D_n^-1 = D_n^-1 D_n = id on 20 random functions per n <= 3; Laurent reconstruction exact"):
        rng = random.Random(7)
        for n in (1, 2, 3):
            for _ in range(20):
                f = random_regular(n, 3, rng)
                assert Dn(Dn_inverse(f)) == f
                assert Dn_inverse(Dn(f)) == f
                assert reconstruct(n, laurent_coefficients(f, 3)) == f


def test_8_invariance():
    with criterion(8, "pairing invariance (16 generators, n <= 2, l <= 1), sigma relations, u(2,2) invariance and definiteness"):
        gens = one_block_generators()
        assert len(gens) == 16
        for n in (1, 2):
            for lf, rf in (("F", "Gp"), ("Fp", "G")):
                fs = [basis(lf, n, *i) for i in indices(n, 2)]
                gs = [basis(rf, n, *i) for i in indices(n, 2)]
                for X in gens:
                    xfs = [act_algebra_left(X, f) for f in fs]
                    xgs = [act_algebra_right(X, g) for g in gs]
                    for f, xf in zip(fs, xfs):
                        for g, xg in zip(gs, xgs):
                            assert bilinear_pairing(xf, g) + bilinear_pairing(f, xg) == 0
            extra = (E_UNITS[1] * I, from_coords(1, 2, 3, 4) * gr(1, 1))
            for fam in ("F", "Fp"):
                for idx in indices(n, 2):
                    f = basis(fam, n, *idx)
                    for blk in "BC":
                        for q in MATRIX_UNITS + extra:
                            assert sigma_intertwine_check(blk, q, f)
        for n in (1, 2, 3):
            for space in ("F+", "G+", "F-", "G-"):
                rep = unitarity_check(space, n, 2)
                assert rep["invariance_failures"] == []
                signs = set(rep["block_signs"].values())
                assert len(signs) == 1 and 0 not in signs
                if space.endswith("+"):
                    assert signs == {1}
                else:
                    assert signs == {(-1) ** (n - 1)}


def test_9_ktypes_and_generation():
    with criterion(9, "degree blocks have dimension (2l+1)(2l+n+1) on the right supports, n <= 3, l <= 2; generation both ways"):
        for n in (1, 2, 3):
            for space in ("F+", "F-", "G+", "G-"):
                rows = ktype_census(space, n, 4)
                for r in rows:
                    assert r["span"] == r["expected"] == r["oracle"], r
                    if space.endswith("+"):
                        assert (r["expected"] > 0) == (r["degree"] >= 0)
                    else:
                        assert (r["expected"] > 0) == (r["degree"] <= -(n + 2))
                for r in rows:
                    if r["expected"]:
                        g = generation_check(space, n, r["degree"], 4)
                        assert g["down"] and g["up"] and g["closed"], g


def test_10_moment_bootstrap():
    with criterion(10, "sphere moments to total degree 8 within 3 standard errors of 10^6 Monte-Carlo samples; 1 and 1/4 exact"):
        assert sphere_moment(0, 0, 0, 0) == 1
        assert sphere_moment(2, 0, 0, 0) == Fraction(1, 4)
        est = monte_carlo_moments(max_total=8, samples=1_000_000, seed=0)
        assert len(est) == sum(1 for e in est if sum(e) <= 8) == 495
        for e, (value, se) in est.items():
            exact = float(sphere_moment(*e))
            if se == 0:
                assert value == exact, e
            else:
                assert abs(value - exact) <= 3 * se, (e, value, exact, se)
