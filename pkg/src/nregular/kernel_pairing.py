"""Kernel, sphere integration, pairings and the reproducing formula.

Integrals are over the unit sphere S^3 of H and are always reported divided
by its volume 2 pi^2.  Two exact routes exist:

* x-route: restrict to the sphere in (x0, x1, x2, x3) and use the moments
  E[x^(2b)] = prod((2 b_i)! / (4^b_i b_i!)) / (|b| + 1)!;
* z-route: E[z11^a z12^b z21^c z22^d] = [a = d][b = c] (-1)^b a! b! / (a + b + 1)!.

The z-route is used for pairings; the x-route is the reference it is tested
against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterable

from .diff_ops import Dn_inverse
from .func_algebra import LaurentFn, TensorFn, to_real_sphere_poly
from .quat_core import ZERO, Biquaternion, GaussianRational, gr, norm
from .reps_basis import (
    BasisIndex,
    F_basis,
    Fp_basis,
    G_basis,
    Gp_basis,
    indices,
)
from .tensor_space import COLUMN, ROW, SpinorTensor, bits, slot_apply_entries

__all__ = [
    "TruncationInsufficient",
    "KernelFn",
    "TruncatedExpansion",
    "kernel",
    "sphere_moment",
    "z_moment",
    "integrate_S3",
    "integrate_S3_z",
    "integrate_product",
    "raw_pairing",
    "bilinear_pairing",
    "deg_switch_check",
    "pairing_at_radius",
    "truncated_expansion",
    "kernel_taylor",
    "expansion_taylor",
    "cauchy_fueter_apply",
    "cauchy_fueter_coefficients",
    "cauchy_theorem_check",
    "laurent_coefficients",
    "laurent_coefficients_right",
    "reconstruct",
    "real_conjugate",
    "inner_product_F",
    "inner_product_G",
    "monte_carlo_moments",
    "float_expansion_errors",
]


class TruncationInsufficient(ValueError):
    """The requested truncation level cannot represent the input exactly."""


# ---------------------------------------------------------------------------
# moments and integration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def sphere_moment(a: int, b: int, c: int, d: int) -> Fraction:
    """(1/2 pi^2) times the integral of x0^a x1^b x2^c x3^d over the unit S^3."""
    exps = (a, b, c, d)
    if min(exps) < 0:
        raise ValueError("exponents must be nonnegative")
    if any(e % 2 for e in exps):
        return Fraction(0)
    val = Fraction(1)
    for e in exps:
        h = e // 2
        val *= Fraction(factorial(e), 4**h * factorial(h))
    return val / factorial(sum(exps) // 2 + 1)


@lru_cache(maxsize=None)
def z_moment(a: int, b: int) -> GaussianRational:
    """(1/2 pi^2) integral of z11^a z12^b z21^b z22^a over S^3."""
    v = Fraction((-1) ** b * factorial(a) * factorial(b), factorial(a + b + 1))
    return gr(v)


def integrate_S3(f: LaurentFn) -> GaussianRational:
    """x-route: restrict to the sphere in x-coordinates and sum moments."""
    tot = ZERO
    for e, c in to_real_sphere_poly(f).items():
        m = sphere_moment(*e)
        if m:
            tot = tot + c * gr(m)
    return tot


def integrate_S3_z(f: LaurentFn) -> GaussianRational:
    """z-route: only monomials with a = d and b = c survive."""
    tot = ZERO
    for (a, b, c, d), v in f.terms.items():
        if a == d and b == c:
            tot = tot + v * z_moment(a, b)
    return tot


def integrate_product(p: LaurentFn, q: LaurentFn) -> GaussianRational:
    """Integral of p*q over S^3 without forming the product.

    Only monomial pairs of opposite torus weight (a - d, b - c) contribute.
    """
    if not p.terms or not q.terms:
        return ZERO
    gq = q.weight_groups()
    acc: dict = {}
    for (w0, w1), lst in p.weight_groups().items():
        other = gq.get((-w0, -w1))
        if not other:
            continue
        for (a1, b1, _c1, _d1), v1 in lst:
            for (a2, b2, _c2, _d2), v2 in other:
                key = (a1 + a2, b1 + b2)
                prev = acc.get(key)
                acc[key] = v1 * v2 if prev is None else prev + v1 * v2
    tot = ZERO
    for (a, b), v in acc.items():
        if v:
            tot = tot + v * z_moment(a, b)
    return tot


# ---------------------------------------------------------------------------
# multiplication by Z in every slot, and raw sphere pairings
# ---------------------------------------------------------------------------


def _z_matrix():
    from .func_algebra import Z11, Z12, Z21, Z22

    return ((Z11, Z12), (Z21, Z22))


_ROW_Z_CACHE: dict = {}


def row_times_Z(g: TensorFn, slots: Iterable[int] | None = None) -> TensorFn:
    """g * (Z x ... x Z): right multiplication by Z at the given slots (all by default)."""
    if g.side != ROW:
        raise ValueError("expected a row-valued function")
    full = slots is None
    if full and g in _ROW_Z_CACHE:
        return _ROW_Z_CACHE[g]
    comps = list(g.comps)
    Z = _z_matrix()
    for k in range(1, g.n + 1) if full else slots:
        comps = slot_apply_entries(Z, k, comps, g.n, ROW)
    out = TensorFn(ROW, g.n, comps)
    if full:
        if len(_ROW_Z_CACHE) > 20000:
            _ROW_Z_CACHE.clear()
        _ROW_Z_CACHE[g] = out
    return out


def _contract_integral(h: TensorFn, f: TensorFn) -> GaussianRational:
    tot = ZERO
    for a, b in zip(h.comps, f.comps):
        tot = tot + integrate_product(a, b)
    return tot


def _check_pair(f: TensorFn, g: TensorFn) -> None:
    if f.side != COLUMN or g.side != ROW:
        raise ValueError("pairing expects a column-valued f and a row-valued g")
    if f.n != g.n:
        raise ValueError(f"rank mismatch {f.n} != {g.n}")


def raw_pairing(f: TensorFn, g: TensorFn) -> GaussianRational:
    """(1/2 pi^2) integral over S^3 of g (Z x ... x Z) f, without D_n^-1."""
    _check_pair(f, g)
    return _contract_integral(row_times_Z(g), f)


_DINV_CACHE: dict = {}


def _dn_inv(f: TensorFn) -> TensorFn:
    out = _DINV_CACHE.get(f)
    if out is None:
        out = Dn_inverse(f)
        if len(_DINV_CACHE) > 20000:
            _DINV_CACHE.clear()
        _DINV_CACHE[f] = out
    return out


def bilinear_pairing(f: TensorFn, g: TensorFn) -> GaussianRational:
    """<f, g> = (1/2 pi^2) integral over S^3 of g (Z x ... x Z) D_n^-1 f."""
    _check_pair(f, g)
    return _contract_integral(row_times_Z(g), _dn_inv(f))


def deg_switch_check(f: TensorFn, g: TensorFn) -> bool:
    """<f, g> equals (-1)^(n-1) times the integral of (D_n^-1 g) (Z x ... x Z) f."""
    lhs = bilinear_pairing(f, g)
    rhs = _contract_integral(row_times_Z(Dn_inverse(g)), f)
    if f.n % 2 == 0:
        rhs = -rhs
    return lhs == rhs


def pairing_at_radius(f: TensorFn, g: TensorFn, R) -> GaussianRational:
    """The pairing computed on the sphere of radius R.

    Dz restricts to Z dS / R.  A homogeneous integrand g (Z x..x Z) f of
    degree e integrates to R^(e+3) times its unit-sphere value, so each
    piece carries R^(e+2) after the 1/R from Dz.
    """
    _check_pair(f, g)
    R = Fraction(R)
    h = row_times_Z(g)
    df = _dn_inv(f)
    tot = ZERO
    for a, b in zip(h.comps, df.comps):
        for pa in _pieces(a):
            for pb in _pieces(b):
                v = integrate_product(pa, pb)
                if v:
                    e = pa.degree() + pb.degree()
                    tot = tot + v * gr(R ** (e + 2))
    return tot


def _pieces(f: LaurentFn) -> list[LaurentFn]:
    from .func_algebra import homogeneous_split

    return [p.fn for p in homogeneous_split(f)]


def cauchy_theorem_check(f: TensorFn, g: TensorFn, k: int = 1) -> bool:
    """The integral of g (Z x .. x Dz at slot k x .. x Z) f over S^3 vanishes."""
    _check_pair(f, g)
    if not 1 <= k <= f.n:
        raise IndexError(f"slot {k} out of range")
    Z = _z_matrix()
    comps = list(g.comps)
    # slot k carries the Dz factor (Z dS on the unit sphere), the others carry Z
    comps = slot_apply_entries(Z, k, comps, g.n, ROW)
    h = TensorFn(ROW, g.n, comps)
    h = row_times_Z(h, [j for j in range(1, g.n + 1) if j != k])
    return not _contract_integral(h, f)


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelFn:
    """k_{n/2}(Y) as a 2^n x 2^n array: rows index S^(x n), columns S'^(x n)."""

    n: int
    comps: tuple  # comps[row][col] : LaurentFn in Y

    def entry(self, row: int, col: int) -> LaurentFn:
        return self.comps[row][col]

    def evaluate(self, Y: Biquaternion) -> list[list[GaussianRational]]:
        return [[c.evaluate(Y) for c in r] for r in self.comps]

    def evaluate_complex(self, y: tuple) -> list[list[complex]]:
        return [[c.evaluate_complex(y) for c in r] for r in self.comps]

    def negated_argument(self) -> "KernelFn":
        """k(-Y): a term of degree e picks up (-1)^e."""
        return KernelFn(
            self.n,
            tuple(
                tuple(c.map_degrees(lambda d: gr((-1) ** (d % 2))) for c in r) for r in self.comps
            ),
        )

    def degrees(self) -> set[int]:
        out: set[int] = set()
        for r in self.comps:
            for c in r:
                out |= c.degrees()
        return out

    def max_k(self) -> int:
        return max(c.k for r in self.comps for c in r)

    def all_entries(self):
        for r in self.comps:
            yield from r


@lru_cache(maxsize=None)
def kernel(n: int) -> KernelFn:
    """k_{n/2}(Y) = (-1)^n (d_Y x ... x d_Y) N(Y)^-1.

    Entry [b, c] differentiates in z_{c_k b_k} for every slot k; this is the
    2^-n (nabla_W x ... x nabla_W) N(Z - W)^-1 kernel written in Y = Z - W.
    """
    if n < 1:
        raise ValueError("rank must be positive")
    base = LaurentFn.const(1).div_N(1)
    sign = gr((-1) ** n)
    memo: dict = {}
    rows = []
    for r in range(1 << n):
        rb = bits(r, n)
        row = []
        for c in range(1 << n):
            cb = bits(c, n)
            key = tuple(sorted(2 * ci + bi for bi, ci in zip(rb, cb)))
            if key not in memo:
                f = base
                for var in key:
                    f = f.partial(var)
                memo[key] = f * sign
            row.append(memo[key])
        rows.append(tuple(row))
    return KernelFn(n, tuple(rows))


# ---------------------------------------------------------------------------
# expansions
# ---------------------------------------------------------------------------


@dataclass
class TruncatedExpansion:
    """Terms (index, column factor, row factor) of one of the two expansions.

    form "FGp": column F(W), row G'(Z).  form "FpG": column F'(Z), row G(W).
    """

    n: int
    l2_max: int
    form: str
    terms: list = field(default_factory=list)

    def term_count(self, l2: int) -> int:
        return sum(1 for idx, _, _ in self.terms if idx.l2 == l2)

    def evaluate(self, Z: Biquaternion, W: Biquaternion, l2_max: int | None = None):
        """Exact 2^n x 2^n partial sum at (Z, W)."""
        size = 1 << self.n
        out = [[ZERO] * size for _ in range(size)]
        for idx, col, row in self.terms:
            if l2_max is not None and idx.l2 > l2_max:
                continue
            if self.form == "FGp":
                cv, rv = col.evaluate(W), row.evaluate(Z)
            else:
                cv, rv = col.evaluate(Z), row.evaluate(W)
            for i in range(size):
                if cv.data[i]:
                    for j in range(size):
                        out[i][j] = out[i][j] + cv.data[i] * rv.data[j]
        return out


def truncated_expansion(n: int, l2_max: int, form: str = "FGp") -> TruncatedExpansion:
    if form not in ("FGp", "FpG"):
        raise ValueError("form must be 'FGp' or 'FpG'")
    exp = TruncatedExpansion(n, l2_max, form)
    for l2, mu2, nu2 in indices(n, l2_max):
        if form == "FGp":
            exp.terms.append((BasisIndex("F", n, l2, mu2, nu2), F_basis(n, l2, mu2, nu2), Gp_basis(n, l2, mu2, nu2)))
        else:
            exp.terms.append((BasisIndex("Fp", n, l2, mu2, nu2), Fp_basis(n, l2, mu2, nu2), G_basis(n, l2, mu2, nu2)))
    return exp


def _monomials_of_degree(m: int):
    for e in product(range(m + 1), repeat=4):
        if sum(e) == m:
            yield e


def kernel_taylor(n: int, max_degree: int) -> dict:
    """W-Taylor data of k(Z - W): {w-exponent: 2^n x 2^n array of LaurentFn in Z}.

    k(Z - W) = sum over alpha of (-w)^alpha / alpha! (d^alpha k)(Z).
    """
    K = kernel(n)
    out = {}
    for m in range(max_degree + 1):
        for alpha in _monomials_of_degree(m):
            scale = gr(Fraction((-1) ** m, factorial(alpha[0]) * factorial(alpha[1]) * factorial(alpha[2]) * factorial(alpha[3])))
            entries = []
            for r in K.comps:
                row = []
                for c in r:
                    for var, times in enumerate(alpha):
                        for _ in range(times):
                            c = c.partial(var)
                    row.append(c * scale)
                entries.append(tuple(row))
            if any(c for r in entries for c in r):
                out[alpha] = tuple(entries)
    return out


def expansion_taylor(exp: TruncatedExpansion, max_degree: int) -> dict:
    """The same Taylor data read off a truncated expansion (W-degree <= max_degree)."""
    size = 1 << exp.n
    acc: dict = {}
    zero = LaurentFn.zero()
    for idx, col, row in exp.terms:
        if exp.form == "FGp":
            wside, zside, w_is_col = col, row, True
        else:
            wside, zside, w_is_col = row, col, False
        for i in range(size):
            wf = wside.comps[i]
            for e, c in wf.terms.items():
                if wf.k or sum(e) > max_degree:
                    continue
                table = acc.setdefault(e, [[zero] * size for _ in range(size)])
                for j in range(size):
                    zf = zside.comps[j]
                    if not zf:
                        continue
                    r, cc = (i, j) if w_is_col else (j, i)
                    table[r][cc] = table[r][cc] + zf * c
    return {
        e: tuple(tuple(r) for r in t)
        for e, t in acc.items()
        if any(x for r in t for x in r)
    }


def float_expansion_errors(n: int, Z: Biquaternion, W: Biquaternion, l2_max: int, form: str = "FGp") -> list[float]:
    """Relative Frobenius error of partial sums l = 0, 1/2, ..., l2_max/2 against k(Z - W)."""
    import numpy as np

    K = kernel(n)
    Y = Z - W
    exact = np.array([[complex(v.to_complex()) for v in r] for r in K.evaluate(Y)])
    exp = truncated_expansion(n, l2_max, form)
    size = 1 << n
    partial_sum = np.zeros((size, size), dtype=complex)
    errors = []
    for l2 in range(l2_max + 1):
        for idx, col, row in exp.terms:
            if idx.l2 != l2:
                continue
            if form == "FGp":
                cv, rv = col.evaluate(W), row.evaluate(Z)
            else:
                cv, rv = col.evaluate(Z), row.evaluate(W)
            partial_sum += np.outer([x.to_complex() for x in cv.data], [x.to_complex() for x in rv.data])
        errors.append(float(np.linalg.norm(partial_sum - exact) / np.linalg.norm(exact)))
    return errors


# ---------------------------------------------------------------------------
# reproducing formula
# ---------------------------------------------------------------------------


def _n_real(W: Biquaternion) -> GaussianRational:
    if not W.is_real_quaternion():
        raise ValueError("W must be a real quaternion")
    return norm(W)


def cauchy_fueter_coefficients(f: TensorFn, l2_max: int) -> dict:
    """Interior coefficients {(l2, mu2, nu2): (1/2 pi^2) integral of G'(Z)(Z x..x Z) f(Z)}.

    Independent of W, so one table serves every interior point.
    """
    if f.side != COLUMN:
        raise ValueError("expected a column-valued f")
    if not f.is_polynomial():
        raise ValueError("the interior formula is verified for polynomial f")
    degs = f.degrees()
    if degs and max(degs) > l2_max:
        raise TruncationInsufficient(f"degree {max(degs)} needs l_max >= {Fraction(max(degs), 2)}")
    return {
        (l2, mu2, nu2): raw_pairing(f, Gp_basis(f.n, l2, mu2, nu2))
        for l2, mu2, nu2 in indices(f.n, l2_max)
    }


def cauchy_fueter_apply(f: TensorFn, W: Biquaternion, l2_max: int, coefficients: dict | None = None) -> SpinorTensor:
    """(1/2 pi^2) integral over S^3 of k(Z - W) (Z x ... x Dz x ... x Z) f(Z).

    Interior points (N(W) < 1) use k(Z - W) = sum F(W) G'(Z); every term
    beyond degree 2 l_max integrates to zero.  Exterior points (N(W) > 1) use
    k(Z - W) = (-1)^n k(W - Z) = (-1)^n sum F'(W) G(Z), whose coefficients are
    the integrals of G(Z)(Z x..x Z) f(Z).
    """
    n = f.n
    nw = _n_real(W)
    if nw.re == 1:
        raise ValueError("W on the unit sphere is excluded")
    if nw.re < 1:
        coeffs = coefficients if coefficients is not None else cauchy_fueter_coefficients(f, l2_max)
        acc = SpinorTensor.zero(COLUMN, n)
        for (l2, mu2, nu2), c in coeffs.items():
            if c:
                acc = acc + F_basis(n, l2, mu2, nu2).evaluate(W) * c
        return acc
    if not f.is_polynomial():
        raise ValueError("the exterior formula is verified for polynomial f")
    degs = f.degrees()
    if degs and max(degs) > l2_max:
        raise TruncationInsufficient(f"degree {max(degs)} needs l_max >= {Fraction(max(degs), 2)}")
    sign = gr((-1) ** n)
    acc = SpinorTensor.zero(COLUMN, n)
    for l2, mu2, nu2 in indices(n, l2_max):
        c = raw_pairing(f, G_basis(n, l2, mu2, nu2))
        if c:
            acc = acc + Fp_basis(n, l2, mu2, nu2).evaluate(W) * (c * sign)
    return acc


# ---------------------------------------------------------------------------
# Laurent coefficients
# ---------------------------------------------------------------------------


def laurent_coefficients(f: TensorFn, l2_max: int) -> dict:
    """{"a": {...}, "b": {...}} with a = <f, G'> and b = (-1)^(n-1) <f, G>.

    Only levels whose degree occurs in f are paired (degree 2l for a,
    -(2l+n+2) for b); the reconstruction test confirms nothing is missed.
    """
    n = f.n
    degs = f.degrees()
    sign = gr((-1) ** (n - 1))
    a, b = {}, {}
    for l2, mu2, nu2 in indices(n, l2_max):
        if l2 in degs:
            v = bilinear_pairing(f, Gp_basis(n, l2, mu2, nu2))
            if v:
                a[(l2, mu2, nu2)] = v
        if -(l2 + n + 2) in degs:
            v = bilinear_pairing(f, G_basis(n, l2, mu2, nu2)) * sign
            if v:
                b[(l2, mu2, nu2)] = v
    return {"a": a, "b": b}


def laurent_coefficients_right(g: TensorFn, l2_max: int) -> dict:
    """{"c": {...}, "d": {...}} with d = <F, g> and c = (-1)^(n-1) <F', g>."""
    n = g.n
    degs = g.degrees()
    sign = gr((-1) ** (n - 1))
    c, d = {}, {}
    for l2, mu2, nu2 in indices(n, l2_max):
        if l2 in degs:
            v = bilinear_pairing(Fp_basis(n, l2, mu2, nu2), g) * sign
            if v:
                c[(l2, mu2, nu2)] = v
        if -(l2 + n + 2) in degs:
            v = bilinear_pairing(F_basis(n, l2, mu2, nu2), g)
            if v:
                d[(l2, mu2, nu2)] = v
    return {"c": c, "d": d}


def reconstruct(n: int, table: dict, side: str = COLUMN) -> TensorFn:
    acc = TensorFn.zero(side, n)
    if side == COLUMN:
        pairs = (("a", F_basis), ("b", Fp_basis))
    else:
        pairs = (("c", G_basis), ("d", Gp_basis))
    for key, builder in pairs:
        for idx, v in table.get(key, {}).items():
            acc = acc + builder(n, *idx) * v
    return acc


# ---------------------------------------------------------------------------
# inner products
# ---------------------------------------------------------------------------


def real_conjugate(f: LaurentFn) -> LaurentFn:
    """The function whose values on real quaternions are the complex conjugates of f.

    On H the entries satisfy conj(z11) = z22 and conj(z12) = -z21, and N is real.
    """
    terms = {}
    for (a, b, c, d), v in f.terms.items():
        w = v.conjugate()
        terms[(d, c, b, a)] = w if (b + c) % 2 == 0 else -w
    return LaurentFn(terms, f.k)


def inner_product_F(f1: TensorFn, f2: TensorFn) -> GaussianRational:
    """(f1, f2) = (1/2 pi^2) integral over S^3 of f2(Z)^* (D_n^-1 f1)(Z)."""
    if f1.side != COLUMN or f2.side != COLUMN:
        raise ValueError("inner_product_F expects column-valued functions")
    d1 = _dn_inv(f1)
    tot = ZERO
    for a, b in zip(d1.comps, f2.comps):
        tot = tot + integrate_product(a, real_conjugate(b))
    return tot


def inner_product_G(g1: TensorFn, g2: TensorFn) -> GaussianRational:
    """(g1, g2) = (1/2 pi^2) integral over S^3 of (D_n^-1 g1)(Z) g2(Z)^*."""
    if g1.side != ROW or g2.side != ROW:
        raise ValueError("inner_product_G expects row-valued functions")
    d1 = _dn_inv(g1)
    tot = ZERO
    for a, b in zip(d1.comps, g2.comps):
        tot = tot + integrate_product(a, real_conjugate(b))
    return tot


# ---------------------------------------------------------------------------
# Monte-Carlo oracle for the moment table
# ---------------------------------------------------------------------------


def monte_carlo_moments(max_total: int = 8, samples: int = 1_000_000, seed: int = 0) -> dict:
    """Estimate every moment of total degree <= max_total on the uniform S^3.

    Returns {exps: (estimate, standard_error)}.  Sign-flip symmetry makes
    the estimate of any moment with an odd exponent exactly zero; moments in
    the same permutation orbit share one estimate averaged over the orbit.
    """
    import numpy as np
    from itertools import permutations

    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    powers = [np.ones((samples, 4))]
    for _ in range(max_total):
        powers.append(powers[-1] * x)
    out: dict = {}
    orbit_cache: dict = {}
    for total in range(max_total + 1):
        for e in _monomials_of_degree(total):
            if any(v % 2 for v in e):
                out[e] = (0.0, 0.0)
                continue
            key = tuple(sorted(e))
            if key not in orbit_cache:
                perms = sorted(set(permutations(key)))
                vals = np.zeros(samples)
                for p in perms:
                    vals += np.prod([powers[p[i]][:, i] for i in range(4)], axis=0)
                vals /= len(perms)
                orbit_cache[key] = (float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(samples)))
            out[e] = orbit_cache[key]
    return out
