"""Conformal actions on n-regular functions and the representation-theory checks.

A Lie algebra element is a 2x2 block matrix (A B; C D) with biquaternion
blocks.  ``act_algebra_left`` and ``act_algebra_right`` are the differentiated
forms of the substitution actions

    f(Z) -> (cZ+d)^-1 x..x (cZ+d)^-1 / N(cZ+d) * f((aZ+b)(cZ+d)^-1),
    g(Z) -> g((a'-Zc')^-1 (-b'+Zd')) * (a'-Zc')^-1 x..x (a'-Zc')^-1 / N(a'-Zc'),

where (a b; c d) is the inverse of h = (a' b'; c' d').  Only the group
elements that keep the Laurent class (diagonal, translation on polynomials,
inversion) are implemented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diff_ops import is_n_regular
from .func_algebra import (
    LaurentFn,
    TensorFn,
    Z_MATRIX,
    conj_dagger,
    poly_mul_N_power,
    substitute,
)
from .kernel_pairing import (
    bilinear_pairing,
    inner_product_F,
    inner_product_G,
    laurent_coefficients,
    laurent_coefficients_right,
    reconstruct,
)
from .quat_core import ONE, ZERO, Biquaternion, GaussianRational, I, gr, invert, norm
from .reps_basis import F_basis, Fp_basis, G_basis, Gp_basis, index_range
from .tensor_space import COLUMN, ROW, slot_apply_entries

__all__ = [
    "GlElement",
    "KTypeLabel",
    "MATRIX_UNITS",
    "one_block_generators",
    "u22_generators",
    "act_algebra_left",
    "act_algebra_right",
    "act_algebra",
    "bracket",
    "act_group",
    "diagonal",
    "translation",
    "INVERSION",
    "regularity_preservation_check",
    "pairing_invariance_check",
    "sigma_intertwine_check",
    "space_basis",
    "ktype_census",
    "regular_dimension",
    "generation_check",
    "gram_matrix",
    "definiteness",
    "unitarity_check",
    "torus_weight_check",
]


# ---------------------------------------------------------------------------
# Lie algebra elements
# ---------------------------------------------------------------------------

_ZERO_Q = Biquaternion(0, 0, 0, 0)

MATRIX_UNITS = (
    Biquaternion(1, 0, 0, 0),
    Biquaternion(0, 1, 0, 0),
    Biquaternion(0, 0, 1, 0),
    Biquaternion(0, 0, 0, 1),
)


@dataclass(frozen=True)
class GlElement:
    A: Biquaternion = _ZERO_Q
    B: Biquaternion = _ZERO_Q
    C: Biquaternion = _ZERO_Q
    D: Biquaternion = _ZERO_Q

    @classmethod
    def block(cls, name: str, q: Biquaternion) -> "GlElement":
        if name not in "ABCD" or len(name) != 1:
            raise ValueError(f"unknown block {name!r}")
        return cls(**{name: q})

    def __add__(self, other: "GlElement") -> "GlElement":
        return GlElement(self.A + other.A, self.B + other.B, self.C + other.C, self.D + other.D)

    def __sub__(self, other: "GlElement") -> "GlElement":
        return GlElement(self.A - other.A, self.B - other.B, self.C - other.C, self.D - other.D)

    def __mul__(self, other: "GlElement") -> "GlElement":
        return GlElement(
            self.A * other.A + self.B * other.C,
            self.A * other.B + self.B * other.D,
            self.C * other.A + self.D * other.C,
            self.C * other.B + self.D * other.D,
        )

    def scale(self, c) -> "GlElement":
        c = gr(c)
        return GlElement(self.A * c, self.B * c, self.C * c, self.D * c)

    def is_u22(self) -> bool:
        """(A B; B* D) with A = -A*, D = -D*."""
        return (
            self.A.adjoint() == -self.A
            and self.D.adjoint() == -self.D
            and self.C == self.B.adjoint()
        )

    def label(self) -> str:
        parts = []
        for name in "ABCD":
            q = getattr(self, name)
            if any(q.entries):
                parts.append(f"{name}={q}")
        return ",".join(parts) or "0"


def bracket(X: GlElement, Y: GlElement) -> GlElement:
    return X * Y - Y * X


def one_block_generators() -> list[GlElement]:
    """The 16 elements with a single matrix unit in a single block."""
    return [GlElement.block(name, u) for name in "ABCD" for u in MATRIX_UNITS]


def u22_generators() -> list[GlElement]:
    """A real basis of u(2,2): 4 skew A's, 4 skew D's and 8 pairs (0 B; B* 0)."""
    skew = [
        Biquaternion(I, 0, 0, 0),
        Biquaternion(0, 0, 0, I),
        Biquaternion(0, 1, -1, 0),
        Biquaternion(0, I, I, 0),
    ]
    out = [GlElement(A=s) for s in skew] + [GlElement(D=s) for s in skew]
    for u in MATRIX_UNITS:
        for c in (ONE, I):
            B = u * c
            out.append(GlElement(B=B, C=B.adjoint()))
    return out


@dataclass(frozen=True)
class KTypeLabel:
    space: str  # "F+", "F-", "G+", "G-"
    n: int
    degree: int

    @property
    def l2(self) -> int | None:
        if self.space.endswith("+"):
            return self.degree if self.degree >= 0 else None
        l2 = -self.degree - self.n - 2
        return l2 if l2 >= 0 else None

    def expected_dimension(self) -> int:
        l2 = self.l2
        if l2 is None:
            return 0
        return (l2 + 1) * (l2 + self.n + 1)


# ---------------------------------------------------------------------------
# algebra actions
# ---------------------------------------------------------------------------


def _const_matrix(q: Biquaternion):
    return tuple(tuple(LaurentFn.const(x) for x in row) for row in q.matrix())


def _matmul(X, Y):
    return tuple(
        tuple(X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)) for i in range(2)
    )


def _trace(M):
    return M[0][0] + M[1][1]


def _trace_d(M, f: LaurentFn) -> LaurentFn:
    """Tr(M d) f = sum_ik M_ik df/dz_ik."""
    out = LaurentFn.zero()
    for i in range(2):
        for k in range(2):
            m = M[i][k]
            if m:
                out = out + m * f.partial(2 * i + k)
    return out


def _is_zero_q(q: Biquaternion) -> bool:
    return not any(q.entries)


def _slot_sum(F: TensorFn, M) -> TensorFn:
    acc = TensorFn.zero(F.side, F.n)
    for k in range(1, F.n + 1):
        acc = acc + TensorFn(F.side, F.n, slot_apply_entries(M, k, F.comps, F.n, F.side))
    return acc


def act_algebra_left(X: GlElement, f: TensorFn) -> TensorFn:
    """pi_nl(X) f for X = (A B; C D), on column-valued f."""
    if f.side != COLUMN:
        raise ValueError("the left action is defined on column-valued functions")
    Z = Z_MATRIX
    acc = TensorFn.zero(COLUMN, f.n)
    if not _is_zero_q(X.A):
        M = _matmul(_const_matrix(X.A), Z)
        acc = acc - f.map(lambda c: _trace_d(M, c))
    if not _is_zero_q(X.B):
        M = _const_matrix(X.B)
        acc = acc - f.map(lambda c: _trace_d(M, c))
    if not _is_zero_q(X.C):
        CZ = _matmul(_const_matrix(X.C), Z)
        M = _matmul(Z, CZ)
        tr = _trace(CZ)
        acc = acc + f.map(lambda c: _trace_d(M, c) + tr * c) + _slot_sum(f, CZ)
    if not _is_zero_q(X.D):
        Dm = _const_matrix(X.D)
        M = _matmul(Z, Dm)
        tr = X.D.trace()
        acc = acc + f.map(lambda c: _trace_d(M, c) + c * tr) + _slot_sum(f, Dm)
    return acc


def act_algebra_right(X: GlElement, g: TensorFn) -> TensorFn:
    """pi_nr(X) g for X = (A B; C D), on row-valued g."""
    if g.side != ROW:
        raise ValueError("the right action is defined on row-valued functions")
    Z = Z_MATRIX
    acc = TensorFn.zero(ROW, g.n)
    if not _is_zero_q(X.A):
        Am = _const_matrix(X.A)
        M = _matmul(Am, Z)
        tr = X.A.trace()
        acc = acc - g.map(lambda c: _trace_d(M, c) + c * tr) - _slot_sum(g, Am)
    if not _is_zero_q(X.B):
        M = _const_matrix(X.B)
        acc = acc - g.map(lambda c: _trace_d(M, c))
    if not _is_zero_q(X.C):
        ZC = _matmul(Z, _const_matrix(X.C))
        M = _matmul(ZC, Z)
        tr = _trace(ZC)
        acc = acc + g.map(lambda c: _trace_d(M, c) + tr * c) + _slot_sum(g, ZC)
    if not _is_zero_q(X.D):
        M = _matmul(Z, _const_matrix(X.D))
        acc = acc + g.map(lambda c: _trace_d(M, c))
    return acc


def act_algebra(X: GlElement, f: TensorFn) -> TensorFn:
    return act_algebra_left(X, f) if f.side == COLUMN else act_algebra_right(X, f)


# ---------------------------------------------------------------------------
# group elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    kind: str  # "diagonal", "translation", "inversion"
    a: Biquaternion | None = None
    b: Biquaternion | None = None
    d: Biquaternion | None = None


def diagonal(a: Biquaternion, d: Biquaternion) -> GroupElement:
    invert(a)
    invert(d)
    return GroupElement("diagonal", a=a, d=d)


def translation(b: Biquaternion) -> GroupElement:
    return GroupElement("translation", b=b)


INVERSION = GroupElement("inversion")


def _linear_images(L: Biquaternion, R: Biquaternion) -> tuple:
    """Entries of L Z R as LaurentFns."""
    M = _matmul(_matmul(_const_matrix(L), Z_MATRIX), _const_matrix(R))
    return (M[0][0], M[0][1], M[1][0], M[1][1])


_INVERSE_IMAGES = None


def _inverse_images() -> tuple:
    global _INVERSE_IMAGES
    if _INVERSE_IMAGES is None:
        z11, z12 = Z_MATRIX[0]
        z21, z22 = Z_MATRIX[1]
        _INVERSE_IMAGES = (z22.div_N(1), (-z12).div_N(1), (-z21).div_N(1), z11.div_N(1))
    return _INVERSE_IMAGES


def _slot_all(F: TensorFn, M) -> TensorFn:
    comps = list(F.comps)
    for k in range(1, F.n + 1):
        comps = slot_apply_entries(M, k, comps, F.n, F.side)
    return TensorFn(F.side, F.n, comps)


def act_group(h: GroupElement, f: TensorFn) -> TensorFn:
    """pi_nl(h) f for columns, pi_nr(h) g for rows."""
    left = f.side == COLUMN
    if h.kind == "diagonal":
        a_inv = invert(h.a)
        images = _linear_images(a_inv, h.d)
        moved = f.map(lambda c: substitute(c, images))
        if left:
            # h^-1 = diag(a^-1, d^-1): prefactor d^(x n) N(d)
            return _slot_all(moved, _const_matrix(h.d)) * norm(h.d)
        return _slot_all(moved, _const_matrix(a_inv)) * (ONE / norm(h.a))
    if h.kind == "translation":
        if not f.is_polynomial():
            raise ValueError("translations are only applied to polynomial functions")
        bm = h.b.matrix()
        images = tuple(
            Z_MATRIX[i][j] - LaurentFn.const(bm[i][j]) for i in range(2) for j in range(2)
        )
        return f.map(lambda c: substitute(c, images))
    if h.kind == "inversion":
        moved = f.map(lambda c: substitute(c, _inverse_images()))
        z11, z12 = Z_MATRIX[0]
        z21, z22 = Z_MATRIX[1]
        zplus = ((z22, -z12), (-z21, z11))
        out = _slot_all(moved, zplus).map(lambda c: c.div_N(f.n + 1))
        if not left and f.n % 2:
            out = -out
        return out
    raise ValueError(f"unknown group element {h.kind!r}")


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def regularity_preservation_check(X: GlElement, f: TensorFn) -> bool:
    return is_n_regular(act_algebra(X, f))


def pairing_invariance_check(X: GlElement, f: TensorFn, g: TensorFn) -> bool:
    """<pi_nl(X) f, g> + <f, pi_nr(X) g> = 0."""
    return not (bilinear_pairing(act_algebra_left(X, f), g) + bilinear_pairing(f, act_algebra_right(X, g)))


def sigma_intertwine_check(block: str, q: Biquaternion, f: TensorFn) -> bool:
    """sigma(pi_nl(X) f) = pi_nr(X') sigma(f) with X' using q* in the same block (B or C)."""
    if block not in ("B", "C"):
        raise ValueError("sigma intertwines the B and C blocks")
    lhs = conj_dagger(act_algebra_left(GlElement.block(block, q), f))
    rhs = act_algebra_right(GlElement.block(block, q.adjoint()), conj_dagger(f))
    return lhs == rhs


def torus_weight_check(n: int, l2: int, nu2: int, lam: GaussianRational = gr(Fraction(3, 5), Fraction(4, 5))) -> bool:
    """diag(1, diag(lam, lam^-1)) multiplies F_(l, -l-n/2, nu) by lam^(2l+n)."""
    f = F_basis(n, l2, -l2 - n, nu2)
    h = diagonal(Biquaternion(1, 0, 0, 1), Biquaternion(lam, 0, 0, ONE / lam))
    return act_group(h, f) == f * lam ** (l2 + n)


# ---------------------------------------------------------------------------
# K-types, generation, unitarity
# ---------------------------------------------------------------------------

_SPACE_FAMILY = {"F+": "F", "F-": "Fp", "G+": "G", "G-": "Gp"}


def _level_of(space: str, n: int, degree: int) -> int | None:
    return KTypeLabel(space, n, degree).l2


def space_basis(space: str, n: int, degree: int) -> list[TensorFn]:
    """Family members spanning the degree block of F+, F-, G+ or G-."""
    if space not in _SPACE_FAMILY:
        raise ValueError(f"unknown space {space!r}")
    l2 = _level_of(space, n, degree)
    if l2 is None:
        return []
    fam = _SPACE_FAMILY[space]
    builder = {"F": F_basis, "Fp": Fp_basis, "G": G_basis, "Gp": Gp_basis}[fam]
    mus, nus = index_range(n, l2)
    return [builder(n, l2, mu2, nu2) for mu2 in mus for nu2 in nus]


def _vector_of(f: TensorFn) -> dict:
    out = {}
    for i, c in enumerate(f.comps):
        for e, v in c.terms.items():
            out[(i, c.k, e)] = v
    return out


def rank(vectors: Sequence[dict]) -> int:
    """Exact rank of sparse vectors over Q(i), by Gaussian elimination."""
    pivots: dict = {}
    r = 0
    for vec in vectors:
        v = dict(vec)
        while v:
            key = min(v)
            if key in pivots:
                pv = pivots[key]
                factor = v[key] / pv[key]
                for kk, x in pv.items():
                    y = v.get(kk, ZERO) - factor * x
                    if y:
                        v[kk] = y
                    else:
                        v.pop(kk, None)
            else:
                pivots[key] = v
                r += 1
                break
    return r


def _common_k(fs: Sequence[TensorFn]) -> list[dict]:
    """Coordinate vectors after bringing all components to one N-power."""
    k = max((f.max_k() for f in fs), default=0)
    out = []
    for f in fs:
        vec = {}
        for i, c in enumerate(f.comps):
            if c.k < k:
                terms = poly_mul_N_power(c.terms, k - c.k)
            else:
                terms = c.terms
            for e, v in terms.items():
                vec[(i, e)] = v
        out.append(vec)
    return out


def span_dimension(fs: Sequence[TensorFn]) -> int:
    return rank(_common_k(fs))


def regular_dimension(n: int, degree: int, k: int = 0, side: str = COLUMN) -> int:
    """Dimension of the symmetric-valued P N^-k, P homogeneous of degree d+2k, killed by all nabla+.

    This is computed from the differential equations alone and does not
    look at any family.
    """
    from .diff_ops import nabla_plus_slot
    from .tensor_space import symmetric_basis

    pdeg = degree + 2 * k
    if pdeg < 0:
        return 0
    monos = [e for e in _monomials(pdeg)]
    sym = symmetric_basis(side, n)
    unknowns = []
    images = []
    for s in sym:
        for e in monos:
            base = LaurentFn({e: 1}, k)
            F = TensorFn(side, n, [base * x for x in s.data])
            unknowns.append(F)
    # kernel dimension = #unknowns - rank of the stacked images
    for F in unknowns:
        parts = [nabla_plus_slot(F, j) for j in range(1, n + 1)]
        vec = {}
        for j, P in enumerate(parts):
            for i, c in enumerate(P.comps):
                terms = c.terms
                if c.k < k + 1:
                    terms = poly_mul_N_power(terms, k + 1 - c.k)
                for e, v in terms.items():
                    vec[(j, i, e)] = v
        images.append(vec)
    return len(unknowns) - rank(images)


def _monomials(m: int):
    for a in range(m + 1):
        for b in range(m + 1 - a):
            for c in range(m + 1 - a - b):
                yield (a, b, c, m - a - b - c)


def ktype_census(space: str, n: int, l2_max: int) -> list[dict]:
    """Rows {degree, expected, span, oracle} for every degree up to level l2_max.

    ``span`` is the rank of the family members; ``oracle`` is the dimension
    of the solution space of the regularity equations at that degree (for
    the minus spaces with denominator N^(2l+n+1)).  Degrees strictly between
    the two supports are included and must be empty.
    """
    side = COLUMN if space.startswith("F") else ROW
    rows = []
    if space.endswith("+"):
        degrees = list(range(-2, l2_max + 1))
    else:
        degrees = list(range(-(l2_max + n + 2), 0))
    for d in degrees:
        label = KTypeLabel(space, n, d)
        basis_fs = space_basis(space, n, d)
        span = span_dimension(basis_fs) if basis_fs else 0
        if space.endswith("+"):
            oracle = regular_dimension(n, d, 0, side)
        else:
            l2 = label.l2
            k = l2 + n + 1 if l2 is not None else n + 1
            oracle = regular_dimension(n, d, k, side)
        rows.append({
            "space": space,
            "n": n,
            "degree": d,
            "expected": label.expected_dimension(),
            "span": span,
            "oracle": oracle,
        })
    return rows


def _membership(f: TensorFn, space: str, n: int, l2_max: int) -> bool:
    if f.is_zero():
        return True
    if space.startswith("F"):
        table = laurent_coefficients(f, l2_max)
        return reconstruct(n, table, COLUMN) == f
    table = laurent_coefficients_right(f, l2_max)
    return reconstruct(n, table, ROW) == f


def generation_check(space: str, n: int, degree: int, l2_max: int) -> dict:
    """Every basis vector at ``degree`` reaches degree-1 and degree+1 (when nonempty).

    B-block generators lower the degree by one and C-block generators raise
    it by one; images are also checked to stay inside the space.
    """
    vs = space_basis(space, n, degree)
    act = act_algebra_left if space.startswith("F") else act_algebra_right
    result = {"space": space, "n": n, "degree": degree, "down": True, "up": True, "closed": True, "vectors": len(vs)}
    for direction, block, target in (("down", "B", degree - 1), ("up", "C", degree + 1)):
        tl = _level_of(space, n, target)
        if tl is None or tl > l2_max:
            continue
        for v in vs:
            hit = False
            for u in MATRIX_UNITS:
                img = act(GlElement.block(block, u), v)
                if img.is_zero():
                    continue
                hit = True
                if img.degree() != target or not _membership(img, space, n, l2_max):
                    result["closed"] = False
                break
            if not hit:
                result[direction] = False
    return result


def gram_matrix(fs: Sequence[TensorFn]) -> list[list[GaussianRational]]:
    if not fs:
        return []
    ip = inner_product_F if fs[0].side == COLUMN else inner_product_G
    return [[ip(a, b) for b in fs] for a in fs]


def definiteness(G: Sequence[Sequence[GaussianRational]]) -> int:
    """+1 / -1 for a positive / negative definite Hermitian matrix, 0 otherwise.

    LDL* elimination without pivoting; a Hermitian matrix is definite iff
    all pivots are nonzero with one common sign.
    """
    n = len(G)
    for i in range(n):
        for j in range(n):
            if G[i][j] != G[j][i].conjugate():
                return 0
    M = [list(r) for r in G]
    sign = 0
    for p in range(n):
        piv = M[p][p]
        if not piv or not piv.is_real:
            return 0
        s = 1 if piv.re > 0 else -1
        if sign and s != sign:
            return 0
        sign = s
        for i in range(p + 1, n):
            if M[i][p]:
                factor = M[i][p] / piv
                for j in range(p, n):
                    M[i][j] = M[i][j] - factor * M[p][j]
    return sign


def unitarity_check(space: str, n: int, l2_max: int) -> dict:
    """Gram definiteness per degree block and u(2,2) invariance of the inner product.

    Invariance is tested for every u(2,2) generator on pairs from the same
    or adjacent degree blocks through l2_max.
    """
    side_left = space.startswith("F")
    ip = inner_product_F if side_left else inner_product_G
    act = act_algebra_left if side_left else act_algebra_right
    blocks = {}
    for l2 in range(l2_max + 1):
        d = l2 if space.endswith("+") else -(l2 + n + 2)
        blocks[d] = space_basis(space, n, d)
    signs = {d: definiteness(gram_matrix(fs)) for d, fs in blocks.items()}
    failures = []
    gens = u22_generators()
    degs = sorted(blocks)
    for X in gens:
        images = {d: [act(X, f) for f in blocks[d]] for d in degs}
        for d1 in degs:
            for f1, xf1 in zip(blocks[d1], images[d1]):
                for d2 in degs:
                    if abs(d1 - d2) > 1:
                        continue
                    for f2, xf2 in zip(blocks[d2], images[d2]):
                        if ip(xf1, f2) + ip(f1, xf2):
                            failures.append((X.label(), d1, d2))
    return {
        "space": space,
        "n": n,
        "l2_max": l2_max,
        "block_signs": signs,
        "invariance_failures": failures,
    }
