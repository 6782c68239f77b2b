"""SU(2) matrix coefficients t^l and the four families F, G, F', G'.

All half-integers are passed doubled: ``l2 = 2l``, ``mu2 = 2mu``, ``nu2 = 2nu``.
For rank ``n`` the indices range over ``|nu| <= l`` and ``|mu| <= l + n/2``
with ``mu`` congruent to ``l + n/2`` and ``nu`` to ``l`` modulo 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .func_algebra import LaurentFn, TensorFn
from .quat_core import gr
from .tensor_space import COLUMN, ROW

__all__ = [
    "FAMILIES",
    "HalfInt",
    "BasisIndex",
    "IndexOutOfRange",
    "t_coeff",
    "t_coeff_inverted",
    "F_basis",
    "F_basis_alt",
    "G_basis",
    "Fp_basis",
    "Gp_basis",
    "F_recursion",
    "G_recursion",
    "Fp_recursion_alt",
    "basis",
    "index_range",
    "indices",
    "recursion_check",
    "family_side",
    "family_degree",
]

FAMILIES = ("F", "G", "Fp", "Gp")


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True, order=True)
class HalfInt:
    twice: int

    @classmethod
    def of(cls, x) -> "HalfInt":
        f = Fraction(x) * 2
        if f.denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(f))

    def __str__(self):
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)


def half_str(x2: int) -> str:
    return str(HalfInt(x2))


def index_ok(n: int, l2: int, mu2: int, nu2: int) -> bool:
    return (
        l2 >= 0
        and abs(nu2) <= l2
        and abs(mu2) <= l2 + n
        and (nu2 - l2) % 2 == 0
        and (mu2 - l2 - n) % 2 == 0
    )


@dataclass(frozen=True, order=True)
class BasisIndex:
    family: str
    n: int
    l2: int
    mu2: int
    nu2: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("rank must be positive")
        if not index_ok(self.n, self.l2, self.mu2, self.nu2):
            raise IndexOutOfRange(f"index out of range: {self}")

    @property
    def l(self) -> HalfInt:
        return HalfInt(self.l2)

    @property
    def mu(self) -> HalfInt:
        return HalfInt(self.mu2)

    @property
    def nu(self) -> HalfInt:
        return HalfInt(self.nu2)

    def label(self) -> str:
        return f"{self.family}^({self.n})[l={half_str(self.l2)},mu={half_str(self.mu2)},nu={half_str(self.nu2)}]"

    def __str__(self):
        return self.label()


def family_side(family: str) -> str:
    return COLUMN if family in ("F", "Fp") else ROW


def family_degree(family: str, n: int, l2: int) -> int:
    return l2 if family in ("F", "G") else -(l2 + n + 2)


def index_range(n: int, l2: int) -> tuple[list[int], list[int]]:
    """Doubled (mu, nu) values at level l."""
    mus = list(range(-l2 - n, l2 + n + 1, 2))
    nus = list(range(-l2, l2 + 1, 2))
    return mus, nus


def indices(n: int, l2_max: int, l2_min: int = 0):
    """All (l2, mu2, nu2) with l2_min <= l2 <= l2_max, in a fixed order."""
    for l2 in range(l2_min, l2_max + 1):
        mus, nus = index_range(n, l2)
        for mu2 in mus:
            for nu2 in nus:
                yield l2, mu2, nu2


# ---------------------------------------------------------------------------
# matrix coefficients
# ---------------------------------------------------------------------------


def _t_ok(l2: int, nu2: int, mu2: int) -> bool:
    return l2 >= 0 and abs(nu2) <= l2 and abs(mu2) <= l2 and (l2 - nu2) % 2 == 0 and (l2 - mu2) % 2 == 0


@lru_cache(maxsize=None)
def t_coeff(l2: int, nu2: int, mu2: int) -> LaurentFn:
    """Coefficient of s^(l-nu) in (s z11 + z21)^(l-mu) (s z12 + z22)^(l+mu).

    Out-of-range indices give the zero polynomial.
    """
    if not _t_ok(l2, nu2, mu2):
        return LaurentFn.zero()
    p, q, r = (l2 - mu2) // 2, (l2 + mu2) // 2, (l2 - nu2) // 2
    terms = {}
    for i in range(max(0, r - q), min(p, r) + 1):
        j = r - i
        terms[(i, j, p - i, q - j)] = comb(p, i) * comb(q, j)
    return LaurentFn(terms)


@lru_cache(maxsize=None)
def t_coeff_inverted(l2: int, nu2: int, mu2: int) -> LaurentFn:
    """N^-1 t^l_{nu mu}(Z^-1), using Z^-1 = (z22, -z12; -z21, z11) / N."""
    t = t_coeff(l2, nu2, mu2)
    if t.is_zero():
        return t
    terms = {}
    for (a, b, c, d), v in t.terms.items():
        # z11^a z12^b z21^c z22^d -> z22^a (-z12)^b (-z21)^c z11^d
        terms[(d, b, c, a)] = v if (b + c) % 2 == 0 else -v
    return LaurentFn(terms, l2 + 1)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def _check(family: str, n: int, l2: int, mu2: int, nu2: int) -> None:
    BasisIndex(family, n, l2, mu2, nu2)


def _tensor_of_derivatives(side: str, n: int, base: LaurentFn, vars_: tuple[int, int], scale=None) -> TensorFn:
    """Component b = product over slots of d/dz_{vars_[b_k]} applied to base."""
    by_count: dict[int, LaurentFn] = {}
    comps = []
    for flat in range(1 << n):
        ones = bin(flat).count("1")
        if ones not in by_count:
            f = base
            for _ in range(n - ones):
                f = f.partial(vars_[0])
            for _ in range(ones):
                f = f.partial(vars_[1])
            if scale is not None:
                f = f * scale
            by_count[ones] = f
        comps.append(by_count[ones])
    return TensorFn(side, n, comps)


@lru_cache(maxsize=None)
def F_basis(n: int, l2: int, mu2: int, nu2: int) -> TensorFn:
    """(d11, d12)^(x n) applied to t^(l+n/2)_(nu-n/2, mu)."""
    _check("F", n, l2, mu2, nu2)
    return _tensor_of_derivatives(COLUMN, n, t_coeff(l2 + n, nu2 - n, mu2), (0, 1))


@lru_cache(maxsize=None)
def F_basis_alt(n: int, l2: int, mu2: int, nu2: int) -> TensorFn:
    """The second closed form: (d21, d22)^(x n) applied to t^(l+n/2)_(nu+n/2, mu)."""
    _check("F", n, l2, mu2, nu2)
    return _tensor_of_derivatives(COLUMN, n, t_coeff(l2 + n, nu2 + n, mu2), (2, 3))


@lru_cache(maxsize=None)
def G_basis(n: int, l2: int, mu2: int, nu2: int) -> TensorFn:
    """(l-nu)!/(l-nu+n)! (d11, d21)^(x n) applied to t^(l+n/2)_(mu, nu-n/2)."""
    _check("G", n, l2, mu2, nu2)
    j = (l2 - nu2) // 2
    scale = gr(Fraction(factorial(j), factorial(j + n)))
    return _tensor_of_derivatives(ROW, n, t_coeff(l2 + n, mu2, nu2 - n), (0, 2), scale)


def _prepend_slot(side: str, first: TensorFn | None, second: TensorFn | None, n: int) -> TensorFn:
    """Rank n+1 tensor whose slot-1 bit 0 block is ``first`` and bit 1 block is ``second``."""
    zero = TensorFn.zero(side, n)
    a = first if first is not None else zero
    b = second if second is not None else zero
    return TensorFn(side, n + 1, a.comps + b.comps)


@lru_cache(maxsize=None)
def Fp_basis(n: int, l2: int, mu2: int, nu2: int) -> TensorFn:
    """F' defined from the explicit rank-1 functions by the slot recursion.

    Rank 1: ((l-nu+1) N^-1 t^(l+1/2)_(nu-1/2, mu)(Z^-1), (l+nu+1) N^-1 t^(l+1/2)_(nu+1/2, mu)(Z^-1)).
    Rank n+1: -(d11 X, d12 X) with X = F'^(n)_(l, mu+1/2, nu) when that index
    exists, otherwise -(d21 Y, d22 Y) with Y = F'^(n)_(l, mu-1/2, nu).
    """
    _check("Fp", n, l2, mu2, nu2)
    if n == 1:
        c0 = gr(Fraction(l2 - nu2 + 2, 2))
        c1 = gr(Fraction(l2 + nu2 + 2, 2))
        return TensorFn(COLUMN, 1, [
            t_coeff_inverted(l2 + 1, nu2 - 1, mu2) * c0,
            t_coeff_inverted(l2 + 1, nu2 + 1, mu2) * c1,
        ])
    if index_ok(n - 1, l2, mu2 + 1, nu2):
        return _Fp_step(Fp_basis(n - 1, l2, mu2 + 1, nu2), (0, 1))
    return _Fp_step(Fp_basis(n - 1, l2, mu2 - 1, nu2), (2, 3))


def _Fp_step(X: TensorFn, vars_: tuple[int, int]) -> TensorFn:
    minus = gr(-1)
    first = X.map(lambda c: c.partial(vars_[0]) * minus)
    second = X.map(lambda c: c.partial(vars_[1]) * minus)
    return _prepend_slot(COLUMN, first, second, X.n)


def Fp_recursion_alt(n: int, l2: int, mu2: int, nu2: int) -> TensorFn | None:
    """The other recursion branch, -(d21, d22) F'^(n-1)_(l, mu-1/2, nu); None if unavailable."""
    _check("Fp", n, l2, mu2, nu2)
    if n < 2 or not index_ok(n - 1, l2, mu2 - 1, nu2):
        return None
    return _Fp_step(Fp_basis(n - 1, l2, mu2 - 1, nu2), (2, 3))


@lru_cache(maxsize=None)
def Gp_basis(n: int, l2: int, mu2: int, nu2: int) -> TensorFn:
    """G' from (N^-1 t^(l+1/2)_(mu, nu-1/2)(Z^-1), N^-1 t^(l+1/2)_(mu, nu+1/2)(Z^-1)) by concatenation.

    Rank n+1: (G'^(n)_(l+1/2, mu, nu-1/2), G'^(n)_(l+1/2, mu, nu+1/2)).
    """
    _check("Gp", n, l2, mu2, nu2)
    if n == 1:
        return TensorFn(ROW, 1, [
            t_coeff_inverted(l2 + 1, mu2, nu2 - 1),
            t_coeff_inverted(l2 + 1, mu2, nu2 + 1),
        ])
    return _prepend_slot(
        ROW, Gp_basis(n - 1, l2 + 1, mu2, nu2 - 1), Gp_basis(n - 1, l2 + 1, mu2, nu2 + 1), n - 1
    )


def F_recursion(n: int, l2: int, mu2: int, nu2: int) -> TensorFn:
    """Rank n built from rank n-1: (d11 X, d12 X) with X = F^(n-1)_(l+1/2, mu, nu-1/2)."""
    _check("F", n, l2, mu2, nu2)
    X = F_basis(n - 1, l2 + 1, mu2, nu2 - 1)
    return _prepend_slot(COLUMN, X.map(lambda c: c.partial(0)), X.map(lambda c: c.partial(1)), n - 1)


def G_recursion(n: int, l2: int, mu2: int, nu2: int) -> TensorFn:
    """Rank n built from rank n-1: (G^(n-1)_(l, mu+1/2, nu), G^(n-1)_(l, mu-1/2, nu)), zero out of range."""
    _check("G", n, l2, mu2, nu2)

    def sub(m2):
        return G_basis(n - 1, l2, m2, nu2) if index_ok(n - 1, l2, m2, nu2) else None

    return _prepend_slot(ROW, sub(mu2 + 1), sub(mu2 - 1), n - 1)


_BUILDERS = {"F": F_basis, "G": G_basis, "Fp": Fp_basis, "Gp": Gp_basis}


def basis(family: str, n: int, l2: int, mu2: int, nu2: int) -> TensorFn:
    if family not in _BUILDERS:
        raise ValueError(f"unknown family {family!r}")
    return _BUILDERS[family](n, l2, mu2, nu2)


def basis_of(idx: BasisIndex) -> TensorFn:
    return basis(idx.family, idx.n, idx.l2, idx.mu2, idx.nu2)


def recursion_check(family: str, n: int, l2_max: int) -> dict:
    """Compare the rank-n recursion against the direct definitions.

    F and G: recursion from rank n-1 versus the closed form (and for F the two
    closed forms against each other).  F': the two recursion branches where
    both apply.  G' is defined by its recursion, so the check confirms the
    closed rank-1 data it starts from are right n-regular and symmetric.
    """
    if n < 2 and family != "Gp":
        raise ValueError("recursion checks need rank n >= 2")
    mismatches = []
    count = 0
    for l2, mu2, nu2 in indices(n, l2_max):
        count += 1
        idx = (n, l2, mu2, nu2)
        if family == "F":
            direct = F_basis(*idx)
            ok = direct == F_recursion(*idx) and direct == F_basis_alt(*idx)
        elif family == "G":
            ok = G_basis(*idx) == G_recursion(*idx)
        elif family == "Fp":
            alt = Fp_recursion_alt(*idx)
            ok = alt is None or alt == Fp_basis(*idx)
        elif family == "Gp":
            g = Gp_basis(*idx)
            ok = g.is_symmetric()
        else:
            raise ValueError(f"unknown family {family!r}")
        if not ok:
            mismatches.append(BasisIndex(family, *idx))
    return {"family": family, "n": n, "l2_max": l2_max, "checked": count, "mismatches": mismatches}
