"""Exact differential operators on Laurent and tensor-valued functions.

Variables are indexed 0..3 for z11, z12, z21, z22.  In matrix-entry form

    d  = [[d11, d21], [d12, d22]] = nabla / 2,
    d+ = [[d22, -d21], [-d12, d11]] = nabla+ / 2,

so ``d[b][c]`` differentiates in ``z_(c+1)(b+1)``.  The x-coordinate forms
of the same operators are kept in :func:`x_partial`, :func:`nabla_plus_slot_x`
and :func:`nabla_slot_x` so the translation can be tested rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .func_algebra import LaurentFn, TensorFn
from .quat_core import E_UNITS, I, ONE, gr
from .tensor_space import COLUMN, slot_apply_entries, slot_apply_ops

__all__ = [
    "ResonantDegree",
    "DiffOpSpec",
    "var_index",
    "partial",
    "x_partial",
    "nabla_slot",
    "nabla_plus_slot",
    "nabla_slot_x",
    "nabla_plus_slot_x",
    "is_n_regular",
    "regularity_report",
    "laplacian",
    "laplacian_x",
    "deg_op",
    "deg_shift",
    "deg_shift_inverse",
    "Dn",
    "Dn_inverse",
    "mul_by_Z",
    "mul_by_Z_plus",
]

Fn = Union[LaurentFn, TensorFn]


class ResonantDegree(ArithmeticError):
    """(deg+m)^-1 applied to a function with a homogeneous piece of degree -m."""


@dataclass(frozen=True)
class DiffOpSpec:
    """Tag describing one of the operators below; ``apply`` dispatches on ``kind``."""

    kind: str
    arg: tuple = ()
    side: str = COLUMN

    def apply(self, f):
        if self.kind == "partial":
            return _lift_scalar_op(lambda c: partial(c, *self.arg))(f)
        if self.kind == "nabla_slot":
            return nabla_slot(f, *self.arg)
        if self.kind == "nabla_plus_slot":
            return nabla_plus_slot(f, *self.arg)
        if self.kind == "laplacian":
            return _lift_scalar_op(laplacian)(f)
        if self.kind == "deg":
            return deg_op(f)
        if self.kind == "deg_shift":
            return deg_shift(f, *self.arg)
        if self.kind == "Dn":
            return Dn(f, *self.arg)
        raise ValueError(f"unknown operator kind {self.kind!r}")


def var_index(i: int, j: int) -> int:
    """Index of z_ij (1-based i, j) in exponent tuples."""
    if i not in (1, 2) or j not in (1, 2):
        raise ValueError(f"bad entry index ({i}, {j})")
    return 2 * (i - 1) + (j - 1)


def partial(f: LaurentFn, i: int, j: int) -> LaurentFn:
    return f.partial(var_index(i, j))


def _lift_scalar_op(op: Callable[[LaurentFn], LaurentFn]) -> Callable[[Fn], Fn]:
    def inner(f):
        if isinstance(f, TensorFn):
            return f.map(op)
        return op(f)

    return inner


# --- x-coordinate partials via the chain rule ------------------------------
# z11 = x0 - i x3, z12 = -x2 - i x1, z21 = x2 - i x1, z22 = x0 + i x3
_X_IN_Z = (
    ((0, ONE), (3, ONE)),
    ((1, -I), (2, -I)),
    ((1, -ONE), (2, ONE)),
    ((0, -I), (3, I)),
)


def x_partial(f: LaurentFn, m: int) -> LaurentFn:
    """d/dx^m expressed through the z-partials."""
    out = LaurentFn.zero()
    for var, c in _X_IN_Z[m]:
        out = out + f.partial(var) * c
    return out


# --- slot operators ------------------------------------------------------------

def _d(var: int, sign: int = 1, scale: int = 1):
    c = gr(sign * scale)
    return lambda f: f.partial(var) * c


# d[b][c] = d/dz_{c b}
_NABLA = ((_d(0, 1, 2), _d(2, 1, 2)), (_d(1, 1, 2), _d(3, 1, 2)))
_NABLA_PLUS = ((_d(3, 1, 2), _d(2, -1, 2)), (_d(1, -1, 2), _d(0, 1, 2)))


def _slot_op(ops, F: TensorFn, k: int) -> TensorFn:
    return TensorFn(F.side, F.n, slot_apply_ops(ops, k, F.comps, F.n, F.side, LaurentFn.zero()))


def nabla_slot(F: TensorFn, k: int) -> TensorFn:
    """nabla at slot k; applied on the left to columns and on the right to rows."""
    return _slot_op(_NABLA, F, k)


def nabla_plus_slot(F: TensorFn, k: int) -> TensorFn:
    return _slot_op(_NABLA_PLUS, F, k)


def _x_form(F: TensorFn, k: int, signs) -> TensorFn:
    acc = TensorFn.zero(F.side, F.n)
    for m, (e, s) in enumerate(zip(E_UNITS, signs)):
        dF = F.map(lambda c: x_partial(c, m))
        moved = slot_apply_entries(e.matrix(), k, dF.comps, F.n, F.side)
        acc = acc + TensorFn(F.side, F.n, moved) * gr(s)
    return acc


def nabla_plus_slot_x(F: TensorFn, k: int) -> TensorFn:
    """sum_m e_m d/dx^m at slot k, directly from the x-coordinate definition."""
    return _x_form(F, k, (1, 1, 1, 1))


def nabla_slot_x(F: TensorFn, k: int) -> TensorFn:
    return _x_form(F, k, (1, -1, -1, -1))


def regularity_report(F: TensorFn) -> dict:
    """Per-slot residuals and the symmetry flag."""
    residuals = [nabla_plus_slot(F, k) for k in range(1, F.n + 1)]
    return {
        "side": F.side,
        "regular": all(r.is_zero() for r in residuals),
        "failing_slots": [k + 1 for k, r in enumerate(residuals) if not r.is_zero()],
        "symmetric": F.is_symmetric(),
        "residuals": residuals,
    }


def is_n_regular(F: TensorFn, side: str | None = None) -> bool:
    """True iff nabla+ annihilates F at every slot (left for columns, right for rows)."""
    if side is not None and side != F.side:
        raise ValueError(f"function has side {F.side!r}, asked for {side!r}")
    return all(nabla_plus_slot(F, k).is_zero() for k in range(1, F.n + 1))


# --- scalar second-order operators ---------------------------------------------

def laplacian(f: LaurentFn) -> LaurentFn:
    """4 (d11 d22 - d12 d21)."""
    a = f.partial(0).partial(3)
    b = f.partial(1).partial(2)
    return (a - b) * gr(4)


def laplacian_x(f: LaurentFn) -> LaurentFn:
    out = LaurentFn.zero()
    for m in range(4):
        out = out + x_partial(x_partial(f, m), m)
    return out


# --- degree operators -------------------------------------------------------------

def deg_op(f: Fn) -> Fn:
    return _lift_scalar_op(LaurentFn.euler)(f)


def deg_shift(f: Fn, m: int) -> Fn:
    return _lift_scalar_op(lambda c: c.map_degrees(lambda d: d + m))(f)


def _resonance_guard(f: Fn, m: int) -> None:
    degs = f.degrees()
    if -m in degs:
        raise ResonantDegree(f"(deg+{m})^-1 is undefined on a piece of degree {-m}")


def deg_shift_inverse(f: Fn, m: int) -> Fn:
    """Multiply each homogeneous piece of degree d by 1/(d+m).

    On polynomials this agrees with the integral over t^(m-1) f(tZ) on [0, 1],
    and on decaying pieces (d + m < 0) with minus the integral over [1, oo):
    both integrals of t^(d+m-1) evaluate to 1/(d+m).
    """
    _resonance_guard(f, m)
    return _lift_scalar_op(lambda c: c.map_degrees(lambda d: gr(Fraction(1, d + m))))(f)


def _rank(f: Fn, n: int | None) -> int:
    if n is None:
        if not isinstance(f, TensorFn):
            raise ValueError("rank n is required for scalar functions")
        return f.n
    return n


def Dn_factor(n: int, d: int) -> int:
    """Eigenvalue of D_n on degree d: (d+n)(d+n-1)...(d+2)."""
    out = 1
    for m in range(2, n + 1):
        out *= d + m
    return out


def Dn(f: Fn, n: int | None = None) -> Fn:
    n = _rank(f, n)
    return _lift_scalar_op(lambda c: c.map_degrees(lambda d: gr(Dn_factor(n, d))))(f)


def Dn_inverse(f: Fn, n: int | None = None) -> Fn:
    n = _rank(f, n)
    for m in range(2, n + 1):
        _resonance_guard(f, m)
    return _lift_scalar_op(lambda c: c.map_degrees(lambda d: gr(Fraction(1, Dn_factor(n, d)))))(f)


# --- multiplication by Z or Z+ at a slot --------------------------------------------

def _coordinate_matrix(plus: bool):
    from .func_algebra import Z11, Z12, Z21, Z22

    if plus:
        return ((Z22, -Z12), (-Z21, Z11))
    return ((Z11, Z12), (Z21, Z22))


def mul_by_Z(F: TensorFn, k: int) -> TensorFn:
    """Multiply by Z at slot k (left for columns, right for rows)."""
    return TensorFn(F.side, F.n, slot_apply_entries(_coordinate_matrix(False), k, F.comps, F.n, F.side))


def mul_by_Z_plus(F: TensorFn, k: int) -> TensorFn:
    return TensorFn(F.side, F.n, slot_apply_entries(_coordinate_matrix(True), k, F.comps, F.n, F.side))
