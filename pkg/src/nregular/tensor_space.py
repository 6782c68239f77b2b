"""Tensor powers of the spinor modules S (columns) and S' (rows).

A rank-n tensor is a flat sequence of 2**n entries in Kronecker order:
slot 1 is the most significant bit, and bit value 0 stands for spinor
index 1.  Slot operators act on one bit only, so every helper here works
for any entry type with ``+`` and ``*`` (scalars or Laurent functions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Sequence

from .quat_core import E_UNITS, ONE, ZERO, Biquaternion, GaussianRational, gr

__all__ = [
    "COLUMN",
    "ROW",
    "MAX_RANK",
    "SpinorTensor",
    "SlotOperator",
    "check_side",
    "bits",
    "flat_index",
    "slot_apply",
    "slot_apply_entries",
    "symmetrize",
    "contract",
    "casimir_slot_sum",
    "permutation_index_maps",
    "symmetric_basis",
    "basis_tensor",
]

COLUMN = "S"
ROW = "S'"
MAX_RANK = 4


def check_side(side: str) -> None:
    if side not in (COLUMN, ROW):
        raise ValueError(f"side must be {COLUMN!r} or {ROW!r}, got {side!r}")


def bits(flat: int, n: int) -> tuple[int, ...]:
    return tuple((flat >> (n - 1 - k)) & 1 for k in range(n))


def flat_index(b: Sequence[int]) -> int:
    out = 0
    for x in b:
        out = (out << 1) | x
    return out


@lru_cache(maxsize=None)
def _slot_pairs(n: int, k: int) -> tuple:
    """For slot k (1-based): tuples (base, shift) with base having bit k cleared."""
    shift = n - k
    return tuple((i, shift) for i in range(1 << n) if not (i >> shift) & 1)


def slot_apply_entries(M, k: int, data: Sequence, n: int, side: str) -> list:
    """Apply the 2x2 array ``M`` at slot ``k``.

    Columns: out[b] = sum_c M[b][c] data[c].  Rows: out[b] = sum_c data[c] M[c][b].
    Zero matrix entries are skipped, so ``M`` may hold operators given as
    callables via :func:`slot_apply_ops` instead.
    """
    if not 1 <= k <= n:
        raise IndexError(f"slot {k} out of range 1..{n}")
    out = list(data)
    col = side == COLUMN
    for base, shift in _slot_pairs(n, k):
        i0, i1 = base, base | (1 << shift)
        x0, x1 = data[i0], data[i1]
        if col:
            out[i0] = M[0][0] * x0 + M[0][1] * x1
            out[i1] = M[1][0] * x0 + M[1][1] * x1
        else:
            out[i0] = x0 * M[0][0] + x1 * M[1][0]
            out[i1] = x0 * M[0][1] + x1 * M[1][1]
    return out


def slot_apply_ops(ops, k: int, data: Sequence, n: int, side: str, zero) -> list:
    """Like :func:`slot_apply_entries` with operators: ``ops[i][j]`` is a callable or None."""
    if not 1 <= k <= n:
        raise IndexError(f"slot {k} out of range 1..{n}")
    out = list(data)
    col = side == COLUMN
    for base, shift in _slot_pairs(n, k):
        idx = (base, base | (1 << shift))
        x = (data[idx[0]], data[idx[1]])
        for b in (0, 1):
            acc = zero
            for c in (0, 1):
                op = ops[b][c] if col else ops[c][b]
                if op is not None:
                    acc = acc + op(x[c])
            out[idx[b]] = acc
    return out


@dataclass(frozen=True)
class SpinorTensor:
    side: str
    n: int
    data: tuple

    def __init__(self, side: str, n: int, data):
        check_side(side)
        if not 1 <= n:
            raise ValueError("rank must be positive")
        data = tuple(x if isinstance(x, GaussianRational) else gr(x) for x in data)
        if len(data) != 1 << n:
            raise ValueError(f"expected {1 << n} entries, got {len(data)}")
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "data", data)

    @classmethod
    def zero(cls, side: str, n: int) -> "SpinorTensor":
        return cls(side, n, (ZERO,) * (1 << n))

    def __getitem__(self, b):
        if isinstance(b, tuple):
            return self.data[flat_index(b)]
        return self.data[b]

    def __add__(self, other: "SpinorTensor") -> "SpinorTensor":
        self._same(other)
        return SpinorTensor(self.side, self.n, [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "SpinorTensor") -> "SpinorTensor":
        self._same(other)
        return SpinorTensor(self.side, self.n, [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return SpinorTensor(self.side, self.n, [-a for a in self.data])

    def __mul__(self, c) -> "SpinorTensor":
        c = gr(c)
        return SpinorTensor(self.side, self.n, [a * c for a in self.data])

    __rmul__ = __mul__

    def _same(self, other):
        if self.side != other.side or self.n != other.n:
            raise ValueError("tensors of different shape")

    def is_zero(self) -> bool:
        return not any(self.data)

    def is_symmetric(self) -> bool:
        return all(
            self.data[p[i]] == self.data[i]
            for p in permutation_index_maps(self.n)
            for i in range(1 << self.n)
        )

    def transpose(self) -> "SpinorTensor":
        """Same entries viewed on the other side."""
        return SpinorTensor(ROW if self.side == COLUMN else COLUMN, self.n, self.data)

    def __str__(self):
        return f"{self.side}[{', '.join(str(x) for x in self.data)}]"


@dataclass(frozen=True)
class SlotOperator:
    k: int
    factor: Biquaternion
    side: str = COLUMN

    def __call__(self, t: SpinorTensor) -> SpinorTensor:
        return slot_apply(self.factor, self.k, t)


def slot_apply(A: Biquaternion, k: int, t: SpinorTensor) -> SpinorTensor:
    """Left multiplication at slot k for columns, right multiplication for rows."""
    return SpinorTensor(t.side, t.n, slot_apply_entries(A.matrix(), k, t.data, t.n, t.side))


@lru_cache(maxsize=None)
def permutation_index_maps(n: int) -> tuple:
    """For each slot permutation, the induced map on flat indices (identity excluded)."""
    out = []
    for perm in permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        out.append(tuple(flat_index([bits(i, n)[p] for p in perm]) for i in range(1 << n)))
    return tuple(out)


def _permute(data: Sequence, imap: Sequence[int]) -> list:
    return [data[imap[i]] for i in range(len(data))]


def symmetrize(t: SpinorTensor) -> SpinorTensor:
    w = gr(Fraction(1, factorial(t.n)))
    acc = list(t.data)
    for imap in permutation_index_maps(t.n):
        acc = [a + b for a, b in zip(acc, _permute(t.data, imap))]
    return SpinorTensor(t.side, t.n, [a * w for a in acc])


def contract(t_row: SpinorTensor, t_col: SpinorTensor) -> GaussianRational:
    if t_row.n != t_col.n:
        raise ValueError(f"rank mismatch {t_row.n} != {t_col.n}")
    if t_row.side != ROW or t_col.side != COLUMN:
        raise ValueError("contract expects a row tensor and a column tensor")
    tot = ZERO
    for a, b in zip(t_row.data, t_col.data):
        tot = tot + a * b
    return tot


def casimir_slot_sum(t: SpinorTensor, j: int, k: int) -> SpinorTensor:
    """sum_i (e_i at slot j)(e_i at slot k) t."""
    if j == k:
        raise ValueError("slots must differ")
    acc = SpinorTensor.zero(t.side, t.n)
    for e in E_UNITS:
        acc = acc + slot_apply(e, j, slot_apply(e, k, t))
    return acc


def basis_tensor(side: str, n: int, b: Sequence[int]) -> SpinorTensor:
    """Basis tensor with a 1 at multi-index ``b`` given with entries in {1, 2}."""
    data = [ZERO] * (1 << n)
    data[flat_index([x - 1 for x in b])] = ONE
    return SpinorTensor(side, n, data)


def symmetric_basis(side: str, n: int) -> list[SpinorTensor]:
    """n+1 symmetric tensors: the sum of basis tensors with exactly m entries equal to 2."""
    out = []
    for m in range(n + 1):
        data = [ONE if bin(i).count("1") == m else ZERO for i in range(1 << n)]
        out.append(SpinorTensor(side, n, data))
    return out
