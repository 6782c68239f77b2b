"""Exact Laurent functions P(z11, z12, z21, z22) * N(Z)^-k and tensor arrays of them.

A polynomial is a dict mapping exponent 4-tuples ``(a, b, c, d)`` on
``(z11, z12, z21, z22)`` to nonzero :class:`GaussianRational` coefficients.
A :class:`LaurentFn` pairs such a numerator with a power ``k`` of the
quadric ``N = z11 z22 - z12 z21`` in the denominator, kept in canonical
form: when ``k > 0`` the numerator is not divisible by ``N``.  Since ``N`` is
irreducible this makes equality a plain comparison of representations.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Mapping

from gmpy2 import mpq

from .quat_core import ONE, ZERO, Biquaternion, GaussianRational, I, gr
from .tensor_space import COLUMN, ROW, SpinorTensor, check_side

__all__ = [
    "Exps",
    "Poly",
    "PoleAtNullCone",
    "LaurentFn",
    "TensorFn",
    "HomogeneousPiece",
    "Z11",
    "Z12",
    "Z21",
    "Z22",
    "N_FN",
    "VARS",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_pow",
    "poly_divmod_N",
    "N_POLY",
    "n_power",
    "evaluate",
    "homogeneous_split",
    "to_real_sphere_poly",
    "conj_dagger",
    "substitute",
]

Exps = tuple  # (a, b, c, d)
Poly = dict  # Exps -> GaussianRational

# exponent offsets for the four coordinates, in the order z11, z12, z21, z22
_UNIT = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
VAR_NAMES = ("z11", "z12", "z21", "z22")


class PoleAtNullCone(ArithmeticError):
    """Evaluation of a function with a nonzero N-power at a point with N(Z) = 0."""


# ---------------------------------------------------------------------------
# polynomial kernels (plain dicts)
# ---------------------------------------------------------------------------


def poly_add(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for e, c in q.items():
        if sign < 0:
            c = -c
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def poly_scale(p: Poly, c: GaussianRational) -> Poly:
    if not c:
        return {}
    if c == ONE:
        return dict(p)
    return {e: v * c for e, v in p.items()}


def poly_mul(p: Poly, q: Poly) -> Poly:
    if len(p) > len(q):
        p, q = q, p
    out: dict = {}
    get = out.get
    for (a1, b1, c1, d1), v1 in p.items():
        for (a2, b2, c2, d2), v2 in q.items():
            e = (a1 + a2, b1 + b2, c1 + c2, d1 + d2)
            prev = get(e)
            out[e] = v1 * v2 if prev is None else prev + v1 * v2
    return {e: v for e, v in out.items() if v}


def poly_pow(p: Poly, k: int) -> Poly:
    out: Poly = {(0, 0, 0, 0): ONE}
    for _ in range(k):
        out = poly_mul(out, p)
    return out


N_POLY: Poly = {(1, 0, 0, 1): ONE, (0, 1, 1, 0): -ONE}


@lru_cache(maxsize=None)
def _n_power_items(k: int) -> tuple:
    # N^k = sum_j C(k,j) (z11 z22)^(k-j) (-z12 z21)^j
    return tuple(((k - j, j, j, k - j), gr((-1) ** j * comb(k, j))) for j in range(k + 1))


def n_power(k: int) -> Poly:
    return dict(_n_power_items(k))


def poly_mul_N_power(p: Poly, k: int) -> Poly:
    if k == 0:
        return dict(p)
    return poly_mul(p, n_power(k))


def poly_divmod_N(p: Poly) -> tuple[Poly, Poly]:
    """Divide by N using the rewrite z11 z22 -> N + z12 z21.

    Returns ``(q, r)`` with ``p = q N + r`` and every monomial of ``r`` free of
    ``z11`` or of ``z22``; ``N`` divides ``p`` iff ``r`` is empty.
    """
    buckets: dict[int, dict] = defaultdict(dict)
    for e, c in p.items():
        buckets[min(e[0], e[3])][e] = c
    q: dict = {}
    top = max(buckets) if buckets else 0
    for m in range(top, 0, -1):
        cur = buckets.pop(m, None)
        if not cur:
            continue
        lower = buckets[m - 1]
        for (a, b, c, d), v in cur.items():
            if not v:
                continue
            qe = (a - 1, b, c, d - 1)
            prev = q.get(qe)
            q[qe] = v if prev is None else prev + v
            re_ = (a - 1, b + 1, c + 1, d - 1)
            prev = lower.get(re_)
            lower[re_] = v if prev is None else prev + v
    r = {e: v for e, v in buckets.get(0, {}).items() if v}
    return {e: v for e, v in q.items() if v}, r


def _canon(p: Poly, k: int) -> tuple[Poly, int]:
    if not p:
        return {}, 0
    while k > 0:
        q, r = poly_divmod_N(p)
        if r:
            break
        p, k = q, k - 1
    return p, k


def _poly_deriv(p: Poly, var: int) -> Poly:
    out: dict = {}
    for e, c in p.items():
        m = e[var]
        if m:
            ne = list(e)
            ne[var] = m - 1
            out[tuple(ne)] = c * m
    return out


# dN/dz_ij as polynomials
_DN = (
    {(0, 0, 0, 1): ONE},
    {(0, 0, 1, 0): -ONE},
    {(0, 1, 0, 0): -ONE},
    {(1, 0, 0, 0): ONE},
)


def _coerce_scalar(c) -> GaussianRational:
    if isinstance(c, GaussianRational):
        return c
    return gr(c)


# ---------------------------------------------------------------------------
# LaurentFn
# ---------------------------------------------------------------------------


class LaurentFn:
    """``P * N^-k`` with Gaussian-rational coefficients, in canonical form."""

    __slots__ = ("_terms", "_k", "_hash", "_weights")

    def __init__(self, terms: Mapping | None = None, k: int = 0, *, canonical: bool = False):
        if k < 0:
            raise ValueError("denominator power must be nonnegative")
        p = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != 4 or min(e) < 0:
                    raise ValueError(f"bad exponent tuple {e}")
                c = _coerce_scalar(c)
                if c:
                    p[e] = p[e] + c if e in p else c
            p = {e: c for e, c in p.items() if c}
        if not canonical:
            p, k = _canon(p, k)
        elif not p:
            k = 0
        self._terms = p
        self._k = k
        self._hash = None
        self._weights = None

    @classmethod
    def _raw(cls, p: Poly, k: int) -> "LaurentFn":
        """Trusted constructor: ``p`` already canonical w.r.t. ``k``."""
        obj = object.__new__(cls)
        obj._terms = p
        obj._k = k if p else 0
        obj._hash = None
        obj._weights = None
        return obj

    @classmethod
    def _make(cls, p: Poly, k: int) -> "LaurentFn":
        p, k = _canon(p, k)
        return cls._raw(p, k)

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentFn":
        c = _coerce_scalar(c)
        return cls._raw({(0, 0, 0, 0): c} if c else {}, 0)

    @classmethod
    def monomial(cls, exps, coeff=1, k: int = 0) -> "LaurentFn":
        return cls({tuple(exps): coeff}, k)

    @classmethod
    def zero(cls) -> "LaurentFn":
        return cls._raw({}, 0)

    # -- accessors ----------------------------------------------------------
    @property
    def numerator(self) -> Poly:
        return dict(self._terms)

    @property
    def terms(self) -> Poly:
        """The numerator dict; callers must not mutate it."""
        return self._terms

    @property
    def k(self) -> int:
        return self._k

    denom_power = k

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_polynomial(self) -> bool:
        return self._k == 0

    def degrees(self) -> set[int]:
        return {sum(e) - 2 * self._k for e in self._terms}

    def degree(self) -> int | None:
        """Homogeneity degree, or None if zero or not homogeneous."""
        ds = self.degrees()
        if len(ds) != 1:
            return None
        return ds.pop()

    def is_real_coefficients(self) -> bool:
        return all(c.is_real for c in self._terms.values())

    # -- ring operations ----------------------------------------------------
    def _align(self, other: "LaurentFn") -> tuple[Poly, Poly, int]:
        k = max(self._k, other._k)
        p = self._terms if self._k == k else poly_mul_N_power(self._terms, k - self._k)
        q = other._terms if other._k == k else poly_mul_N_power(other._terms, k - other._k)
        return p, q, k

    def __add__(self, other):
        if not isinstance(other, LaurentFn):
            other = _lift(other)
            if other is NotImplemented:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        p, q, k = self._align(other)
        s = poly_add(p, q)
        return LaurentFn._make(s, k) if k else LaurentFn._raw(s, 0)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LaurentFn):
            other = _lift(other)
            if other is NotImplemented:
                return NotImplemented
        if not other._terms:
            return self
        p, q, k = self._align(other)
        s = poly_add(p, q, -1)
        return LaurentFn._make(s, k) if k else LaurentFn._raw(s, 0)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return LaurentFn._raw({e: -c for e, c in self._terms.items()}, self._k)

    def __mul__(self, other):
        if isinstance(other, LaurentFn):
            if not self._terms or not other._terms:
                return LaurentFn.zero()
            p = poly_mul(self._terms, other._terms)
            k = self._k + other._k
            if self._k and other._k:
                # both numerators are prime to the irreducible N
                return LaurentFn._raw(p, k)
            return LaurentFn._make(p, k)
        c = other if isinstance(other, GaussianRational) else _scalar_or_none(other)
        if c is None:
            return NotImplemented
        if not c:
            return LaurentFn.zero()
        return LaurentFn._raw({e: v * c for e, v in self._terms.items()}, self._k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = other if isinstance(other, GaussianRational) else _scalar_or_none(other)
        if c is None:
            return NotImplemented
        return self * (ONE / c)

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative powers are only available for N (use div_N)")
        out = LaurentFn.const(1)
        for _ in range(m):
            out = out * self
        return out

    def div_N(self, m: int = 1) -> "LaurentFn":
        """Multiply by N^-m."""
        if not self._terms:
            return self
        if self._k:
            return LaurentFn._raw(self._terms, self._k + m)
        return LaurentFn._make(self._terms, m)

    def mul_N(self, m: int = 1) -> "LaurentFn":
        if not self._terms or m == 0:
            return self
        if self._k >= m:
            return LaurentFn._raw(self._terms, self._k - m)
        return LaurentFn._raw(poly_mul_N_power(self._terms, m - self._k), 0)

    # -- calculus -----------------------------------------------------------
    def partial(self, var: int) -> "LaurentFn":
        """d/dz_var with var in 0..3 for z11, z12, z21, z22."""
        if not self._terms:
            return self
        dp = _poly_deriv(self._terms, var)
        if self._k == 0:
            return LaurentFn._raw(dp, 0)
        # (N dP - k P dN) N^-(k+1); canonical because N is prime to k P dN
        a = poly_mul(dp, N_POLY)
        b = poly_mul(self._terms, _DN[var])
        s = poly_add(a, poly_scale(b, gr(self._k)), -1)
        return LaurentFn._raw(s, self._k + 1)

    def euler(self) -> "LaurentFn":
        """Euler operator sum z_ij d/dz_ij; scales each term by its degree."""
        return LaurentFn._make(
            {e: c * (sum(e) - 2 * self._k) for e, c in self._terms.items() if sum(e) != 2 * self._k},
            self._k,
        )

    def map_degrees(self, fn: Callable[[int], GaussianRational]) -> "LaurentFn":
        """Multiply each homogeneous piece of degree d by fn(d)."""
        k = self._k
        cache: dict[int, GaussianRational] = {}
        out = {}
        for e, c in self._terms.items():
            d = sum(e) - 2 * k
            if d not in cache:
                cache[d] = _coerce_scalar(fn(d))
            v = c * cache[d]
            if v:
                out[e] = v
        return LaurentFn._make(out, k)

    # -- evaluation & substitution -------------------------------------------
    def __call__(self, Z: Biquaternion) -> GaussianRational:
        return self.evaluate(Z)

    def evaluate(self, Z: Biquaternion) -> GaussianRational:
        if not self._terms:
            return ZERO
        vals = Z.entries
        den = ONE
        if self._k:
            nz = Z.z11 * Z.z22 - Z.z12 * Z.z21
            if not nz:
                raise PoleAtNullCone(f"N(Z) = 0 at {Z} with denominator power {self._k}")
            den = nz ** self._k
        return _eval_poly(self._terms, vals) / den

    def evaluate_complex(self, z: tuple) -> complex:
        """Floating evaluation at complex entries (z11, z12, z21, z22)."""
        tot = 0j
        for (a, b, c, d), v in self._terms.items():
            tot += v.to_complex() * z[0] ** a * z[1] ** b * z[2] ** c * z[3] ** d
        if self._k:
            tot /= (z[0] * z[3] - z[1] * z[2]) ** self._k
        return tot

    def weight_groups(self) -> dict:
        """Terms grouped by torus weight (a-d, b-c); cached."""
        if self._weights is None:
            g: dict = defaultdict(list)
            for e, c in self._terms.items():
                g[(e[0] - e[3], e[1] - e[2])].append((e, c))
            self._weights = dict(g)
        return self._weights

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LaurentFn):
            other = _lift(other)
            if other is NotImplemented:
                return NotImplemented
        return self._k == other._k and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._k, frozenset(self._terms.items())))
        return self._hash

    # -- text -----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "k": self._k,
            "terms": [[list(e), str(self._terms[e])] for e in sorted(self._terms)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentFn":
        return cls({tuple(e): GaussianRational.parse(c) for e, c in obj["terms"]}, obj["k"])

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                name if m == 1 else f"{name}^{m}" for name, m in zip(VAR_NAMES, e) if m
            )
            cs = str(c)
            if not c.is_real and c.re:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        s = " + ".join(parts).replace("+ -", "- ")
        if self._k:
            s = f"({s}) * N^-{self._k}"
        return s

    def __repr__(self):
        return f"LaurentFn({self})"


def _scalar_or_none(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) or type(x) is type(mpq(0)):
        return gr(x)
    return None


def _lift(x):
    c = _scalar_or_none(x)
    if c is None:
        return NotImplemented
    return LaurentFn.const(c)


def _eval_poly(p: Poly, vals) -> GaussianRational:
    pw = [[ONE] for _ in range(4)]
    tot = ZERO
    for e, c in p.items():
        term = c
        for i in range(4):
            m = e[i]
            if m:
                cache = pw[i]
                while len(cache) <= m:
                    cache.append(cache[-1] * vals[i])
                term = term * cache[m]
        tot = tot + term
    return tot


Z11 = LaurentFn.monomial((1, 0, 0, 0))
Z12 = LaurentFn.monomial((0, 1, 0, 0))
Z21 = LaurentFn.monomial((0, 0, 1, 0))
Z22 = LaurentFn.monomial((0, 0, 0, 1))
VARS = (Z11, Z12, Z21, Z22)
N_FN = LaurentFn(N_POLY)
# coordinate functions as a matrix [[z11, z12], [z21, z22]]
Z_MATRIX = ((Z11, Z12), (Z21, Z22))


def substitute(f: LaurentFn, images: tuple, extra_k: int = 0) -> LaurentFn:
    """Replace (z11, z12, z21, z22) by the given LaurentFns and N^-k by ``images_N^-k``.

    ``images`` is a 4-tuple of LaurentFn; the image of N is computed from them.
    """
    if not f.terms:
        return f
    pows = [[LaurentFn.const(1)] for _ in range(4)]
    tot = LaurentFn.zero()
    for e, c in f.terms.items():
        term = LaurentFn.const(c)
        for i in range(4):
            m = e[i]
            if m:
                cache = pows[i]
                while len(cache) <= m:
                    cache.append(cache[-1] * images[i])
                term = term * cache[m]
        tot = tot + term
    if f.k:
        nimg = images[0] * images[3] - images[1] * images[2]
        tot = _divide_by(tot, nimg, f.k)
    return tot


def scalar_N_power(g: LaurentFn) -> tuple[GaussianRational, int] | None:
    """Write g = c * N^s if possible and return (c, s)."""
    p, s = g.terms, -g.k
    if not p:
        return None
    while True:
        if len(p) == 1 and (0, 0, 0, 0) in p:
            return p[(0, 0, 0, 0)], s
        if s < 0:
            return None
        p, r = poly_divmod_N(p)
        if r:
            return None
        s += 1


def _divide_by(f: LaurentFn, g: LaurentFn, m: int) -> LaurentFn:
    cs = scalar_N_power(g)
    if cs is None:
        raise ValueError("image of N is not a scalar multiple of a power of N")
    c, s = cs
    out = f * (ONE / c ** m)
    return out.div_N(s * m) if s >= 0 else out.mul_N(-s * m)


# ---------------------------------------------------------------------------
# tensor-valued functions
# ---------------------------------------------------------------------------


class TensorFn:
    """A function into S^(x n) (column side) or S'^(x n) (row side).

    ``comps`` has length 2**n in Kronecker order: slot 1 is the most
    significant bit of the flat index, bit value 0 means spinor index 1.
    """

    __slots__ = ("side", "n", "comps", "_hash")

    def __init__(self, side: str, n: int, comps: Iterable):
        check_side(side)
        comps = tuple(c if isinstance(c, LaurentFn) else LaurentFn.const(c) for c in comps)
        if len(comps) != 1 << n:
            raise ValueError(f"expected {1 << n} components, got {len(comps)}")
        self.side = side
        self.n = n
        self.comps = comps
        self._hash = None

    @classmethod
    def zero(cls, side: str, n: int) -> "TensorFn":
        z = LaurentFn.zero()
        return cls(side, n, (z,) * (1 << n))

    @classmethod
    def constant(cls, t: SpinorTensor) -> "TensorFn":
        return cls(t.side, t.n, [LaurentFn.const(c) for c in t.data])

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            flat = 0
            for b in idx:
                flat = (flat << 1) | b
            return self.comps[flat]
        return self.comps[idx]

    def _check(self, other: "TensorFn"):
        if self.side != other.side or self.n != other.n:
            raise ValueError("tensor functions of different shape")

    def __add__(self, other: "TensorFn") -> "TensorFn":
        self._check(other)
        return TensorFn(self.side, self.n, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "TensorFn") -> "TensorFn":
        self._check(other)
        return TensorFn(self.side, self.n, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> "TensorFn":
        return TensorFn(self.side, self.n, [-a for a in self.comps])

    def __mul__(self, c) -> "TensorFn":
        if isinstance(c, TensorFn):
            return NotImplemented
        return TensorFn(self.side, self.n, [a * c for a in self.comps])

    __rmul__ = __mul__

    def map(self, fn: Callable[[LaurentFn], LaurentFn]) -> "TensorFn":
        return TensorFn(self.side, self.n, [fn(a) for a in self.comps])

    def is_zero(self) -> bool:
        return not any(self.comps)

    def __bool__(self):
        return not self.is_zero()

    def degrees(self) -> set[int]:
        out: set[int] = set()
        for c in self.comps:
            out |= c.degrees()
        return out

    def degree(self) -> int | None:
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def max_k(self) -> int:
        return max(c.k for c in self.comps)

    def is_polynomial(self) -> bool:
        return all(c.k == 0 for c in self.comps)

    def is_symmetric(self) -> bool:
        from .tensor_space import permutation_index_maps

        for perm in permutation_index_maps(self.n):
            if any(self.comps[perm[i]] != self.comps[i] for i in range(len(self.comps))):
                return False
        return True

    def evaluate(self, Z: Biquaternion) -> SpinorTensor:
        return evaluate(self, Z)

    __call__ = evaluate

    def __eq__(self, other):
        if not isinstance(other, TensorFn):
            return NotImplemented
        return self.side == other.side and self.n == other.n and self.comps == other.comps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.side, self.n, self.comps))
        return self._hash

    def to_json(self) -> dict:
        return {"side": self.side, "n": self.n, "components": [c.to_json() for c in self.comps]}

    @classmethod
    def from_json(cls, obj: dict) -> "TensorFn":
        return cls(obj["side"], obj["n"], [LaurentFn.from_json(c) for c in obj["components"]])

    def __repr__(self):
        body = ", ".join(str(c) for c in self.comps)
        return f"TensorFn({self.side}, n={self.n}, [{body}])"


class HomogeneousPiece(tuple):
    """A pair (degree, TensorFn) whose function is homogeneous of that degree."""

    __slots__ = ()

    def __new__(cls, degree: int, fn: TensorFn):
        return super().__new__(cls, (degree, fn))

    @property
    def degree(self) -> int:
        return self[0]

    @property
    def fn(self) -> TensorFn:
        return self[1]


def evaluate(f: TensorFn, Z: Biquaternion) -> SpinorTensor:
    return SpinorTensor(f.side, f.n, [c.evaluate(Z) for c in f.comps])


def _split_laurent(f: LaurentFn) -> dict[int, LaurentFn]:
    groups: dict[int, dict] = defaultdict(dict)
    for e, c in f.terms.items():
        groups[sum(e) - 2 * f.k][e] = c
    return {d: LaurentFn._make(p, f.k) for d, p in groups.items()}


def homogeneous_split(f) -> list[HomogeneousPiece]:
    """Split a LaurentFn or TensorFn into homogeneous pieces, sorted by degree."""
    if isinstance(f, LaurentFn):
        return [HomogeneousPiece(d, p) for d, p in sorted(_split_laurent(f).items())]
    per = [_split_laurent(c) for c in f.comps]
    degs = sorted(set().union(*per))
    zero = LaurentFn.zero()
    return [
        HomogeneousPiece(d, TensorFn(f.side, f.n, [m.get(d, zero) for m in per]))
        for d in degs
    ]


# ---------------------------------------------------------------------------
# restriction to the real unit sphere
# ---------------------------------------------------------------------------

_HALF = gr(Fraction(1, 2))
# z_ij as linear forms in (x0, x1, x2, x3)
_Z_IN_X = (
    {(1, 0, 0, 0): ONE, (0, 0, 0, 1): -I},  # z11 = x0 - i x3
    {(0, 0, 1, 0): -ONE, (0, 1, 0, 0): -I},  # z12 = -x2 - i x1
    {(0, 0, 1, 0): ONE, (0, 1, 0, 0): -I},  # z21 = x2 - i x1
    {(1, 0, 0, 0): ONE, (0, 0, 0, 1): I},  # z22 = x0 + i x3
)


@lru_cache(maxsize=None)
def _z_power_in_x(var: int, m: int) -> tuple:
    return tuple(poly_pow(_Z_IN_X[var], m).items())


def sphere_normal_form(p: Poly) -> Poly:
    """Normal form of ``p`` modulo N - 1: no monomial contains both z11 and z22."""
    out: Poly = {}
    while p:
        p, r = poly_divmod_N(p)
        out = poly_add(out, r)
    return out


def to_real_sphere_poly(f: LaurentFn) -> Poly:
    """Restriction of ``f`` to the unit sphere as a dict on (x0, x1, x2, x3).

    On the sphere N = 1, so ``N^-k`` is dropped and the numerator is first
    reduced modulo N - 1, then the entry dictionary z_ij(x) is substituted.
    """
    out: Poly = {}
    for (a, b, c, d), coef in sphere_normal_form(f.terms).items():
        term = {(0, 0, 0, 0): coef}
        for var, m in enumerate((a, b, c, d)):
            if m:
                term = poly_mul(term, dict(_z_power_in_x(var, m)))
        out = poly_add(out, term)
    return out


# ---------------------------------------------------------------------------
# sigma map
# ---------------------------------------------------------------------------


def conj_dagger(f: TensorFn) -> TensorFn:
    """sigma(f)(Z) = f^+(Z*): conjugate coefficients, swap z12 <-> z21, flip side.

    The component array is kept as is; transposing a column tensor into a
    row tensor does not move any entry.  N(Z*) is the conjugate of N(Z), so
    the denominator power is unchanged.
    """

    def one(c: LaurentFn) -> LaurentFn:
        return LaurentFn._raw(
            {(a, cc, b, d): v.conjugate() for (a, b, cc, d), v in c.terms.items()}, c.k
        )

    side = ROW if f.side == COLUMN else COLUMN
    return TensorFn(side, f.n, [one(c) for c in f.comps])
