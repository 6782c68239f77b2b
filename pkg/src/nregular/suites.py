"""Check suites behind the ``nregular`` command.

Each suite expands into checks with stable ids such as ``orthogonality.n2``
or ``reproduce.n2.l1``.  A check returns a record

    {"id", "suite", "reference", "params", "status", "witness"?}

and failed records always carry a JSON-serializable witness.  Randomness is
limited to picking spanning-set vectors from a seeded ``random.Random``;
verdicts are exact.
"""

from __future__ import annotations

import os
import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .diff_ops import (
    Dn,
    Dn_inverse,
    deg_op,
    laplacian,
    laplacian_x,
    mul_by_Z,
    mul_by_Z_plus,
    nabla_plus_slot,
    nabla_plus_slot_x,
    nabla_slot,
    nabla_slot_x,
    regularity_report,
)
from .func_algebra import LaurentFn, TensorFn, conj_dagger
from .kernel_pairing import (
    bilinear_pairing,
    cauchy_fueter_apply,
    cauchy_fueter_coefficients,
    deg_switch_check,
    expansion_taylor,
    float_expansion_errors,
    inner_product_F,
    integrate_S3,
    integrate_S3_z,
    kernel_taylor,
    laurent_coefficients,
    laurent_coefficients_right,
    pairing_at_radius,
    reconstruct,
    row_times_Z,
    truncated_expansion,
)
from .lie_actions import (
    INVERSION,
    MATRIX_UNITS,
    act_algebra_left,
    act_algebra_right,
    act_group,
    bracket,
    generation_check,
    ktype_census,
    one_block_generators,
    regularity_preservation_check,
    sigma_intertwine_check,
    torus_weight_check,
    unitarity_check,
)
from .quat_core import E_UNITS, ONE, Biquaternion, I, NonInvertible, from_coords, gr, matrix_to_coords
from .reps_basis import (
    FAMILIES,
    basis,
    family_degree,
    family_side,
    half_str,
    index_range,
    indices,
    recursion_check,
)
from .tensor_space import (
    COLUMN,
    MAX_RANK,
    ROW,
    SpinorTensor,
    casimir_slot_sum,
    symmetric_basis,
    symmetrize,
)

__all__ = [
    "SUITES",
    "SPACES",
    "ConfigError",
    "SuiteConfig",
    "run",
    "explain",
    "check_ids",
    "parse_half",
    "random_regular",
    "INTERIOR_POINTS",
    "EXTERIOR_POINTS",
]

SUITES = ("algebra", "tensor", "diffops", "basis", "kernel", "pairing", "reproduce", "lie", "ktypes", "unitary")
SPACES = ("F+", "F-", "G+", "G-")
SCHEMA = "nregular-report/1"
DEFAULT_L2_CAP = 5  # l_max <= 5/2 unless explicitly lifted

# Real rational points inside and outside the unit sphere.
INTERIOR_POINTS = (
    from_coords(Fraction(1, 2)),
    from_coords(0, Fraction(1, 3)),
    from_coords(Fraction(1, 4), Fraction(-1, 4), Fraction(1, 2)),
    from_coords(Fraction(1, 5), Fraction(1, 5), Fraction(1, 5), Fraction(1, 5)),
    from_coords(0, 0, Fraction(-2, 3), Fraction(1, 3)),
)
EXTERIOR_POINTS = (
    from_coords(2),
    from_coords(1, 1, 1),
    from_coords(0, Fraction(-3, 2), 1, Fraction(1, 2)),
)


class ConfigError(ValueError):
    """Invalid suite configuration (bad suite name, n out of range, l_max too big)."""


def parse_half(text: str) -> int:
    """'3/2' -> 3, '2' -> 4: twice a nonnegative half-integer."""
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a half-integer: {text!r}") from None
    if v < 0 or (2 * v).denominator != 1:
        raise ConfigError(f"not a nonnegative half-integer: {text!r}")
    return int(2 * v)


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple = SUITES
    n_range: tuple = (1, 2, 3)
    l2_max: int = 3
    seed: int = 0
    allow_large: bool = False

    def __post_init__(self):
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suite(s): {', '.join(bad)}; choose from {', '.join(SUITES)}")
        if not self.suites:
            raise ConfigError("no suites selected")
        if not self.n_range:
            raise ConfigError("empty n range")
        for n in self.n_range:
            if not 1 <= n <= MAX_RANK:
                raise ConfigError(f"n = {n} outside 1..{MAX_RANK}")
        if self.l2_max < 0:
            raise ConfigError("l_max must be nonnegative")
        if self.l2_max > DEFAULT_L2_CAP and not self.allow_large:
            raise ConfigError(f"l_max = {half_str(self.l2_max)} exceeds 5/2; pass --allow-large to run it anyway")
        object.__setattr__(self, "suites", tuple(s for s in SUITES if s in self.suites))
        object.__setattr__(self, "n_range", tuple(sorted(set(self.n_range))))

    def as_dict(self) -> dict:
        return {
            "suites": list(self.suites),
            "n": list(self.n_range),
            "lmax": half_str(self.l2_max),
            "seed": self.seed,
        }


# ---------------------------------------------------------------------------
# check registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckKind:
    pattern: str
    suite: str
    statement: str
    per_n: bool = True
    fields: tuple = ()

    def match(self, check_id: str):
        return re.fullmatch(self.pattern, check_id)


_N = r"\.n(?P<n>[1-4])"
_SPACE = r"(?P<space>[FG][+-])"

KINDS = (
    CheckKind(r"algebra\.units", "algebra", "The units e1, e2, e3 square to -1 and multiply cyclically, e1 e2 = e3; e0 is the identity.", False),
    CheckKind(r"algebra\.norm", "algebra", "The quadratic norm is the determinant and is multiplicative: N(XY) = N(X) N(Y).", False),
    CheckKind(r"algebra\.adjugate", "algebra", "Z Z+ = Z+ Z = N(Z) and Z Z^-1 = 1 whenever N(Z) is nonzero.", False),
    CheckKind(r"algebra\.coords", "algebra", "Coordinates in the basis e0..e3 round-trip through the matrix form.", False),
    CheckKind(r"tensor\.casimir" + _N, "tensor", "sum_i e_i (slot j) e_i (slot k) vanishes on symmetric tensors for every slot pair j < k and acts as 4 on tensors antisymmetric in j, k."),
    CheckKind(r"tensor\.symmetrize" + _N, "tensor", "Symmetrization is idempotent, fixes symmetric tensors and always returns a symmetric tensor."),
    CheckKind(r"diffops\.deg_nabla", "diffops", "2(deg+2) = Z+ nabla+ + nabla Z = nabla+ Z+ + Z nabla on Laurent monomials of degree |d| <= 4.", False),
    CheckKind(r"diffops\.box", "diffops", "nabla+ nabla = nabla nabla+ = box, the four-variable Laplacian, on Laurent monomials of degree |d| <= 4.", False),
    CheckKind(r"diffops\.xform", "diffops", "The entry-derivative forms of nabla, nabla+ and box agree with their definitions in the real coordinates x0..x3.", False),
    CheckKind(r"diffops\.dn_inverse" + _N, "diffops", "D_n = (deg+n)...(deg+2) and its inverse compose to the identity on random Laurent-class n-regular functions."),
    CheckKind(r"basis\.regular" + _N, "basis", "Every F, G, F', G' up to l_max is annihilated by nabla+ in each slot on its proper side, is symmetric, and has its predicted degree."),
    CheckKind(r"basis\.recursion" + _N, "basis", "The slot recursions relating rank n and rank n-1 members of each family hold exactly."),
    CheckKind(r"kernel\.taylor\.(?P<form>FGp|FpG)" + _N, "kernel", "The truncated expansion sum F(W) G'(Z) (form FGp) or sum F'(Z) G(W) (form FpG) has the same W-Taylor coefficients as k(Z - W) through W-degree 2."),
    CheckKind(r"kernel\.float" + _N, "kernel", "At Z = 2 e0, W = e1/2 the partial sums of both expansions approach k(Z - W) monotonically, with relative error below 1e-3 at l_max = 4."),
    CheckKind(r"orthogonality" + _N, "pairing", "<F_(l,mu,nu), G'_(l',mu',nu')> = delta, <F'_(l,mu,nu), G_(l',mu',nu')> = (-1)^(n-1) delta, and <F, G> = <F', G'> = 0 over all indices up to l_max."),
    CheckKind(r"pairing\.routes" + _N, "pairing", "The sphere integral computed from the z-moment formula equals the one computed through real coordinates and the x-moment table."),
    CheckKind(r"pairing\.deg_switch" + _N, "pairing", "<D_n f, g> equals the raw integral pairing of f and g (the D_n^-1 in the pairing undoes D_n)."),
    CheckKind(r"pairing\.radius" + _N, "pairing", "The pairing integral over the sphere of radius R does not depend on R for regular f and g."),
    CheckKind(r"pairing\.laurent" + _N, "pairing", "Laurent coefficients read off by pairing with G', G (left) or F, F' (right) reconstruct random n-regular functions exactly."),
    CheckKind(r"reproduce" + _N + r"\.l(?P<l>\d+(?:/2)?)", "reproduce", "For every F_(l,m,n), the sphere integral of k(Z - W)(Z x..x Dz x..x Z) f(Z) equals D_n f(W) at interior points W and vanishes at exterior points."),
    CheckKind(r"lie\.bracket" + _N, "lie", "The infinitesimal left and right actions respect brackets: pi([X, Y]) = [pi(X), pi(Y)] on the 16 one-block generators."),
    CheckKind(r"lie\.regularity" + _N, "lie", "The 16 one-block generators map n-regular basis functions to n-regular functions."),
    CheckKind(r"lie\.invariance" + _N, "lie", "<pi_l(X) f, g> + <f, pi_r(X) g> = 0 for the 16 one-block generators on complementary pairs (F, G') and (F', G), l <= 1."),
    CheckKind(r"lie\.sigma" + _N, "lie", "sigma intertwines the B and C blocks: sigma(pi_l(X) f) = pi_r(X*) sigma(f) with the block entry replaced by its adjoint."),
    CheckKind(r"lie\.torus" + _N, "lie", "diag(1, diag(lam, 1/lam)) multiplies F_(l,-l-n/2,nu) by lam^(2l+n)."),
    CheckKind(r"lie\.inner" + _N, "lie", "The inner product (f1, f2) equals the bilinear pairing <f1, sigma(pi(inversion) f2)>."),
    CheckKind(r"ktypes\.census\." + _SPACE + _N, "ktypes", "Each degree block has dimension (2l+1)(2l+n+1) on its support and 0 in the gap; the family span and the solution count of the regularity equations both match."),
    CheckKind(r"ktypes\.generation\." + _SPACE + _N, "ktypes", "B-block generators lower and C-block generators raise the degree of every basis vector by one, staying inside the space."),
    CheckKind(r"unitary\." + _SPACE + _N, "unitary", "The inner product is definite on each degree block through l = 1 and every u(2,2) generator is skew-Hermitian for it."),
)


def _kind_of(check_id: str):
    for kind in KINDS:
        m = kind.match(check_id)
        if m:
            return kind, m.groupdict()
    return None, None


def explain(check_id: str) -> str:
    """Statement and parameters of a check id; ValueError on unknown ids."""
    kind, params = _kind_of(check_id)
    if kind is None:
        raise ValueError(f"unknown check id {check_id!r}")
    lines = [check_id, f"  suite: {kind.suite}", f"  statement: {kind.statement}"]
    for key in ("n", "l", "form", "space"):
        if params.get(key):
            lines.append(f"  {key}: {params[key]}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _record(check_id: str, ok: bool, params: dict, witness=None) -> dict:
    kind, _ = _kind_of(check_id)
    rec = {
        "id": check_id,
        "suite": kind.suite,
        "reference": kind.statement,
        "params": params,
        "status": "pass" if ok else "fail",
    }
    if not ok:
        rec["witness"] = witness if witness is not None else {"note": "no detail recorded"}
    return rec


def _q_json(q: Biquaternion) -> list:
    return [str(x) for x in q.entries]


def _rand_gi(rng: random.Random, r: int = 3):
    while True:
        c = gr(rng.randint(-r, r), rng.randint(-r, r))
        if c:
            return c


def _rand_q(rng: random.Random) -> Biquaternion:
    return Biquaternion(*(gr(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(4)))


def random_regular(n: int, l2_max: int, rng: random.Random, side: str = COLUMN, terms: int = 3) -> TensorFn:
    """Gaussian-integer combination of F and F' (or G and G') members up to l2_max."""
    fams = ("F", "Fp") if side == COLUMN else ("G", "Gp")
    idx = list(indices(n, l2_max))
    acc = TensorFn.zero(side, n)
    while acc.is_zero():
        for _ in range(terms):
            acc = acc + basis(rng.choice(fams), n, *rng.choice(idx)) * _rand_gi(rng)
    return acc


def _members(fam: str, n: int, l2_max: int):
    for l2, mu2, nu2 in indices(n, l2_max):
        yield (l2, mu2, nu2), basis(fam, n, l2, mu2, nu2)


def _label(fam: str, idx) -> str:
    l2, mu2, nu2 = idx
    return f"{fam}({half_str(l2)},{half_str(mu2)},{half_str(nu2)})"


def _laurent_monomials(dmax: int = 4):
    """Monomials z^a N^-k with degree |a| - 2k in [-dmax, dmax], k in {kmin, kmin+1}."""
    for d in range(-dmax, dmax + 1):
        kmin = max(0, -(d // 2) if d % 2 == 0 else (-d + 1) // 2)
        for k in (kmin, kmin + 1):
            m = d + 2 * k
            for a in range(m + 1):
                for b in range(m + 1 - a):
                    for c in range(m + 1 - a - b):
                        yield LaurentFn({(a, b, c, m - a - b - c): 1}, k)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _algebra(cfg: SuiteConfig, n, rng: random.Random) -> Iterator[dict]:
    e0, e1, e2, e3 = E_UNITS
    minus_one = Biquaternion.scalar(-1)
    units_ok = (
        all(e * e == minus_one for e in (e1, e2, e3))
        and e1 * e2 == e3 and e2 * e3 == e1 and e3 * e1 == e2
        and e2 * e1 == -e3
        and all(e0 * e == e == e * e0 for e in E_UNITS)
    )
    yield _record("algebra.units", units_ok, {})

    pairs = [(_rand_q(rng), _rand_q(rng)) for _ in range(20)]
    bad = [(X, Y) for X, Y in pairs if (X * Y).norm() != X.norm() * Y.norm()]
    bad += [(X, X) for X, _ in pairs if X.norm() != X.z11 * X.z22 - X.z12 * X.z21]
    yield _record("algebra.norm", not bad, {"samples": len(pairs)},
                  {"X": _q_json(bad[0][0]), "Y": _q_json(bad[0][1])} if bad else None)

    bad_adj = []
    for X, _ in pairs:
        Nq = Biquaternion.scalar(X.norm())
        if X * X.conj_plus() != Nq or X.conj_plus() * X != Nq:
            bad_adj.append(X)
            continue
        try:
            if X * X.inverse() != Biquaternion.scalar(1):
                bad_adj.append(X)
        except NonInvertible:
            pass
    yield _record("algebra.adjugate", not bad_adj, {"samples": len(pairs)},
                  {"Z": _q_json(bad_adj[0])} if bad_adj else None)

    bad_c = [X for X, _ in pairs if from_coords(*matrix_to_coords(X)) != X]
    yield _record("algebra.coords", not bad_c, {"samples": len(pairs)},
                  {"Z": _q_json(bad_c[0])} if bad_c else None)


def _tensor(cfg: SuiteConfig, n: int, rng: random.Random) -> Iterator[dict]:
    sym = symmetric_basis(COLUMN, n) + symmetric_basis(ROW, n)
    witness = None
    four = gr(4)
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            for t in sym:
                if witness is None and not casimir_slot_sum(t, j, k).is_zero():
                    witness = {"slots": [j, k], "tensor": [str(x) for x in t.data], "side": t.side}
            # e_b - e_b' with b' the (j, k) swap of b, for every b with b_j = 1, b_k = 2
            for side in (COLUMN, ROW):
                for i in range(1 << n):
                    if (i >> (n - j)) & 1 or not (i >> (n - k)) & 1:
                        continue
                    swapped = i ^ (1 << (n - j)) ^ (1 << (n - k))
                    data = [gr(0)] * (1 << n)
                    data[i], data[swapped] = ONE, -ONE
                    t = SpinorTensor(side, n, data)
                    if witness is None and casimir_slot_sum(t, j, k) != t * four:
                        witness = {"slots": [j, k], "antisymmetric": [str(x) for x in data], "side": side}
    yield _record(f"tensor.casimir.n{n}", witness is None, {"n": n}, witness)

    witness = None
    for side in (COLUMN, ROW):
        for s in symmetric_basis(side, n):
            if symmetrize(s) != s:
                witness = {"fixed": [str(x) for x in s.data]}
        for _ in range(5):
            t = SpinorTensor(side, n, [_rand_gi(rng) for _ in range(1 << n)])
            st = symmetrize(t)
            if not st.is_symmetric() or symmetrize(st) != st:
                witness = {"tensor": [str(x) for x in t.data]}
    yield _record(f"tensor.symmetrize.n{n}", witness is None, {"n": n}, witness)


def _column(f: LaurentFn, i: int) -> TensorFn:
    zero = LaurentFn.zero()
    return TensorFn(COLUMN, 1, [f if j == i else zero for j in range(2)])


def _diffops_common(cfg: SuiteConfig, n, rng: random.Random) -> Iterator[dict]:
    two = gr(2)
    bad_deg = bad_box = None
    count = 0
    for f in _laurent_monomials(4):
        for i in (0, 1):
            F = _column(f, i)
            count += 1
            lhs = (deg_op(F) + F * two) * two
            r1 = mul_by_Z_plus(nabla_plus_slot(F, 1), 1) + nabla_slot(mul_by_Z(F, 1), 1)
            r2 = nabla_plus_slot(mul_by_Z_plus(F, 1), 1) + mul_by_Z(nabla_slot(F, 1), 1)
            if bad_deg is None and not (lhs == r1 == r2):
                bad_deg = {"f": f.to_json(), "column": i + 1}
            box = F.map(laplacian)
            if bad_box is None and not (nabla_plus_slot(nabla_slot(F, 1), 1) == box == nabla_slot(nabla_plus_slot(F, 1), 1)):
                bad_box = {"f": f.to_json(), "column": i + 1}
    yield _record("diffops.deg_nabla", bad_deg is None, {"functions": count}, bad_deg)
    yield _record("diffops.box", bad_box is None, {"functions": count}, bad_box)

    bad_x = None
    for f in _laurent_monomials(2):
        if laplacian_x(f) != laplacian(f):
            bad_x = {"f": f.to_json(), "op": "box"}
            break
        for i in (0, 1):
            F = _column(f, i)
            if nabla_plus_slot_x(F, 1) != nabla_plus_slot(F, 1):
                bad_x = {"f": f.to_json(), "op": "nabla+"}
            elif nabla_slot_x(F, 1) != nabla_slot(F, 1):
                bad_x = {"f": f.to_json(), "op": "nabla"}
        if bad_x:
            break
    yield _record("diffops.xform", bad_x is None, {}, bad_x)


def _diffops(cfg: SuiteConfig, n: int, rng: random.Random) -> Iterator[dict]:
    witness = None
    for _ in range(20):
        f = random_regular(n, cfg.l2_max, rng)
        if Dn(Dn_inverse(f)) != f or Dn_inverse(Dn(f)) != f:
            witness = {"f": f.to_json()}
            break
    yield _record(f"diffops.dn_inverse.n{n}", witness is None, {"n": n, "samples": 20, "lmax": half_str(cfg.l2_max)}, witness)


def _basis(cfg: SuiteConfig, n: int, rng: random.Random) -> Iterator[dict]:
    witness = None
    count = 0
    for fam in FAMILIES:
        side = family_side(fam)
        for idx, f in _members(fam, n, cfg.l2_max):
            count += 1
            rep = regularity_report(f)
            if f.side != side or not rep["regular"] or not rep["symmetric"] or f.degree() != family_degree(fam, n, idx[0]):
                witness = {"function": _label(fam, idx), "failing_slots": rep["failing_slots"],
                           "symmetric": rep["symmetric"], "degree": f.degree()}
                break
        if witness:
            break
    yield _record(f"basis.regular.n{n}", witness is None, {"n": n, "lmax": half_str(cfg.l2_max), "functions": count}, witness)
    if n >= 2:
        reports = [recursion_check(fam, n, cfg.l2_max) for fam in FAMILIES]
        bad = [r for r in reports if r["mismatches"]]
        yield _record(f"basis.recursion.n{n}", not bad,
                      {"n": n, "lmax": half_str(cfg.l2_max), "checked": sum(r["checked"] for r in reports)},
                      {"family": bad[0]["family"], "mismatches": [str(m) for m in bad[0]["mismatches"][:5]]} if bad else None)


_SPOT_Z = from_coords(2)
_SPOT_W = from_coords(0, Fraction(1, 2))


def _kernel(cfg: SuiteConfig, n: int, rng: random.Random) -> Iterator[dict]:
    K = kernel_taylor(n, 2)
    for form in ("FGp", "FpG"):
        E = expansion_taylor(truncated_expansion(n, 2, form), 2)
        keys = sorted(set(K) | set(E))
        bad = [k for k in keys if K.get(k) != E.get(k)]
        yield _record(f"kernel.taylor.{form}.n{n}", not bad, {"n": n, "w_degree": 2, "coefficients": len(keys)},
                      {"w_exponent": list(bad[0])} if bad else None)
    errs = {form: float_expansion_errors(n, _SPOT_Z, _SPOT_W, 8, form) for form in ("FGp", "FpG")}
    ok = all(
        e[-1] < 1e-3 and all(b < a for a, b in zip(e, e[1:]))
        for e in errs.values()
    )
    yield _record(f"kernel.float.n{n}", ok, {"n": n, "lmax": "4", "final_error": {k: f"{v[-1]:.3e}" for k, v in errs.items()}},
                  {"errors": {k: [f"{x:.3e}" for x in v] for k, v in errs.items()}})


def orthogonality_failures(n: int, l2_max: int) -> list[dict]:
    """Entries of the full pairing matrix that break the delta pattern."""
    sign = gr((-1) ** (n - 1))
    out = []
    lefts = {fam: list(_members(fam, n, l2_max)) for fam in ("F", "Fp")}
    rights = {fam: list(_members(fam, n, l2_max)) for fam in ("G", "Gp")}
    expect_diag = {("F", "Gp"): ONE, ("Fp", "G"): sign}
    for lf, fs in lefts.items():
        for rf, gs in rights.items():
            diag = expect_diag.get((lf, rf))
            for i1, f in fs:
                for i2, g in gs:
                    want = diag if (diag is not None and i1 == i2) else gr(0)
                    got = bilinear_pairing(f, g)
                    if got != want:
                        out.append({"f": _label(lf, i1), "g": _label(rf, i2), "got": str(got), "want": str(want)})
    return out


def _pairing(cfg: SuiteConfig, n: int, rng: random.Random) -> Iterator[dict]:
    fails = orthogonality_failures(n, cfg.l2_max)
    nidx = len(list(indices(n, cfg.l2_max)))
    yield _record(f"orthogonality.n{n}", not fails, {"n": n, "lmax": half_str(cfg.l2_max), "entries": 4 * nidx * nidx},
                  fails[0] if fails else None)

    lmax_small = min(cfg.l2_max, 2)
    fs = [f for fam in ("F", "Fp") for _, f in _members(fam, n, lmax_small)]
    gs = [g for fam in ("G", "Gp") for _, g in _members(fam, n, lmax_small)]
    witness = None
    for _ in range(6):
        f, g = rng.choice(fs), rng.choice(gs)
        h = row_times_Z(g)
        for a, b in zip(h.comps, f.comps):
            prod = a * b
            if integrate_S3(prod) != integrate_S3_z(prod):
                witness = {"integrand": prod.to_json()}
                break
    yield _record(f"pairing.routes.n{n}", witness is None, {"n": n, "samples": 6}, witness)

    witness = None
    for _ in range(6):
        f, g = random_regular(n, lmax_small, rng), random_regular(n, lmax_small, rng, ROW)
        if not deg_switch_check(f, g):
            witness = {"f": f.to_json(), "g": g.to_json()}
            break
    yield _record(f"pairing.deg_switch.n{n}", witness is None, {"n": n, "samples": 6}, witness)

    witness = None
    radii = (Fraction(2), Fraction(3, 5))
    for _ in range(6):
        f, g = rng.choice(fs), rng.choice(gs)
        base = pairing_at_radius(f, g, 1)
        for R in radii:
            if pairing_at_radius(f, g, R) != base:
                witness = {"f": f.to_json(), "g": g.to_json(), "R": str(R)}
    yield _record(f"pairing.radius.n{n}", witness is None, {"n": n, "samples": 6, "radii": [str(r) for r in radii]}, witness)

    witness = None
    for _ in range(5):
        for side in (COLUMN, ROW):
            f = random_regular(n, cfg.l2_max, rng, side)
            if side == COLUMN:
                back = reconstruct(n, laurent_coefficients(f, cfg.l2_max), COLUMN)
            else:
                back = reconstruct(n, laurent_coefficients_right(f, cfg.l2_max), ROW)
            if back != f:
                witness = {"f": f.to_json()}
    yield _record(f"pairing.laurent.n{n}", witness is None, {"n": n, "samples": 10, "lmax": half_str(cfg.l2_max)}, witness)


def reproduce_failures(n: int, l2: int, l2_max: int | None = None) -> list[dict]:
    """Interior and exterior mismatches of the reproducing formula at level l2."""
    l2_max = l2 if l2_max is None else max(l2, l2_max)
    out = []
    mus, nus = index_range(n, l2)
    for mu2 in mus:
        for nu2 in nus:
            f = basis("F", n, l2, mu2, nu2)
            coeffs = cauchy_fueter_coefficients(f, l2_max)
            df = Dn(f)
            for W in INTERIOR_POINTS:
                got = cauchy_fueter_apply(f, W, l2_max, coeffs)
                if got != df.evaluate(W):
                    out.append({"f": _label("F", (l2, mu2, nu2)), "W": _q_json(W), "case": "interior"})
            for W in EXTERIOR_POINTS:
                if not cauchy_fueter_apply(f, W, l2_max).is_zero():
                    out.append({"f": _label("F", (l2, mu2, nu2)), "W": _q_json(W), "case": "exterior"})
    return out


def _reproduce(cfg: SuiteConfig, n: int, rng: random.Random) -> Iterator[dict]:
    for l2 in range(cfg.l2_max + 1):
        fails = reproduce_failures(n, l2)
        yield _record(f"reproduce.n{n}.l{half_str(l2)}", not fails,
                      {"n": n, "l": half_str(l2), "interior_points": len(INTERIOR_POINTS), "exterior_points": len(EXTERIOR_POINTS)},
                      fails[0] if fails else None)


def _lie(cfg: SuiteConfig, n: int, rng: random.Random) -> Iterator[dict]:
    gens = one_block_generators()
    l2s = min(cfg.l2_max, 2)
    sample = [basis(fam, n, *rng.choice(list(indices(n, 1)))) for fam in FAMILIES]
    witness = None
    for f in sample:
        act = act_algebra_left if f.side == COLUMN else act_algebra_right
        for X in gens:
            xf = act(X, f)
            for Y in gens:
                lhs = act(bracket(X, Y), f)
                if lhs != act(X, act(Y, f)) - act(Y, xf):
                    witness = {"X": X.label(), "Y": Y.label(), "f": f.to_json()}
                    break
            if witness:
                break
        if witness:
            break
    yield _record(f"lie.bracket.n{n}", witness is None, {"n": n, "functions": len(sample), "generators": len(gens)}, witness)

    witness = None
    for fam in FAMILIES:
        for idx, f in _members(fam, n, l2s):
            for X in gens:
                if not regularity_preservation_check(X, f):
                    witness = {"X": X.label(), "f": _label(fam, idx)}
                    break
            if witness:
                break
        if witness:
            break
    yield _record(f"lie.regularity.n{n}", witness is None, {"n": n, "lmax": half_str(l2s)}, witness)

    witness = None
    checked = 0
    for lf, rf in (("F", "Gp"), ("Fp", "G")):
        fs = list(_members(lf, n, 2))
        gs = list(_members(rf, n, 2))
        for X in gens:
            xfs = [act_algebra_left(X, f) for _, f in fs]
            xgs = [act_algebra_right(X, g) for _, g in gs]
            for (i1, f), xf in zip(fs, xfs):
                for (i2, g), xg in zip(gs, xgs):
                    # l and l' differ by at most 1
                    if abs(i1[0] - i2[0]) > 2:
                        continue
                    checked += 1
                    if bilinear_pairing(xf, g) + bilinear_pairing(f, xg):
                        witness = {"X": X.label(), "f": _label(lf, i1), "g": _label(rf, i2)}
    yield _record(f"lie.invariance.n{n}", witness is None, {"n": n, "lmax": "1", "pairs": checked}, witness)

    witness = None
    extra = (E_UNITS[1] * I, from_coords(1, 2, 3, 4) * gr(1, 1))
    for fam in ("F", "Fp"):
        for idx, f in _members(fam, n, l2s):
            for blk in "BC":
                for q in MATRIX_UNITS + extra:
                    if not sigma_intertwine_check(blk, q, f):
                        witness = {"block": blk, "q": _q_json(q), "f": _label(fam, idx)}
    yield _record(f"lie.sigma.n{n}", witness is None, {"n": n, "lmax": half_str(l2s)}, witness)

    witness = None
    for l2 in range(l2s + 1):
        for nu2 in index_range(n, l2)[1]:
            if not torus_weight_check(n, l2, nu2):
                witness = {"l": half_str(l2), "nu": half_str(nu2)}
    yield _record(f"lie.torus.n{n}", witness is None, {"n": n, "lmax": half_str(l2s), "lambda": "3/5+4/5*i"}, witness)

    witness = None
    for fam in ("F", "Fp"):
        fs = list(_members(fam, n, min(l2s, 2)))
        for i1, a in fs:
            for i2, b in fs:
                if inner_product_F(a, b) != bilinear_pairing(a, conj_dagger(act_group(INVERSION, b))):
                    witness = {"f1": _label(fam, i1), "f2": _label(fam, i2)}
    yield _record(f"lie.inner.n{n}", witness is None, {"n": n, "lmax": half_str(min(l2s, 2))}, witness)


def _ktypes(cfg: SuiteConfig, n: int, rng: random.Random) -> Iterator[dict]:
    for space in SPACES:
        rows = ktype_census(space, n, cfg.l2_max)
        bad = [r for r in rows if not r["expected"] == r["span"] == r["oracle"]]
        yield _record(f"ktypes.census.{space}.n{n}", not bad, {"n": n, "lmax": half_str(cfg.l2_max), "degrees": [r["degree"] for r in rows]},
                      bad[0] if bad else None)
    for space in SPACES:
        results = [generation_check(space, n, r["degree"], cfg.l2_max)
                   for r in ktype_census(space, n, cfg.l2_max) if r["expected"]]
        bad = [r for r in results if not (r["down"] and r["up"] and r["closed"])]
        yield _record(f"ktypes.generation.{space}.n{n}", not bad, {"n": n, "lmax": half_str(cfg.l2_max), "degrees": [r["degree"] for r in results]},
                      bad[0] if bad else None)


def _unitary(cfg: SuiteConfig, n: int, rng: random.Random) -> Iterator[dict]:
    l2s = min(cfg.l2_max, 2)
    for space in SPACES:
        rep = unitarity_check(space, n, l2s)
        signs = rep["block_signs"]
        ok = not rep["invariance_failures"] and len(set(signs.values())) == 1 and 0 not in signs.values()
        yield _record(f"unitary.{space}.n{n}", ok,
                      {"n": n, "lmax": half_str(l2s), "block_signs": {str(d): s for d, s in sorted(signs.items())}},
                      {"block_signs": {str(d): s for d, s in sorted(signs.items())},
                       "invariance_failures": [str(x) for x in rep["invariance_failures"][:5]]})


# suite -> [(fn, per_n)]
_RUNNERS: dict[str, list[tuple[Callable, bool]]] = {
    "algebra": [(_algebra, False)],
    "tensor": [(_tensor, True)],
    "diffops": [(_diffops_common, False), (_diffops, True)],
    "basis": [(_basis, True)],
    "kernel": [(_kernel, True)],
    "pairing": [(_pairing, True)],
    "reproduce": [(_reproduce, True)],
    "lie": [(_lie, True)],
    "ktypes": [(_ktypes, True)],
    "unitary": [(_unitary, True)],
}


def _tasks(cfg: SuiteConfig) -> list[tuple[str, int, int | None]]:
    out = []
    for suite in cfg.suites:
        for pos, (_, per_n) in enumerate(_RUNNERS[suite]):
            if per_n:
                out.extend((suite, pos, n) for n in cfg.n_range)
            else:
                out.append((suite, pos, None))
    return out


def _run_task(cfg: SuiteConfig, task) -> tuple[list[dict], float]:
    suite, pos, n = task
    fn = _RUNNERS[suite][pos][0]
    # one generator per task, so results do not depend on scheduling
    rng = random.Random(f"{cfg.seed}:{suite}:{pos}:{n}")
    t0 = time.perf_counter()
    recs = []
    try:
        recs.extend(fn(cfg, n, rng))
    except Exception as exc:  # a crashing check is a failed check
        tag = f"{suite}.error" + (f".n{n}" if n else "")
        recs.append({
            "id": tag,
            "suite": suite,
            "reference": "the suite raised instead of returning a verdict",
            "params": {"n": n},
            "status": "fail",
            "witness": {"exception": f"{type(exc).__name__}: {exc}"},
        })
    return recs, time.perf_counter() - t0


def worker_count(n_tasks: int) -> int:
    env = os.environ.get("NREGULAR_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            raise ConfigError(f"NREGULAR_THREADS must be a positive integer, got {env!r}") from None
    return max(1, min(cap, n_tasks))


def check_ids(cfg: SuiteConfig) -> list[str]:
    """Ids the config would produce, without running anything expensive."""
    ids = []
    for suite, pos, n in _tasks(cfg):
        fn = _RUNNERS[suite][pos][0]
        if fn is _algebra:
            ids += ["algebra.units", "algebra.norm", "algebra.adjugate", "algebra.coords"]
        elif fn is _diffops_common:
            ids += ["diffops.deg_nabla", "diffops.box", "diffops.xform"]
        elif fn is _diffops:
            ids.append(f"diffops.dn_inverse.n{n}")
        elif fn is _tensor:
            ids += [f"tensor.casimir.n{n}", f"tensor.symmetrize.n{n}"]
        elif fn is _basis:
            ids.append(f"basis.regular.n{n}")
            if n >= 2:
                ids.append(f"basis.recursion.n{n}")
        elif fn is _kernel:
            ids += [f"kernel.taylor.FGp.n{n}", f"kernel.taylor.FpG.n{n}", f"kernel.float.n{n}"]
        elif fn is _pairing:
            ids += [f"orthogonality.n{n}"] + [f"pairing.{k}.n{n}" for k in ("routes", "deg_switch", "radius", "laurent")]
        elif fn is _reproduce:
            ids += [f"reproduce.n{n}.l{half_str(l2)}" for l2 in range(cfg.l2_max + 1)]
        elif fn is _lie:
            ids += [f"lie.{k}.n{n}" for k in ("bracket", "regularity", "invariance", "sigma", "torus", "inner")]
        elif fn is _ktypes:
            ids += [f"ktypes.{k}.{s}.n{n}" for k in ("census", "generation") for s in SPACES]
        elif fn is _unitary:
            ids += [f"unitary.{s}.n{n}" for s in SPACES]
    return sorted(ids)


@dataclass
class SuiteReport:
    config: dict
    checks: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c["status"] != "pass")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def totals(self) -> dict:
        return {"checks": len(self.checks), "passed": len(self.checks) - self.failed, "failed": self.failed}

    def to_dict(self, timing: bool = False) -> dict:
        out = {"schema": SCHEMA, "config": self.config, "totals": self.totals(), "checks": self.checks}
        if timing:
            out["timing"] = self.timing
        return out

    def to_text(self, timing: bool = True) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"{'PASS' if c['status'] == 'pass' else 'FAIL'}  {c['id']}")
            if c["status"] != "pass" and "witness" in c:
                lines.append(f"      witness: {c['witness']}")
        t = self.totals()
        lines.append(f"{t['passed']}/{t['checks']} checks passed, {t['failed']} failed")
        if timing and self.timing:
            lines.append(f"wall time {self.timing['total']:.1f} s")
        return "\n".join(lines)


def run(cfg: SuiteConfig, workers: int | None = None) -> SuiteReport:
    tasks = _tasks(cfg)
    workers = worker_count(len(tasks)) if workers is None else workers
    t0 = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, [cfg] * len(tasks), tasks))
    else:
        results = [_run_task(cfg, t) for t in tasks]
    report = SuiteReport(cfg.as_dict())
    per_suite: dict[str, float] = {}
    for (suite, _, _), (recs, secs) in zip(tasks, results):
        report.checks.extend(recs)
        per_suite[suite] = per_suite.get(suite, 0.0) + secs
    report.checks.sort(key=lambda c: c["id"])
    report.timing = {"total": time.perf_counter() - t0, "suites": per_suite, "workers": workers}
    return report
