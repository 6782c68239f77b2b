"""Walk through the Cauchy-Fueter reproducing formula for a rank-2 function.

Run:  python3 demos/reproducing_formula.py
"""

from fractions import Fraction

from nregular import diff_ops, kernel_pairing, reps_basis
from nregular.quat_core import from_coords

n = 2
f = reps_basis.F_basis(n, 2, 0, 0)  # l = 1, mu = 0, nu = 0
print("f = F^(2)[l=1, mu=0, nu=0]")
print("  degree:", f.degree(), " regular:", diff_ops.is_n_regular(f), " symmetric:", f.is_symmetric())

# the sphere integral only sees the coefficients <G', (Z x Z) f>, which do not depend on W
table = kernel_pairing.cauchy_fueter_coefficients(f, 2)
print("  nonzero coefficients:", {k: str(v) for k, v in table.items() if v})

for W in (from_coords(Fraction(1, 2)), from_coords(Fraction(1, 4), 0, Fraction(1, 4)), from_coords(2)):
    got = kernel_pairing.cauchy_fueter_apply(f, W, 2, table if W.norm().re < 1 else None)
    want = diff_ops.Dn(f).evaluate(W) if W.norm().re < 1 else "0"
    print(f"W = {W}  N(W) = {W.norm()}")
    print("  integral:", [str(x) for x in got.data])
    print("  D_2 f(W):", want if isinstance(want, str) else [str(x) for x in want.data])
