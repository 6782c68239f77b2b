"""Partial sums of the kernel expansion approaching k(Z - W) in floating point.

Run:  python3 demos/kernel_expansion.py
"""

from fractions import Fraction

from nregular.kernel_pairing import float_expansion_errors, truncated_expansion
from nregular.quat_core import from_coords

Z, W = from_coords(2), from_coords(0, Fraction(1, 2))
for form in ("FGp", "FpG"):
    errs = float_expansion_errors(2, Z, W, 8, form)
    print(f"form {form}: relative error by level l")
    for l2, e in enumerate(errs):
        print(f"  l = {Fraction(l2, 2)!s:>3}  {e:.3e}")

exp = truncated_expansion(2, 3)
print("terms per level (n = 2):", [exp.term_count(l2) for l2 in range(4)])
