"""Exact algebra of n-regular functions on complexified quaternions.

Modules, bottom to top:

- ``quat_core``: Gaussian rationals and 2x2 biquaternions.
- ``tensor_space``: rank-n spinor tensors and slot operators.
- ``func_algebra``: Laurent-class functions P N^-k and tensor-valued functions.
- ``diff_ops``: nabla, nabla+, box, degree operators and D_n.
- ``reps_basis``: the F, G, F', G' families.
- ``kernel_pairing``: sphere integrals, the kernel, expansions, pairings.
- ``lie_actions``: gl(2, H_C) and group actions, K-types, unitarity.
- ``suites`` / ``cli``: the check harness behind ``nregular``.
"""

from .diff_ops import Dn, Dn_inverse, is_n_regular, nabla_plus_slot, nabla_slot
from .func_algebra import LaurentFn, TensorFn
from .kernel_pairing import bilinear_pairing, cauchy_fueter_apply, kernel, sphere_moment
from .quat_core import Biquaternion, GaussianRational, from_coords, gr
from .reps_basis import basis

__version__ = "0.1.0"

__all__ = [
    "Biquaternion",
    "GaussianRational",
    "LaurentFn",
    "TensorFn",
    "basis",
    "bilinear_pairing",
    "cauchy_fueter_apply",
    "Dn",
    "Dn_inverse",
    "from_coords",
    "gr",
    "is_n_regular",
    "kernel",
    "nabla_plus_slot",
    "nabla_slot",
    "sphere_moment",
]
