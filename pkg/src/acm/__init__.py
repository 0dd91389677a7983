"""Graded Hilbert data and Cohen-Macaulayness certificates for symmetric
subspace arrangements, Newton-sum invariant algebras, and their deformations.

Everything is exact: coefficients live in Q or in a prime field GF(p),
never in floating point.  (numpy float64 appears only inside the mod-p
linear algebra kernels, where all intermediate values are integers below
2**53 and therefore exact.)
"""

from .scalars import QQ, GF, default_prime, second_prime
from .poly import (
    Poly,
    Partition,
    Weights,
    newton_sum,
    slice_newton,
    slice_newton_sums,
    deformed_newton,
    isotypic_gen,
)
from .series import HilbertData, numerator_from_dims, expand_rational_series, closed_form_hrs
from .linalg import EchelonBasis, span_dim, membership, solve_linear, nullspace
from .verdict import Rule, Verdict
from .subalgebra import (
    GeneratorFamily,
    SweepReport,
    subalgebra_dims,
    module_dims,
    bezout_rank,
    cm_verdict_subalgebra,
    parameter_sweep,
)
from .arrangement import (
    SubspaceSystem,
    enumerate_subspaces,
    arrangement_dims,
    quotient_dims,
    point_sample_oracle,
    cm_check_arrangement,
)
from .certify import (
    AnnihilatorPoly,
    FreenessCertificate,
    annihilator_poly,
    recursion_coefficients,
    freeness_certificate,
    quasi_invariant_check,
    quasi_invariant_dims,
)
from .classify import Verdict, classify, bbar_set, bset_report

__version__ = "0.1.0"
