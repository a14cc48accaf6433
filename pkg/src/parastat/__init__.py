"""Exact construction and verification of paraboson and parafermion representations.

Representations are finite matrices over the rationals.  Order-p paraparticles
are built by iterating the Hopf coproduct on order-1 sets (bosons or
fermions), and every algebraic relation is checked as an exact identity.
"""

__version__ = "0.1.0"

from .exact import Rational, SparseMat, bracket, kron, mat_add, mat_mul  # noqa: E402
from .fock import (Statistics, SetRep, build_boson_set, build_fermion_set,  # noqa: E402
                   build_parafermion_oracle, klein_operator, number_operator)
from .algebra import (Bracket, Gen, Product, ScalarMul, Sum, VerificationResult, check_relation,  # noqa: E402
                      evaluate, vacuum_eigencheck, vacuum_generated_subspace, word_profile)
from .coproduct import CombinedRep, check_coassociativity, combine, combine_many, green_component  # noqa: E402
from .suites import Report, SuiteConfig, run_suites  # noqa: E402
