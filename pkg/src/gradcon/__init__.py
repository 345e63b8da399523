"""Exact-arithmetic graded contractions of the Z2^3-graded exceptional Lie algebras f4, e6, e7, e8."""

from .contraction import ContractionMap, contract, contract_gns, epsilon_from_gns
from .gns import GnsSet, enumerate_all_gns, is_gns, parse_gns
from .isoclass import classify, compatible_sigmas, is_graded_isomorphism
from .structure import analyse, fingerprint
from .tits import LiePresentation, build_tits, tits, verify_jacobi

__all__ = [
    "ContractionMap", "GnsSet", "LiePresentation", "analyse", "build_tits", "classify",
    "compatible_sigmas", "contract", "contract_gns", "enumerate_all_gns", "epsilon_from_gns",
    "fingerprint", "is_gns", "is_graded_isomorphism", "parse_gns", "tits", "verify_jacobi",
]
__version__ = "0.1.0"
