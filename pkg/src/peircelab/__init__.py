"""peircelab: numerical Peirce calculus, triple-spectral calculus and
Rickart-type witness constructions on finite-dimensional matrix triples,
with a seeded property-verification harness."""

from .backend import RANK_TOL, RealifiedMap, SVDResult, hermitian_eigen, svd
from .models import (TripleModel, jordan_ops, jordan_product, materialize_L, materialize_Q,
                     triple_product)
from .peirce import (PeirceDecomposition, Tripotent, is_tripotent, peirce2_algebra,
                     peirce_automorphism, peirce_decompose, tripotent_leq)
from .spectral import (PolarData, TripleSpectrum, generalized_inverse, is_regular,
                       odd_calculus, polar_decomposition, range_tripotent,
                       support_tripotent, triple_spectrum)
from .ideals import (inner_ideal_generated, is_inner_ideal, is_orthogonal,
                     orthogonal_annihilator, quadratic_annihilator_membership)
from .subspaces import Subspace
from .witnesses import (WitnessReport, finite_reversed_witness, jordan_range_projection,
                        pedersen_witness, polar_isometry_characterization,
                        weakly_rickart_witness, wor_witness)
from .approximation import (ProjectionCombo, RegularApproximation,
                            projection_approximation, regular_approximation)
from .harness import (PropertySpec, VerificationReport, default_config,
                      registered_properties, run_suite)

__version__ = "0.1.0"

__all__ = [
    "RANK_TOL", "RealifiedMap", "SVDResult", "hermitian_eigen", "svd",
    "TripleModel", "jordan_ops", "jordan_product", "materialize_L", "materialize_Q",
    "triple_product",
    "PeirceDecomposition", "Tripotent", "is_tripotent", "peirce2_algebra",
    "peirce_automorphism", "peirce_decompose", "tripotent_leq",
    "PolarData", "TripleSpectrum", "generalized_inverse", "is_regular", "odd_calculus",
    "polar_decomposition", "range_tripotent", "support_tripotent", "triple_spectrum",
    "inner_ideal_generated", "is_inner_ideal", "is_orthogonal", "orthogonal_annihilator",
    "quadratic_annihilator_membership", "Subspace",
    "WitnessReport", "finite_reversed_witness", "jordan_range_projection",
    "pedersen_witness", "polar_isometry_characterization", "weakly_rickart_witness",
    "wor_witness",
    "ProjectionCombo", "RegularApproximation", "projection_approximation",
    "regular_approximation",
    "PropertySpec", "VerificationReport", "default_config", "registered_properties",
    "run_suite",
    "__version__",
]
