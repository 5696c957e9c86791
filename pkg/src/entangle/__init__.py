"""Entanglement of bipartite pure states from Schmidt-basis probability differences."""

from .errors import (
    EntangleError,
    InvalidInputError,
    InvalidPartitionError,
    NumericalFailureError,
    UndefinedMeasureError,
)
from .linalg import frobenius_norm, hermitian_eig, svd
from .states import (
    PureState,
    apply_local_unitaries,
    bipartition,
    product_state,
    random_pure_state,
    reduced_density_matrix,
    schmidt_diagonal_state,
)
from .schmidt import (
    ProbabilityTable,
    SchmidtDecomposition,
    correlation_matrix,
    probability_table,
    schmidt_decompose,
    separable_reference_state,
)
from .measures import (
    EntanglementReport,
    entanglement,
    entanglement_closed_form,
    entanglement_probability_sum,
    entanglement_report,
    entropy_of_entanglement,
    majorizes,
    power_sum,
    renyi2_entropy,
    two_entropy,
)
from .locc import (
    LocalMeasurementSet,
    MeasurementOutcome,
    MonotonicityTrial,
    apply_lgm,
    locc_transformable,
    monotonicity_trial,
    projective_measurement_set,
    random_measurement_set,
    random_unitary,
    trivial_measurement_set,
)

__version__ = "0.1.0"
