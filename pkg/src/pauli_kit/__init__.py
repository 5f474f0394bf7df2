"""Quantum channel semigroup toolkit for small dense systems.

Decides whether a channel embeds in a continuous one-parameter semigroup,
constructs the generator and time evolution when it does, and realizes the
geometric and unistochastic structure of single-qubit Pauli channels.
"""

from .channel import (
    BlochForm,
    ChannelRep,
    ChoiMatrix,
    CPVerdict,
    KrausSet,
    Superoperator,
    bloch_to_super,
    canonical_diagonal_form,
    choi_to_kraus,
    choi_to_super,
    is_completely_positive,
    is_trace_preserving,
    is_unital,
    kraus_to_super,
    spectrum_diagnostics,
    super_to_bloch,
    super_to_choi,
    to_choi,
    to_super,
)
from .geometry import (
    GridSample,
    RegionLabel,
    classical_semigroup_check,
    classify,
    cross_section_grid,
    export_grid,
    star_shape_witness,
    tetrahedron_grid,
)
from .linalg import (
    Spectrum,
    eig,
    kron,
    matrix_exp,
    matrix_log,
    matrix_power_real,
    partial_trace_second,
    reshuffle,
    unvec,
    vec,
)
from .pauli import (
    SemigroupVerdict,
    cp_condition,
    lambda_from_p,
    o4_basis,
    p_from_lambda,
    pauli_superoperator,
    prob_condition,
    product_vector,
    semigroup_condition,
    superoperator_from_lambda,
)
from .semigroup import (
    LindbladGenerator,
    NonUnitalDecomposition,
    SemigroupTimes,
    decompose_times,
    evolve,
    generator_from_channel,
    kappa_bound_check,
    lindblad_from_jumps,
    max_lambda_check,
    nonunital_decompose,
    nonunital_evolve,
    pauli_lambda_t,
    two_factor_boundary,
)
from .unistochastic import (
    angles_from_lambda,
    cartan_superoperator,
    cartan_unitary,
    haar_unitary,
    local_equivalence_check,
    unistochastic_from_unitary,
)

__version__ = "0.1.0"
