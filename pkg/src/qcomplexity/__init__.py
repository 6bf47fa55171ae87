"""Classical and quantum epsilon-machine complexity.

Build a machine (``perturbed_coin_machine``, ``cloud_machine`` or a raw
transition tensor), then ask for ``statistical_complexity`` (C_mu) and
``quantum_complexity`` (C_q), both in bits.
"""
from .errors import (
    ComplexityError,
    Degenerate,
    DimensionMismatch,
    FlatFunction,
    InsufficientData,
    InvalidDensity,
    InvalidMachine,
    InvalidStart,
    NonUniqueStationary,
    NotDensityOperator,
    NotSymmetric,
    OutOfRange,
    TooShort,
)
from .inference import (
    EmpiricalModel,
    empirical_complexities,
    estimate_conditionals,
    reconstruct_machine,
)
from .linalg import jacobi_eigh, symmetric_eigenvalues
from .machine import (
    Alphabet,
    EpsilonMachine,
    StationaryDistribution,
    SymbolSequence,
    equivalence_classes,
    merge_equivalent_states,
    sample,
    shannon_entropy,
    stationary,
    stationary_power,
    statistical_complexity,
)
from .processes import (
    CloudParams,
    CoinParams,
    cloud_machine,
    cloud_rates,
    cnot_stationary,
    cnot_transition_matrix,
    coin_complexity_closed_form,
    perturbed_coin_machine,
)
from .quantum import (
    QuantumCausalState,
    density_operator,
    gram,
    quantum_causal_states,
    quantum_complexity,
    von_neumann_entropy,
    weighted_gram,
)
from .sweep import SweepSpec, cloud_sweep, coin_sweep, find_peak, oracle_check

__version__ = "0.1.0"
