"""Twirling qubit channels with controlled-unitary supermaps.

A qubit channel sandwiched between a 24x24 gate ``W`` (acting on the qubit, a
ququart and a qutrit ancilla) and its inverse, with the ancillas discarded,
becomes its average over a 12-element unitary 2-design. The result is a
depolarizing channel with the same average gate fidelity. The package also
implements a SPAM-robust four-experiment estimate of that fidelity.
"""
from .channels import (
    Channel,
    amplitude_damping,
    apply,
    avg_gate_fidelity_mc,
    compose,
    dephasing,
    depolarizing,
    eta_from_ptm,
    identity_channel,
    parse_channel_spec,
    preset_channel,
    ptm,
    random_channel,
    unitary_channel,
    unitary_ptm,
)
from .errors import (
    DegenerateSpamError,
    DimensionError,
    GroupClosureError,
    InvalidChannelError,
    NumericalError,
    ParameterError,
)
from .estimator import (
    EstimationReport,
    ExperimentConfig,
    SamplePlan,
    estimate,
    estimate_eta,
    exact_probabilities,
    fidelity_from_eta,
    plan_samples,
    rb_decay_curve,
    run_sampled,
)
from .groups import (
    GateSet,
    generate_clifford_1q,
    generate_group_G,
    is_depolarizing_form,
    twirl_average,
)
from .linalg import DimensionProfile, fourier_matrix, kron, partial_trace, unitarity_check
from .supermap import (
    ControlledFamily,
    SupermapUnitary,
    apply_supermap,
    build_layer,
    build_W,
    simulate_circuit,
)

__version__ = "0.1.0"
