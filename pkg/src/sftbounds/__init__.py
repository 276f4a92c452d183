"""Effective-uniqueness machinery for subshifts of finite type: Parry measure,
entropy gaps, transfer-operator decay, hole pruning, and dimension bounds."""

from .bounds import (
    BoundReport,
    GapIdentity,
    PinskerResult,
    ScanRow,
    ScanSummary,
    StepBound,
    effective_bound_verify,
    gap_identity_check,
    phi_divergence,
    pinsker_verify,
    ratio_scan,
    step_bound_verify,
)
from .errors import (
    CeilingError,
    ConvergenceError,
    DegenerateSpectrumError,
    InputError,
    NotPrimitiveError,
    VerificationError,
)
from .holes import (
    HoleFamilyScan,
    HoleRow,
    HoleSpec,
    PrunedSystem,
    cover_count,
    dim_upper_bound,
    higher_block_prune,
    hole_family_scan,
    hole_spec,
    prune_words,
    pruned_word_count,
    survivor_entropy,
)
from .measures import (
    InformationCoboundary,
    LocallyConstantFunction,
    MarkovMeasure,
    centered,
    conditional_vectors,
    constant_function,
    cylinder_measure,
    entropy,
    function_from_dict,
    indicator,
    information_coboundary,
    information_mean,
    integrate,
    markov_measure,
    parry_measure,
    random_function,
    sample_markov,
    stationary_vector,
)
from .models import (
    BallCover,
    Branch,
    CylinderInterval,
    DimensionReport,
    ExpandingModel,
    ball_to_cylinders,
    build_model,
    cylinder_interval,
    exceptional_dimension_bound,
    model_preset,
)
from .sft import (
    MetricParams,
    StructureFlags,
    TransitionMatrix,
    Word,
    enumerate_words,
    full_shift,
    golden_mean_shift,
    is_admissible,
    metric_distance,
    parse_word,
    predecessors,
    transition_matrix,
    validate_structure,
    word_count,
    word_str,
)
from .spectral import PerronData, perron_eigendata, subdominant_modulus
from .transfer import (
    DecayEstimate,
    conditional_expectation_check,
    decay_estimate,
    lip_seminorm,
    mean_zero_probes,
    supnorm,
    transfer_apply,
    transfer_matrix,
)

__version__ = "0.1.0"
