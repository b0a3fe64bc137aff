"""Where different types of quantum information about a system are located.

Density operators on labelled tensor-product spaces, POVMs and their Naimark
extensions, von Neumann and generalized entropies, Holevo-type location
measures, isometric channels with their complements, and a lab that checks
the relations between these quantities on random instances.
"""

__version__ = "0.1.0"

from . import _backend as backend
from .channels import (
    ChannelPair,
    Isometry,
    KrausChannel,
    apply,
    channel_from_bipartite_state,
    channel_ket,
    chi_channel,
    isometry_from_channel_ket,
    kraus_pair,
    povm_from_input_ensemble,
    random_isometry,
    upsilon,
)
from .config import get_log_base, log_base, set_log_base
from .entropy import (
    PLUS_INFINITY,
    QUADRATIC,
    STANDARD_KINDS,
    VON_NEUMANN,
    EntropyKind,
    conditional_entropy,
    entropy,
    mutual_info,
    relative_entropy,
    renyi,
    shannon,
    tsallis,
)
from .errors import (
    DimensionError,
    DomainError,
    EvaluatorAbort,
    HolevoLabError,
    LabelError,
    PreconditionError,
    UnsupportedRankError,
    ValidationError,
)
from .measurements import (
    Ensemble,
    OrthonormalBasis,
    Povm,
    ProjectiveDecomposition,
    basis,
    coarse_grain,
    computational_basis,
    conditional_ensemble,
    fourier_basis,
    mub_pair,
    naimark_extend,
    overlap_r,
    random_basis,
    random_povm,
    random_rank1_povm,
    validate_povm,
)
from .measures import (
    chi_location,
    coherent_info,
    holevo_chi,
    missing_info,
    pinch_channel,
)
from .operators import (
    DensityOperator,
    Operator,
    PureState,
    bell,
    ghz,
    partial_trace,
    permute,
    purify,
    tensor,
    validate,
)
