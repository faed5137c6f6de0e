"""Iterated sumsets ``mA``, numerical-semigroup gaps and their structure."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CapacityError,
    ConsistencyError,
    ConstraintViolation,
    DegenerateFamily,
    EmptySet,
    InvalidArgs,
    InvalidSet,
    MismatchError,
    NotDivisible,
    PreconditionUnmet,
    TheoremViolation,
)
from .intset import (  # noqa: E402
    DenseSet,
    GeneratorSet,
    longest_run,
    m_fold,
    m_fold_naive,
    normalize,
    parse_set_literal,
    reflect,
    sumset,
)
from .semigroup import GapData, exceptional_set, frobenius_apery  # noqa: E402
from .structure import (  # noqa: E402
    Decomposition,
    ShapeParams,
    StructureVerdict,
    decompose,
    lev_family_block,
    lev_family_union,
    shape_params,
    structure_check,
    threshold_scan,
)
from .stability import Outcome, StabilityVerdict, stab_threshold, stability_check, stability_scan  # noqa: E402
from .toolbox import (  # noqa: E402
    ModSequence,
    cyclic_addition_oracles,
    dixmier_lev_check,
    freiman_check,
    savchev_chen_witness,
    subsum_structure_check,
    zero_sum_free,
)
