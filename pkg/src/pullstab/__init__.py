"""Stability of parabolic bundles under pullback along branched covers.

Covers are given by monodromy permutations; the orbifold by integers N_x at
marked points.  ``stability_verdict`` decides whether pulling back keeps
stable parabolic bundles (weights in (1/N_x)Z) stable, via the rank of the
canonical subbundle of f_* O_Y.
"""

__version__ = "0.1.0"

from .covers import (
    MonodromyCover,
    branch_locus,
    genus_of_Y,
    make_cover,
    ramification_profile,
    validate_cover,
)
from .errors import (
    DegreeCapExceeded,
    DegreeMismatch,
    InvalidCover,
    InvariantViolation,
    NamespaceMismatch,
    NotTransitive,
    PullstabError,
    SelfCheckError,
)
from .orbifold import (
    IntermediateCoverReport,
    OrbifoldStructure,
    StabilityVerdict,
    Verdict,
    etale_intermediate_covers,
    gr1_hypothesis_holds,
    is_orbifold_etale,
    maximal_etale_cover,
    rank_of_F,
    stability_verdict,
)
from .parabolic import (
    ParabolicLineBundle,
    SplitParabolicBundle,
    WeightProfile,
    direct_image_structure,
    dual,
    par_deg,
    par_mu,
    pullback_line,
    pullback_split,
    tensor_line,
    to_profile,
    weights_divisible,
)
from .permgroup import (
    BlockSystem,
    Permutation,
    action_on_blocks,
    all_block_systems,
    block_closure,
    common_refinement,
    compose,
    cycle_type,
    is_transitive,
)
