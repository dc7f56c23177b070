"""Classification of Gorenstein simplices with h* = 1 + t^k + ... + t^((v-1)k).

Simplices are modelled by finite subgroups of (Q/Z)^N with a height
function; classes correspond to strict divisor chains of v plus subset data.
"""

from .builder import ClassData, MarkerSet, build_from_data, build_pairs, init_pair, step_pair, subset_sum_decompose
from .classify import (
    ClassRecord,
    ClassificationResult,
    classify,
    enumerate_data,
    stream_classes,
    verify_bijection,
)
from .divisor_lattice import (
    DivisorChain,
    chain_census,
    count_classes,
    prime_power_count,
    squarefree_count,
    strict_chains,
)
from .exceptions import (
    CanonicalKeyUndefined,
    DegenerateSimplex,
    GorsimpError,
    GroupTooLarge,
    HeightError,
    InadmissibleElement,
    InternalConsistencyError,
    InvalidClassData,
    LengthMismatch,
    NotOfType,
    ZeroCoordinate,
)
from .extension import admissible_elements, extend, is_admissible, verify_block_structure
from .group_core import (
    CanonicalKey,
    HeightedGroup,
    TypeProfile,
    canonical_key,
    close_generators,
    equivalent,
    hstar_vector,
    is_type,
    reduce,
)
from .qz_arith import ModOneVector, add_mod1, height, scale_mod1
from .simplex_bridge import (
    SimplexModel,
    ehrhart_count,
    group_to_simplex,
    hstar_of_simplex,
    is_lattice_pyramid,
    simplex_to_group,
)
from .tower import extract_data, quotient_tower, unique_height_k_element

__version__ = "0.1.0"
