"""wreathlab: exact fixed-point statistics of permutation groups and
wreath/direct product constructions."""

from .errors import (
    CapExceeded,
    DegenerateDelta,
    DegreeOverflow,
    EpsilonTooSmall,
    ExpressionError,
    MalformedCycle,
    NotNormal,
    NotPrime,
    NotPrimePower,
    NotTransitive,
    PointOutOfRange,
    RepeatedPoint,
    WreathlabError,
)
from .exactmath import (
    RationalPoly,
    d_seq,
    divisors,
    e_seq,
    euler_phi,
    is_prime,
    next_prime,
    poly_derivative,
    poly_eval,
    prime_power_base,
    stirling_first_unsigned,
)
from .permcore import (
    Coset,
    CycleDecomposition,
    DEFAULT_ENUM_CAP,
    PermGroup,
    Permutation,
    compose,
    cycle_decomposition,
    parse_cycles,
)
from .groupstats import (
    CycleCountVector,
    CycleIndex,
    FixSpectrum,
    cycle_count_vector,
    cycle_index,
    cycle_pgf,
    delta_k,
    delta_vector,
    fix_pgf,
    fix_spectrum,
    parity_split,
)
from .constructions import (
    WreathElement,
    agl1,
    alternating,
    base_coset,
    bi_product,
    cyclic,
    direct_product_intransitive,
    direct_product_product,
    elaborate,
    even_base_wreath,
    parse_group_expr,
    symmetric,
    trivial,
    wreath_imprimitive,
    wreath_power,
)
from .formulas import (
    BoundsPair,
    coset_delta_extrema,
    imprimitive_delta1,
    imprimitive_delta_k,
    imprimitive_full_symmetric_delta,
    intransitive_delta_k,
    limit_gap_imprimitive_symmetric,
    power_coset_delta_k,
    power_delta1,
    power_delta_cyclic,
    power_delta_full_symmetric,
    power_delta_k,
    power_symmetric_lower_bound,
    product_action_delta_k,
    rank_bounds,
    sandwich_bounds,
    sharply_transitive_delta_k,
    sharply_transitive_delta_recursive,
    symmetric_family_delta_k,
)
from .density import (
    DensityWitness,
    Infeasible,
    agl1_fix_pgf,
    default_catalog,
    density_search_imprimitive,
    density_search_power_primitive,
    density_search_power_regular,
    imprimitive_chain,
    invert_power_map,
    step_size,
)

__version__ = "0.1.0"
