"""Annular link invariants: Khovanov-type homology over the annulus, the
annular Kauffman skein bracket, wrapping certificates, and the link-splitting
spectral sequence of weight-perturbed differentials."""

from .bracket import (
    WrapReport,
    euler_characteristic,
    max_annular_degree,
    state_sum,
    wrap_report,
)
from .chain import ACComplex, WeightError, build_complex, solve_eta
from .cube import (
    STATE_CAP,
    AllOnesReport,
    CapExceeded,
    Resolution,
    all_ones_report,
    census_counts,
    is_minus_adequately_wrapped,
    iterate_states,
    smooth,
)
from .diagram import (
    AdtError,
    AnnularDiagram,
    ParseError,
    ValidationError,
    analyze,
    components,
    crossing_signs,
    linking_number,
    make_diagram,
    parse,
    total_pairwise_linking,
    winding_number,
    writhe,
)
from .families import (
    FamilySpec,
    Tangle,
    annular_closure,
    braid_tangle,
    build_family,
    cable,
    cable_all,
    connected_sum,
    disjoint_union,
    essential_unknot,
    identity_tangle,
    necklace,
    split_union,
    stack,
    sublink,
    trivial_unknot,
    whitehead_double,
)
from .homology import (
    RankReport,
    SSReport,
    homology_dims,
    match_up_to_l_shift,
    max_nonzero_k,
    max_nonzero_k_scan,
    rank_inequality_check,
    split_shift,
    ss_pages,
    tensor_dims,
    weight_groups,
)

__version__ = "0.1.0"

__all__ = [
    "ACComplex",
    "AdtError",
    "AllOnesReport",
    "AnnularDiagram",
    "CapExceeded",
    "FamilySpec",
    "ParseError",
    "RankReport",
    "Resolution",
    "SSReport",
    "STATE_CAP",
    "Tangle",
    "ValidationError",
    "WeightError",
    "WrapReport",
    "all_ones_report",
    "analyze",
    "annular_closure",
    "braid_tangle",
    "build_complex",
    "build_family",
    "cable",
    "cable_all",
    "census_counts",
    "components",
    "connected_sum",
    "crossing_signs",
    "disjoint_union",
    "essential_unknot",
    "euler_characteristic",
    "homology_dims",
    "identity_tangle",
    "is_minus_adequately_wrapped",
    "iterate_states",
    "linking_number",
    "make_diagram",
    "match_up_to_l_shift",
    "max_annular_degree",
    "max_nonzero_k",
    "max_nonzero_k_scan",
    "necklace",
    "parse",
    "rank_inequality_check",
    "smooth",
    "solve_eta",
    "split_shift",
    "split_union",
    "ss_pages",
    "stack",
    "state_sum",
    "sublink",
    "tensor_dims",
    "total_pairwise_linking",
    "trivial_unknot",
    "weight_groups",
    "whitehead_double",
    "winding_number",
    "wrap_report",
    "writhe",
]
