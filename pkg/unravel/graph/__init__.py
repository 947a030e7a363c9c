from .arborescence import min_bottleneck_arborescence, min_cost_arborescence
from .delegation import (
    Arborescence,
    Certificate,
    DelegationGraph,
    Edge,
    arborescence_of,
    build_graph,
    certificate_of,
    votes_from_arborescence,
)
from .fulkerson import (
    TightStructure,
    is_min_cost,
    recursive_arborescence,
    run_fulkerson,
    tight_structure_stability_check,
)
