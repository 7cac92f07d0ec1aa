"""Exact combinatorics of enriched and compactified enriched structures on nodal curves."""

from .atlas import Chart, EmptinessCertificate, atlas_report, emptiness_certificate, enumerate_charts, in_glueing_locus
from .compactified import (
    CompatibilityReport,
    HemisphereData,
    ces_at_point,
    ces_to_es,
    enumerate_ces,
    es_to_ces,
    is_compatible,
    is_invertible,
)
from .enriched import (
    EnrichedPoint,
    MainoStructure,
    enumerate_es,
    es_at_point,
    from_maino,
    gamma_es_at_point,
    gamma_es_bruteforce,
    is_enriched,
    realize,
    standard_multidegree,
    to_maino,
)
from .ffield import ProjPoint, Subspace, enumerate_proj, hyperplane_kernel, subspace_sum
from .graph import (
    Circuit,
    Contraction,
    GraphError,
    Hemisphere,
    MultiGraph,
    RelativeComponent,
    circuit_partition,
    connected_components,
    contract,
    enumerate_circuits,
    hemispheres,
    relative_components,
    standard_graphs,
)
from .picard import CombLineBundle, is_trivial
from .specialization import (
    CLOSED_POINT,
    FieldPoint,
    LabeledGraph,
    dimension_N,
    is_aligned_contraction,
    is_one_aligned,
    psi_bijection,
    specialize,
)

__version__ = "0.1.0"

__all__ = [
    "CLOSED_POINT",
    "Chart",
    "Circuit",
    "CombLineBundle",
    "CompatibilityReport",
    "Contraction",
    "EmptinessCertificate",
    "EnrichedPoint",
    "FieldPoint",
    "GraphError",
    "Hemisphere",
    "HemisphereData",
    "LabeledGraph",
    "MainoStructure",
    "MultiGraph",
    "ProjPoint",
    "RelativeComponent",
    "Subspace",
    "atlas_report",
    "ces_at_point",
    "ces_to_es",
    "circuit_partition",
    "connected_components",
    "contract",
    "dimension_N",
    "emptiness_certificate",
    "enumerate_ces",
    "enumerate_charts",
    "enumerate_circuits",
    "enumerate_es",
    "enumerate_proj",
    "es_at_point",
    "es_to_ces",
    "from_maino",
    "gamma_es_at_point",
    "gamma_es_bruteforce",
    "hemispheres",
    "hyperplane_kernel",
    "in_glueing_locus",
    "is_aligned_contraction",
    "is_compatible",
    "is_enriched",
    "is_invertible",
    "is_one_aligned",
    "is_trivial",
    "psi_bijection",
    "realize",
    "relative_components",
    "specialize",
    "standard_graphs",
    "standard_multidegree",
    "subspace_sum",
    "to_maino",
]
