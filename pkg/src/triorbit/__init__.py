"""Certification toolkit for orbit closures of rational triangle unfoldings."""

from .angles import (
    AngleSystem,
    AngleSystemError,
    ResidueSet,
    make_angle_system,
    multiplicative_closure,
    residues_with_gcd,
    t_component,
    t_total,
    unit_group,
)
from .bform import (
    EpsilonProfile,
    QuadratureResult,
    epsilon_profile,
    nonvanishing_check,
    planar_integral,
)
from .certify import (
    Certificate,
    RelationTrace,
    Verdict,
    build_relations,
    divisor_set,
    enumerate_certificates,
    enumerate_triples,
    full_rank_certified,
    make_certificate,
    rank_lower_bound,
)
from .digraph import (
    CapExceeded,
    CylinderDigraphSpec,
    Digraph,
    LoopVector,
    contract_loop,
    embedded_loops,
    free_cylinder_criterion,
    is_strongly_connected,
    loop_space_dim,
)
from .hodge import (
    StratumSignature,
    eigenform_dim,
    eigenspace_dim,
    full_rank_by_pi3,
    genus,
    hyperelliptic_excluded,
    stratum,
)

__version__ = "0.1.0"

__all__ = [
    "AngleSystem",
    "AngleSystemError",
    "Certificate",
    "CapExceeded",
    "CylinderDigraphSpec",
    "Digraph",
    "EpsilonProfile",
    "LoopVector",
    "QuadratureResult",
    "RelationTrace",
    "ResidueSet",
    "StratumSignature",
    "Verdict",
    "build_relations",
    "contract_loop",
    "divisor_set",
    "eigenform_dim",
    "eigenspace_dim",
    "embedded_loops",
    "enumerate_certificates",
    "enumerate_triples",
    "epsilon_profile",
    "free_cylinder_criterion",
    "full_rank_by_pi3",
    "full_rank_certified",
    "genus",
    "hyperelliptic_excluded",
    "is_strongly_connected",
    "loop_space_dim",
    "make_angle_system",
    "make_certificate",
    "multiplicative_closure",
    "nonvanishing_check",
    "planar_integral",
    "rank_lower_bound",
    "residues_with_gcd",
    "stratum",
    "t_component",
    "t_total",
    "unit_group",
]
