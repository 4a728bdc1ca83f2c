"""Limits of Abelian differentials on nodal curves.

Decide whether a candidate differential on a dual graph smooths into a
nearby Abelian differential, certify the answer exactly either way, track
spin parity through degenerations, classify which boundary strata lie in
the closure of a connected component, and compute winding numbers and the
Arf invariant on translation-surface models.
"""

from .boundary import (
    BoundaryVerdict,
    CrossCheckReport,
    Membership,
    Status,
    classify_g3_odd,
    classify_hyp_minimal,
    cross_check_parity,
)
from .curves import DualGraph, half_edge_id, parse_half_edge_id
from .differentials import (
    CandidateDifferential,
    ImpossibleLimit,
    NotPlumbable,
    ObstructionRecord,
    Plumbable,
    PlumbingCertificate,
    ScalingAssignment,
    StableDifferential,
    Undecided,
    check_compatibility,
    check_residue,
    component_scalings,
    cycle_condition,
    is_plumbable,
    polarly_related_components,
    residue_theorem_obstruction,
    to_stable,
    unique_limit_on_compact_type,
    validate,
    weak_global_residue_check,
)
from .feasibility import NegativeFeasibility, solve_negative_orthant
from .flags import GeometryFlags, require_valid_flags, validate_flags
from .homology import (
    AdmissibleSystem,
    ScopeError,
    SurfacePath,
    arf_invariant,
    find_symplectic_system,
    intersection_number,
    q_invariant,
    transform_system,
    winding_index,
)
from .localplumb import LocalModel, PullbackReport, pullback_check, residue_estimate
from .rationals import GaussianRational
from .schema import (
    SchemaError,
    dumps_document,
    load_path,
    loads,
    parse_document,
    to_document,
)
from .spin import (
    EllipticTheta,
    HyperellipticTheta,
    RationalTheta,
    SpinResolutionError,
    SpinStructure,
    count_spin_parities,
    elliptic_parity_split,
    hyperelliptic_parity_split,
    parity_of_candidate,
    spin_of_candidate,
)
from .strata import (
    Kodaira,
    KodairaResult,
    StratumComponent,
    StratumSignature,
    components,
    kodaira_dimension,
    projection_dimension,
)
from .surfaces import (
    NodePair,
    PointRef,
    Polygon,
    TranslationSurface,
    Triangulation,
    build_surface,
    polygon,
    stratum_of,
    triangulate,
)

__version__ = "0.1.0"
