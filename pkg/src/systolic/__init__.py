"""Checkers for systolic-type curvature conditions on flag simplicial
complexes, and for the minimal displacement sets of their automorphisms."""

from .collapse import (
    DEFAULT_BUDGET,
    collapse_to_point,
    first_homology,
    simple_connectivity_oracle,
)
from .complexes import (
    INF,
    ComplexError,
    DistanceOracle,
    FacetComplex,
    FlagComplex,
    TaggedDistance,
    WindowView,
    ambient,
    as_simplex,
    is_flag,
    scope,
)
from .conditions import (
    MODES,
    enumerate_full_cycles,
    extended_wheel_condition,
    find_extended_5_wheels,
    is_extended_wheel5,
    is_full_cycle,
    is_k_large,
    is_locally_k_large,
    is_systolic,
    is_weakly_modular,
    is_weakly_systolic,
    quadrangle_condition,
    quadrangle_violation_holds,
    sphere_domination,
    sphere_domination_everywhere,
    sphere_domination_violation_holds,
    systole,
    triangle_condition,
    triangle_violation_holds,
)
from .generators import (
    AXIAL_DIRECTIONS,
    complete,
    cone,
    cycle,
    cycle_rotation,
    extended_wheel5,
    hex_distance,
    hex_torus,
    icosahedron,
    lattice_glide,
    lattice_translation,
    octahedron,
    octahedron_antipodal,
    random_flag_complex,
    thick_line,
    torus_translation,
    triangular_lattice_window,
    wheel,
)
from .io import ParsedInput, ParseError, format_complex, parse_complex_file, parse_complex_text
from .isometries import (
    Automorphism,
    Classification,
    DisplacementProfile,
    PathChain,
    chain_gap_violation_holds,
    classify,
    displacement_profile,
    find_invariant_simplex,
    is_invariant_simplex,
    lex_least_geodesic,
    min_set,
    min_set_idempotence,
    orbit_path,
    validate_automorphism,
    verify_local_geodesic,
)
from .mindisp import (
    DichotomyReport,
    EmbeddingReport,
    ThickGeodesicWitness,
    dichotomy_report,
    fit_thickness,
    invariant_geodesic_search,
    isometric_embedding_check,
    min_systolic_check,
    verify_thick_geodesic,
    wheel_domination_in_min,
)
from .verdict import (
    NO,
    UNKNOWN,
    YES,
    ChainGapViolation,
    CycleInLink,
    DistancePair,
    ExtendedWheel5,
    FullCycle,
    MapViolation,
    QuadrangleViolation,
    SphereSimplexViolation,
    ThickAdjacencyViolation,
    TriangleViolation,
    Verdict,
    witness_jsonable,
)

__version__ = "0.1.0"
