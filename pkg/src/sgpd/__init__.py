"""Semigroupoids, Markov words, higher-rank graphs, partial-isometry
representations, and C*-relation presentations, all at exact desk scale."""

from .core import (
    UNIT,
    AssociativityError,
    MalformedTable,
    NotComposable,
    SemigroupoidTable,
    SgpdError,
    UnknownElement,
    ValidationReport,
    common_followers,
    compose,
    d_set,
    divides,
    equivalent,
    intersects,
    is_monic,
    validate_associativity,
)
from .covers import (
    BoundExceededError,
    CandidateNotSubset,
    CoverSpec,
    NotACovering,
    check_maximality,
    is_covering,
    is_partition,
    minimal_coverings,
    prune_covering,
)
from .kgraph import (
    Edge,
    InconsistentSquares,
    KGraph,
    KGraphSkeleton,
    build_kgraph,
    common_extensions,
    degree_check,
    degree_slice,
    factorize,
    rfns_check,
    slice_partition_check,
)
from .markov import (
    Matrix01,
    MarkovTruncation,
    build_markov,
    enumerate_partitions,
    first_letter_decomposition_check,
    follow_weight,
    follower_letters,
    graphable,
    graphable_oracle,
    word_disjoint,
)
from .matrices import RatMat
from .relations import (
    Presentation,
    Relation,
    cross_check,
    emit_cuntz_krieger,
    emit_generic,
    emit_kumjian_pask,
    evaluate,
)
from .reps import (
    AxiomReport,
    Representation,
    TightnessReport,
    category_facts_check,
    category_tightness,
    check_axioms,
    check_tight,
    monic_collapse_check,
    sole_idempotent_check,
    spring_vanishing_check,
)
from .springs import SpringExtension, SpringReport, despring, find_springs

__all__ = [name for name in dir() if not name.startswith("_")]
