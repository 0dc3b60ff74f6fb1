"""Combinatorial engine for finite CAT(0) cube complexes.

Core pieces: median-graph representation with derived cubes and walls
(:mod:`.complex`), extremal panel detection (:mod:`.panels`), panel collapse
with provenance (:mod:`.collapse`), finite group actions and the iterated
equivariant collapse driver (:mod:`.symmetry`), and finite wallspace
dualization feeding the same pipeline (:mod:`.pocset`).
"""

__version__ = "0.1.0"

from .collapse import (
    COMPLETELY_EXTERNAL,
    EXTERNAL,
    INTERNAL,
    CollapseResult,
    CubeClassification,
    DiagonalCube,
    Fundament,
    classify,
    collapse,
    fundament,
    hyperplane_provenance,
    persistent_subcube,
)
from .complex import Cube, CubeComplex, Hyperplane, ValidationReport, validate_graph
from .errors import (
    FileFormatError,
    InternalInvariantError,
    InvalidComplexError,
    PreconditionError,
    StructuralError,
    UserInputError,
)
from .panels import (
    Block,
    Panel,
    block,
    build_panel,
    codim2_hyperplanes,
    extremal_panels,
    find_extremal_panel,
    is_extremal,
    no_facing_panels,
)
from .pocset import (
    DualComplexInfo,
    StallingsResult,
    Wallspace,
    dualize,
    dualize_details,
    stallings_pipeline,
)
from .symmetry import (
    ActionReport,
    Automorphism,
    ComplexityVector,
    GroupAction,
    RunTrace,
    check_action,
    complexity,
    equivariant_collapse_step,
    push_action,
    run_to_tree,
    subdivide,
)

__all__ = [name for name in dir() if not name.startswith("_")]
