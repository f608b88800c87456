"""gridtopo: contract closed cubical manifolds to irreducible discrete spheres."""

from .cells import AmbientSpace, CubicalCell, boundary_cells, build_ambient
from .complexes import (
    Cycle,
    ManifoldComplex,
    ValidationReport,
    link,
    star,
    validate,
)
from .curviness import (
    ArcRegion,
    CurvinessReport,
    arc_sign,
    boundary_cycle_fit,
    curviness,
    radius_schedule,
    select_peak,
)
from .deform import (
    DeformationTrace,
    ElementaryMove,
    interpolate,
    is_gradually_varied,
    replace_arc,
    replay,
)
from .engine import (
    ContractionConfig,
    ContractionResult,
    contract,
    diameter_sphere_check,
    is_irreducible_sphere,
)
from .filling import Filling, LoftedSequence, jordan_split, lofted, min_filling, semi_convex
from .metric import all_pairs, ball, cell_distance, diameter

__version__ = "0.1.0"

__all__ = [
    "AmbientSpace",
    "ArcRegion",
    "ContractionConfig",
    "ContractionResult",
    "CubicalCell",
    "CurvinessReport",
    "Cycle",
    "DeformationTrace",
    "ElementaryMove",
    "Filling",
    "LoftedSequence",
    "ManifoldComplex",
    "ValidationReport",
    "all_pairs",
    "arc_sign",
    "ball",
    "boundary_cells",
    "boundary_cycle_fit",
    "build_ambient",
    "cell_distance",
    "contract",
    "curviness",
    "diameter",
    "diameter_sphere_check",
    "interpolate",
    "is_gradually_varied",
    "is_irreducible_sphere",
    "jordan_split",
    "link",
    "lofted",
    "min_filling",
    "radius_schedule",
    "replace_arc",
    "replay",
    "select_peak",
    "semi_convex",
    "star",
    "validate",
]
