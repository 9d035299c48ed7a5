"""Shadows of curves on the integer lattice.

Exact-rational tools for projecting polygonal curves onto coordinate
planes, classifying the resulting 1-complexes, decomposing simple
shadows into coordinate strands, searching for extremal examples,
voxelizing suspension spheres with verified shadows and retractions,
and reconstructing 3D sets from shadow triples.
"""

from __future__ import annotations

from .arrangement import (
    OneComplex,
    TopologyReport,
    build_complex,
    classify,
    extract_chain,
    is_convex_cycle,
    shadow_complex,
)
from .compat import (
    CompatResult,
    ShadowBitmap,
    back_project,
    find_disconnection_example,
    is_path_bitmap,
    largest_compatible,
    load_bitmap,
    parse_bitmap,
    plane_for_axis,
    reachable,
    save_bitmap,
)
from .curves import (
    PolyChain,
    SegmentSet,
    format_curve,
    load_curve,
    parse_curve,
    project,
    save_curve,
)
from .errors import (
    BudgetError,
    CurveFormatError,
    DegenerateAxisError,
    EmptySliceError,
    NotSimpleError,
    ShadowLabError,
    ValidationError,
)
from .sphere import (
    RetractionEvaluator,
    RetractionReport,
    SphereModel,
    VoxelSet,
    betti,
    build_sphere,
    eval_retraction,
    load_voxels,
    save_voxels,
    shadow_voxels,
    slice_voxels,
    supercover_polygon,
    supercover_segment,
    verify_retraction,
)
from .strands import (
    LawReport,
    Strand,
    extremes,
    lift_strand,
    shadow_chain,
    strands,
    verify_strand_laws,
)
from .svgout import RenderSpec, render_shadow
from .theorem_lab import (
    SearchConfig,
    SearchReport,
    enumerate_min_vertex_paths,
    find_tree_shadow_cycle,
    min_branch_point_census,
    sample_liftable_instances,
    sample_planar_path_laws,
    search_convex_shadow_paths,
    search_path_shadow_cycles,
)

__version__ = "0.1.0"


def load_schema(name: str) -> dict:
    """Parsed JSON schema shipped with the package.

    `name` is a CLI subcommand: classify, strands, lift, search, sphere,
    compat or render. Every stdout document of that subcommand validates
    against the returned schema.
    """
    import importlib.resources
    import json

    path = importlib.resources.files(__package__).joinpath(f"schemas/{name}.schema.json")
    try:
        return json.loads(path.read_text(encoding="ascii"))
    except FileNotFoundError:
        raise ValidationError(f"no schema named {name!r}") from None

__all__ = [
    "BudgetError",
    "CompatResult",
    "CurveFormatError",
    "DegenerateAxisError",
    "EmptySliceError",
    "LawReport",
    "NotSimpleError",
    "OneComplex",
    "PolyChain",
    "RenderSpec",
    "RetractionEvaluator",
    "RetractionReport",
    "SearchConfig",
    "SearchReport",
    "SegmentSet",
    "ShadowBitmap",
    "ShadowLabError",
    "SphereModel",
    "Strand",
    "TopologyReport",
    "ValidationError",
    "VoxelSet",
    "back_project",
    "betti",
    "build_complex",
    "build_sphere",
    "classify",
    "enumerate_min_vertex_paths",
    "eval_retraction",
    "extract_chain",
    "extremes",
    "find_disconnection_example",
    "find_tree_shadow_cycle",
    "format_curve",
    "is_convex_cycle",
    "is_path_bitmap",
    "largest_compatible",
    "lift_strand",
    "load_bitmap",
    "load_schema",
    "load_curve",
    "load_voxels",
    "min_branch_point_census",
    "parse_bitmap",
    "parse_curve",
    "plane_for_axis",
    "project",
    "reachable",
    "render_shadow",
    "sample_liftable_instances",
    "sample_planar_path_laws",
    "save_bitmap",
    "save_curve",
    "save_voxels",
    "search_convex_shadow_paths",
    "search_path_shadow_cycles",
    "shadow_chain",
    "shadow_complex",
    "shadow_voxels",
    "slice_voxels",
    "strands",
    "supercover_polygon",
    "supercover_segment",
    "verify_retraction",
    "verify_strand_laws",
]
