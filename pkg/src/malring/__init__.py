"""Integer cohomology rings of moment-angle complexes via Hochster's decomposition."""

__version__ = "0.1.0"

from .classify import (
    CertificationError,
    certify_sphere,
    classify,
    classify_2sphere,
    classify_3sphere,
    decomposition_to_betti,
    mcgavran_decomposition,
    recognize_dual_stacked,
    ssndim_check,
    verify_presentation,
    weak_min_non_golod,
)
from .complex import (
    SimplicialComplex,
    build_complex,
    full_subcomplex,
    generate_stacked_sphere,
    join,
    link,
    missing_faces,
    skeleton,
    stellar_subdivide_facet,
)
from .graphs import Graph, find_chordless_cycles, is_chordal, missing_edge_structure
from .hochster import cup_product, decompose, pairing_matrix, product_length
from .homology import reduced_cohomology, reduced_homology, smith_normal_form

__all__ = [
    "CertificationError",
    "Graph",
    "SimplicialComplex",
    "build_complex",
    "certify_sphere",
    "classify",
    "classify_2sphere",
    "classify_3sphere",
    "cup_product",
    "decompose",
    "decomposition_to_betti",
    "find_chordless_cycles",
    "full_subcomplex",
    "generate_stacked_sphere",
    "is_chordal",
    "join",
    "link",
    "mcgavran_decomposition",
    "missing_edge_structure",
    "missing_faces",
    "pairing_matrix",
    "product_length",
    "recognize_dual_stacked",
    "reduced_cohomology",
    "reduced_homology",
    "skeleton",
    "smith_normal_form",
    "ssndim_check",
    "stellar_subdivide_facet",
    "verify_presentation",
    "weak_min_non_golod",
]
