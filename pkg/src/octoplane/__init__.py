"""Reconstruction and analysis of highly symmetric triangulated
manifolds on few vertices: orbit-selection search, nonevasiveness-based
manifold certification, flip moves, and combinatorial fingerprints."""

from .core import (
    Complex,
    DomainError,
    ParseError,
    VertexSet,
    f_vector,
    parse_complex,
    serialize,
)
from .perm import (
    PermGroup,
    Permutation,
    build_G351,
    build_normalizer_2106,
    f27_numbering,
    standard_generators,
    trivial_group,
)
from .search import OrbitCatalog, RunReport, SearchConfig, SearchResult, run_search
from .verify import Certificate, certify_manifold, is_nonevasive

__version__ = "0.1.0"

__all__ = [
    "Complex",
    "VertexSet",
    "DomainError",
    "ParseError",
    "parse_complex",
    "serialize",
    "f_vector",
    "Permutation",
    "PermGroup",
    "trivial_group",
    "standard_generators",
    "f27_numbering",
    "build_G351",
    "build_normalizer_2106",
    "SearchConfig",
    "SearchResult",
    "RunReport",
    "OrbitCatalog",
    "run_search",
    "Certificate",
    "certify_manifold",
    "is_nonevasive",
    "__version__",
]
