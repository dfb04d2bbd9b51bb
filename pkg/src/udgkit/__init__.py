"""Forbidden induced subgraphs and certified embeddings for co-bipartite unit disk graphs."""

from __future__ import annotations

from .catalog import (
    DetectionReport,
    builtin_catalog,
    derived_obstructions,
    detect_forbidden,
    generate_family,
    has_edge_asteroid_triple,
)
from .embedder import (
    Embedding,
    EmbeddingParams,
    ForbiddenInputError,
    ParameterError,
    TauPreconditionError,
    complement_target,
    embed_class_x_complement,
    embed_class_x_star,
    embed_complement_k1_cycle,
    embed_complement_path,
    embed_lobster_star,
    tau_transform,
)
from .estimators import (
    ClassXRecognizer,
    ComplementEmbedder,
    ForbiddenDetector,
    RealizabilitySearch,
    StarEmbedder,
)
from .formats import FormatError, from_graph6, to_graph6
from .graph import BipartiteGraph, Graph, complement, contains_induced, star_op
from .search import SearchConfig, minimality_check, search_embedding
from .serialize import embedding_from_json, embedding_to_json
from .structure import (
    CaterpillarDecomposition,
    Recognition,
    Witness,
    generate_random_member,
    recognize_class_x,
)
from .svg import embedding_svg
from .verifier import (
    VerificationReport,
    check_convexity_constraints,
    check_strip_conditions,
    verify_embedding,
)

__version__ = "0.1.0"
