"""Path covers, linkages and topological-minor embeddings in graphs of small independence number."""

from .connectivity import menger_fan, vertex_connectivity
from .embedding import EmbedOutcome, TMEmbedding, validate_tm_embedding
from .errors import (
    AlphahamError,
    ConnectivityError,
    GuardrailAbort,
    ParseError,
    PreconditionError,
    SizeCap,
    StateError,
)
from .graph import Graph, parse_graph, serialize_graph
from .linkage import disjoint_paths_or_is, spanning_embedding_or_is
from .merging import max_list_tm_embedding
from .pathcover import BelowGMOutcome, below_gm, gallai_milgram_cover, solve_small_cover
from .ramsey import ramsey_extract

__all__ = [
    "AlphahamError",
    "BelowGMOutcome",
    "ConnectivityError",
    "EmbedOutcome",
    "Graph",
    "GuardrailAbort",
    "ParseError",
    "PreconditionError",
    "SizeCap",
    "StateError",
    "TMEmbedding",
    "below_gm",
    "disjoint_paths_or_is",
    "gallai_milgram_cover",
    "max_list_tm_embedding",
    "menger_fan",
    "parse_graph",
    "ramsey_extract",
    "serialize_graph",
    "solve_small_cover",
    "spanning_embedding_or_is",
    "validate_tm_embedding",
    "vertex_connectivity",
]
