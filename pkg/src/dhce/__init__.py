"""Whole-graph embedding from iterated H-index entropy sequences.

A graph is compressed to the sequence of Shannon entropies of its
node-value distributions along the H-index updating process, which runs
from the degree vector to its fixed point (the coreness vector). The
package also ships the surrounding evaluation pipeline: seeded ER/BA/WS
generators, a KNN classifier with repeated stratified cross-validation,
and 2-D PCA projection for morphospace plots.
"""

from .embedding import DhcEmbedding, EmbeddingMatrix, align, embed_graph, shannon_entropy
from .errors import DataError, ParameterError, ParseError
from .evaluation import (
    EvalReport,
    KnnClassifier,
    accuracy,
    cross_validate,
    knn_predict,
    macro_f1,
)
from .generators import GeneratorSpec, generate
from .graph import Graph, degrees, from_edges, parse_edge_list, to_edge_list_text
from .hindex import DhcTrace, coreness, dhc_step, dhc_trace, h_operator
from .projection import PcaProjector, Projection2D, pca_2d

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "from_edges",
    "parse_edge_list",
    "to_edge_list_text",
    "degrees",
    "GeneratorSpec",
    "generate",
    "h_operator",
    "dhc_step",
    "dhc_trace",
    "DhcTrace",
    "coreness",
    "shannon_entropy",
    "embed_graph",
    "align",
    "EmbeddingMatrix",
    "DhcEmbedding",
    "knn_predict",
    "accuracy",
    "macro_f1",
    "cross_validate",
    "EvalReport",
    "KnnClassifier",
    "pca_2d",
    "Projection2D",
    "PcaProjector",
    "DataError",
    "ParseError",
    "ParameterError",
    "__version__",
]
