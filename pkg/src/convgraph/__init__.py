"""convgraph: abusive-message detection from conversation structure alone.

Chat logs become directed weighted conversational graphs; graphs become
vectors, either through topological measures or through eight node- and
whole-graph embedding methods; vectors are classified with an SVM under a
repeated stratified split protocol. The analysis side measures which
structural properties each embedding captures.
"""

__version__ = "0.1.0"

from .corpus import (ABUSE, NON_ABUSE, DatasetSpec, LabeledMessage, Message,
                     ingest, sample_balanced, synthesize, write_jsonl)
from .extract import ExtractConfig, build_graph, extract_context, extract_graph
from .graph import (ConvGraph, Spectrum, collapse, effective_resistance,
                    heat_kernel, laplacian_pseudoinverse,
                    normalized_laplacian_spectrum, read_graph_json,
                    write_graph_json)
from .features import TOP_FEATURES, FeatureVector, compute_features

__all__ = [
    "__version__",
    "ABUSE", "NON_ABUSE", "Message", "LabeledMessage", "DatasetSpec",
    "ingest", "sample_balanced", "synthesize", "write_jsonl",
    "ExtractConfig", "extract_context", "build_graph", "extract_graph",
    "ConvGraph", "Spectrum", "collapse", "normalized_laplacian_spectrum",
    "laplacian_pseudoinverse", "effective_resistance", "heat_kernel",
    "read_graph_json", "write_graph_json",
    "FeatureVector", "TOP_FEATURES", "compute_features",
]
