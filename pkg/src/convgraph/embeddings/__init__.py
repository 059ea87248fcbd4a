"""Node and whole-graph embedding methods."""

from .node import (BoostNEConfig, DeepWalkConfig, GraphWaveConfig,
                   Node2vecConfig, WalkletsConfig, boostne, deepwalk,
                   graphwave, node2vec, walklets)
from .skipgram import SkipGramConfig, SkipGramModel, skipgram_train
from .types import EmbeddingVector
from .walks import WalkCorpus, random_walks
from .wholegraph import (FGSDConfig, Graph2vecConfig, SFConfig, fgsd_embed,
                         graph2vec, sf_embed, wl_tokens)

__all__ = [
    "EmbeddingVector", "WalkCorpus", "random_walks",
    "SkipGramConfig", "SkipGramModel", "skipgram_train",
    "DeepWalkConfig", "Node2vecConfig", "WalkletsConfig", "BoostNEConfig",
    "GraphWaveConfig", "deepwalk", "node2vec", "walklets", "boostne",
    "graphwave",
    "SFConfig", "FGSDConfig", "Graph2vecConfig", "sf_embed", "fgsd_embed",
    "wl_tokens", "graph2vec",
]
