"""vizrec: composable visualization recommendation engine.

Design-space graph over tabular data, pluggable graph-traversal enumerators,
pluggable ranking oracles, a session service, and a benchmark harness.
"""

from .dataset import Dataset, Field, FieldStats, FieldType, field_stats, infer_field_type, load_table
from .design_space import DesignGraph, NodeId, build_graph
from .oracles import (DzibanHybrid, Effectiveness, EncodingConfig, OracleKind,
                      Score, Statistical, dziban_score, effectiveness_score,
                      enumerate_candidates, perceptual_distance, rank,
                      statistical_score)
from .recommender import (AlgorithmConfig, RecommendationPage, preset,
                          related_views, specified_view)
from .session import SessionManager
from .traversal import (Bfs, Cluster, Dfs, Random, TraversalStrategy,
                        enumerate_bfs, enumerate_cluster, enumerate_dfs,
                        enumerate_random)
from .vizspec import (Channel, Encoding, Mark, Transform, VisSpec,
                      canonicalize, parse_document, serialize, variable_set)

__version__ = "0.1.0"
