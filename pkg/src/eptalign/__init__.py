"""Cross-platform event popularity analysis.

Quantifies event popularity over time from raw text-record streams
(TF-SW), aligns pairwise popularity series with a family of DTW
variants including a weighted compound distance, and reports
shape / altitude / leading-time metrics for the aligned pair.
"""

from eptalign.ingest import Record, EventPhase, load_records, preprocess, bucket
from eptalign.zipf import PowerLawFit, rank_frequency, fit_power_law, cutoff_threshold, filter_vocabulary
from eptalign.similarity import EmbeddingSet, SimilarityParams, load_embeddings, HashEmbeddings, WordSimilarity
from eptalign.textrank import contributive_words, build_graph, weight
from eptalign.epts import Epts, phase_popularity, normalize, naive_frequency_epts, tfidf_epts
from eptalign.phasedist import ProjectionBank, union_vocab, one_hot, simhash, event_phase_distance
from eptalign.dtw import VariantSpec, Alignment, align, VARIANTS, detect_singularity, detect_far_match
from eptalign.metrics import MetricsReport, compute_metrics

__all__ = [
    "Record", "EventPhase", "load_records", "preprocess", "bucket",
    "PowerLawFit", "rank_frequency", "fit_power_law", "cutoff_threshold", "filter_vocabulary",
    "EmbeddingSet", "SimilarityParams", "load_embeddings", "HashEmbeddings", "WordSimilarity",
    "contributive_words", "build_graph", "weight",
    "Epts", "phase_popularity", "normalize", "naive_frequency_epts", "tfidf_epts",
    "ProjectionBank", "union_vocab", "one_hot", "simhash", "event_phase_distance",
    "VariantSpec", "Alignment", "align", "VARIANTS", "detect_singularity", "detect_far_match",
    "MetricsReport", "compute_metrics",
]
