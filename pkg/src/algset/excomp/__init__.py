"""Exact completion of finite sets relative to a class of maps."""

from algset.excomp.completion import (
    CompletedClass,
    Completion,
    ExCategory,
    ExMorphism,
    ExObject,
    QuasiPullbackWitness,
    ex_complete,
    fibre_class_census,
    relation_from_labels,
    relation_of,
    replay_witness,
)
from algset.excomp.verify import (
    EmbeddingReport,
    QuotientReport,
    census,
    check_bounded_quotients,
    coarser_relations,
    quotient_in_completion,
    verify_embedding,
)

__all__ = [
    "CompletedClass", "Completion", "EmbeddingReport", "ExCategory", "ExMorphism", "ExObject",
    "QuasiPullbackWitness", "QuotientReport", "census", "check_bounded_quotients",
    "coarser_relations", "ex_complete", "fibre_class_census", "quotient_in_completion",
    "relation_from_labels", "relation_of", "replay_witness", "verify_embedding",
]
