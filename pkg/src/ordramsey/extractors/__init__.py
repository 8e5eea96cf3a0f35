"""Constructive procedures that follow the proofs and return checked witnesses."""

from .chains import ChainThresholds, chain_extract_recursive
from .clique_pairs import PairOutcome, clique_pair_across_parts, sample_clique_pair
from .erdos_szekeres import erdos_szekeres_extract
from .failures import ExtractionFailure, PreconditionError
from .pipeline import (
    ContradictionCertificate,
    FTable,
    pipeline_path_vs_clique,
    remark_pipeline,
    validate_certificate,
    validate_pipeline_result,
)
from .qgraph import QExtractParams, lambda_from_epsilon, q_ramsey_extract
from .sequences import select_decreasing_positions

__all__ = [
    "ChainThresholds",
    "ContradictionCertificate",
    "ExtractionFailure",
    "FTable",
    "PairOutcome",
    "PreconditionError",
    "QExtractParams",
    "chain_extract_recursive",
    "clique_pair_across_parts",
    "erdos_szekeres_extract",
    "lambda_from_epsilon",
    "pipeline_path_vs_clique",
    "q_ramsey_extract",
    "remark_pipeline",
    "sample_clique_pair",
    "select_decreasing_positions",
    "validate_certificate",
    "validate_pipeline_result",
]
