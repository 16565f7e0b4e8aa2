"""Near-linear exact edit distance for strings related by an indel channel.

The pipeline anchors a sparse alignment-function estimate by scanning
shifted windows block by block, then runs a band-restricted DP whose band
is wide enough to trap the optimal path with high probability under the
channel model. Full-matrix and enumeration references, the channel
simulator, break-replacement machinery, and Monte Carlo verification
suites live alongside it.
"""

__version__ = "0.1.0"

from .alignment import (
    Alignment,
    Break,
    alignment_cost,
    alignment_function,
    alignment_function_table,
    enumerate_alignments,
    extract_breaks,
    lbr,
    sbr,
)
from .approx import AnchorFunction, anchor_error_bound, approx_align, check_separation
from .bitstring import BitString, as_bits
from .channel import (
    DEFAULT_BOUNDS,
    ChannelParams,
    EditTrace,
    ParamBounds,
    TraceError,
    apply_channel,
    canonical_alignment,
    canonical_function,
    derive_rng,
    replay_trace,
    sample_source,
)
from .dp import (
    Band,
    DisconnectedBandError,
    band_from_anchor_function,
    diagonal_band,
    edit_distance_banded,
    edit_distance_cost,
    edit_distance_full,
    full_rectangle_band,
)
from .pipeline import (
    PipelineConfig,
    band_radius,
    default_k2,
    edit_distance_fast,
    scaling_benchmark,
)
from .verify import (
    TrialReport,
    run_suite,
    suite_lemma_tails,
    suite_oracle,
    suite_proof_machinery,
)

__all__ = [
    "__version__",
    "Alignment",
    "AnchorFunction",
    "Band",
    "BitString",
    "Break",
    "ChannelParams",
    "DEFAULT_BOUNDS",
    "DisconnectedBandError",
    "EditTrace",
    "ParamBounds",
    "PipelineConfig",
    "TraceError",
    "TrialReport",
    "alignment_cost",
    "alignment_function",
    "alignment_function_table",
    "anchor_error_bound",
    "apply_channel",
    "approx_align",
    "as_bits",
    "band_from_anchor_function",
    "band_radius",
    "canonical_alignment",
    "canonical_function",
    "check_separation",
    "default_k2",
    "derive_rng",
    "diagonal_band",
    "edit_distance_banded",
    "edit_distance_cost",
    "edit_distance_fast",
    "edit_distance_full",
    "enumerate_alignments",
    "extract_breaks",
    "full_rectangle_band",
    "lbr",
    "replay_trace",
    "run_suite",
    "sample_source",
    "sbr",
    "scaling_benchmark",
    "suite_lemma_tails",
    "suite_oracle",
    "suite_proof_machinery",
]
