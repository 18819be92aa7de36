"""decoder module - neural BP forward pass, classic BP, ML oracle and Cyc_list."""

from .baselines import (
    correlation_score,
    cyc_list_decode,
    decode_punctured,
    ml_oracle,
    puncture_adapter,
)
from .handles import (
    DECODER_KINDS,
    ClassicDecoder,
    CycListDecoder,
    MlDecoder,
    PuncturedDecoder,
    StackedDecoder,
    make_decoder,
)
from .neural_bp import (
    ATANH_EPS,
    DEFAULT_T,
    LLR_CLAMP,
    DecodingError,
    MessageTrace,
    classic_bp,
    gather_edges,
    graph_syndrome_ok,
    hard_decision,
    ingest_llr,
    leave_one_out_product,
    neural_bp_forward,
    output_from_messages,
    run_bp,
    scatter_edges,
)
from .weights import DecodeResult, GradientBank, WeightBank

__all__ = [
    "ATANH_EPS",
    "DECODER_KINDS",
    "DEFAULT_T",
    "LLR_CLAMP",
    "ClassicDecoder",
    "CycListDecoder",
    "DecodeResult",
    "DecodingError",
    "GradientBank",
    "MessageTrace",
    "MlDecoder",
    "PuncturedDecoder",
    "StackedDecoder",
    "WeightBank",
    "classic_bp",
    "correlation_score",
    "cyc_list_decode",
    "decode_punctured",
    "gather_edges",
    "graph_syndrome_ok",
    "hard_decision",
    "ingest_llr",
    "leave_one_out_product",
    "make_decoder",
    "ml_oracle",
    "neural_bp_forward",
    "output_from_messages",
    "puncture_adapter",
    "run_bp",
    "scatter_edges",
]
