"""channel_sim module - BPSK/AWGN channel, Monte-Carlo harness and report files."""

from .channel import ChannelSample, bpsk, gaussian, make_rng, noise_sigma, transmit
from .harness import (
    ChunkTally,
    SimReport,
    SnrPoint,
    chunk_seed,
    draw_codewords,
    monte_carlo,
    run_chunk,
)
from .report import (
    CSV_COLUMNS,
    DELTA_COLUMNS,
    REPORT_FORMATS,
    delta_table,
    emit_report,
    header_path,
    load_report,
    report_rows,
    write_delta_table,
)

__all__ = [
    "CSV_COLUMNS",
    "DELTA_COLUMNS",
    "REPORT_FORMATS",
    "ChannelSample",
    "ChunkTally",
    "SimReport",
    "SnrPoint",
    "bpsk",
    "chunk_seed",
    "delta_table",
    "draw_codewords",
    "emit_report",
    "header_path",
    "gaussian",
    "load_report",
    "make_rng",
    "monte_carlo",
    "noise_sigma",
    "report_rows",
    "run_chunk",
    "transmit",
    "write_delta_table",
]
