"""Test doubles for the decoder handles."""

from .mock_decoders import GenieDecoder, HardDecisionDecoder, ZeroDecoder

__all__ = [
    "GenieDecoder",
    "HardDecisionDecoder",
    "ZeroDecoder",
]
