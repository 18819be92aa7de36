"""Run defaults read from the environment (a local .env is loaded by main.py)."""

import os
from pathlib import Path


def _int_env(name: str, fallback: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got '{raw}'")
    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")
    return value


def default_workers() -> int:
    """NBP_WORKERS, else the CPU count."""
    return _int_env("NBP_WORKERS", 0) or os.cpu_count() or 1


def default_seed() -> int:
    return _int_env("NBP_SEED", 0)


def default_chunk_frames() -> int:
    return _int_env("NBP_CHUNK_FRAMES", 1024) or 1024


def output_dir() -> Path:
    """
    Directory for weight files and reports.

    Environment variables:
        NBP_OUTPUT_DIR (default ./runs)
    """
    return Path(os.getenv("NBP_OUTPUT_DIR", "runs"))


def resolved_defaults() -> dict:
    return {
        "workers": default_workers(),
        "seed": default_seed(),
        "chunk_frames": default_chunk_frames(),
        "output_dir": str(output_dir()),
    }
