"""Bitwise cross-entropy on the decoder's soft outputs."""

import numpy as np

LOSS_MODES = ("final_only", "multiloss")


def sigmoid(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def loss(soft_outputs, bits) -> float:
    """
    Mean binary cross-entropy between sigmoid(-o_j) and c_j.

    Large positive o_j with c_j = 0 costs ~0; o = 0 costs ln 2 per bit.

    Raises:
        ValueError: If the shapes differ or an output is not finite
    """
    o = np.asarray(soft_outputs, dtype=np.float64)
    c = np.asarray(bits, dtype=np.float64)
    if o.shape != c.shape:
        raise ValueError(f"Output shape {o.shape} != bit shape {c.shape}")
    if not np.all(np.isfinite(o)):
        raise ValueError("Soft outputs contain non-finite values")
    # c * softplus(o) + (1 - c) * softplus(-o)
    return float(np.mean(c * np.logaddexp(0.0, o) + (1.0 - c) * np.logaddexp(0.0, -o)))


def loss_gradient(soft_outputs: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """d loss / d o_j for the mean taken in loss()."""
    o = np.asarray(soft_outputs, dtype=np.float64)
    c = np.asarray(bits, dtype=np.float64)
    return (sigmoid(o) - (1.0 - c)) / o.size


def output_iterations(t: int, mode: str) -> list[int]:
    """Even iterations whose soft output enters the loss."""
    if mode == "final_only":
        return [2 * t]
    if mode == "multiloss":
        return list(range(2, 2 * t + 1, 2))
    raise ValueError(f"Unknown loss mode '{mode}' (choose from {', '.join(LOSS_MODES)})")
