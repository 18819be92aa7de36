"""BPSK over AWGN with LLR output.

Noise is drawn by Box-Muller from the uniforms of a Philox-backed generator so
that a seed pins the exact stream.
"""

from dataclasses import dataclass

import numpy as np

from code_factory import CodeSpec


@dataclass
class ChannelSample:
    """One batch through the channel; single-frame inputs keep (n,) shapes."""

    bits: np.ndarray
    symbols: np.ndarray
    received: np.ndarray
    llr: np.ndarray
    snr_db: np.ndarray
    noise_sigma: np.ndarray


def make_rng(seed) -> np.random.Generator:
    """Counter-based generator; seed may be an int or a SeedSequence."""
    return np.random.Generator(np.random.Philox(seed))


def noise_sigma(snr_db, rate: float):
    """sigma with sigma^2 = 1 / (2 R 10^(snr/10)), snr read as Eb/N0 in dB."""
    if not 0 < rate <= 1:
        raise ValueError(f"Code rate must be in (0, 1], got {rate}")
    snr_db = np.asarray(snr_db, dtype=np.float64)
    return np.sqrt(1.0 / (2.0 * rate * 10.0 ** (snr_db / 10.0)))


def gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard normal samples by Box-Muller on rng.random() uniforms."""
    size = int(np.prod(shape))
    pairs = (size + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # (0, 1]
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:size].reshape(shape)


def bpsk(bits: np.ndarray) -> np.ndarray:
    """0 -> +1, 1 -> -1."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def transmit(spec: CodeSpec, bits, snr_db, rng: np.random.Generator) -> ChannelSample:
    """
    Send codewords through BPSK/AWGN and compute LLRs 2y / sigma^2.

    Args:
        spec: Code being simulated; its rate k/n sets the noise level
        bits: (n,) codeword or (F, n) batch
        snr_db: Scalar or per-frame (F,) SNR
        rng: Generator the noise is drawn from
    """
    bits = np.asarray(bits, dtype=np.uint8)
    single = bits.ndim == 1
    batch = np.atleast_2d(bits)
    if batch.shape[1] != spec.n:
        raise ValueError(f"Word length {batch.shape[1]} does not match n={spec.n}")

    frames = batch.shape[0]
    snr = np.broadcast_to(np.asarray(snr_db, dtype=np.float64), (frames,)).copy()
    sigma = noise_sigma(snr, spec.rate)
    symbols = bpsk(batch)
    received = symbols + sigma[:, None] * gaussian(rng, batch.shape)
    llr = 2.0 * received / (sigma[:, None] ** 2)

    if single:
        return ChannelSample(bits, symbols[0], received[0], llr[0], snr, sigma)
    return ChannelSample(batch, symbols, received, llr, snr, sigma)
