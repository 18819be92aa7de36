"""Systematic encoding, codebook enumeration and membership checks."""

from functools import lru_cache

import numpy as np

from gf2m import Gf2Poly, poly_divmod

from .codes import CodeSpec, puncture
from .matrices import eq1_check_matrix

MAX_ENUMERATION_K = 20


def encode(spec: CodeSpec, message) -> np.ndarray:
    """
    Systematic cyclic encoding.

    The message occupies the high-order positions n-k..n-1 and the remainder of
    x^(n-k) m(x) modulo g(x) fills the low-order positions. For an extended
    spec the overall parity bit is prepended at coordinate 0.

    Raises:
        ValueError: If the message length is not k
    """
    message = np.asarray(message, dtype=np.uint8).ravel()
    if message.shape[0] != spec.k:
        raise ValueError(f"Message length {message.shape[0]} != k={spec.k}")

    N, k = spec.n_cyclic, spec.k
    shifted = Gf2Poly(Gf2Poly.from_coeffs(message).bits << (N - k))
    _, remainder = poly_divmod(shifted, spec.generator)
    codeword = shifted + remainder

    bits = np.zeros(N, dtype=np.uint8)
    coeffs = codeword.coeffs
    bits[: len(coeffs)] = coeffs
    if spec.extended:
        return np.concatenate([[bits.sum() % 2], bits]).astype(np.uint8)
    return bits


@lru_cache(maxsize=32)
def generator_matrix(spec: CodeSpec) -> np.ndarray:
    """k x n systematic generator matrix, row i = encode(e_i)."""
    G = np.stack([encode(spec, np.eye(spec.k, dtype=np.uint8)[i]) for i in range(spec.k)])
    G.setflags(write=False)
    return G


def encode_batch(spec: CodeSpec, messages: np.ndarray) -> np.ndarray:
    """Encode an (F, k) batch of messages into (F, n) codewords."""
    messages = np.atleast_2d(np.asarray(messages, dtype=np.int64))
    if messages.shape[1] != spec.k:
        raise ValueError(f"Message length {messages.shape[1]} != k={spec.k}")
    G = generator_matrix(spec).astype(np.int64)
    return ((messages @ G) % 2).astype(np.uint8)


@lru_cache(maxsize=8)
def enumerate_codewords(spec: CodeSpec) -> np.ndarray:
    """
    All 2^k codewords; row i encodes the message whose bit b is bit b of i.

    Raises:
        ValueError: If k exceeds the enumeration budget
    """
    if spec.k > MAX_ENUMERATION_K:
        raise ValueError(f"k={spec.k} exceeds enumeration budget of {MAX_ENUMERATION_K}")
    idx = np.arange(1 << spec.k, dtype=np.int64)
    messages = (idx[:, None] >> np.arange(spec.k)) & 1
    book = encode_batch(spec, messages)
    book.setflags(write=False)
    return book


def syndrome(spec: CodeSpec, bits: np.ndarray) -> np.ndarray:
    """Syndromes of (..., n) words; the extended spec adds the overall parity check."""
    bits = np.asarray(bits, dtype=np.int64)
    if bits.shape[-1] != spec.n:
        raise ValueError(f"Word length {bits.shape[-1]} != n={spec.n}")
    H = eq1_check_matrix(puncture(spec)).astype(np.int64)
    if spec.extended:
        band = (bits[..., 1:] @ H.T) % 2
        parity = bits.sum(axis=-1, keepdims=True) % 2
        return np.concatenate([band, parity], axis=-1)
    return (bits @ H.T) % 2


def is_codeword(spec: CodeSpec, bits: np.ndarray):
    """True iff all syndromes vanish (element-wise over leading axes)."""
    result = ~np.any(syndrome(spec, bits), axis=-1)
    if result.ndim == 0:
        return bool(result)
    return result
