"""Reference decoders: brute-force ML, the Cyc_list baseline, and the puncturing adapter."""

import numpy as np

from code_factory import (
    CodeSpec,
    build_stacked,
    enumerate_codewords,
    index_map,
    is_codeword,
    sigma,
)
from code_factory.encoding import MAX_ENUMERATION_K
from tanner import StructuredTannerGraph, build_graph

from .neural_bp import DecodingError, hard_decision, ingest_llr, neural_bp_forward
from .weights import DecodeResult, WeightBank


def correlation_score(bits: np.ndarray, llr: np.ndarray) -> np.ndarray:
    """sum_j (1 - 2 c_j) L_j, the BPSK log-likelihood score up to a constant."""
    return np.sum((1.0 - 2.0 * bits) * llr, axis=-1)


def ml_oracle(spec: CodeSpec, llr) -> np.ndarray:
    """
    Maximum-likelihood codeword(s) by enumerating the codebook.

    Ties go to the smallest codeword index, so all-zero LLRs give the zero word.

    Raises:
        DecodingError: If k exceeds the enumeration budget
    """
    if spec.k > MAX_ENUMERATION_K:
        raise DecodingError(f"k={spec.k} too large for ML enumeration (max {MAX_ENUMERATION_K})")
    llr, single = ingest_llr(llr, spec.n)
    book = enumerate_codewords(spec)
    scores = llr @ (1.0 - 2.0 * book.astype(np.float64)).T
    best = book[np.argmax(scores, axis=1)]
    return best[0] if single else best


def cyc_list_decode(
    spec: CodeSpec,
    llr,
    list_size: int,
    weights_p1: WeightBank,
    graph_p1: StructuredTannerGraph | None = None,
) -> DecodeResult:
    """
    Cyc_list: one P=1 decode per permutation sigma_0..sigma_{l-1}, then ML over the list.

    Decoding on H_z is done as: permute the LLRs by sigma_z, decode on H_0,
    permute back (sigma_z is an involution). A candidate that passes the full
    check of the extended code (overall parity included) always beats one that
    does not; within each group the highest correlation wins, ties to the
    smaller z. When no candidate is a codeword the best-scoring hard decision
    is returned and flagged invalid.

    H_0 has no edge on coordinate sigma_z(0), so every single candidate leaves
    one coordinate at its channel decision; the codeword check is what lets
    the list recover it.
    """
    if not 1 <= list_size <= spec.n:
        raise ValueError(f"List size {list_size} outside [1, {spec.n}]")
    if graph_p1 is None:
        graph_p1 = build_graph(build_stacked(spec, 1))
    if graph_p1.P != 1:
        raise DecodingError(f"Cyc_list needs the P=1 graph, got P={graph_p1.P}")

    llr, single = ingest_llr(llr, spec.n)
    imap = index_map(spec.m)
    best_soft = best_bits = best_valid = best_score = None

    for z in range(list_size):
        perm = sigma(z, imap)
        result = neural_bp_forward(graph_p1, weights_p1, perm.apply(llr))
        soft = perm.apply(result.soft_outputs)
        bits = perm.apply(result.hard_bits)
        valid = is_codeword(spec, bits)
        score = correlation_score(bits, llr)
        if best_score is None:
            best_soft, best_bits, best_valid, best_score = soft, bits, valid, score
            continue
        better = (valid & ~best_valid) | ((valid == best_valid) & (score > best_score))
        best_soft = np.where(better[:, None], soft, best_soft)
        best_bits = np.where(better[:, None], bits, best_bits)
        best_valid = np.where(better, valid, best_valid)
        best_score = np.where(better, score, best_score)

    iterations = 2 * weights_p1.t * list_size
    if single:
        return DecodeResult(best_soft[0], best_bits[0], bool(best_valid[0]), iterations)
    return DecodeResult(best_soft, best_bits, best_valid, iterations)


def puncture_adapter(llr) -> np.ndarray:
    """Prepend a zero LLR for the unknown overall parity bit: (..., n-1) -> (..., n)."""
    llr = np.asarray(llr, dtype=np.float64)
    pad = np.zeros((*llr.shape[:-1], 1))
    return np.concatenate([pad, llr], axis=-1)


def decode_punctured(decode_extended, llr, n_extended: int) -> DecodeResult:
    """
    Decode a punctured word with an extended-code decoder.

    Args:
        decode_extended: Callable taking (F, n) LLRs and returning a DecodeResult
        llr: (n-1,) or (F, n-1) LLRs of the punctured code
        n_extended: Length of the extended code

    Raises:
        DecodingError: If the LLR length is not n_extended - 1
    """
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape[-1] != n_extended - 1:
        raise DecodingError(f"Punctured LLR length {llr.shape[-1]} != {n_extended - 1}")
    single = llr.ndim == 1
    result = decode_extended(puncture_adapter(np.atleast_2d(llr)))
    soft = result.soft_outputs[:, 1:]
    bits = hard_decision(soft)
    valid = np.asarray(result.is_valid_codeword)
    if single:
        return DecodeResult(soft[0], bits[0], bool(valid[0]), result.iterations_used)
    return DecodeResult(soft, bits, valid, result.iterations_used)
