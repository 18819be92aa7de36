"""Parity-check matrices: the circulant band matrix, H_0, and the permutation-stacked H."""

from dataclasses import dataclass, field

import numpy as np

from .codes import CodeSpec, puncture
from .permutations import SigmaPermutation, index_map, sigma


def _first_row(spec: CodeSpec) -> np.ndarray:
    """Reversed coefficients of h, zero padded to the cyclic length: [h_k ... h_0 0 ... 0]."""
    row = np.zeros(spec.n_cyclic, dtype=np.uint8)
    coeffs = spec.check_poly.coeffs
    row[: len(coeffs)] = coeffs[::-1]
    return row


def eq1_check_matrix(spec: CodeSpec) -> np.ndarray:
    """
    The (n-k) x n band parity-check matrix of a cyclic code.

    Row i is [h_k ... h_0] shifted right by i.
    """
    if spec.extended:
        raise ValueError(f"The band matrix is defined for the cyclic code, got {spec.label}")
    n, k = spec.n_cyclic, spec.k
    first = _first_row(spec)
    return np.stack([np.roll(first, i) for i in range(n - k)])


def extended_eq1_check_matrix(spec: CodeSpec) -> np.ndarray:
    """
    Parity-check matrix of the extended code built from the circulant band matrix.

    Columns 1..n carry the band-matrix rows; an extra all-ones row enforces the
    overall parity C_0 = C_1 + ... + C_n.
    """
    band = eq1_check_matrix(puncture(spec))
    rows = np.zeros((band.shape[0] + 1, band.shape[1] + 1), dtype=np.uint8)
    rows[:-1, 1:] = band
    rows[-1, :] = 1
    return rows


def build_h0(spec: CodeSpec) -> np.ndarray:
    """
    H_0 of the extended code: an all-zero column in front of the full circulant.

    Row i (0-based) of the circulant is the band-matrix first row cyclically shifted
    right by i, so the matrix is (n-1) x n with n = 2^m.
    """
    if not spec.extended:
        raise ValueError(f"H_0 is defined for the extended code, got {spec.label}")
    N = spec.n_cyclic
    first = _first_row(spec)
    h0 = np.zeros((N, N + 1), dtype=np.uint8)
    for i in range(N):
        h0[i, 1:] = np.roll(first, i)
    return h0


@dataclass(frozen=True, eq=False)
class StackedCheckMatrix:
    """
    P column-permuted copies of H_0.

    blocks[z] satisfies blocks[z][i, sigma_z(j)] = H_0[i, j].
    """

    P: int
    blocks: np.ndarray = field(repr=False)
    code: CodeSpec
    u: int
    sigmas: tuple[SigmaPermutation, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.blocks.shape[2]

    @property
    def rows_per_block(self) -> int:
        return self.blocks.shape[1]

    @property
    def matrix(self) -> np.ndarray:
        """All P(n-1) rows as one matrix, block by block."""
        return self.blocks.reshape(-1, self.n)

    @property
    def h0(self) -> np.ndarray:
        return self.blocks[0]


def build_stacked(spec: CodeSpec, P: int) -> StackedCheckMatrix:
    """
    Stack H_0, H_1, ..., H_{P-1}, where H_z is H_0 with columns permuted by sigma_z.

    Args:
        spec: Extended code
        P: Number of permutations, 1 <= P <= n

    Raises:
        ValueError: If P is out of range
    """
    if not spec.extended:
        raise ValueError(f"Stacked matrix is defined for the extended code, got {spec.label}")
    n = spec.n
    if not 1 <= P <= n:
        raise ValueError(f"Permutation count P={P} outside [1, {n}]")

    h0 = build_h0(spec)
    imap = index_map(spec.m)
    sigmas = tuple(sigma(z, imap) for z in range(P))
    blocks = np.zeros((P, *h0.shape), dtype=np.uint8)
    for z, s in enumerate(sigmas):
        blocks[z][:, s.mapping] = h0

    col_weights = h0[:, 1:].sum(axis=0)
    u = int(col_weights[0])
    if not np.all(col_weights == u):
        raise AssertionError("H_0 circulant columns have unequal weights")

    blocks.setflags(write=False)
    return StackedCheckMatrix(P=P, blocks=blocks, code=spec, u=u, sigmas=sigmas)
