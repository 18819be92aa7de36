"""Coordinate permutations induced by affine maps of GF(2^m)."""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from gf2m import FieldTable, field_table_new


@dataclass(frozen=True, eq=False)
class IndexMap:
    """The bijection f: {0..n} -> GF(2^m) with f(0) = 0 and f(i) = alpha^(i-1)."""

    m: int
    forward: np.ndarray = field(repr=False)
    inverse: np.ndarray = field(repr=False)
    table: FieldTable = field(repr=False)

    @property
    def size(self) -> int:
        return 1 << self.m


@lru_cache(maxsize=None)
def index_map(m: int) -> IndexMap:
    table = field_table_new(m)
    size = 1 << m
    forward = np.zeros(size, dtype=np.int64)
    forward[1:] = table.antilog_table
    inverse = np.zeros(size, dtype=np.int64)
    inverse[forward] = np.arange(size)
    forward.setflags(write=False)
    inverse.setflags(write=False)
    return IndexMap(m=m, forward=forward, inverse=inverse, table=table)


@dataclass(frozen=True, eq=False)
class SigmaPermutation:
    """sigma_j(v) = f^-1(f(v) + f(j)), stored as an array over {0..n}."""

    j: int
    mapping: np.ndarray = field(repr=False)

    def __call__(self, v):
        return self.mapping[v]

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Permute the last axis: out[..., v] = values[..., sigma(v)]."""
        return values[..., self.mapping]


def sigma(j: int, imap: IndexMap) -> SigmaPermutation:
    """
    Translation permutation induced by X -> X + f(j).

    Always an involution; sigma(0) is the identity.
    """
    if not 0 <= j < imap.size:
        raise ValueError(f"Permutation index j={j} outside [0, {imap.size - 1}]")
    mapping = imap.inverse[imap.forward ^ imap.forward[j]]
    mapping.setflags(write=False)
    return SigmaPermutation(j=j, mapping=mapping)


def affine_sigma(i: int, j: int, imap: IndexMap) -> np.ndarray:
    """
    General affine permutation sigma_{i,j}(v) = f^-1(f(i) f(v) + f(j)), 1 <= i <= n.

    sigma_{i,0} fixes coordinate 0 and cyclically shifts the rest by i-1.
    Not used by the decoder; kept for invariance checks.
    """
    if not 1 <= i < imap.size:
        raise ValueError(f"Multiplier index i={i} outside [1, {imap.size - 1}]")
    table = imap.table
    a = int(imap.forward[i])
    scaled = np.array([table.mul(a, int(v)) for v in imap.forward], dtype=np.int64)
    return imap.inverse[scaled ^ imap.forward[j]]
