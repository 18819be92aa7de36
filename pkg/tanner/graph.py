"""Tanner graphs: a generic matrix-derived graph and the structured graph of the stacked H.

Both keep two padded views of the flat edge array (-1 marks padding):

- check_groups[c]: edge ids incident to check c
- var_groups[q]: edge ids of variable group q, the unit of the variable-side
  update; group_var[q] is its variable

On a matrix-derived graph every variable has one group holding all its edges.
On the structured graph a group is the u edges of one (block z, variable j)
pair, ordered by weight slot b: the sibling set of the weighted variable update.
"""

from dataclasses import dataclass, field

import numpy as np

from code_factory import StackedCheckMatrix


class GraphConsistencyError(Exception):
    """Raised when the matrix-derived and formula-derived edge sets disagree."""

    pass


def _padded_groups(keys: np.ndarray, num_groups: int) -> np.ndarray:
    """Table of edge ids per key, in increasing edge order, padded with -1."""
    counts = np.bincount(keys, minlength=num_groups)
    width = int(counts.max()) if counts.size else 0
    table = np.full((num_groups, width), -1, dtype=np.int64)
    order = np.argsort(keys, kind="stable")
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    positions = np.arange(keys.size) - np.repeat(starts, counts)
    table[keys[order], positions] = order
    return table


@dataclass(frozen=True, eq=False)
class TannerGraph:
    n: int
    num_checks: int
    edge_check: np.ndarray = field(repr=False)
    edge_var: np.ndarray = field(repr=False)
    check_groups: np.ndarray = field(repr=False)
    var_groups: np.ndarray = field(repr=False)
    group_var: np.ndarray = field(repr=False)
    var_group_table: np.ndarray = field(repr=False)

    @property
    def num_edges(self) -> int:
        return int(self.edge_var.size)

    def check_degrees(self) -> np.ndarray:
        return (self.check_groups >= 0).sum(axis=1)

    def variable_degrees(self) -> np.ndarray:
        return np.bincount(self.edge_var, minlength=self.n)

    @classmethod
    def from_matrix(cls, H: np.ndarray) -> "TannerGraph":
        """Textbook Tanner graph of an arbitrary binary matrix."""
        H = np.asarray(H)
        rows, cols = np.nonzero(H)
        num_checks, n = H.shape
        var_groups = _padded_groups(cols, n)
        return cls(
            n=n,
            num_checks=num_checks,
            edge_check=rows.astype(np.int64),
            edge_var=cols.astype(np.int64),
            check_groups=_padded_groups(rows, num_checks),
            var_groups=var_groups,
            group_var=np.arange(n, dtype=np.int64),
            var_group_table=np.arange(n, dtype=np.int64)[:, None],
        )


@dataclass(frozen=True, eq=False)
class StructuredTannerGraph(TannerGraph):
    """
    Tanner graph of the stacked matrix with (z, i, j) edge triples and tied weight slots.

    Rows are stored 0-based; the edge accessors take and return 1-based
    row indices and 1-based slots b.
    """

    P: int = 1
    u: int = 0
    base_rows: np.ndarray = field(default=None, repr=False)
    edge_block: np.ndarray = field(default=None, repr=False)
    edge_row: np.ndarray = field(default=None, repr=False)
    edge_slot: np.ndarray = field(default=None, repr=False)
    block_groups: np.ndarray = field(default=None, repr=False)
    group_block: np.ndarray = field(default=None, repr=False)

    @property
    def rows_per_block(self) -> int:
        return self.n - 1

    def edge(self, e: int) -> tuple[int, int, int, int]:
        """Edge record (z, i, j, b) with 1-based i and b."""
        return (
            int(self.edge_block[e]),
            int(self.edge_row[e]) + 1,
            int(self.edge_var[e]),
            int(self.edge_slot[e]) + 1,
        )

    def variable_adjacency(self, j: int) -> dict[int, list[int]]:
        """Edge ids at variable j, grouped by block z (blocks with no edges omitted)."""
        return {
            z: [int(e) for e in self.block_groups[z, j]]
            for z in range(self.P)
            if self.block_groups[z, j, 0] >= 0
        }


def pi(j: int, i: int, N: int) -> int:
    """j-1 right cyclic shifts on the 1-based row set {1, ..., N}."""
    return (i - 1 + j - 1) % N + 1


def matrix_edge_set(H: StackedCheckMatrix) -> set[tuple[int, int, int]]:
    """{(z, i, j) : H_z[i, j] = 1}, rows 1-based."""
    edges = set()
    for z in range(H.P):
        rows, cols = np.nonzero(H.blocks[z])
        edges.update((z, int(i) + 1, int(j)) for i, j in zip(rows, cols, strict=True))
    return edges


def formula_edge_set(H: StackedCheckMatrix) -> set[tuple[int, int, int]]:
    """{(z, pi_{sigma_z(j)}(i_b), j)} over z < P, sigma_z(j) != 0 and b in [u]."""
    N = H.rows_per_block
    base = [int(i) + 1 for i in np.flatnonzero(H.h0[:, 1])]
    edges = set()
    for z, s in enumerate(H.sigmas):
        for j in range(H.n):
            c = int(s(j))
            if c == 0:
                continue
            edges.update((z, pi(c, i_b, N), j) for i_b in base)
    return edges


def build_graph(H: StackedCheckMatrix) -> StructuredTannerGraph:
    """
    Build the structured Tanner graph of the stacked matrix.

    Edges come from the matrix 1s (block, then row, then column order); each
    edge's slot b is found by matching its row against pi_{sigma_z(j)}(i_b).

    Raises:
        GraphConsistencyError: If an edge has no slot, a slot repeats, or the
            matrix-derived and formula-derived edge sets differ
    """
    P, n, N, u = H.P, H.n, H.rows_per_block, H.u
    base_rows = np.flatnonzero(H.h0[:, 1])
    if base_rows.size != u:
        raise GraphConsistencyError(f"Column 1 of H_0 has {base_rows.size} ones, expected {u}")

    slot_of_row = np.full(N, -1, dtype=np.int64)
    slot_of_row[base_rows] = np.arange(u)

    blocks, rows, cols = np.nonzero(H.blocks)
    sig = np.stack([s.mapping for s in H.sigmas])
    images = sig[blocks, cols]
    if np.any(images == 0):
        raise GraphConsistencyError("Matrix has a 1 in a column mapped to the zero column")

    # undo the pi shift to land on a row of column 1
    slots = slot_of_row[(rows - (images - 1)) % N]
    if np.any(slots < 0):
        e = int(np.flatnonzero(slots < 0)[0])
        raise GraphConsistencyError(
            f"Edge (z={blocks[e]}, i={rows[e] + 1}, j={cols[e]}) matches no slot"
        )

    block_groups = np.full((P, n, u), -1, dtype=np.int64)
    edge_ids = np.arange(blocks.size, dtype=np.int64)
    if np.any(np.bincount((blocks * n + cols) * u + slots, minlength=P * n * u) > 1):
        raise GraphConsistencyError("Two edges of one (z, j) pair share a slot")
    block_groups[blocks, cols, slots] = edge_ids

    filled = block_groups >= 0
    for z, s in enumerate(H.sigmas):
        expected = np.ones((n, u), dtype=bool)
        expected[z] = False  # sigma_z(z) = 0
        if not np.array_equal(filled[z], expected):
            raise GraphConsistencyError(f"Block {z} does not have u={u} edges per nonzero column")
        if int(s(z)) != 0:
            raise GraphConsistencyError(f"sigma_{z}({z}) != 0")

    if matrix_edge_set(H) != formula_edge_set(H):
        raise GraphConsistencyError("Matrix-derived and formula-derived edge sets differ")

    valid = filled[:, :, 0]
    group_block, group_var = np.nonzero(valid)
    var_groups = block_groups[group_block, group_var]
    group_ids = np.full((P, n), -1, dtype=np.int64)
    group_ids[group_block, group_var] = np.arange(group_block.size)

    checks = blocks * N + rows
    return StructuredTannerGraph(
        n=n,
        num_checks=P * N,
        edge_check=checks.astype(np.int64),
        edge_var=cols.astype(np.int64),
        check_groups=_padded_groups(checks, P * N),
        var_groups=var_groups,
        group_var=group_var.astype(np.int64),
        var_group_table=group_ids.T.copy(),
        P=P,
        u=u,
        base_rows=base_rows,
        edge_block=blocks.astype(np.int64),
        edge_row=rows.astype(np.int64),
        edge_slot=slots.astype(np.int64),
        block_groups=block_groups,
        group_block=group_block.astype(np.int64),
    )


def variable_edges(graph: StructuredTannerGraph, j: int, z: int) -> list[tuple[int, int]]:
    """(edge id, b) pairs of variable j in block z, sorted by 1-based slot b; empty when j = z."""
    if not (0 <= j < graph.n and 0 <= z < graph.P):
        raise ValueError(f"Index out of range: j={j}, z={z}")
    group = graph.block_groups[z, j]
    return [(int(e), b + 1) for b, e in enumerate(group) if e >= 0]


def check_edges(graph: StructuredTannerGraph, z: int, i: int) -> list[int]:
    """Edge ids of check row i (1-based) in block z."""
    if not (0 <= z < graph.P and 1 <= i <= graph.rows_per_block):
        raise ValueError(f"Index out of range: z={z}, i={i}")
    group = graph.check_groups[z * graph.rows_per_block + i - 1]
    return [int(e) for e in group if e >= 0]
