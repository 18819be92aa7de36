"""Sum-product BP and the weighted neural BP decoder on a Tanner graph.

Messages live on a flat (F, E) buffer, one row per frame. Odd iterations run
the variable-side update over var_groups, even iterations the check-side
update over check_groups; every reduction is an explicit ordered loop so a
batch is bit-identical to frame-by-frame calls.
"""

from dataclasses import dataclass, field

import numpy as np

from tanner import StructuredTannerGraph, TannerGraph

from .weights import DecodeResult, WeightBank

LLR_CLAMP = 30.0
ATANH_EPS = 1e-7
DEFAULT_T = 5


class DecodingError(Exception):
    """Raised on dimension mismatches or non-finite messages."""

    pass


@dataclass
class MessageTrace:
    """Everything the reverse pass needs from one forward pass."""

    llr: np.ndarray
    messages: list[np.ndarray] = field(default_factory=list)
    # even iteration s -> unclamped leave-one-out products, (F, C, d)
    check_products: dict[int, np.ndarray] = field(default_factory=dict)


def ingest_llr(llr, n: int) -> tuple[np.ndarray, bool]:
    """
    Clamp LLRs to [-LLR_CLAMP, LLR_CLAMP] and lift a single frame to a batch.

    Returns:
        Tuple of ((F, n) array, whether the input was a single frame)
    """
    llr = np.asarray(llr, dtype=np.float64)
    single = llr.ndim == 1
    llr = np.atleast_2d(llr)
    if llr.ndim != 2 or llr.shape[1] != n:
        raise DecodingError(f"LLR shape {llr.shape} does not match n={n}")
    if np.any(np.isnan(llr)):
        raise DecodingError("LLR input contains NaN")
    return np.clip(llr, -LLR_CLAMP, LLR_CLAMP), single


def hard_decision(soft_outputs) -> np.ndarray:
    """Bit 1 iff o_j < 0; o_j = 0 decodes to 0."""
    return (np.asarray(soft_outputs) < 0).astype(np.uint8)


def leave_one_out_product(values: np.ndarray) -> np.ndarray:
    """out[..., k] = prod over l != k of values[..., l], via prefix and suffix products."""
    ones = np.ones_like(values[..., :1])
    prefix = np.cumprod(np.concatenate([ones, values[..., :-1]], axis=-1), axis=-1)
    suffix = np.cumprod(
        np.concatenate([ones, values[..., :0:-1]], axis=-1), axis=-1
    )[..., ::-1]
    return prefix * suffix


def gather_edges(x: np.ndarray, groups: np.ndarray, fill: float) -> np.ndarray:
    """Messages per group slot; padded slots (-1) read as fill."""
    mask = groups >= 0
    values = x[:, np.where(mask, groups, 0)]
    if not mask.all():
        values = np.where(mask, values, fill)
    return values


def scatter_edges(x: np.ndarray, groups: np.ndarray, values: np.ndarray):
    mask = groups >= 0
    if mask.all():
        x[:, groups] = values
    else:
        x[:, groups[mask]] = values[:, mask]


def variable_update(
    graph: TannerGraph,
    llr: np.ndarray,
    x_prev: np.ndarray,
    self_w: np.ndarray,
    cross_w: np.ndarray,
) -> np.ndarray:
    """Odd iteration: tanh(0.5 (w_b L_j + sum_{b' != b} w_{b',b} x(b'))) per group."""
    groups = graph.var_groups
    siblings = gather_edges(x_prev, groups, 0.0)
    pre = llr[:, graph.group_var][..., None] * self_w
    for bp in range(groups.shape[1]):
        pre = pre + siblings[..., bp, None] * cross_w[bp]
    x_new = np.zeros_like(x_prev)
    scatter_edges(x_new, groups, np.tanh(0.5 * pre))
    return x_new


def check_update(graph: TannerGraph, x_prev: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Even iteration: 2 atanh(prod of the other messages at the check), clamped."""
    groups = graph.check_groups
    products = leave_one_out_product(gather_edges(x_prev, groups, 1.0))
    clamped = np.clip(products, -1.0 + ATANH_EPS, 1.0 - ATANH_EPS)
    x_new = np.zeros_like(x_prev)
    scatter_edges(x_new, groups, 2.0 * np.arctanh(clamped))
    return x_new, products


def output_from_messages(
    graph: TannerGraph, llr: np.ndarray, x: np.ndarray, out_w: np.ndarray
) -> np.ndarray:
    """o_j = L_j + sum over the groups at v_j of sum_b w_b^out x(b)."""
    values = gather_edges(x, graph.var_groups, 0.0)
    contrib = np.zeros(values.shape[:2])
    for b in range(values.shape[2]):
        contrib = contrib + out_w[b] * values[..., b]
    out = llr.copy()
    for col in range(graph.var_group_table.shape[1]):
        gids = graph.var_group_table[:, col]
        valid = gids >= 0
        out[:, valid] += contrib[:, gids[valid]]
    return out


def graph_syndrome_ok(graph: TannerGraph, bits: np.ndarray) -> np.ndarray:
    """Per frame: every check of the graph is satisfied by the hard bits."""
    edge_bits = bits[:, graph.edge_var].astype(np.int64)
    per_check = gather_edges(edge_bits, graph.check_groups, 0).sum(axis=-1)
    return ~np.any(per_check % 2, axis=1)


def run_bp(
    graph: TannerGraph,
    llr: np.ndarray,
    self_w: np.ndarray,
    cross_w: np.ndarray,
    out_w: np.ndarray,
    keep_trace: bool = False,
) -> tuple[np.ndarray, MessageTrace | None]:
    """
    Run 2t iterations from x^[0] = 0 and return the outputs.

    self_w is (t, d), cross_w is (t, d, d), out_w is (d,), where d is the
    variable-group width of the graph. llr must already be ingested.

    Raises:
        DecodingError: If a message becomes non-finite
    """
    t = self_w.shape[0]
    x = np.zeros((llr.shape[0], graph.num_edges))
    trace = MessageTrace(llr=llr, messages=[x]) if keep_trace else None

    for s in range(1, 2 * t + 1):
        if s % 2 == 1:
            r = (s - 1) // 2
            x = variable_update(graph, llr, x, self_w[r], cross_w[r])
        else:
            x, products = check_update(graph, x)
            if trace is not None:
                trace.check_products[s] = products
        if not np.all(np.isfinite(x)):
            raise DecodingError(f"Non-finite message at iteration {s}")
        if trace is not None:
            trace.messages.append(x)

    return output_from_messages(graph, llr, x, out_w), trace


def _result(graph, soft, single, iterations, trace=None) -> DecodeResult:
    bits = hard_decision(soft)
    valid = graph_syndrome_ok(graph, bits)
    if single:
        return DecodeResult(soft[0], bits[0], bool(valid[0]), iterations, trace)
    return DecodeResult(soft, bits, valid, iterations, trace)


def neural_bp_forward(
    graph: StructuredTannerGraph,
    weights: WeightBank,
    llr,
    return_trace: bool = False,
) -> DecodeResult:
    """
    Weighted BP on the stacked Tanner graph.

    Odd iterations use the tied per-slot weights, even iterations the plain
    check rule, and the output combines the final messages with w_out.

    Args:
        graph: Structured graph of the stacked matrix
        weights: Bank whose u matches the graph
        llr: (n,) or (F, n) LLRs, positive favouring bit 0
        return_trace: Keep the full message trace for the reverse pass

    Raises:
        DecodingError: On dimension mismatch or non-finite messages
    """
    if not isinstance(graph, StructuredTannerGraph):
        raise DecodingError("Neural BP needs the structured graph of a stacked matrix")
    if weights.u != graph.u:
        raise DecodingError(f"Weight bank has u={weights.u}, graph has u={graph.u}")
    llr, single = ingest_llr(llr, graph.n)
    soft, trace = run_bp(
        graph,
        llr,
        weights.self_weights,
        weights.cross_weights,
        weights.output_weights,
        keep_trace=return_trace,
    )
    return _result(graph, soft, single, 2 * weights.t, trace)


def classic_bp(graph_or_matrix, llr, iterations: int = 2 * DEFAULT_T) -> DecodeResult:
    """
    Unweighted sum-product BP.

    Accepts a Tanner graph (structured or matrix-derived) or a binary matrix.
    On the structured graph it equals neural_bp_forward with all weights 1.

    Args:
        iterations: Total iteration count 2t (even, >= 2)
    """
    if iterations < 2 or iterations % 2:
        raise ValueError(f"Iteration count must be even and >= 2, got {iterations}")
    graph = graph_or_matrix
    if not isinstance(graph, TannerGraph):
        graph = TannerGraph.from_matrix(graph_or_matrix)

    d = graph.var_groups.shape[1]
    t = iterations // 2
    self_w = np.ones((t, d))
    cross_w = np.broadcast_to(1.0 - np.eye(d), (t, d, d))
    llr, single = ingest_llr(llr, graph.n)
    soft, _ = run_bp(graph, llr, self_w, cross_w, np.ones(d))
    return _result(graph, soft, single, iterations)
