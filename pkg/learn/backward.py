"""Reverse-mode gradients through the unrolled neural BP computation."""

import numpy as np

from decoder import (
    ATANH_EPS,
    GradientBank,
    MessageTrace,
    WeightBank,
    gather_edges,
    ingest_llr,
    leave_one_out_product,
    output_from_messages,
    run_bp,
    scatter_edges,
)
from tanner import StructuredTannerGraph

from .loss import loss, loss_gradient, output_iterations


def leave_one_out_product_grad(values: np.ndarray, upstream: np.ndarray) -> np.ndarray:
    """
    Gradient of sum_e upstream[e] * prod_{l != e} values[l] with respect to values.

    out[..., k] = sum_{e != k} upstream[..., e] * prod_{l not in {e, k}} values[..., l]
    """
    out = np.empty_like(values)
    for k in range(values.shape[-1]):
        held = values.copy()
        held[..., k] = 1.0
        weights = upstream.copy()
        weights[..., k] = 0.0
        out[..., k] = np.sum(weights * leave_one_out_product(held), axis=-1)
    return out


def batch_loss(
    graph: StructuredTannerGraph,
    bank: WeightBank,
    llr: np.ndarray,
    bits: np.ndarray,
    mode: str = "final_only",
) -> tuple[float, MessageTrace]:
    """Forward pass with trace and the (multi)loss averaged over the selected outputs."""
    llr, _ = ingest_llr(llr, graph.n)
    bits = np.atleast_2d(bits)
    _, trace = run_bp(
        graph,
        llr,
        bank.self_weights,
        bank.cross_weights,
        bank.output_weights,
        keep_trace=True,
    )
    iters = output_iterations(bank.t, mode)
    total = 0.0
    for s in iters:
        soft = output_from_messages(graph, llr, trace.messages[s], bank.output_weights)
        total += loss(soft, bits)
    return total / len(iters), trace


def backward(
    graph: StructuredTannerGraph,
    bank: WeightBank,
    trace: MessageTrace,
    bits: np.ndarray,
    mode: str = "final_only",
) -> GradientBank:
    """
    Exact gradient of batch_loss with respect to every weight.

    Uses tanh' = 1 - tanh^2 and atanh' = 1 / (1 - x^2); entries whose check
    product was clamped pass no gradient.

    Raises:
        ValueError: If the trace is missing or incomplete
    """
    if trace is None or len(trace.messages) != 2 * bank.t + 1:
        raise ValueError("backward() needs the full message trace of a forward pass")

    bits = np.atleast_2d(bits)
    llr = trace.llr
    groups, checks = graph.var_groups, graph.check_groups
    group_llr = llr[:, graph.group_var]
    w_out = bank.output_weights
    iters = set(output_iterations(bank.t, mode))
    scale = 1.0 / len(iters)

    grad = GradientBank.like(bank)
    dx = np.zeros_like(trace.messages[-1])

    for s in range(2 * bank.t, 0, -1):
        if s % 2 == 0:
            if s in iters:
                o = output_from_messages(graph, llr, trace.messages[s], w_out)
                d_out = scale * loss_gradient(o, bits)[:, graph.group_var]
                x_s = gather_edges(trace.messages[s], groups, 0.0)
                grad.output_weights += np.einsum("fq,fqb->b", d_out, x_s)
                d_group = gather_edges(dx, groups, 0.0) + d_out[..., None] * w_out
                scatter_edges(dx, groups, d_group)

            products = trace.check_products[s]
            clamped = np.clip(products, -1.0 + ATANH_EPS, 1.0 - ATANH_EPS)
            passes = (products > -1.0 + ATANH_EPS) & (products < 1.0 - ATANH_EPS)
            d_prod = gather_edges(dx, checks, 0.0) * 2.0 / (1.0 - clamped**2) * passes
            inputs = gather_edges(trace.messages[s - 1], checks, 1.0)
            d_in = leave_one_out_product_grad(inputs, d_prod)
            dx = np.zeros_like(dx)
            scatter_edges(dx, checks, d_in)
        else:
            r = (s - 1) // 2
            out = gather_edges(trace.messages[s], groups, 0.0)
            d_pre = gather_edges(dx, groups, 0.0) * 0.5 * (1.0 - out**2)
            siblings = gather_edges(trace.messages[s - 1], groups, 0.0)
            grad.self_weights[r] += np.einsum("fqb,fq->b", d_pre, group_llr)
            grad.cross_weights[r] += np.einsum("fqa,fqb->ab", siblings, d_pre)
            dx = np.zeros_like(dx)
            scatter_edges(dx, groups, np.einsum("fqb,ab->fqa", d_pre, bank.cross_weights[r]))

    u = bank.u
    grad.cross_weights[:, np.arange(u), np.arange(u)] = 0.0
    return grad


def loss_and_gradient(
    graph: StructuredTannerGraph,
    bank: WeightBank,
    llr: np.ndarray,
    bits: np.ndarray,
    mode: str = "final_only",
) -> tuple[float, GradientBank]:
    value, trace = batch_loss(graph, bank, llr, bits, mode)
    return value, backward(graph, bank, trace, bits, mode)
