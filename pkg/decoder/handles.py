"""Decoder handles: one object per decoder configuration with a common decode_batch()."""

from dataclasses import dataclass, field

import numpy as np

from code_factory import (
    CodeSpec,
    build_stacked,
    eq1_check_matrix,
    extend,
    extended_eq1_check_matrix,
    puncture,
)
from tanner import StructuredTannerGraph, TannerGraph, build_graph

from .baselines import cyc_list_decode, decode_punctured, ml_oracle
from .neural_bp import DEFAULT_T, classic_bp, graph_syndrome_ok, neural_bp_forward
from .weights import DecodeResult, WeightBank

DECODER_KINDS = ("stacked", "cyclist", "classic", "classic-eq1", "ml")


@dataclass(eq=False)
class StackedDecoder:
    graph: StructuredTannerGraph = field(repr=False)
    weights: WeightBank = field(repr=False)
    name: str = "stacked"

    def decode_batch(self, llr: np.ndarray) -> DecodeResult:
        return neural_bp_forward(self.graph, self.weights, llr)


@dataclass(eq=False)
class ClassicDecoder:
    graph: TannerGraph = field(repr=False)
    iterations: int = 2 * DEFAULT_T
    name: str = "classic"

    def decode_batch(self, llr: np.ndarray) -> DecodeResult:
        return classic_bp(self.graph, llr, self.iterations)


@dataclass(eq=False)
class CycListDecoder:
    spec: CodeSpec
    graph_p1: StructuredTannerGraph = field(repr=False)
    weights: WeightBank = field(repr=False)
    list_size: int = 1
    name: str = "cyclist"

    def decode_batch(self, llr: np.ndarray) -> DecodeResult:
        return cyc_list_decode(self.spec, llr, self.list_size, self.weights, self.graph_p1)


@dataclass(eq=False)
class MlDecoder:
    spec: CodeSpec
    graph: TannerGraph = field(repr=False)
    name: str = "ml"

    def decode_batch(self, llr: np.ndarray) -> DecodeResult:
        bits = np.atleast_2d(ml_oracle(self.spec, llr))
        soft = np.where(bits == 1, -1.0, 1.0)
        valid = graph_syndrome_ok(self.graph, bits)
        return DecodeResult(soft, bits, valid, 0)


@dataclass(eq=False)
class PuncturedDecoder:
    """Runs an extended-code decoder on punctured words through the zero-LLR adapter."""

    inner: object
    n_extended: int
    name: str = ""

    def __post_init__(self):
        if not self.name:
            self.name = f"{self.inner.name}+punct"

    def decode_batch(self, llr: np.ndarray) -> DecodeResult:
        return decode_punctured(self.inner.decode_batch, llr, self.n_extended)


def make_decoder(
    kind: str,
    spec: CodeSpec,
    weights: WeightBank | None = None,
    P: int = 1,
    list_size: int = 1,
    iterations: int | None = None,
    punctured: bool = False,
    t: int = DEFAULT_T,
):
    """
    Build a decoder handle for the extended code, or for the punctured code if requested.

    Args:
        kind: One of DECODER_KINDS
        spec: Code (either flavour; the extended form is used for decoding)
        weights: Bank for "stacked" (trained for P) and "cyclist" (trained for P=1);
            defaults to the unit bank
        P: Permutation count for "stacked" and "classic"
        list_size: List size for "cyclist"
        iterations: Total iterations 2t for classic decoders (defaults to 2 * weights.t)
        punctured: Decode the cyclic code through the puncturing adapter
        t: Iteration pairs of the unit bank used when weights is None

    Raises:
        ValueError: If kind is unknown
    """
    if kind not in DECODER_KINDS:
        raise ValueError(f"Unknown decoder '{kind}' (choose from {', '.join(DECODER_KINDS)})")

    ext = extend(spec)
    if kind == "ml":
        target = puncture(spec) if punctured else ext
        return MlDecoder(target, TannerGraph.from_matrix(_membership_matrix(target)))
    if kind == "classic-eq1":
        iters = iterations or 2 * (weights.t if weights else t)
        if punctured:
            return ClassicDecoder(
                TannerGraph.from_matrix(eq1_check_matrix(puncture(spec))), iters, "classic-eq1"
            )
        return ClassicDecoder(
            TannerGraph.from_matrix(extended_eq1_check_matrix(ext)), iters, "classic-eq1"
        )

    P_eff = 1 if kind == "cyclist" else P
    graph = build_graph(build_stacked(ext, P_eff))
    bank = weights if weights is not None else WeightBank.unit(graph.u, t)

    if kind == "stacked":
        handle = StackedDecoder(graph, bank, f"stacked(P={P})")
    elif kind == "cyclist":
        handle = CycListDecoder(ext, graph, bank, list_size, f"cyclist(l={list_size})")
    else:
        handle = ClassicDecoder(graph, iterations or 2 * bank.t, f"classic(P={P})")

    if punctured:
        return PuncturedDecoder(handle, ext.n)
    return handle


def _membership_matrix(spec: CodeSpec) -> np.ndarray:
    if spec.extended:
        return extended_eq1_check_matrix(spec)
    return eq1_check_matrix(spec)
