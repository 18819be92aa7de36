"""Training loop for the tied weights of the stacked decoder."""

from dataclasses import dataclass, field

import numpy as np

from channel_sim.channel import make_rng, transmit
from code_factory import CodeSpec, build_stacked, encode_batch, extend
from decoder import DEFAULT_T, WeightBank
from tanner import StructuredTannerGraph, build_graph

from .backward import loss_and_gradient
from .loss import LOSS_MODES
from .optim import OPTIMIZERS, make_optimizer


class TrainingDivergedError(Exception):
    """Raised when the training loss stops being finite."""

    def __init__(self, step: int, value: float):
        self.step = step
        self.value = value
        super().__init__(f"Training diverged at step {step} (loss={value})")


@dataclass
class TrainConfig:
    """Everything that determines a training run."""

    code: CodeSpec
    P: int = 1
    t: int = DEFAULT_T
    batch_size: int = 128
    steps: int = 2000
    learning_rate: float = 1e-3
    snr_range_db: tuple[float, float] = (1.0, 6.0)
    seed: int = 0
    loss_mode: str = "final_only"
    optimizer: str = "adam"
    betas: tuple[float, float] = (0.9, 0.999)
    eps: float = 1e-8
    log_every: int = 0

    def __post_init__(self):
        low, high = self.snr_range_db
        if low > high:
            raise ValueError(f"SNR range low {low} exceeds high {high}")
        for name in ("P", "t", "batch_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.steps < 0:
            raise ValueError(f"steps must be non-negative, got {self.steps}")
        if self.loss_mode not in LOSS_MODES:
            raise ValueError(f"Unknown loss mode '{self.loss_mode}'")
        if self.optimizer not in OPTIMIZERS:
            raise ValueError(f"Unknown optimizer '{self.optimizer}'")

    def summary(self) -> dict:
        return {
            "seed": self.seed,
            "steps": self.steps,
            "lr": self.learning_rate,
            "snr_range": list(self.snr_range_db),
            "batch_size": self.batch_size,
            "loss_mode": self.loss_mode,
            "optimizer": self.optimizer,
        }


@dataclass
class TrainResult:
    weights: WeightBank
    loss_history: list[float] = field(default_factory=list)
    graph: StructuredTannerGraph | None = None


def sample_batch(spec: CodeSpec, config: TrainConfig, rng: np.random.Generator):
    """Random messages, their codewords, and the LLRs after the channel."""
    messages = rng.integers(0, 2, size=(config.batch_size, spec.k), dtype=np.uint8)
    bits = encode_batch(spec, messages)
    snr = rng.uniform(*config.snr_range_db, size=config.batch_size)
    return bits, transmit(spec, bits, snr, rng).llr


def train(config: TrainConfig) -> TrainResult:
    """
    Train the tied weights on the extended code from an all-ones start.

    Raises:
        TrainingDivergedError: If the loss becomes non-finite
    """
    spec = extend(config.code)
    graph = build_graph(build_stacked(spec, config.P))
    bank = WeightBank.unit(graph.u, config.t)
    optimizer = make_optimizer(config.optimizer, config.learning_rate, config.betas, config.eps)
    rng = make_rng(config.seed)

    history: list[float] = []
    for step in range(config.steps):
        bits, llr = sample_batch(spec, config, rng)
        value, grad = loss_and_gradient(graph, bank, llr, bits, config.loss_mode)
        if not np.isfinite(value):
            raise TrainingDivergedError(step, value)
        history.append(value)
        bank.load_vector(optimizer.step(bank.to_vector(), grad.to_vector()))

        if config.log_every and (step + 1) % config.log_every == 0:
            print(f"🔄 step {step + 1}/{config.steps}  loss={value:.4f}")

    if config.steps:
        print(
            f"✓ Trained {spec.label} P={config.P} t={config.t}: "
            f"loss {history[0]:.4f} -> {history[-1]:.4f}"
        )
    return TrainResult(weights=bank, loss_history=history, graph=graph)
