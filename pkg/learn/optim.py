"""First-order optimizers over the flattened trainable vector."""

from dataclasses import dataclass, field

import numpy as np

OPTIMIZERS = ("adam", "sgd")


@dataclass
class Sgd:
    learning_rate: float = 1e-3

    def step(self, params: np.ndarray, grad: np.ndarray) -> np.ndarray:
        return params - self.learning_rate * grad


@dataclass
class Adam:
    """Adam with bias correction; state is created on the first step."""

    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    steps_taken: int = 0
    first_moment: np.ndarray | None = field(default=None, repr=False)
    second_moment: np.ndarray | None = field(default=None, repr=False)

    def step(self, params: np.ndarray, grad: np.ndarray) -> np.ndarray:
        if self.first_moment is None:
            self.first_moment = np.zeros_like(params)
            self.second_moment = np.zeros_like(params)
        self.steps_taken += 1
        self.first_moment = self.beta1 * self.first_moment + (1.0 - self.beta1) * grad
        self.second_moment = self.beta2 * self.second_moment + (1.0 - self.beta2) * grad**2
        m_hat = self.first_moment / (1.0 - self.beta1**self.steps_taken)
        v_hat = self.second_moment / (1.0 - self.beta2**self.steps_taken)
        return params - self.learning_rate * m_hat / (np.sqrt(v_hat) + self.eps)


def make_optimizer(
    name: str,
    learning_rate: float,
    betas: tuple[float, float] = (0.9, 0.999),
    eps: float = 1e-8,
) -> Adam | Sgd:
    if name == "adam":
        return Adam(learning_rate, betas[0], betas[1], eps)
    if name == "sgd":
        return Sgd(learning_rate)
    raise ValueError(f"Unknown optimizer '{name}' (choose from {', '.join(OPTIMIZERS)})")
