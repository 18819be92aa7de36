"""Tied weights of the stacked neural BP decoder and the decode result type."""

from dataclasses import dataclass, field

import numpy as np


@dataclass(eq=False)
class WeightBank:
    """
    The u^2 weights per odd iteration plus u output weights.

    self_weights[r, b]      w_b for odd iteration s = 2r + 1
    cross_weights[r, b', b] w_{b',b}: weight on sibling b' when updating slot b
                            (diagonal held at zero)
    output_weights[b]       w_b^out
    """

    self_weights: np.ndarray
    cross_weights: np.ndarray
    output_weights: np.ndarray

    def __post_init__(self):
        self.self_weights = np.asarray(self.self_weights, dtype=np.float64)
        self.cross_weights = np.asarray(self.cross_weights, dtype=np.float64)
        self.output_weights = np.asarray(self.output_weights, dtype=np.float64)
        t, u = self.self_weights.shape
        if self.cross_weights.shape != (t, u, u) or self.output_weights.shape != (u,):
            raise ValueError(
                f"Inconsistent weight shapes: self {self.self_weights.shape}, "
                f"cross {self.cross_weights.shape}, out {self.output_weights.shape}"
            )
        self.cross_weights[:, np.arange(u), np.arange(u)] = 0.0

    @property
    def t(self) -> int:
        return self.self_weights.shape[0]

    @property
    def u(self) -> int:
        return self.self_weights.shape[1]

    @property
    def num_trainable(self) -> int:
        return self.t * self.u * self.u + self.u

    @classmethod
    def unit(cls, u: int, t: int) -> "WeightBank":
        """All weights 1.0: the decoder then runs plain sum-product BP."""
        return cls(
            self_weights=np.ones((t, u)),
            cross_weights=np.broadcast_to(1.0 - np.eye(u), (t, u, u)).copy(),
            output_weights=np.ones(u),
        )

    @classmethod
    def zeros(cls, u: int, t: int) -> "WeightBank":
        return cls(np.zeros((t, u)), np.zeros((t, u, u)), np.zeros(u))

    def copy(self) -> "WeightBank":
        return type(self)(
            self.self_weights.copy(), self.cross_weights.copy(), self.output_weights.copy()
        )

    def _offdiag(self) -> np.ndarray:
        return ~np.eye(self.u, dtype=bool)

    def to_vector(self) -> np.ndarray:
        """Flatten the t*u^2 + u trainable scalars (cross diagonal excluded)."""
        cross = self.cross_weights[:, self._offdiag()]
        return np.concatenate(
            [
                np.concatenate([self.self_weights, cross], axis=1).ravel(),
                self.output_weights,
            ]
        )

    def load_vector(self, vector: np.ndarray):
        """Inverse of to_vector, in place."""
        t, u = self.t, self.u
        vector = np.asarray(vector, dtype=np.float64)
        if vector.size != self.num_trainable:
            raise ValueError(f"Vector has {vector.size} entries, expected {self.num_trainable}")
        per_iter = vector[: t * u * u].reshape(t, u * u)
        self.self_weights[...] = per_iter[:, :u]
        self.cross_weights[:, self._offdiag()] = per_iter[:, u:]
        self.output_weights[...] = vector[t * u * u :]


class GradientBank(WeightBank):
    """Partial derivatives of the loss, shape-congruent with WeightBank."""

    @classmethod
    def like(cls, bank: WeightBank) -> "GradientBank":
        return cls.zeros(bank.u, bank.t)


@dataclass
class DecodeResult:
    """Soft outputs o_j, their hard decisions and a per-frame codeword flag."""

    soft_outputs: np.ndarray
    hard_bits: np.ndarray
    is_valid_codeword: np.ndarray
    iterations_used: int
    trace: object = field(default=None, repr=False)
