"""learn module - loss, exact reverse pass, optimizers, training loop and weight files."""

from .backward import backward, batch_loss, leave_one_out_product_grad, loss_and_gradient
from .loss import LOSS_MODES, loss, loss_gradient, output_iterations, sigmoid
from .optim import OPTIMIZERS, Adam, Sgd, make_optimizer
from .trainer import TrainConfig, TrainingDivergedError, TrainResult, sample_batch, train
from .weights_io import (
    FORMAT_VERSION,
    WeightFile,
    WeightFileError,
    load_weights,
    save_weights,
    weights_document,
)

__all__ = [
    "FORMAT_VERSION",
    "LOSS_MODES",
    "OPTIMIZERS",
    "Adam",
    "Sgd",
    "TrainConfig",
    "TrainResult",
    "TrainingDivergedError",
    "WeightFile",
    "WeightFileError",
    "backward",
    "batch_loss",
    "leave_one_out_product_grad",
    "load_weights",
    "loss",
    "loss_and_gradient",
    "loss_gradient",
    "make_optimizer",
    "output_iterations",
    "sample_batch",
    "save_weights",
    "sigmoid",
    "train",
    "weights_document",
]
