#
# Copyright (c) 2026 The attribkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
from typing import List, Sequence, Tuple

import numpy as np
from exceptions import InvalidParameterError, TrainingDivergedError
from loguru import logger
from pydantic import BaseModel, validator

from .model import Model
from .schemas import Layer, Record


class TrainingHyperParams(BaseModel):
    learning_rate = 0.1
    epochs = 50
    batch_size = 16
    seed = 42

    @validator("learning_rate")
    def _non_negative_rate(cls, value: float) -> float:
        if not np.isfinite(value) or value < 0:
            raise ValueError("learning rate must be finite and non-negative")
        return value

    @validator("epochs", "batch_size")
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value


def softmax_cross_entropy(logits: np.ndarray, labels: np.ndarray) -> Tuple[float, np.ndarray]:
    """Mean cross-entropy of softmax(logits) and its gradient w.r.t. the logits."""
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    probabilities = exp / exp.sum(axis=1, keepdims=True)
    rows = np.arange(len(labels))
    loss = float(-np.mean(np.log(probabilities[rows, labels])))
    grad = probabilities.copy()
    grad[rows, labels] -= 1.0
    return loss, grad / len(labels)


def train(model: Model, records: Sequence[Record], hyper: TrainingHyperParams) -> Model:
    """Plain mini-batch SGD on softmax cross-entropy; deterministic given hyper.seed."""
    if not records:
        raise InvalidParameterError("training set is empty")
    labels = np.array([-1 if record.label is None else record.label for record in records])
    if np.any(labels < 0) or np.any(labels >= model.n_classes):
        raise InvalidParameterError(f"every training record needs a label below {model.n_classes}")
    inputs = model.check_batch(np.stack([record.values for record in records]))

    weights: List[np.ndarray] = [np.array(layer.weights) for layer in model.layers]
    biases: List[np.ndarray] = [np.array(layer.bias) for layer in model.layers]
    current = model
    rng = np.random.default_rng(hyper.seed)

    for epoch in range(hyper.epochs):
        order = rng.permutation(len(records))
        epoch_loss = 0.0
        for batch_index, start in enumerate(range(0, len(order), hyper.batch_size)):
            rows = order[start : start + hyper.batch_size]
            logits, caches = current.run_forward(inputs[rows])
            loss, grad_logits = softmax_cross_entropy(logits, labels[rows])
            if not np.isfinite(loss):
                raise TrainingDivergedError(epoch, batch_index, loss)
            epoch_loss += loss * len(rows)
            _, param_grads = current.run_backward(caches, grad_logits, params=True)
            for index, (grad_w, grad_b) in enumerate(param_grads):
                if grad_w is None or grad_b is None:
                    continue
                weights[index] = weights[index] - hyper.learning_rate * grad_w
                biases[index] = biases[index] - hyper.learning_rate * grad_b
            if not all(np.all(np.isfinite(w)) for w in weights):
                raise TrainingDivergedError(epoch, batch_index, float("nan"))
            current = _rebuild(model, weights, biases)
        logger.debug(f"epoch {epoch + 1}/{hyper.epochs}: mean loss {epoch_loss / len(records):.6f}")

    logger.info(f"Trained {model.architecture_tag.value} model for {hyper.epochs} epochs on {len(records)} records")
    return current


def _rebuild(model: Model, weights: List[np.ndarray], biases: List[np.ndarray]) -> Model:
    layers = [Layer(spec=layer.spec, weights=w, bias=b) for layer, w, b in zip(model.layers, weights, biases)]
    return Model(
        architecture_tag=model.architecture_tag,
        n_channels=model.n_channels,
        input_length=model.input_length,
        n_classes=model.n_classes,
        layers=layers,
    )
