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
from typing import Any, Dict, List, Protocol, Sequence, Tuple

import numpy as np
from exceptions import ClassIndexError, InvalidParameterError, ShapeMismatchError
from pydantic import BaseModel, root_validator

from .layers import Cache, ParamGrads, backward_layer, forward_layer
from .schemas import ActivationShape, ArchitectureTag, Gradient, Layer, LayerKind, Record


class Classifier(Protocol):
    """Anything attributions can be computed for: batched logits and batched input gradients."""

    n_channels: int
    input_length: int
    n_classes: int

    def logits(self, batch: np.ndarray) -> np.ndarray:
        ...

    def class_gradient(self, batch: np.ndarray, class_index: int) -> np.ndarray:
        ...


class Model(BaseModel):
    architecture_tag: ArchitectureTag
    n_channels: int
    input_length: int
    n_classes: int
    layers: List[Layer]

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _check_composition(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        layers: List[Layer] = values["layers"]
        if values["n_channels"] < 1 or values["input_length"] < 1 or values["n_classes"] < 1:
            raise ValueError("n_channels, input_length and n_classes must be positive")
        if not layers or layers[-1].spec.kind != LayerKind.DENSE:
            raise ValueError("the final layer must be dense")
        shape: ActivationShape = (values["n_channels"], 1, values["input_length"])
        for index, layer in enumerate(layers):
            try:
                shape = layer.spec.output_shape(shape)
            except ValueError as e:
                raise ValueError(f"layers[{index}]: {e}")
        if shape != (1, values["n_classes"], 1):
            raise ValueError(f"final layer produces {shape[1]} logits, model declares {values['n_classes']} classes")

        if values["architecture_tag"] == ArchitectureTag.TEMPORAL:
            # channel-independent shared layers, then a purely linear dense head
            in_head = False
            for index, layer in enumerate(layers):
                if layer.spec.kind == LayerKind.SPATIOTEMPORAL_CONV:
                    raise ValueError(f"layers[{index}]: temporal models cannot mix channels")
                if in_head and layer.spec.kind != LayerKind.DENSE:
                    raise ValueError(f"layers[{index}]: only dense layers may follow the dense head")
                in_head = in_head or layer.spec.kind == LayerKind.DENSE
        return values

    def layer_input_shapes(self) -> List[ActivationShape]:
        shapes = []
        shape: ActivationShape = (self.n_channels, 1, self.input_length)
        for layer in self.layers:
            shapes.append(shape)
            shape = layer.spec.output_shape(shape)
        return shapes

    def check_batch(self, batch: np.ndarray) -> np.ndarray:
        batch = np.asarray(batch, dtype=np.float64)
        if batch.ndim != 3 or batch.shape[1:] != (self.n_channels, self.input_length):
            raise ShapeMismatchError("input batch", (-1, self.n_channels, self.input_length), batch.shape)
        return batch

    def run_forward(self, batch: np.ndarray) -> Tuple[np.ndarray, List[Cache]]:
        activation = self.check_batch(batch)[:, :, None, :]
        caches = []
        for layer in self.layers:
            activation, cache = forward_layer(layer, activation)
            caches.append(cache)
        return activation[:, 0, :, 0], caches

    def run_backward(
        self, caches: List[Cache], grad_logits: np.ndarray, params: bool = False
    ) -> Tuple[np.ndarray, List[ParamGrads]]:
        grad = grad_logits[:, None, :, None]
        param_grads: List[ParamGrads] = []
        for layer, cache in zip(reversed(self.layers), reversed(caches)):
            grad, layer_grads = backward_layer(layer, cache, grad, params)
            param_grads.append(layer_grads)
        param_grads.reverse()
        return grad[:, :, 0, :], param_grads

    def logits(self, batch: np.ndarray) -> np.ndarray:
        """Pre-softmax logits for a [batch, channels, length] array."""
        logits, _ = self.run_forward(batch)
        return logits

    def class_gradient(self, batch: np.ndarray, class_index: int) -> np.ndarray:
        """Reverse-mode derivative of one class logit with respect to every input entry."""
        check_class_index(self, class_index)
        logits, caches = self.run_forward(batch)
        seed = np.zeros_like(logits)
        seed[:, class_index] = 1.0
        grad, _ = self.run_backward(caches, seed)
        return grad


class LinearCombination:
    """f = sum_k a_k f_k over classifiers that share one input."""

    def __init__(self, models: Sequence[Classifier], coefficients: Sequence[float]) -> None:
        if len(models) == 0 or len(models) != len(coefficients):
            raise InvalidParameterError("need one coefficient per model and at least one model")
        first = models[0]
        for model in models[1:]:
            if (model.n_channels, model.input_length, model.n_classes) != (
                first.n_channels,
                first.input_length,
                first.n_classes,
            ):
                raise InvalidParameterError("combined models must share input shape and class count")
        self.models = list(models)
        self.coefficients = [float(c) for c in coefficients]
        self.n_channels = first.n_channels
        self.input_length = first.input_length
        self.n_classes = first.n_classes

    def logits(self, batch: np.ndarray) -> np.ndarray:
        total = self.coefficients[0] * self.models[0].logits(batch)
        for coefficient, model in zip(self.coefficients[1:], self.models[1:]):
            total = total + coefficient * model.logits(batch)
        return total

    def class_gradient(self, batch: np.ndarray, class_index: int) -> np.ndarray:
        total = self.coefficients[0] * self.models[0].class_gradient(batch, class_index)
        for coefficient, model in zip(self.coefficients[1:], self.models[1:]):
            total = total + coefficient * model.class_gradient(batch, class_index)
        return total


def check_class_index(model: Classifier, class_index: int) -> None:
    if not 0 <= class_index < model.n_classes:
        raise ClassIndexError(class_index, model.n_classes)


def check_record(model: Classifier, values: np.ndarray, what: str = "record") -> None:
    if values.shape != (model.n_channels, model.input_length):
        raise ShapeMismatchError(what, (model.n_channels, model.input_length), values.shape)


def forward(model: Classifier, record: Record, class_index: int) -> float:
    check_record(model, record.values)
    check_class_index(model, class_index)
    return float(model.logits(record.values[None])[0, class_index])


def input_gradient(model: Classifier, record: Record, class_index: int) -> Gradient:
    check_record(model, record.values)
    check_class_index(model, class_index)
    return Gradient(values=model.class_gradient(record.values[None], class_index)[0])
