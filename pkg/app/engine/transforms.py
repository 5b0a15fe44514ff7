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
"""Functionally equivalent or deliberately altered copies of a model, used by the axiom checks."""
from typing import Callable, List, Sequence, Tuple

import numpy as np
from exceptions import InvalidParameterError

from .model import Model
from .schemas import PARAMETRIC_KINDS, Layer, LayerKind, LayerSpec


def _with_layers(model: Model, layers: List[Layer]) -> Model:
    return Model(
        architecture_tag=model.architecture_tag,
        n_channels=model.n_channels,
        input_length=model.input_length,
        n_classes=model.n_classes,
        layers=layers,
    )


def _channel_reader(model: Model) -> Tuple[int, Tuple[int, ...]]:
    """Index of the first layer whose weights differ per input channel, and a weight view with channels on axis 1."""
    for index, (layer, shape) in enumerate(zip(model.layers, model.layer_input_shapes())):
        channels, features, time = shape
        if layer.spec.kind == LayerKind.DENSE:
            return index, (layer.weights.shape[0], channels, features, time)
        if layer.spec.kind == LayerKind.SPATIOTEMPORAL_CONV:
            if layer.spec.kernel_channels != channels:
                raise InvalidParameterError("per-channel weights are only defined for kernels spanning all channels")
            return index, layer.weights.shape
    raise InvalidParameterError("model has no layer reading individual channels")


def _edit_channel_weights(model: Model, edit: Callable[[np.ndarray], None]) -> Model:
    index, view_shape = _channel_reader(model)
    layer = model.layers[index]
    weights = np.array(layer.weights).reshape(view_shape)
    edit(weights)
    layers = list(model.layers)
    layers[index] = Layer(spec=layer.spec, weights=weights.reshape(layer.weights.shape), bias=layer.bias)
    return _with_layers(model, layers)


def _check_channel(model: Model, channel: int) -> None:
    if not 0 <= channel < model.n_channels:
        raise InvalidParameterError(f"channel {channel} out of range for {model.n_channels} channels")


def silence_channel(model: Model, channel: int) -> Model:
    """Zero every weight reading the channel, so the model ignores it by construction."""
    _check_channel(model, channel)

    def edit(weights: np.ndarray) -> None:
        weights[:, channel] = 0.0

    return _edit_channel_weights(model, edit)


def symmetrize_channels(model: Model, p: int, q: int) -> Model:
    """Copy the weights reading channel p onto channel q (W_qj = W_pj)."""
    _check_channel(model, p)
    _check_channel(model, q)

    def edit(weights: np.ndarray) -> None:
        weights[:, q] = weights[:, p]

    return _edit_channel_weights(model, edit)


def channels_exchangeable(model: Model, p: int, q: int) -> bool:
    index, view_shape = _channel_reader(model)
    weights = model.layers[index].weights.reshape(view_shape)
    return bool(np.array_equal(weights[:, p], weights[:, q]))


def permute_hidden_units(model: Model, layer_index: int, permutation: Sequence[int]) -> Model:
    """Reorder the output units of one layer and the matching inputs of the next parametric layer."""
    layers = list(model.layers)
    layer = layers[layer_index]
    perm = np.asarray(permutation)
    if layer.spec.kind not in PARAMETRIC_KINDS or layer_index == len(layers) - 1:
        raise InvalidParameterError(f"layers[{layer_index}] has no hidden units to permute")
    if sorted(perm.tolist()) != list(range(layer.weights.shape[0])):
        raise InvalidParameterError("not a permutation of the layer's output units")
    layers[layer_index] = Layer(spec=layer.spec, weights=layer.weights[perm], bias=layer.bias[perm])

    shapes = model.layer_input_shapes()
    for index in range(layer_index + 1, len(layers)):
        following = layers[index]
        kind = following.spec.kind
        if kind not in PARAMETRIC_KINDS:
            continue
        if kind == LayerKind.TEMPORAL_CONV:
            weights = following.weights[:, perm, :]
        elif kind == LayerKind.SPATIOTEMPORAL_CONV:
            weights = following.weights[:, :, perm, :]
        else:
            channels, features, time = shapes[index]
            view = following.weights.reshape(following.weights.shape[0], channels, features, time)
            weights = view[:, :, perm, :].reshape(following.weights.shape)
        layers[index] = Layer(spec=following.spec, weights=weights, bias=following.bias)
        break
    return _with_layers(model, layers)


def factorize_dense_head(model: Model, seed: int) -> Model:
    """Split the final dense layer W into Q followed by W Q^T for a random orthogonal Q."""
    head = model.layers[-1]
    width = head.weights.shape[1]
    q, _ = np.linalg.qr(np.random.default_rng(seed).standard_normal((width, width)))
    rotate = Layer(
        spec=LayerSpec(kind=LayerKind.DENSE, in_features=width, out_features=width),
        weights=q,
        bias=np.zeros(width),
    )
    project = Layer(spec=head.spec, weights=head.weights @ q.T, bias=head.bias)
    return _with_layers(model, list(model.layers[:-1]) + [rotate, project])


def channel_silent(model: Model, channel: int) -> bool:
    _check_channel(model, channel)
    index, view_shape = _channel_reader(model)
    weights = model.layers[index].weights.reshape(view_shape)
    return not bool(np.any(weights[:, channel]))
