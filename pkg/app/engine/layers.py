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
"""
Forward and reverse-mode passes for each layer kind.

Activations are laid out as [batch, channels, features, time]. Every reduction goes
through np.einsum or fixed-order slicing so that each output entry only depends on its
own row of the batch.
"""
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .schemas import ActivationKind, Layer, LayerKind

Cache = Dict[str, Any]
ParamGrads = Tuple[Optional[np.ndarray], Optional[np.ndarray]]


def _temporal_conv_forward(layer: Layer, x: np.ndarray) -> Tuple[np.ndarray, Cache]:
    windows = sliding_window_view(x, layer.spec.kernel_length, axis=3)
    y = np.einsum("bcitk,oik->bcot", windows, layer.weights) + layer.bias[None, None, :, None]
    return y, {"windows": windows, "input_shape": x.shape}


def _temporal_conv_backward(
    layer: Layer, cache: Cache, grad: np.ndarray, params: bool
) -> Tuple[np.ndarray, ParamGrads]:
    windows = cache["windows"]
    kernel = layer.spec.kernel_length
    out_time = grad.shape[3]
    window_grad = np.einsum("bcot,oik->bcitk", grad, layer.weights)
    grad_x = np.zeros(cache["input_shape"])
    for j in range(kernel):
        grad_x[..., j : j + out_time] += window_grad[..., j]
    if not params:
        return grad_x, (None, None)
    grad_w = np.einsum("bcot,bcitk->oik", grad, windows)
    return grad_x, (grad_w, grad.sum(axis=(0, 1, 3)))


def _spatiotemporal_conv_forward(layer: Layer, x: np.ndarray) -> Tuple[np.ndarray, Cache]:
    windows = sliding_window_view(x, (layer.spec.kernel_channels, layer.spec.kernel_length), axis=(1, 3))
    y = np.einsum("bcitdk,odik->bcot", windows, layer.weights) + layer.bias[None, None, :, None]
    return y, {"windows": windows, "input_shape": x.shape}


def _spatiotemporal_conv_backward(
    layer: Layer, cache: Cache, grad: np.ndarray, params: bool
) -> Tuple[np.ndarray, ParamGrads]:
    windows = cache["windows"]
    out_channels, out_time = grad.shape[1], grad.shape[3]
    window_grad = np.einsum("bcot,odik->bcitdk", grad, layer.weights)
    grad_x = np.zeros(cache["input_shape"])
    for d in range(layer.spec.kernel_channels or 0):
        for j in range(layer.spec.kernel_length or 0):
            grad_x[:, d : d + out_channels, :, j : j + out_time] += window_grad[..., d, j]
    if not params:
        return grad_x, (None, None)
    grad_w = np.einsum("bcot,bcitdk->odik", grad, windows)
    return grad_x, (grad_w, grad.sum(axis=(0, 1, 3)))


def _activation_forward(layer: Layer, x: np.ndarray) -> Tuple[np.ndarray, Cache]:
    kind = layer.spec.activation_kind
    if kind == ActivationKind.TANH:
        y = np.tanh(x)
        return y, {"derivative": 1.0 - y * y}
    if kind == ActivationKind.RELU:
        return np.maximum(x, 0.0), {"derivative": (x > 0.0).astype(np.float64)}
    return x * x, {"derivative": 2.0 * x}


def _activation_backward(layer: Layer, cache: Cache, grad: np.ndarray, params: bool) -> Tuple[np.ndarray, ParamGrads]:
    return grad * cache["derivative"], (None, None)


def _average_pool_forward(layer: Layer, x: np.ndarray) -> Tuple[np.ndarray, Cache]:
    window = layer.spec.pool_window or x.shape[3]
    out_time = x.shape[3] // window
    blocks = x[..., : out_time * window].reshape(x.shape[:3] + (out_time, window))
    return blocks.mean(axis=4), {"input_shape": x.shape, "window": window}


def _average_pool_backward(layer: Layer, cache: Cache, grad: np.ndarray, params: bool) -> Tuple[np.ndarray, ParamGrads]:
    window = cache["window"]
    grad_x = np.zeros(cache["input_shape"])
    grad_x[..., : grad.shape[3] * window] = np.repeat(grad / window, window, axis=3)
    return grad_x, (None, None)


def _dense_forward(layer: Layer, x: np.ndarray) -> Tuple[np.ndarray, Cache]:
    flat = x.reshape(x.shape[0], -1)
    y = np.einsum("bd,od->bo", flat, layer.weights) + layer.bias[None, :]
    return y[:, None, :, None], {"flat": flat, "input_shape": x.shape}


def _dense_backward(layer: Layer, cache: Cache, grad: np.ndarray, params: bool) -> Tuple[np.ndarray, ParamGrads]:
    grad_out = grad[:, 0, :, 0]
    grad_x = np.einsum("bo,od->bd", grad_out, layer.weights).reshape(cache["input_shape"])
    if not params:
        return grad_x, (None, None)
    grad_w = np.einsum("bo,bd->od", grad_out, cache["flat"])
    return grad_x, (grad_w, grad_out.sum(axis=0))


Forward = Callable[[Layer, np.ndarray], Tuple[np.ndarray, Cache]]
Backward = Callable[[Layer, Cache, np.ndarray, bool], Tuple[np.ndarray, ParamGrads]]

_PASSES: Dict[LayerKind, Tuple[Forward, Backward]] = {
    LayerKind.TEMPORAL_CONV: (_temporal_conv_forward, _temporal_conv_backward),
    LayerKind.SPATIOTEMPORAL_CONV: (_spatiotemporal_conv_forward, _spatiotemporal_conv_backward),
    LayerKind.ACTIVATION: (_activation_forward, _activation_backward),
    LayerKind.AVERAGE_POOL: (_average_pool_forward, _average_pool_backward),
    LayerKind.DENSE: (_dense_forward, _dense_backward),
}


def forward_layer(layer: Layer, x: np.ndarray) -> Tuple[np.ndarray, Cache]:
    forward, _ = _PASSES[layer.spec.kind]
    return forward(layer, x)


def backward_layer(layer: Layer, cache: Cache, grad: np.ndarray, params: bool = False) -> Tuple[np.ndarray, ParamGrads]:
    """Propagate grad (w.r.t. the layer output) to the layer input, optionally with parameter grads."""
    _, backward = _PASSES[layer.spec.kind]
    return backward(layer, cache, grad, params)
