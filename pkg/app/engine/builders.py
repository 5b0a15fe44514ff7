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
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from .model import Model
from .schemas import PARAMETRIC_KINDS, ActivationKind, ArchitectureTag, Layer, LayerKind, LayerSpec


def init_layers(specs: Sequence[LayerSpec], seed: int) -> List[Layer]:
    """Uniform weights and biases in [-1/sqrt(fan_in), 1/sqrt(fan_in)] from one seeded generator."""
    rng = np.random.default_rng(seed)
    layers = []
    for spec in specs:
        if spec.kind not in PARAMETRIC_KINDS:
            layers.append(Layer.parameterless(spec))
            continue
        weights_shape, bias_shape = spec.parameter_shapes()
        bound = 1.0 / np.sqrt(spec.fan_in())
        weights = rng.uniform(-bound, bound, size=weights_shape)
        bias = rng.uniform(-bound, bound, size=bias_shape)
        layers.append(Layer(spec=spec, weights=weights, bias=bias))
    return layers


def temporal_specs(
    n_channels: int,
    n_classes: int,
    filters: Tuple[int, int] = (4, 4),
    kernels: Tuple[int, int] = (5, 3),
    pool_window: int = 2,
    activation: ActivationKind = ActivationKind.TANH,
    spatiotemporal: bool = False,
) -> List[LayerSpec]:
    if spatiotemporal:
        first = LayerSpec(
            kind=LayerKind.SPATIOTEMPORAL_CONV,
            kernel_length=kernels[0],
            kernel_channels=n_channels,
            in_features=1,
            out_features=filters[0],
        )
        head_channels = 1
    else:
        first = LayerSpec(
            kind=LayerKind.TEMPORAL_CONV, kernel_length=kernels[0], in_features=1, out_features=filters[0]
        )
        head_channels = n_channels
    return [
        first,
        LayerSpec(kind=LayerKind.ACTIVATION, activation_kind=activation),
        LayerSpec(kind=LayerKind.AVERAGE_POOL, pool_window=pool_window),
        LayerSpec(
            kind=LayerKind.TEMPORAL_CONV, kernel_length=kernels[1], in_features=filters[0], out_features=filters[1]
        ),
        LayerSpec(kind=LayerKind.ACTIVATION, activation_kind=activation),
        LayerSpec(kind=LayerKind.AVERAGE_POOL, pool_window=0),
        LayerSpec(kind=LayerKind.DENSE, in_features=head_channels * filters[1], out_features=n_classes),
    ]


def build_model(
    architecture: ArchitectureTag,
    n_channels: int,
    input_length: int,
    n_classes: int,
    seed: int,
    activation: ActivationKind = ActivationKind.TANH,
    filters: Optional[Tuple[int, int]] = None,
) -> Model:
    """
    Desk-scale classifiers: conv(k=5) -> act -> avg-pool(2) -> conv(k=3) -> act -> global avg -> dense.
    The spatiotemporal variant replaces the first conv with a 2-D kernel spanning all channels.
    """
    spatiotemporal = architecture == ArchitectureTag.SPATIOTEMPORAL
    specs = temporal_specs(
        n_channels,
        n_classes,
        filters=filters or (4, 4),
        activation=activation,
        spatiotemporal=spatiotemporal,
    )
    return Model(
        architecture_tag=architecture,
        n_channels=n_channels,
        input_length=input_length,
        n_classes=n_classes,
        layers=init_layers(specs, seed),
    )


def build_temporal_model(n_channels: int, input_length: int, n_classes: int, seed: int, **kwargs: Any) -> Model:
    return build_model(ArchitectureTag.TEMPORAL, n_channels, input_length, n_classes, seed, **kwargs)


def build_spatiotemporal_model(
    n_channels: int, input_length: int, n_classes: int, seed: int, **kwargs: Any
) -> Model:
    return build_model(ArchitectureTag.SPATIOTEMPORAL, n_channels, input_length, n_classes, seed, **kwargs)


def linear_model(weights: Sequence[float], bias: float = 0.0) -> Model:
    """f(x) = sum_i w_i x_i over channels of length 1."""
    n = len(weights)
    dense = Layer(
        spec=LayerSpec(kind=LayerKind.DENSE, in_features=n, out_features=1),
        weights=np.array([weights], dtype=np.float64),
        bias=np.array([bias]),
    )
    return Model(architecture_tag=ArchitectureTag.TEMPORAL, n_channels=n, input_length=1, n_classes=1, layers=[dense])


def product_model() -> Model:
    """f(x) = x_1 x_2 on two length-1 channels, as ((x1 + x2)^2 - (x1 - x2)^2) / 4."""
    return Model(
        architecture_tag=ArchitectureTag.SPATIOTEMPORAL,
        n_channels=2,
        input_length=1,
        n_classes=1,
        layers=[
            Layer(
                spec=LayerSpec(kind=LayerKind.DENSE, in_features=2, out_features=2),
                weights=np.array([[1.0, 1.0], [1.0, -1.0]]),
                bias=np.zeros(2),
            ),
            Layer.parameterless(LayerSpec(kind=LayerKind.ACTIVATION, activation_kind=ActivationKind.SQUARE)),
            Layer(
                spec=LayerSpec(kind=LayerKind.DENSE, in_features=2, out_features=1),
                weights=np.array([[0.25, -0.25]]),
                bias=np.zeros(1),
            ),
        ],
    )
