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
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, root_validator, validator

# (channels, features, time) flowing between layers
ActivationShape = Tuple[int, int, int]


class ArchitectureTag(str, Enum):
    TEMPORAL = "temporal"
    SPATIOTEMPORAL = "spatiotemporal"


class LayerKind(str, Enum):
    TEMPORAL_CONV = "temporal-conv"
    SPATIOTEMPORAL_CONV = "spatiotemporal-conv"
    ACTIVATION = "activation"
    AVERAGE_POOL = "average-pool"
    DENSE = "dense"


class ActivationKind(str, Enum):
    TANH = "tanh"
    RELU = "relu"  # subgradient 0 at the kink
    SQUARE = "square"


PARAMETRIC_KINDS = (LayerKind.TEMPORAL_CONV, LayerKind.SPATIOTEMPORAL_CONV, LayerKind.DENSE)

_REQUIRED_FIELDS: Dict[LayerKind, Tuple[str, ...]] = {
    LayerKind.TEMPORAL_CONV: ("kernel_length", "in_features", "out_features"),
    LayerKind.SPATIOTEMPORAL_CONV: ("kernel_length", "kernel_channels", "in_features", "out_features"),
    LayerKind.ACTIVATION: ("activation_kind",),
    LayerKind.AVERAGE_POOL: ("pool_window",),
    LayerKind.DENSE: ("in_features", "out_features"),
}


def finite_tensor(value: Any, ndim: Optional[int] = None) -> np.ndarray:
    """Copy value into a read-only float64 array, rejecting NaN/Inf."""
    array = np.array(value, dtype=np.float64)
    if ndim is not None and array.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional tensor, got shape {list(array.shape)}")
    if not np.all(np.isfinite(array)):
        raise ValueError("tensor contains non-finite values")
    array.flags.writeable = False
    return array


class LayerSpec(BaseModel):
    kind: LayerKind
    kernel_length: Optional[int] = None
    kernel_channels: Optional[int] = None
    in_features: Optional[int] = None
    out_features: Optional[int] = None
    activation_kind: Optional[ActivationKind] = None
    # 0 means a global average over the whole time axis
    pool_window: Optional[int] = None

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _check_fields(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        kind = values["kind"]
        for name in _REQUIRED_FIELDS[kind]:
            if values.get(name) is None:
                raise ValueError(f"{kind.value} layer requires '{name}'")
        for name in ("kernel_length", "in_features", "out_features"):
            if values.get(name) is not None and values[name] < 1:
                raise ValueError(f"'{name}' must be at least 1")
        if kind == LayerKind.SPATIOTEMPORAL_CONV and values["kernel_channels"] < 2:
            raise ValueError("spatiotemporal kernels must span at least 2 channels")
        if kind == LayerKind.AVERAGE_POOL and values["pool_window"] < 0:
            raise ValueError("'pool_window' must be non-negative")
        return values

    def output_shape(self, shape: ActivationShape) -> ActivationShape:
        channels, features, time = shape
        if self.kind in (LayerKind.TEMPORAL_CONV, LayerKind.SPATIOTEMPORAL_CONV):
            assert self.kernel_length is not None and self.out_features is not None
            if self.in_features != features:
                raise ValueError(f"{self.kind.value} expects {self.in_features} input features, got {features}")
            out_time = time - self.kernel_length + 1
            if out_time < 1:
                raise ValueError(f"kernel length {self.kernel_length} exceeds time axis {time}")
            if self.kind == LayerKind.TEMPORAL_CONV:
                return channels, self.out_features, out_time
            assert self.kernel_channels is not None
            if self.kernel_channels > channels:
                raise ValueError(f"kernel spans {self.kernel_channels} channels, input has {channels}")
            return channels - self.kernel_channels + 1, self.out_features, out_time
        if self.kind == LayerKind.ACTIVATION:
            return shape
        if self.kind == LayerKind.AVERAGE_POOL:
            assert self.pool_window is not None
            if self.pool_window == 0:
                return channels, features, 1
            if time // self.pool_window < 1:
                raise ValueError(f"pool window {self.pool_window} exceeds time axis {time}")
            return channels, features, time // self.pool_window
        assert self.out_features is not None
        if self.in_features != channels * features * time:
            raise ValueError(f"dense expects {self.in_features} inputs, got {channels * features * time}")
        return 1, self.out_features, 1

    def parameter_shapes(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        if self.kind == LayerKind.TEMPORAL_CONV:
            return (self.out_features, self.in_features, self.kernel_length), (self.out_features,)  # type: ignore
        if self.kind == LayerKind.SPATIOTEMPORAL_CONV:
            shape = (self.out_features, self.kernel_channels, self.in_features, self.kernel_length)
            return shape, (self.out_features,)  # type: ignore
        if self.kind == LayerKind.DENSE:
            return (self.out_features, self.in_features), (self.out_features,)  # type: ignore
        return (0,), (0,)

    def fan_in(self) -> int:
        weights_shape, _ = self.parameter_shapes()
        return int(np.prod(weights_shape[1:])) if self.kind in PARAMETRIC_KINDS else 0


class Layer(BaseModel):
    spec: LayerSpec
    weights: np.ndarray
    bias: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("weights", "bias", pre=True)
    def _finite(cls, value: Any) -> np.ndarray:
        return finite_tensor(value)

    @root_validator(skip_on_failure=True)
    def _check_parameter_shapes(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        weights_shape, bias_shape = values["spec"].parameter_shapes()
        if values["weights"].shape != weights_shape:
            raise ValueError(f"weights shape {list(values['weights'].shape)} != expected {list(weights_shape)}")
        if values["bias"].shape != bias_shape:
            raise ValueError(f"bias shape {list(values['bias'].shape)} != expected {list(bias_shape)}")
        return values

    @classmethod
    def parameterless(cls, spec: LayerSpec) -> "Layer":
        return cls(spec=spec, weights=np.zeros(0), bias=np.zeros(0))


class Record(BaseModel):
    id: str
    values: np.ndarray
    label: Optional[int] = None

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("values", pre=True)
    def _as_matrix(cls, value: Any) -> np.ndarray:
        array = finite_tensor(value, ndim=2)
        if array.shape[0] < 1 or array.shape[1] < 1:
            raise ValueError("a record needs at least one channel and one timepoint")
        return array

    @validator("label")
    def _non_negative(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 0:
            raise ValueError("label must be non-negative")
        return value

    @property
    def n_channels(self) -> int:
        return int(self.values.shape[0])

    @property
    def length(self) -> int:
        return int(self.values.shape[1])


class Gradient(BaseModel):
    """Entry (i, k) is the derivative of the class logit with respect to z_ik."""

    values: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False
