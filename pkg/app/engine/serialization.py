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
import json
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from exceptions import ArtifactParseError, ArtifactValidationError
from pydantic import BaseModel, Field, ValidationError
from utils import format_reals, parse_reals, write_json

from .model import Model
from .schemas import ActivationKind, ArchitectureTag, Layer, LayerKind, LayerSpec

ARTIFACT = "model file"


class LayerEntry(BaseModel):
    kind: LayerKind
    kernel_length: Optional[int] = None
    kernel_channels: Optional[int] = None
    in_features: Optional[int] = None
    out_features: Optional[int] = None
    activation_kind: Optional[ActivationKind] = None
    pool_window: Optional[int] = None
    weights: List[str] = Field(default_factory=list)
    bias: List[str] = Field(default_factory=list)


class ModelFile(BaseModel):
    architecture_tag: ArchitectureTag
    n_channels: int
    input_length: int
    n_classes: int
    layers: List[LayerEntry]


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    parts = []
    for item in first["loc"]:
        if isinstance(item, int):
            parts[-1] = f"{parts[-1]}[{item}]" if parts else f"[{item}]"
        else:
            parts.append(str(item))
    return ".".join(parts)


def model_to_document(model: Model) -> dict:
    entries = []
    for layer in model.layers:
        entry = LayerEntry(
            **layer.spec.dict(),
            weights=format_reals(layer.weights),
            bias=format_reals(layer.bias),
        )
        entries.append(json.loads(entry.json(exclude_none=True)))
    return {
        "architecture_tag": model.architecture_tag.value,
        "n_channels": model.n_channels,
        "input_length": model.input_length,
        "n_classes": model.n_classes,
        "layers": entries,
    }


def save_model(model: Model, path: Union[str, Path]) -> None:
    write_json(path, model_to_document(model))


def load_model(path: Union[str, Path]) -> Model:
    """Parse and validate a model file; nothing is returned unless the whole file is valid."""
    try:
        with open(path, "r") as file:
            raw = json.load(file)
    except json.JSONDecodeError as e:
        raise ArtifactParseError(ARTIFACT, None, f"malformed JSON ({e.msg} at line {e.lineno})")

    try:
        document = ModelFile.parse_obj(raw)
    except ValidationError as e:
        raise ArtifactParseError(ARTIFACT, _location(e), e.errors()[0]["msg"])

    layers = []
    for index, entry in enumerate(document.layers):
        field = f"layers[{index}]"
        try:
            spec = LayerSpec(**entry.dict(exclude={"weights", "bias"}))
        except ValidationError as e:
            raise ArtifactValidationError(ARTIFACT, field, e.errors()[0]["msg"])
        weights_shape, bias_shape = spec.parameter_shapes()
        weights = parse_reals(entry.weights, ARTIFACT, f"{field}.weights")
        bias = parse_reals(entry.bias, ARTIFACT, f"{field}.bias")
        if weights.size != int(np.prod(weights_shape)):
            raise ArtifactValidationError(
                ARTIFACT, f"{field}.weights", f"{weights.size} values for shape {list(weights_shape)}"
            )
        if bias.size != int(np.prod(bias_shape)):
            raise ArtifactValidationError(ARTIFACT, f"{field}.bias", f"{bias.size} values for shape {list(bias_shape)}")
        layers.append(Layer(spec=spec, weights=weights.reshape(weights_shape), bias=bias.reshape(bias_shape)))

    try:
        return Model(
            architecture_tag=document.architecture_tag,
            n_channels=document.n_channels,
            input_length=document.input_length,
            n_classes=document.n_classes,
            layers=layers,
        )
    except ValidationError as e:
        raise ArtifactValidationError(ARTIFACT, _location(e).replace("__root__", "") or None, e.errors()[0]["msg"])
