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
Delta file layout (reals as 17-significant-digit strings):

    {class_index, granularity, per_feature, reference_ids, k_references, ig_steps,
     ss: {samples_per_feature, seed, background_size}, seeds, per_reference_deltas, standard_errors}
"""
import json
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from attribution import Granularity
from exceptions import ArtifactParseError, ArtifactValidationError
from pydantic import BaseModel, ValidationError
from utils import format_reals, parse_reals, write_json

from .schemas import CompensationDelta

ARTIFACT = "delta file"


class SamplingSnapshot(BaseModel):
    samples_per_feature: int
    seed: int
    background_size: int


class DeltaFile(BaseModel):
    class_index: int
    granularity: Granularity
    per_feature: List[str]
    reference_ids: List[str]
    k_references: int
    ig_steps: int
    ss: SamplingSnapshot
    seeds: List[int]
    per_reference_deltas: List[List[str]]
    standard_errors: Optional[List[str]] = None


def delta_to_document(delta: CompensationDelta) -> dict:
    document = {
        "class_index": delta.class_index,
        "granularity": delta.granularity.value,
        "per_feature": format_reals(delta.per_feature),
        "reference_ids": list(delta.reference_ids),
        "k_references": delta.k_references,
        "ig_steps": delta.ig_steps,
        "ss": {
            "samples_per_feature": delta.ss_samples,
            "seed": delta.ss_seed,
            "background_size": delta.background_size,
        },
        "seeds": list(delta.seeds),
        "per_reference_deltas": [format_reals(row) for row in delta.per_reference_deltas],
    }
    if delta.standard_errors is not None:
        document["standard_errors"] = format_reals(delta.standard_errors)
    return document


def save_delta(delta: CompensationDelta, path: Union[str, Path]) -> None:
    write_json(path, delta_to_document(delta))


def load_delta(path: Union[str, Path]) -> CompensationDelta:
    try:
        with open(path, "r") as file:
            raw = json.load(file)
    except json.JSONDecodeError as e:
        raise ArtifactParseError(ARTIFACT, None, f"malformed JSON ({e.msg} at line {e.lineno})")
    try:
        document = DeltaFile.parse_obj(raw)
    except ValidationError as e:
        raise ArtifactParseError(ARTIFACT, str(e.errors()[0]["loc"][0]), e.errors()[0]["msg"])

    rows = [
        parse_reals(row, ARTIFACT, f"per_reference_deltas[{index}]")
        for index, row in enumerate(document.per_reference_deltas)
    ]
    if len({row.size for row in rows}) > 1:
        raise ArtifactValidationError(ARTIFACT, "per_reference_deltas", "rows differ in length")
    if document.k_references != len(rows):
        raise ArtifactValidationError(ARTIFACT, "k_references", f"{document.k_references} declared, {len(rows)} rows")
    standard_errors = None
    if document.standard_errors is not None:
        standard_errors = parse_reals(document.standard_errors, ARTIFACT, "standard_errors")
    try:
        return CompensationDelta(
            class_index=document.class_index,
            granularity=document.granularity,
            per_feature=parse_reals(document.per_feature, ARTIFACT, "per_feature"),
            reference_ids=document.reference_ids,
            ig_steps=document.ig_steps,
            ss_samples=document.ss.samples_per_feature,
            ss_seed=document.ss.seed,
            background_size=document.ss.background_size,
            seeds=document.seeds,
            per_reference_deltas=np.stack(rows) if rows else np.empty((0, 0)),
            standard_errors=standard_errors,
        )
    except ValidationError as e:
        field = str(e.errors()[0]["loc"][0]).replace("__root__", "") or None
        raise ArtifactValidationError(ARTIFACT, field, e.errors()[0]["msg"])
