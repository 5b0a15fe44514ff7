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
from typing import Any, Dict, List, Optional

import numpy as np
from engine import Record
from pydantic import BaseModel, Field, validator


class Granularity(str, Enum):
    CHANNEL = "channel"
    TIMEPOINT = "timepoint"


class MethodTag(str, Enum):
    IG = "ig"
    SS = "ss"
    EXACT_SHAPLEY = "exact_shapley"
    CIG = "cig"


class PathSpec(BaseModel):
    """Piecewise-linear path baseline -> waypoints... -> record; no waypoints is the straight line."""

    baseline: np.ndarray
    waypoints: List[np.ndarray] = Field(default_factory=list)
    steps = 256

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("baseline", pre=True)
    def _as_array(cls, value: Any) -> np.ndarray:
        return np.array(value, dtype=np.float64)

    @validator("waypoints", pre=True, each_item=True)
    def _waypoint_as_array(cls, value: Any) -> np.ndarray:
        return np.array(value, dtype=np.float64)

    @validator("steps")
    def _at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError("steps must be at least 1")
        return value


class SSConfig(BaseModel):
    samples_per_feature = 500
    background: List[Record]
    seed = 42
    granularity = Granularity.CHANNEL

    class Config:
        allow_mutation = False

    @validator("samples_per_feature")
    def _at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError("samples_per_feature must be at least 1")
        return value


class AttributionVector(BaseModel):
    per_feature: np.ndarray
    method_tag: MethodTag
    class_index: int
    granularity: Granularity
    baseline_descriptor: str
    record_id: Optional[str] = None
    # per-feature standard error of sampled estimates (Shapley sampling and anything built on it)
    standard_errors: Optional[np.ndarray] = None
    metadata: Dict[str, Any] = Field(default_factory=dict)

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("per_feature", "standard_errors", pre=True)
    def _as_vector(cls, value: Any) -> Optional[np.ndarray]:
        if value is None:
            return None
        array = np.array(value, dtype=np.float64).ravel()
        array.flags.writeable = False
        return array

    @property
    def n_features(self) -> int:
        return int(self.per_feature.size)

    def total(self) -> float:
        return float(np.sum(self.per_feature))
