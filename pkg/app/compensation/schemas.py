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
from typing import Any, Dict, List, Optional

import numpy as np
from attribution import Granularity
from pydantic import BaseModel, root_validator, validator


class CompensationDelta(BaseModel):
    """
    Per-feature offset that moves zero-baseline IG onto the Shapley value function.

    per_feature is always the column mean of per_reference_deltas; one delta serves one class.
    """

    class_index: int
    granularity: Granularity
    per_feature: np.ndarray
    reference_ids: List[str]
    ig_steps: int
    ss_samples: int
    ss_seed: int
    background_size: int
    # one Shapley sampling seed per reference, spawned from ss_seed
    seeds: List[int]
    per_reference_deltas: np.ndarray
    standard_errors: Optional[np.ndarray] = None

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

    @validator("per_reference_deltas", pre=True)
    def _as_matrix(cls, value: Any) -> np.ndarray:
        array = np.array(value, dtype=np.float64)
        if array.ndim != 2 or array.shape[0] < 1:
            raise ValueError("per_reference_deltas must be a non-empty [k, features] matrix")
        array.flags.writeable = False
        return array

    @root_validator(skip_on_failure=True)
    def _consistent(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        matrix: np.ndarray = values["per_reference_deltas"]
        k, n_features = matrix.shape
        if len(values["reference_ids"]) != k or len(values["seeds"]) != k:
            raise ValueError(f"expected {k} reference ids and seeds, one per delta row")
        if values["per_feature"].shape != (n_features,):
            raise ValueError(f"per_feature has {values['per_feature'].size} entries, rows have {n_features}")
        if not np.allclose(values["per_feature"], matrix.mean(axis=0), rtol=1e-12, atol=1e-12):
            raise ValueError("per_feature must equal the column mean of per_reference_deltas")
        errors = values.get("standard_errors")
        if errors is not None and errors.shape != (n_features,):
            raise ValueError("standard_errors must have one entry per feature")
        return values

    @property
    def k_references(self) -> int:
        return int(self.per_reference_deltas.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.per_feature.size)

    def dispersion(self) -> np.ndarray:
        """Per-feature standard deviation across references (zero for a single reference)."""
        if self.k_references < 2:
            return np.zeros(self.n_features)
        return self.per_reference_deltas.std(axis=0, ddof=1)
