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
from typing import Any, List, Optional

import numpy as np
from attribution import (
    AttributionVector,
    Granularity,
    MethodTag,
    SSConfig,
    exact_shapley,
    integrated_gradients,
    shapley_sampling,
)
from compensation import CompensationDelta, compensated_ig, estimate_delta
from engine import Classifier, Record
from exceptions import InvalidParameterError
from pydantic import BaseModel, validator


class MethodContext(BaseModel):
    """Everything an attribution method may need besides the model and the record."""

    class_index = 0
    granularity = Granularity.CHANNEL
    ig_steps = 256
    # None means the all-zero input
    baseline: Optional[np.ndarray] = None
    baseline_descriptor = "zero"
    ss: Optional[SSConfig] = None
    references: List[Record] = []
    delta: Optional[CompensationDelta] = None

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("baseline", pre=True)
    def _as_array(cls, value: Any) -> Optional[np.ndarray]:
        return None if value is None else np.array(value, dtype=np.float64)


def _zeros(model: Classifier) -> np.ndarray:
    return np.zeros((model.n_channels, model.input_length))


def _sampling(context: MethodContext) -> SSConfig:
    if context.ss is None:
        raise InvalidParameterError("Shapley methods need a background (sampling configuration)")
    return context.ss


def delta_for(model: Classifier, context: MethodContext, threads: Optional[int] = None) -> CompensationDelta:
    if context.delta is not None:
        return context.delta
    if not context.references:
        raise InvalidParameterError("compensated IG needs either a delta or reference records")
    sampling = _sampling(context).copy(update={"granularity": context.granularity})
    return estimate_delta(
        model, context.references, _zeros(model), context.ig_steps, sampling, context.class_index, threads
    )


def attribute(
    model: Classifier, record: Record, method: MethodTag, context: MethodContext, threads: Optional[int] = None
) -> AttributionVector:
    if method == MethodTag.IG:
        baseline = _zeros(model) if context.baseline is None else context.baseline
        return integrated_gradients(
            model,
            record,
            baseline,
            context.ig_steps,
            context.class_index,
            context.granularity,
            context.baseline_descriptor,
            threads,
        )
    if method == MethodTag.SS:
        sampling = _sampling(context).copy(update={"granularity": context.granularity})
        return shapley_sampling(model, record, sampling, context.class_index, threads)
    if method == MethodTag.EXACT_SHAPLEY:
        background = _sampling(context).background
        return exact_shapley(model, record, background, context.class_index, context.granularity, threads)
    delta = delta_for(model, context, threads)
    return compensated_ig(
        model, record, delta, _zeros(model), context.ig_steps, context.class_index, context.granularity, threads
    )
