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
import numpy as np
from exceptions import ShapeMismatchError

from .schemas import AttributionVector, Granularity


def feature_map(n_channels: int, length: int, granularity: Granularity) -> np.ndarray:
    """[channels, length] array holding the feature index that owns each input entry."""
    if granularity == Granularity.CHANNEL:
        return np.repeat(np.arange(n_channels)[:, None], length, axis=1)
    return np.arange(n_channels * length).reshape(n_channels, length)


def feature_count(n_channels: int, length: int, granularity: Granularity) -> int:
    return n_channels if granularity == Granularity.CHANNEL else n_channels * length


def reduce_to_granularity(per_entry: np.ndarray, granularity: Granularity) -> np.ndarray:
    if granularity == Granularity.CHANNEL:
        return per_entry.sum(axis=1)
    return per_entry.ravel()


def aggregate_to_channels(attr: AttributionVector, n_channels: int, length: int) -> AttributionVector:
    """Sum per-timepoint contributions into one value per channel (sensor)."""
    if attr.per_feature.size != n_channels * length:
        raise ShapeMismatchError("per-timepoint attribution", (n_channels * length,), attr.per_feature.shape)
    return AttributionVector(
        per_feature=attr.per_feature.reshape(n_channels, length).sum(axis=1),
        method_tag=attr.method_tag,
        class_index=attr.class_index,
        granularity=Granularity.CHANNEL,
        baseline_descriptor=attr.baseline_descriptor,
        record_id=attr.record_id,
        metadata=dict(attr.metadata),
    )
