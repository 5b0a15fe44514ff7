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
import pytest
from attribution import (
    AttributionVector,
    Granularity,
    MethodTag,
    aggregate_to_channels,
    feature_map,
    integrated_gradients,
    zero_baseline,
)
from exceptions import ShapeMismatchError
from numpy.testing import assert_allclose, assert_array_equal


def _timepoint_vector(values):
    return AttributionVector(
        per_feature=values,
        method_tag=MethodTag.IG,
        class_index=0,
        granularity=Granularity.TIMEPOINT,
        baseline_descriptor="zero",
        record_id="r",
    )


def test_channels_sum_their_timepoints():
    channels = aggregate_to_channels(_timepoint_vector([1.0, 2.0, 3.0, 4.0]), 2, 2)
    assert_array_equal(channels.per_feature, [3.0, 7.0])
    assert channels.granularity == Granularity.CHANNEL
    assert channels.record_id == "r"


def test_aggregation_checks_the_size():
    with pytest.raises(ShapeMismatchError):
        aggregate_to_channels(_timepoint_vector([1.0, 2.0, 3.0]), 2, 2)


def test_feature_map_layouts():
    assert_array_equal(feature_map(2, 3, Granularity.CHANNEL), [[0, 0, 0], [1, 1, 1]])
    assert_array_equal(feature_map(2, 3, Granularity.TIMEPOINT), [[0, 1, 2], [3, 4, 5]])


def test_channel_result_is_the_aggregated_timepoint_result(temporal, record):
    baseline = zero_baseline(record)
    per_channel = integrated_gradients(temporal, record, baseline, steps=64, granularity=Granularity.CHANNEL)
    per_timepoint = integrated_gradients(temporal, record, baseline, steps=64, granularity=Granularity.TIMEPOINT)
    assert per_timepoint.n_features == 4 * 16
    aggregated = aggregate_to_channels(per_timepoint, 4, 16)
    assert_allclose(aggregated.per_feature, per_channel.per_feature, rtol=0, atol=1e-12)
    assert np.isclose(per_timepoint.total(), per_channel.total(), rtol=0, atol=1e-12)
