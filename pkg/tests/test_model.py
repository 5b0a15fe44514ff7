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
import math

import numpy as np
import pytest
from engine import (
    Record,
    build_spatiotemporal_model,
    build_temporal_model,
    forward,
    input_gradient,
    silence_channel,
    symmetrize_channels,
)
from exceptions import ClassIndexError, ShapeMismatchError
from factories import finite_difference_gradient, hand_model, without_biases
from numpy.testing import assert_allclose, assert_array_equal


def test_linear_forward(linear):
    assert forward(linear, Record(id="x", values=[[3.0], [4.0]]), 0) == 2.0


def test_zero_input_without_biases_gives_zero(temporal):
    model = without_biases(temporal)
    record = Record(id="zero", values=np.zeros((4, 16)))
    assert forward(model, record, 0) == 0.0
    assert forward(model, record, 1) == 0.0


def test_hand_computed_forward():
    values = np.array([[1.0, 2.0, 3.0, 4.0], [0.0, -1.0, 1.0, 0.0]])
    dense = [0.3, -0.2, 0.1, 0.4, 0.0, -0.5]
    expected = 0.05
    for channel in range(2):
        for t in range(3):
            conv = 0.5 * values[channel, t] - 0.25 * values[channel, t + 1] + 0.1
            expected += dense[channel * 3 + t] * math.tanh(conv)
    assert forward(hand_model(), Record(id="hand", values=values), 0) == pytest.approx(expected, abs=1e-15)


def test_linear_gradient_is_constant(linear):
    for values in ([[3.0], [4.0]], [[-7.5], [0.25]]):
        gradient = input_gradient(linear, Record(id="x", values=values), 0)
        assert_array_equal(gradient.values, [[2.0], [-1.0]])


@pytest.mark.parametrize("seed", range(50))
def test_gradient_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    build = build_temporal_model if seed % 2 == 0 else build_spatiotemporal_model
    model = build(3, 12, 2, seed=seed)
    values = 0.5 + rng.standard_normal((3, 12))
    class_index = seed % 2
    analytic = input_gradient(model, Record(id="x", values=values), class_index).values
    numeric = finite_difference_gradient(model, values, class_index)
    assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-8)


def test_relu_gradient_matches_finite_differences():
    model = build_temporal_model(3, 12, 2, seed=3, activation="relu")
    values = 0.5 + np.random.default_rng(3).standard_normal((3, 12))
    analytic = input_gradient(model, Record(id="x", values=values), 0).values
    numeric = finite_difference_gradient(model, values, 0, h=1e-7)
    assert_allclose(analytic, numeric, rtol=1e-4, atol=1e-8)


@pytest.mark.parametrize("builder", [build_temporal_model, build_spatiotemporal_model])
def test_silenced_channel_has_exactly_zero_gradient(builder, record):
    model = silence_channel(builder(4, 16, 2, seed=11), 2)
    gradient = input_gradient(model, record, 1).values
    assert_array_equal(gradient[2], np.zeros(16))
    assert np.any(gradient[1] != 0.0)


def test_channel_swap_is_an_identity_on_symmetric_temporal_models(temporal, record):
    model = symmetrize_channels(temporal, 0, 3)
    swapped = Record(id="swapped", values=np.array(record.values)[[3, 1, 2, 0]])
    for class_index in range(2):
        assert forward(model, swapped, class_index) == pytest.approx(forward(model, record, class_index), abs=1e-12)


def test_channel_swap_with_equal_channels_is_exact(temporal, record):
    model = symmetrize_channels(temporal, 0, 3)
    values = np.array(record.values)
    values[3] = values[0]
    swapped = values[[3, 1, 2, 0]]
    assert forward(model, Record(id="y", values=swapped), 0) == forward(model, Record(id="x", values=values), 0)


def test_forward_and_gradient_are_pure(temporal, record):
    first = input_gradient(temporal, record, 0).values
    second = input_gradient(temporal, record, 0).values
    assert_array_equal(first, second)
    assert forward(temporal, record, 1) == forward(temporal, record, 1)


def test_shape_mismatch_is_reported(temporal):
    with pytest.raises(ShapeMismatchError, match=r"expected \[4, 16\]"):
        forward(temporal, Record(id="short", values=np.zeros((4, 15))), 0)


def test_class_index_out_of_range(temporal, record):
    with pytest.raises(ClassIndexError):
        forward(temporal, record, 2)
    with pytest.raises(IndexError):
        input_gradient(temporal, record, -1)
