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
from data import SyntheticConfig, generate_synthetic
from engine import Record, TrainingHyperParams, build_temporal_model, softmax_cross_entropy, train
from evaluation import accuracy
from exceptions import InvalidParameterError
from numpy.testing import assert_allclose, assert_array_equal
from pydantic import ValidationError


@pytest.fixture(scope="module")
def separable():
    config = SyntheticConfig(seed=5, n_channels=3, length=32, records_per_class=40, discriminative_channels=[0])
    return generate_synthetic(config)


def test_training_separates_two_classes(separable):
    model = build_temporal_model(3, 32, 2, seed=1)
    trained = train(model, separable.records, TrainingHyperParams(epochs=50, seed=1))
    assert accuracy(trained, separable.records) >= 0.95


def test_zero_learning_rate_leaves_weights_unchanged(separable):
    model = build_temporal_model(3, 32, 2, seed=2)
    trained = train(model, separable.records, TrainingHyperParams(learning_rate=0.0, epochs=2))
    for before, after in zip(model.layers, trained.layers):
        assert_array_equal(before.weights, after.weights)
        assert_array_equal(before.bias, after.bias)


def test_training_is_deterministic(separable):
    hyper = TrainingHyperParams(epochs=3, seed=9)
    first = train(build_temporal_model(3, 32, 2, seed=4), separable.records, hyper)
    second = train(build_temporal_model(3, 32, 2, seed=4), separable.records, hyper)
    for left, right in zip(first.layers, second.layers):
        assert_array_equal(left.weights, right.weights)


def test_softmax_cross_entropy_gradient():
    logits = np.array([[2.0, 0.0], [0.0, 0.0]])
    loss, grad = softmax_cross_entropy(logits, np.array([0, 1]))
    p = 1.0 / (1.0 + np.exp(-2.0))
    assert loss == pytest.approx((-np.log(p) + np.log(2.0)) / 2.0)
    assert_allclose(grad, [[(p - 1.0) / 2.0, (1.0 - p) / 2.0], [0.25, -0.25]])


def test_labels_must_fit_the_model():
    model = build_temporal_model(2, 8, 2, seed=0)
    records = [Record(id="a", values=np.zeros((2, 8)), label=2)]
    with pytest.raises(InvalidParameterError):
        train(model, records, TrainingHyperParams(epochs=1))


def test_hyper_parameters_are_validated():
    with pytest.raises(ValidationError):
        TrainingHyperParams(learning_rate=-0.1)
    with pytest.raises(ValidationError):
        TrainingHyperParams(batch_size=0)
