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
from evaluation import spearman
from exceptions import ShapeMismatchError, UndefinedCorrelationError


def test_identical_orderings():
    assert spearman([1.0, 2.0, 3.0, 4.0], [10.0, 20.0, 30.0, 40.0]) == pytest.approx(1.0)


def test_reversed_orderings():
    assert spearman([1.0, 2.0, 3.0, 4.0], [4.0, 3.0, 2.0, 1.0]) == pytest.approx(-1.0)


def test_ties_share_their_mean_rank():
    # ranks [1.5, 1.5, 3, 4] against [1, 2, 3, 4]
    left = np.array([1.5, 1.5, 3.0, 4.0])
    right = np.arange(1.0, 5.0)
    expected = np.sum((left - left.mean()) * (right - right.mean())) / np.sqrt(
        np.sum((left - left.mean()) ** 2) * np.sum((right - right.mean()) ** 2)
    )
    assert spearman([5.0, 5.0, 7.0, 9.0], [0.1, 0.2, 0.3, 0.4]) == pytest.approx(expected, abs=1e-12)


def test_invariant_under_monotone_transforms():
    rng = np.random.default_rng(0)
    a, b = rng.normal(size=30), rng.normal(size=30)
    assert spearman(np.exp(a), b ** 3) == pytest.approx(spearman(a, b), abs=1e-12)


def test_undefined_cases():
    with pytest.raises(UndefinedCorrelationError):
        spearman([1.0], [2.0])
    with pytest.raises(UndefinedCorrelationError):
        spearman([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(ShapeMismatchError):
        spearman([1.0, 2.0], [1.0, 2.0, 3.0])
