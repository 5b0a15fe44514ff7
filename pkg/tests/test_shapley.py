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
import itertools
from math import factorial

import numpy as np
import pytest
from attribution import EXACT_FEATURE_LIMIT, Granularity, SSConfig, exact_shapley, sampling_plan, shapley_sampling
from engine import Record, build_temporal_model, forward, silence_channel
from exceptions import EmptyBackgroundError, TooManyFeaturesError
from factories import make_records
from numpy.testing import assert_allclose, assert_array_equal


def _point(*values):
    return Record(id="x", values=np.array(values, dtype=np.float64)[:, None])


def _oracle(model, record, background):
    """Shapley values straight from the coalition formula, one channel per player."""
    n = model.n_channels

    def value(coalition):
        members = np.isin(np.arange(n), coalition)[:, None]
        hybrids = np.stack([np.where(members, record.values, b.values) for b in background])
        return float(model.logits(hybrids)[:, 0].mean())

    phi = np.zeros(n)
    for player in range(n):
        others = [p for p in range(n) if p != player]
        for size in range(n):
            weight = factorial(size) * factorial(n - size - 1) / factorial(n)
            for coalition in itertools.combinations(others, size):
                phi[player] += weight * (value(list(coalition) + [player]) - value(list(coalition)))
    return phi


def test_sampling_plan_is_reproducible():
    permutations, picks = sampling_plan(5, 100, 3, seed=11)
    again, again_picks = sampling_plan(5, 100, 3, seed=11)
    assert_array_equal(permutations, again)
    assert_array_equal(picks, again_picks)
    assert_array_equal(np.sort(permutations, axis=1), np.tile(np.arange(5), (100, 1)))
    assert picks.min() >= 0 and picks.max() < 3


def test_sampling_is_exact_for_a_linear_model(linear):
    config = SSConfig(samples_per_feature=50, background=[_point(1.0, 1.0)], seed=3)
    attr = shapley_sampling(linear, _point(3.0, 4.0), config)
    assert_allclose(attr.per_feature, [4.0, -3.0], rtol=0, atol=1e-12)
    assert attr.baseline_descriptor == "background:1"
    assert attr.metadata == {"samples": 50, "seed": 3}


def test_sampling_splits_a_product_evenly(product):
    config = SSConfig(samples_per_feature=4000, background=[_point(0.0, 0.0)], seed=5)
    attr = shapley_sampling(product, _point(3.0, 2.0), config)
    assert_allclose(attr.per_feature, [3.0, 3.0], atol=0.25)
    assert np.isclose(attr.total(), 6.0, atol=1e-12)
    assert attr.standard_errors is not None and np.all(attr.standard_errors > 0)


def test_single_draw_has_no_standard_error(linear):
    attr = shapley_sampling(linear, _point(3.0, 4.0), SSConfig(samples_per_feature=1, background=[_point(0.0, 0.0)]))
    assert attr.standard_errors is None


def test_exact_shapley_of_a_product(product):
    attr = exact_shapley(product, _point(3.0, 2.0), [_point(0.0, 0.0)])
    assert_allclose(attr.per_feature, [3.0, 3.0], rtol=0, atol=1e-12)
    assert attr.metadata["coalitions"] == 4


@pytest.mark.parametrize("n_channels, seed", [(4, 7), (6, 3)])
def test_exact_shapley_matches_the_coalition_formula(n_channels, seed):
    model = build_temporal_model(n_channels, 8, 2, seed=seed)
    rng = np.random.default_rng(seed)
    record = make_records(rng, 1, n_channels, 8)[0]
    background = make_records(rng, 3, n_channels, 8, prefix="b")
    attr = exact_shapley(model, record, background)
    assert_allclose(attr.per_feature, _oracle(model, record, background), rtol=0, atol=1e-9)


def test_exact_shapley_is_complete(spatiotemporal, record, background):
    attr = exact_shapley(spatiotemporal, record, background)
    expected = forward(spatiotemporal, record, 0) - np.mean([forward(spatiotemporal, b, 0) for b in background])
    assert abs(attr.total() - expected) < 1e-9


def test_ignored_channel_gets_nothing(temporal, record, background):
    dead = silence_channel(temporal, 3)
    assert exact_shapley(dead, record, background).per_feature[3] == 0.0
    sampled = shapley_sampling(dead, record, SSConfig(samples_per_feature=200, background=background))
    assert abs(sampled.per_feature[3]) <= 1e-12


def test_exact_enumeration_refuses_large_feature_sets(temporal, record, background):
    with pytest.raises(TooManyFeaturesError) as error:
        exact_shapley(temporal, record, background, granularity=Granularity.TIMEPOINT)
    assert error.value.n_features == 64
    assert error.value.limit == EXACT_FEATURE_LIMIT


def test_empty_background(temporal, record):
    with pytest.raises(EmptyBackgroundError):
        shapley_sampling(temporal, record, SSConfig(background=[]))
    with pytest.raises(EmptyBackgroundError):
        exact_shapley(temporal, record, [])


def test_sampling_approaches_the_exact_values(temporal, record, background):
    exact = exact_shapley(temporal, record, background).per_feature
    sampled = shapley_sampling(temporal, record, SSConfig(samples_per_feature=20000, background=background, seed=1))
    spread = exact.max() - exact.min()
    tolerance = max(0.02 * spread, 4.0 * float(np.max(sampled.standard_errors)))
    assert np.max(np.abs(sampled.per_feature - exact)) <= tolerance


def test_timepoint_sampling_is_complete_per_draw(temporal, record, background):
    config = SSConfig(samples_per_feature=40, background=background[:1], granularity=Granularity.TIMEPOINT)
    attr = shapley_sampling(temporal, record, config)
    assert attr.n_features == 64
    expected = forward(temporal, record, 0) - forward(temporal, background[0], 0)
    assert abs(attr.total() - expected) < 1e-9


def test_thread_count_does_not_change_the_estimate(temporal, record, background):
    config = SSConfig(samples_per_feature=3000, background=background, seed=9)
    single = shapley_sampling(temporal, record, config, threads=1)
    pooled = shapley_sampling(temporal, record, config, threads=4)
    assert_array_equal(single.per_feature, pooled.per_feature)
    assert_array_equal(single.standard_errors, pooled.standard_errors)
