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
from attribution import Granularity, SSConfig, integrated_gradients, shapley_sampling, zero_baseline
from compensation import CompensationDelta, compensated_ig, estimate_delta, load_delta, save_delta
from engine import Record
from exceptions import ArtifactParseError, ArtifactValidationError, GranularityMismatchError, InvalidParameterError
from factories import make_records
from numpy.testing import assert_allclose, assert_array_equal
from pydantic import ValidationError


def _point(record_id, *values):
    return Record(id=record_id, values=np.array(values, dtype=np.float64)[:, None])


@pytest.fixture
def linear_background():
    return SSConfig(samples_per_feature=20, background=[_point("t", 1.0, 1.0)], seed=4)


@pytest.fixture
def references():
    rng = np.random.default_rng(12)
    return [_point(f"ref-{i}", *rng.normal(size=2)) for i in range(10)]


def _zero_delta(n_features, class_index=0):
    return CompensationDelta(
        class_index=class_index,
        granularity=Granularity.CHANNEL,
        per_feature=np.zeros(n_features),
        reference_ids=["a"],
        ig_steps=8,
        ss_samples=1,
        ss_seed=0,
        background_size=1,
        seeds=[0],
        per_reference_deltas=np.zeros((1, n_features)),
    )


def test_linear_delta_is_minus_weight_times_background(linear, linear_background, references):
    delta = estimate_delta(linear, references, np.zeros((2, 1)), 16, linear_background)
    assert_allclose(delta.per_feature, [-2.0, 1.0], rtol=0, atol=1e-12)
    assert_allclose(delta.per_reference_deltas, np.tile([-2.0, 1.0], (10, 1)), rtol=0, atol=1e-12)
    assert delta.k_references == 10
    assert delta.reference_ids == [f"ref-{i}" for i in range(10)]
    assert np.all(delta.dispersion() < 1e-12)


def test_reference_count_does_not_matter_for_a_linear_model(linear, linear_background, references):
    one = estimate_delta(linear, references[:1], np.zeros((2, 1)), 16, linear_background)
    ten = estimate_delta(linear, references, np.zeros((2, 1)), 16, linear_background)
    assert_allclose(one.per_feature, ten.per_feature, rtol=0, atol=1e-12)
    assert_array_equal(one.dispersion(), [0.0, 0.0])


def test_compensated_ig_recovers_shapley_on_a_linear_model(linear, linear_background, references):
    delta = estimate_delta(linear, references, np.zeros((2, 1)), 16, linear_background)
    record = _point("x", 3.0, 4.0)
    cig = compensated_ig(linear, record, delta, np.zeros((2, 1)), 16)
    ss = shapley_sampling(linear, record, linear_background)
    assert_allclose(cig.per_feature, ss.per_feature, rtol=0, atol=1e-12)
    assert cig.method_tag.value == "cig"
    assert cig.baseline_descriptor == "zero+delta"


def test_zero_delta_leaves_ig_unchanged(temporal, record):
    baseline = zero_baseline(record)
    cig = compensated_ig(temporal, record, _zero_delta(4), baseline, 64)
    ig = integrated_gradients(temporal, record, baseline, 64)
    assert_array_equal(cig.per_feature, ig.per_feature)


def test_delta_seeds_are_spawned_per_reference(temporal, record, background):
    references = make_records(np.random.default_rng(5), 3, 4, 16, prefix="ref")
    config = SSConfig(samples_per_feature=30, background=background, seed=21)
    delta = estimate_delta(temporal, references, zero_baseline(record), 32, config, class_index=1)
    assert len(set(delta.seeds)) == 3
    assert delta.ss_seed == 21
    assert delta.class_index == 1
    assert delta.standard_errors is not None
    again = estimate_delta(temporal, references, zero_baseline(record), 32, config, class_index=1, threads=3)
    assert_array_equal(delta.per_reference_deltas, again.per_reference_deltas)


def test_mismatched_requests_are_refused(temporal, record):
    baseline = zero_baseline(record)
    with pytest.raises(GranularityMismatchError):
        compensated_ig(temporal, record, _zero_delta(4), baseline, 8, granularity=Granularity.TIMEPOINT)
    with pytest.raises(InvalidParameterError):
        compensated_ig(temporal, record, _zero_delta(4, class_index=1), baseline, 8, class_index=0)


def test_estimation_needs_references(linear, linear_background):
    with pytest.raises(InvalidParameterError):
        estimate_delta(linear, [], np.zeros((2, 1)), 16, linear_background)


def test_mean_must_match_the_rows():
    with pytest.raises(ValidationError):
        CompensationDelta(
            class_index=0,
            granularity=Granularity.CHANNEL,
            per_feature=[1.0, 1.0],
            reference_ids=["a", "b"],
            ig_steps=8,
            ss_samples=1,
            ss_seed=0,
            background_size=1,
            seeds=[0, 1],
            per_reference_deltas=[[0.0, 0.0], [1.0, 1.0]],
        )


def test_delta_file_round_trip(tmp_path, temporal, record, background):
    references = make_records(np.random.default_rng(6), 2, 4, 16, prefix="ref")
    config = SSConfig(samples_per_feature=10, background=background, seed=2)
    delta = estimate_delta(temporal, references, zero_baseline(record), 16, config)
    path = tmp_path / "delta.json"
    save_delta(delta, path)
    loaded = load_delta(path)
    assert_array_equal(loaded.per_feature, delta.per_feature)
    assert_array_equal(loaded.per_reference_deltas, delta.per_reference_deltas)
    assert_array_equal(loaded.standard_errors, delta.standard_errors)
    assert loaded.seeds == delta.seeds
    assert loaded.reference_ids == delta.reference_ids


def test_truncated_delta_file(tmp_path, linear, linear_background, references):
    path = tmp_path / "delta.json"
    save_delta(estimate_delta(linear, references, np.zeros((2, 1)), 16, linear_background), path)
    path.write_text(path.read_text()[:-40])
    with pytest.raises(ArtifactParseError):
        load_delta(path)


def test_declared_reference_count_is_checked(tmp_path, linear, linear_background, references):
    path = tmp_path / "delta.json"
    save_delta(estimate_delta(linear, references[:2], np.zeros((2, 1)), 16, linear_background), path)
    path.write_text(path.read_text().replace('"k_references": 2', '"k_references": 3'))
    with pytest.raises(ArtifactValidationError) as error:
        load_delta(path)
    assert error.value.field == "k_references"
