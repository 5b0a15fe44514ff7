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
import pytest
from attribution import MethodTag
from evaluation import CostParams, cost, cost_ratio, cost_report
from pydantic import ValidationError


def test_published_counts():
    params = CostParams(ig_steps=100, n_records=400, n_sensors=61, ss_evals_per_sensor=500, k_compensation=20)
    assert cost(params, MethodTag.IG) == 40_000
    assert cost(params, MethodTag.SS) == 12_200_000
    assert cost(params, MethodTag.CIG) == 650_000


def test_published_ratio():
    params = CostParams(ig_steps=100, n_records=1000, n_sensors=61, ss_evals_per_sensor=500, k_compensation=10)
    report = cost_report(params)
    assert report["ratio"] == "20:81:6100"
    assert report["divisor"] == 5000
    assert [entry["method"] for entry in report["methods"]] == ["ig", "cig", "ss"]
    assert [entry["count"] for entry in report["methods"]] == [100_000, 405_000, 30_500_000]


def test_reference_ig_passes_are_optional():
    base = CostParams(k_compensation=10)
    counted = CostParams(k_compensation=10, include_reference_ig=True)
    assert cost(counted, MethodTag.CIG) - cost(base, MethodTag.CIG) == 100 * 10


def test_backprop_ratio_scales_gradient_passes_only():
    params = CostParams(backprop_cost_ratio=2.5)
    assert cost(params, MethodTag.IG) == 100_000
    assert cost(params, MethodTag.SS) == cost(CostParams(), MethodTag.SS)


@pytest.mark.parametrize("k", [1, 10, 50, 200])
def test_compensation_sits_between_the_other_methods(k):
    params = CostParams(k_compensation=k)
    assert cost(params, MethodTag.IG) < cost(params, MethodTag.CIG) < cost(params, MethodTag.SS)


def test_ratio_of_zero_counts():
    assert cost_ratio([0, 0, 0]) == [0, 0, 0]
    assert cost_ratio([4, 6, 10]) == [2, 3, 5]


def test_negative_parameters_are_rejected():
    with pytest.raises(ValidationError):
        CostParams(n_records=-1)
    with pytest.raises(ValidationError):
        CostParams(backprop_cost_ratio=-0.5)
