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
"""
Evaluation counts of the three attribution strategies over a whole dataset.

IG costs one backpropagation per integration step and record; Shapley sampling costs one
forward pass per sample, sensor and record; compensated IG runs IG on every record plus
Shapley sampling on the K reference records only.
"""
from functools import reduce
from math import gcd
from typing import Any, Dict, List

from attribution import MethodTag
from exceptions import InvalidParameterError
from pydantic import BaseModel, validator

COST_METHODS = (MethodTag.IG, MethodTag.CIG, MethodTag.SS)


class CostParams(BaseModel):
    ig_steps = 100
    n_records = 400
    n_sensors = 61
    ss_evals_per_sensor = 500
    k_compensation = 10
    # a backpropagation counted in forward-pass units
    backprop_cost_ratio = 1.0
    # also count the IG passes on the K reference records
    include_reference_ig = False

    @validator("ig_steps", "n_records", "n_sensors", "ss_evals_per_sensor", "k_compensation")
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("counts must be non-negative")
        return value

    @validator("backprop_cost_ratio")
    def _non_negative_ratio(cls, value: float) -> float:
        if value < 0:
            raise ValueError("backprop cost ratio must be non-negative")
        return value


def _backprops(params: CostParams, count: int) -> int:
    # rounded to whole forward-pass equivalents when the ratio is fractional
    return int(round(params.backprop_cost_ratio * count))


def cost(params: CostParams, method: MethodTag) -> int:
    ig_records = params.ig_steps * params.n_records
    if method == MethodTag.IG:
        return _backprops(params, ig_records)
    if method == MethodTag.SS:
        return params.ss_evals_per_sensor * params.n_sensors * params.n_records
    if method == MethodTag.CIG:
        backprops = ig_records
        if params.include_reference_ig:
            backprops += params.ig_steps * params.k_compensation
        return _backprops(params, backprops) + params.ss_evals_per_sensor * params.n_sensors * params.k_compensation
    raise InvalidParameterError(f"no cost model for method '{method.value}'")


def cost_ratio(counts: List[int]) -> List[int]:
    divisor = reduce(gcd, counts)
    if divisor == 0:
        return list(counts)
    return [count // divisor for count in counts]


def cost_report(params: CostParams) -> Dict[str, Any]:
    """{methods: [{method, count, ratio}], ratio: 'ig:cig:ss', divisor, params}."""
    counts = [cost(params, method) for method in COST_METHODS]
    ratios = cost_ratio(counts)
    return {
        "methods": [
            {"method": method.value, "count": count, "ratio": ratio}
            for method, count, ratio in zip(COST_METHODS, counts, ratios)
        ],
        "ratio": ":".join(str(ratio) for ratio in ratios),
        "divisor": reduce(gcd, counts),
        "params": params.dict(),
    }
