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
from typing import List, Optional

import numpy as np
from engine import Classifier, Record, check_class_index, check_record
from exceptions import InvalidParameterError
from runs.workers import CHUNK_ROWS, chunk_bounds, run_ordered

from .features import reduce_to_granularity
from .schemas import AttributionVector, Granularity, MethodTag, PathSpec


def _segment(
    model: Classifier, start: np.ndarray, end: np.ndarray, steps: int, class_index: int, threads: Optional[int]
) -> np.ndarray:
    """Midpoint Riemann sum of (end - start) * grad f along the straight segment, per input entry."""
    difference = end - start
    if not np.any(difference):
        return np.zeros_like(difference)
    alphas = (np.arange(steps) + 0.5) / steps
    chunk = min(steps, CHUNK_ROWS)
    bounds = chunk_bounds(steps, chunk)

    def gradient_sum(rows: range) -> np.ndarray:
        # pad the tail chunk so every evaluation sees the same batch shape
        index = np.arange(rows.start, rows.start + chunk)
        valid = index < steps
        points = start[None] + alphas[np.minimum(index, steps - 1), None, None] * difference[None]
        gradients = model.class_gradient(points, class_index)
        return gradients[valid].sum(axis=0)

    total = np.zeros_like(difference)
    for partial in run_ordered(gradient_sum, bounds, threads):
        total = total + partial
    return difference * (total / steps)


def _validated(model: Classifier, record: Record, path: PathSpec, class_index: int) -> List[np.ndarray]:
    check_record(model, record.values)
    check_class_index(model, class_index)
    check_record(model, path.baseline, "baseline")
    for index, waypoint in enumerate(path.waypoints):
        check_record(model, waypoint, f"waypoint {index}")
    return [path.baseline] + list(path.waypoints) + [record.values]


def path_integrated_gradients(
    model: Classifier,
    record: Record,
    path: PathSpec,
    class_index: int,
    granularity: Granularity = Granularity.CHANNEL,
    baseline_descriptor: str = "custom",
    threads: Optional[int] = None,
) -> AttributionVector:
    """Path method over the piecewise-linear path baseline -> waypoints -> record."""
    points = _validated(model, record, path, class_index)
    per_entry = np.zeros_like(record.values)
    for start, end in zip(points[:-1], points[1:]):
        per_entry = per_entry + _segment(model, start, end, path.steps, class_index, threads)
    return AttributionVector(
        per_feature=reduce_to_granularity(per_entry, granularity),
        method_tag=MethodTag.IG,
        class_index=class_index,
        granularity=granularity,
        baseline_descriptor=baseline_descriptor,
        record_id=record.id,
        metadata={"steps": path.steps, "waypoints": len(path.waypoints)},
    )


def integrated_gradients(
    model: Classifier,
    record: Record,
    baseline: np.ndarray,
    steps: int = 256,
    class_index: int = 0,
    granularity: Granularity = Granularity.CHANNEL,
    baseline_descriptor: str = "custom",
    threads: Optional[int] = None,
) -> AttributionVector:
    """Straight-line integrated gradients from baseline to record."""
    if steps < 1:
        raise InvalidParameterError("steps must be at least 1")
    path = PathSpec(baseline=baseline, steps=steps)
    return path_integrated_gradients(model, record, path, class_index, granularity, baseline_descriptor, threads)


def zero_baseline(record: Record) -> np.ndarray:
    return np.zeros_like(record.values)
