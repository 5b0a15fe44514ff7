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
from typing import Optional, Sequence, Tuple

import numpy as np
from attribution import (
    AttributionVector,
    Granularity,
    MethodTag,
    SSConfig,
    integrated_gradients,
    shapley_sampling,
)
from engine import Classifier, Record, check_class_index, check_record
from exceptions import GranularityMismatchError, InvalidParameterError, ShapeMismatchError
from loguru import logger
from runs.workers import run_ordered, spawn_seeds

from .schemas import CompensationDelta


def estimate_delta(
    model: Classifier,
    references: Sequence[Record],
    zero_baseline: np.ndarray,
    ig_steps: int,
    ss_config: SSConfig,
    class_index: int = 0,
    threads: Optional[int] = None,
) -> CompensationDelta:
    """delta_r = SS(r) - IG(r; zero_baseline) for every reference r, averaged over references."""
    if not references:
        raise InvalidParameterError("compensation needs at least one reference record")
    check_class_index(model, class_index)
    check_record(model, zero_baseline, "zero baseline")
    seeds = spawn_seeds(ss_config.seed, len(references))

    def one_reference(job: Tuple[Record, int]) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        reference, seed = job
        ig = integrated_gradients(
            model, reference, zero_baseline, ig_steps, class_index, ss_config.granularity, "zero", threads=1
        )
        ss = shapley_sampling(model, reference, ss_config.copy(update={"seed": seed}), class_index, threads=1)
        return ss.per_feature - ig.per_feature, ss.standard_errors

    results = run_ordered(one_reference, list(zip(references, seeds)), threads)
    rows = np.stack([delta for delta, _ in results])
    standard_errors = None
    if all(errors is not None for _, errors in results):
        standard_errors = np.sqrt(np.sum(np.stack([errors for _, errors in results]) ** 2, axis=0)) / len(results)

    delta = CompensationDelta(
        class_index=class_index,
        granularity=ss_config.granularity,
        per_feature=rows.mean(axis=0),
        reference_ids=[reference.id for reference in references],
        ig_steps=ig_steps,
        ss_samples=ss_config.samples_per_feature,
        ss_seed=ss_config.seed,
        background_size=len(ss_config.background),
        seeds=seeds,
        per_reference_deltas=rows,
        standard_errors=standard_errors,
    )
    logger.info(
        f"Estimated class {class_index} delta from {delta.k_references} references, "
        f"max dispersion {float(delta.dispersion().max()):.3g}"
    )
    return delta


def compensated_ig(
    model: Classifier,
    record: Record,
    delta: CompensationDelta,
    zero_baseline: np.ndarray,
    ig_steps: int,
    class_index: int = 0,
    granularity: Granularity = Granularity.CHANNEL,
    threads: Optional[int] = None,
) -> AttributionVector:
    if delta.granularity != granularity:
        raise GranularityMismatchError(delta.granularity.value, granularity.value)
    if delta.class_index != class_index:
        raise InvalidParameterError(f"delta was estimated for class {delta.class_index}, not class {class_index}")
    ig = integrated_gradients(model, record, zero_baseline, ig_steps, class_index, granularity, "zero", threads)
    if ig.n_features != delta.n_features:
        raise ShapeMismatchError("compensation delta", (ig.n_features,), (delta.n_features,))
    return AttributionVector(
        per_feature=ig.per_feature + delta.per_feature,
        method_tag=MethodTag.CIG,
        class_index=class_index,
        granularity=granularity,
        baseline_descriptor="zero+delta",
        record_id=record.id,
        standard_errors=delta.standard_errors,
        metadata={"steps": ig_steps, "k_references": delta.k_references, "seed": delta.ss_seed},
    )
