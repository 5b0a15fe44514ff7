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
Shapley value estimators over a background distribution.

A coalition S is evaluated as the class logit of a hybrid input that takes the features in S
from the record and every other feature from a background record. Sampling walks one random
permutation per draw; the exact oracle enumerates every coalition.
"""
from typing import List, Optional, Sequence, Tuple

import numpy as np
from engine import Classifier, Record, check_class_index, check_record
from exceptions import EmptyBackgroundError, TooManyFeaturesError
from loguru import logger
from runs.workers import CHUNK_ROWS, chunk_bounds, run_ordered
from scipy.special import comb

from .features import feature_map
from .schemas import AttributionVector, Granularity, MethodTag, SSConfig

EXACT_FEATURE_LIMIT = 20


def _stack_background(model: Classifier, background: Sequence[Record]) -> np.ndarray:
    if not background:
        raise EmptyBackgroundError()
    for record in background:
        check_record(model, record.values, f"background record {record.id}")
    return np.stack([record.values for record in background])


def sampling_plan(n_features: int, samples: int, n_background: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Permutations [samples, n_features] and background picks [samples], drawn up front."""
    rng = np.random.default_rng(seed)
    permutations = rng.permuted(np.tile(np.arange(n_features), (samples, 1)), axis=1)
    picks = rng.integers(0, n_background, size=samples)
    return permutations, picks


def shapley_sampling(
    model: Classifier, record: Record, config: SSConfig, class_index: int = 0, threads: Optional[int] = None
) -> AttributionVector:
    check_record(model, record.values)
    check_class_index(model, class_index)
    background = _stack_background(model, config.background)

    features = feature_map(model.n_channels, model.input_length, config.granularity)
    n_features = int(features.max()) + 1
    samples = config.samples_per_feature
    permutations, picks = sampling_plan(n_features, samples, len(background), config.seed)

    # every draw costs n_features + 1 evaluations (the whole prefix chain)
    per_chunk = max(1, CHUNK_ROWS // (n_features + 1))
    prefix_sizes = np.arange(n_features + 1)

    def marginals(rows: range) -> np.ndarray:
        index = np.arange(rows.start, rows.start + per_chunk)
        valid = index < samples
        index = np.minimum(index, samples - 1)
        ranks = np.argsort(permutations[index], axis=1)
        entry_rank = ranks[:, features]
        from_record = entry_rank[:, None] < prefix_sizes[None, :, None, None]
        hybrids = np.where(from_record, record.values[None, None], background[picks[index]][:, None])
        values = model.logits(hybrids.reshape(-1, *record.values.shape))[:, class_index]
        chain = np.diff(values.reshape(per_chunk, n_features + 1), axis=1)
        return np.take_along_axis(chain, ranks, axis=1)[valid]

    draws = np.concatenate(run_ordered(marginals, chunk_bounds(samples, per_chunk), threads))
    standard_errors = None
    if samples > 1:
        standard_errors = draws.std(axis=0, ddof=1) / np.sqrt(samples)
    logger.debug(f"shapley sampling: {samples} draws over {n_features} features for record {record.id}")

    return AttributionVector(
        per_feature=draws.mean(axis=0),
        method_tag=MethodTag.SS,
        class_index=class_index,
        granularity=config.granularity,
        baseline_descriptor=f"background:{len(background)}",
        record_id=record.id,
        standard_errors=standard_errors,
        metadata={"samples": samples, "seed": config.seed},
    )


def _coalition_sizes(n_features: int) -> np.ndarray:
    coalitions = np.arange(2**n_features)
    sizes = np.zeros_like(coalitions)
    for feature in range(n_features):
        sizes += (coalitions >> feature) & 1
    return sizes


def exact_shapley(
    model: Classifier,
    record: Record,
    background: Sequence[Record],
    class_index: int = 0,
    granularity: Granularity = Granularity.CHANNEL,
    threads: Optional[int] = None,
) -> AttributionVector:
    """Shapley values by full coalition enumeration; refuses more than EXACT_FEATURE_LIMIT features."""
    check_record(model, record.values)
    check_class_index(model, class_index)
    features = feature_map(model.n_channels, model.input_length, granularity)
    n_features = int(features.max()) + 1
    if n_features > EXACT_FEATURE_LIMIT:
        raise TooManyFeaturesError(n_features, EXACT_FEATURE_LIMIT)
    stacked = _stack_background(model, background)

    n_coalitions = 2**n_features
    n_background = len(stacked)
    per_chunk = max(1, CHUNK_ROWS // n_background)
    bit_values = 1 << np.arange(n_features)

    def coalition_values(rows: range) -> np.ndarray:
        index = np.minimum(np.arange(rows.start, rows.start + per_chunk), n_coalitions - 1)
        members = (index[:, None] & bit_values[None, :]) != 0
        from_record = members[:, features]
        hybrids = np.where(from_record[:, None], record.values[None, None], stacked[None])
        values = model.logits(hybrids.reshape(-1, *record.values.shape))[:, class_index]
        return values.reshape(per_chunk, n_background).mean(axis=1)[: len(rows)]

    # v(S) memoized for every coalition S, indexed by its bitmask
    value = np.concatenate(run_ordered(coalition_values, chunk_bounds(n_coalitions, per_chunk), threads))

    sizes = _coalition_sizes(n_features)
    weights = 1.0 / (n_features * comb(n_features - 1, np.arange(n_features), exact=False))
    coalitions = np.arange(n_coalitions)
    per_feature: List[float] = []
    for feature in range(n_features):
        without = coalitions[(coalitions & bit_values[feature]) == 0]
        marginal = value[without | bit_values[feature]] - value[without]
        per_feature.append(float(np.sum(weights[sizes[without]] * marginal)))

    return AttributionVector(
        per_feature=per_feature,
        method_tag=MethodTag.EXACT_SHAPLEY,
        class_index=class_index,
        granularity=granularity,
        baseline_descriptor=f"background:{n_background}",
        record_id=record.id,
        metadata={"coalitions": n_coalitions},
    )
