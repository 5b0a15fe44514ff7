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
Rank-similarity comparison of attribution methods against a ground truth, per class.

For every analysed record the truth (exact Shapley, or high-sample Shapley sampling) and each
method's attribution are computed for the record's own class; the Spearman correlation between
them is averaged per class. References and background come from a separate record pool (the
training split), analysed records from the evaluation split.
"""
import csv
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from attribution import (
    EXACT_FEATURE_LIMIT,
    AttributionVector,
    Granularity,
    MethodTag,
    SSConfig,
    aggregate_to_channels,
    exact_shapley,
    feature_count,
    shapley_sampling,
)
from compensation import CompensationDelta, estimate_delta
from engine import Classifier, Model, Record
from exceptions import InvalidParameterError, TooManyFeaturesError, UndefinedCorrelationError
from loguru import logger
from pydantic import BaseModel, validator
from runs.logging import stage
from runs.workers import CHUNK_ROWS, chunk_bounds, run_ordered, spawn_seeds
from utils import format_real

from .methods import MethodContext, attribute
from .spearman import spearman

TABLE_METHODS = (MethodTag.CIG, MethodTag.SS, MethodTag.IG)
TRUTH_LABEL = "truth"


class TruthKind(str, Enum):
    EXACT = "exact"
    SS = "ss"


class ComparisonConfig(BaseModel):
    dataset_tag = "synthetic"
    methods: List[MethodTag] = list(TABLE_METHODS)
    truth = TruthKind.EXACT
    truth_samples = 20000
    ig_steps = 256
    ss_samples = 500
    k_references = 10
    background_size = 50
    granularity = Granularity.CHANNEL
    # None analyses every record of each class
    records_per_class: Optional[int] = None
    seed = 42

    @validator("methods")
    def _comparable(cls, value: List[MethodTag]) -> List[MethodTag]:
        if not value:
            raise ValueError("select at least one method")
        if MethodTag.EXACT_SHAPLEY in value:
            raise ValueError("exact_shapley is the truth, not a compared method")
        return value

    @validator("truth_samples", "ig_steps", "ss_samples", "k_references", "background_size")
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value


class SpearmanRow(BaseModel):
    dataset_tag: str
    model_tag: str
    class_label: int
    method: MethodTag
    rho: float
    n_records: int

    @validator("rho")
    def _in_range(cls, value: float) -> float:
        if not -1.0 <= value <= 1.0:
            raise ValueError("rho must lie in [-1, 1]")
        return value


class RecordRho(BaseModel):
    record_id: str
    class_label: int
    method: MethodTag
    rho: float


class SensorRow(BaseModel):
    dataset_tag: str
    class_label: int
    # a compared method, or "truth"
    method: str
    channel: int
    mean_contribution: float


class SpearmanReport(BaseModel):
    rows: List[SpearmanRow]
    per_record: List[RecordRho]
    sensors: List[SensorRow] = []
    n_records: int
    accuracy: Optional[float] = None

    def rho(self, class_label: int, method: MethodTag) -> Optional[float]:
        for row in self.rows:
            if row.class_label == class_label and row.method == method:
                return row.rho
        return None

    def record_rhos(self, method: MethodTag) -> Dict[str, float]:
        return {item.record_id: item.rho for item in self.per_record if item.method == method}

    def mean_rho(self, method: MethodTag) -> float:
        """Mean over every analysed record, regardless of class."""
        values = list(self.record_rhos(method).values())
        if not values:
            raise UndefinedCorrelationError(f"no defined correlations for method '{method.value}'")
        return float(np.mean(values))

    def fraction_at_least(self, better: MethodTag, worse: MethodTag) -> float:
        """Share of records on which `better` correlates with the truth at least as well as `worse`."""
        return self._fraction(better, worse, strict=False)

    def fraction_above(self, better: MethodTag, worse: MethodTag) -> float:
        """Share of records on which `better` correlates with the truth strictly better than `worse`."""
        return self._fraction(better, worse, strict=True)

    def _fraction(self, better: MethodTag, worse: MethodTag, strict: bool) -> float:
        left, right = self.record_rhos(better), self.record_rhos(worse)
        common = [record_id for record_id in left if record_id in right]
        if not common:
            return 0.0
        wins = [left[key] > right[key] if strict else left[key] >= right[key] for key in common]
        return float(np.mean(wins))


def accuracy(model: Classifier, records: Sequence[Record]) -> float:
    labelled = [record for record in records if record.label is not None]
    if not labelled:
        raise InvalidParameterError("accuracy needs labelled records")
    batch = np.stack([record.values for record in labelled])
    predictions = np.concatenate(
        [model.logits(batch[rows.start : rows.stop]).argmax(axis=1) for rows in chunk_bounds(len(batch), CHUNK_ROWS)]
    )
    labels = np.array([record.label for record in labelled])
    return float(np.mean(predictions == labels))


def model_tag(model: Classifier) -> str:
    return model.architecture_tag.value if isinstance(model, Model) else type(model).__name__


def _pick(rng: np.random.Generator, items: Sequence[Record], count: Optional[int]) -> List[Record]:
    if count is None or count >= len(items):
        return list(items)
    return [items[index] for index in sorted(rng.choice(len(items), size=count, replace=False))]


def _channels(model: Classifier, attr: AttributionVector) -> np.ndarray:
    if attr.granularity == Granularity.CHANNEL:
        return attr.per_feature
    return aggregate_to_channels(attr, model.n_channels, model.input_length).per_feature


def comparison_table(
    model: Classifier,
    records: Sequence[Record],
    pool: Sequence[Record],
    config: ComparisonConfig,
    threads: Optional[int] = None,
) -> SpearmanReport:
    if any(record.label is None for record in records):
        raise InvalidParameterError("compared records need class labels")
    if not pool:
        raise InvalidParameterError("the reference pool is empty")
    n_features = feature_count(model.n_channels, model.input_length, config.granularity)
    if config.truth == TruthKind.EXACT and n_features > EXACT_FEATURE_LIMIT:
        raise TooManyFeaturesError(n_features, EXACT_FEATURE_LIMIT)

    rng = np.random.default_rng(config.seed)
    background = _pick(rng, pool, config.background_size)
    sampling = SSConfig(
        samples_per_feature=config.ss_samples, background=background, seed=config.seed, granularity=config.granularity
    )
    classes = sorted({int(record.label) for record in records if record.label is not None})

    deltas: Dict[int, CompensationDelta] = {}
    selected: List[Record] = []
    for label in classes:
        if MethodTag.CIG in config.methods:
            references = _pick(rng, [record for record in pool if record.label == label], config.k_references)
            if not references:
                raise InvalidParameterError(f"the reference pool has no records of class {label}")
            stage(f"Estimating class {label} delta from {len(references)} references")
            zero = np.zeros((model.n_channels, model.input_length))
            deltas[label] = estimate_delta(model, references, zero, config.ig_steps, sampling, label, threads)
        selected.extend(_pick(rng, [record for record in records if record.label == label], config.records_per_class))

    ss_seeds = spawn_seeds(config.seed, len(selected), stream=1)
    truth_seeds = spawn_seeds(config.seed, len(selected), stream=2)
    stage(f"Attributing {len(selected)} records with {', '.join(m.value for m in config.methods)} and the truth")

    def analyse(index: int) -> Tuple[AttributionVector, Dict[MethodTag, AttributionVector]]:
        record = selected[index]
        label = int(record.label or 0)
        if config.truth == TruthKind.EXACT:
            truth = exact_shapley(model, record, background, label, config.granularity, threads=1)
        else:
            update = {"samples_per_feature": config.truth_samples, "seed": truth_seeds[index]}
            truth = shapley_sampling(model, record, sampling.copy(update=update), label, threads=1)
        context = MethodContext(
            class_index=label,
            granularity=config.granularity,
            ig_steps=config.ig_steps,
            ss=sampling.copy(update={"seed": ss_seeds[index]}),
            delta=deltas.get(label),
        )
        return truth, {method: attribute(model, record, method, context, threads=1) for method in config.methods}

    analysed = run_ordered(analyse, list(range(len(selected))), threads)

    per_record: List[RecordRho] = []
    for record, (truth, results) in zip(selected, analysed):
        for method in config.methods:
            try:
                rho = spearman(truth.per_feature, results[method].per_feature)
            except UndefinedCorrelationError as e:
                logger.warning(f"Skipping {method.value} on record {record.id}: {e}")
                continue
            label = int(record.label or 0)
            per_record.append(RecordRho(record_id=record.id, class_label=label, method=method, rho=rho))

    tag = model_tag(model)
    rows: List[SpearmanRow] = []
    sensors: List[SensorRow] = []
    for label in classes:
        for method in config.methods:
            values = [item.rho for item in per_record if item.class_label == label and item.method == method]
            if not values:
                continue
            rows.append(
                SpearmanRow(
                    dataset_tag=config.dataset_tag,
                    model_tag=tag,
                    class_label=label,
                    method=method,
                    rho=float(np.clip(np.mean(values), -1.0, 1.0)),
                    n_records=len(values),
                )
            )
        members = [analysed[index] for index, record in enumerate(selected) if record.label == label]
        sources = {TRUTH_LABEL: [truth for truth, _ in members]}
        for method in config.methods:
            sources[method.value] = [results[method] for _, results in members]
        sensors.extend(_sensor_rows(model, config.dataset_tag, label, sources))

    return SpearmanReport(
        rows=rows, per_record=per_record, sensors=sensors, n_records=len(selected), accuracy=accuracy(model, records)
    )


def _sensor_rows(
    model: Classifier, dataset_tag: str, label: int, sources: Dict[str, List[AttributionVector]]
) -> List[SensorRow]:
    rows = []
    for method, attributions in sources.items():
        means = np.mean([_channels(model, attr) for attr in attributions], axis=0)
        for channel, value in enumerate(means):
            rows.append(
                SensorRow(
                    dataset_tag=dataset_tag,
                    class_label=label,
                    method=method,
                    channel=channel,
                    mean_contribution=float(value),
                )
            )
    return rows


def write_table_csv(report: SpearmanReport, path: Union[str, Path]) -> None:
    """One row per (dataset, class), method columns in the order cig, ss, ig."""
    methods = [method for method in TABLE_METHODS if any(row.method == method for row in report.rows)]
    keys = sorted({(row.dataset_tag, row.class_label) for row in report.rows}, key=lambda key: (key[0], key[1]))
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(["dataset", "class"] + [method.value for method in methods])
        for dataset_tag, label in keys:
            cells = []
            for method in methods:
                rho = report.rho(label, method)
                cells.append("" if rho is None else f"{rho:.3f}")
            writer.writerow([dataset_tag, label] + cells)


def write_sensor_csv(report: SpearmanReport, path: Union[str, Path]) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(["dataset", "class", "method", "channel", "mean_contribution"])
        for row in report.sensors:
            value = format_real(row.mean_contribution)
            writer.writerow([row.dataset_tag, row.class_label, row.method, row.channel, value])


def report_document(report: SpearmanReport, config: ComparisonConfig) -> Dict[str, Any]:
    document: Dict[str, Any] = json.loads(report.json())
    document["config"] = json.loads(config.json())
    document["mean_rho"] = {
        method.value: report.mean_rho(method) for method in config.methods if report.record_rhos(method)
    }
    return document
