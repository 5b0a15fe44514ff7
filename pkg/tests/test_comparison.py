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
from attribution import MethodTag
from engine import Record, linear_model
from evaluation import (
    ComparisonConfig,
    RecordRho,
    SpearmanReport,
    SpearmanRow,
    accuracy,
    comparison_table,
    report_document,
    write_sensor_csv,
    write_table_csv,
)
from exceptions import InvalidParameterError, TooManyFeaturesError
from factories import make_records, two_class_identity
from pydantic import ValidationError

WEIGHTS = [2.0, -1.0, 0.5, 3.0]


def _column(prefix, count, seed, label=0):
    rng = np.random.default_rng(seed)
    return [Record(id=f"{prefix}-{i}", values=rng.normal(size=(4, 1)), label=label) for i in range(count)]


@pytest.fixture
def linear_report():
    config = ComparisonConfig(ig_steps=16, ss_samples=50, k_references=3, background_size=1, seed=2)
    return comparison_table(linear_model(WEIGHTS), _column("x", 8, 0), _column("pool", 10, 1), config, threads=1)


def test_shapley_methods_track_the_truth_on_a_linear_model(linear_report):
    assert linear_report.rho(0, MethodTag.SS) == pytest.approx(1.0)
    assert linear_report.rho(0, MethodTag.CIG) == pytest.approx(1.0)
    assert linear_report.n_records == 8
    assert len(linear_report.record_rhos(MethodTag.IG)) == 8
    assert linear_report.fraction_at_least(MethodTag.CIG, MethodTag.IG) == 1.0


def test_sensor_means_include_the_truth(linear_report):
    methods = {row.method for row in linear_report.sensors}
    assert methods == {"truth", "cig", "ss", "ig"}
    assert len(linear_report.sensors) == 4 * 4


def test_ties_only_count_as_at_least_as_good():
    rhos = {"a": (0.9, 0.5), "b": (0.7, 0.7), "c": (0.2, 0.4), "d": (1.0, 0.1)}
    per_record = [
        RecordRho(record_id=record_id, class_label=0, method=method, rho=rho)
        for record_id, pair in rhos.items()
        for method, rho in zip((MethodTag.CIG, MethodTag.IG), pair)
    ]
    report = SpearmanReport(rows=[], per_record=per_record, n_records=4)
    assert report.fraction_at_least(MethodTag.CIG, MethodTag.IG) == 0.75
    assert report.fraction_above(MethodTag.CIG, MethodTag.IG) == 0.5


def test_report_files(tmp_path, linear_report):
    write_sensor_csv(linear_report, tmp_path / "sensors.csv")
    lines = (tmp_path / "sensors.csv").read_text().splitlines()
    assert lines[0] == "dataset,class,method,channel,mean_contribution"
    assert len(lines) == 1 + 16
    document = report_document(linear_report, ComparisonConfig())
    assert document["mean_rho"]["ss"] == pytest.approx(1.0)
    assert document["config"]["truth"] == "exact"


def test_table_layout(tmp_path):
    rows = [
        SpearmanRow(dataset_tag="synthetic", model_tag="temporal", class_label=0, method=method, rho=rho, n_records=5)
        for method, rho in ((MethodTag.IG, 0.18), (MethodTag.SS, 0.95), (MethodTag.CIG, 0.98349))
    ]
    path = tmp_path / "table.csv"
    write_table_csv(SpearmanReport(rows=rows, per_record=[], n_records=5), path)
    assert path.read_text() == "dataset,class,cig,ss,ig\nsynthetic,0,0.983,0.950,0.180\n"


def test_rho_outside_the_unit_interval_is_rejected():
    with pytest.raises(ValidationError):
        SpearmanRow(dataset_tag="d", model_tag="m", class_label=0, method=MethodTag.IG, rho=1.5, n_records=1)


def test_accuracy():
    records = [
        Record(id="a", values=[[1.0], [0.0]], label=0),
        Record(id="b", values=[[0.0], [1.0]], label=1),
        Record(id="c", values=[[2.0], [0.0]], label=1),
    ]
    assert accuracy(two_class_identity(), records) == pytest.approx(2.0 / 3.0)


def test_invalid_comparisons(temporal, background):
    records = make_records(np.random.default_rng(3), 2, 4, 16, label=0)
    with pytest.raises(InvalidParameterError):
        comparison_table(temporal, make_records(np.random.default_rng(3), 2, 4, 16), background, ComparisonConfig())
    with pytest.raises(InvalidParameterError):
        comparison_table(temporal, records, [], ComparisonConfig())
    with pytest.raises(TooManyFeaturesError):
        comparison_table(temporal, records, background, ComparisonConfig(granularity="timepoint"))
    with pytest.raises(ValidationError):
        ComparisonConfig(methods=[MethodTag.EXACT_SHAPLEY])
