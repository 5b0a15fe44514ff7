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
Dataset CSV layout:

    #channels=<n> length=<L> classes=<c>
    id,label,ch0_t0,ch0_t1,...,ch{n-1}_t{L-1}
    <id>,<label or empty>,<value>,...
"""
import csv
import re
from pathlib import Path
from typing import List, Union

import numpy as np
from engine import Record
from exceptions import ArtifactParseError, ArtifactValidationError
from pydantic import ValidationError
from utils import format_real, parse_real

from .dataset import Dataset

ARTIFACT = "dataset CSV"
HEADER_PATTERN = re.compile(r"^#channels=(\d+) length=(\d+) classes=(\d+)$")


def _column_names(n_channels: int, length: int) -> List[str]:
    return ["id", "label"] + [f"ch{c}_t{t}" for c in range(n_channels) for t in range(length)]


def save_csv(dataset: Dataset, path: Union[str, Path]) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as file:
        file.write(f"#channels={dataset.n_channels} length={dataset.length} classes={dataset.n_classes}\n")
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(_column_names(dataset.n_channels, dataset.length))
        for record in dataset.records:
            label = "" if record.label is None else str(record.label)
            writer.writerow([record.id, label] + [format_real(v) for v in record.values.ravel()])


def load_csv(path: Union[str, Path]) -> Dataset:
    with open(path, "r", newline="") as file:
        header = file.readline().rstrip("\r\n")
        match = HEADER_PATTERN.match(header)
        if match is None:
            raise ArtifactParseError(ARTIFACT, "header", "missing '#channels=<n> length=<L> classes=<c>' line")
        n_channels, length, n_classes = (int(group) for group in match.groups())

        reader = csv.reader(file)
        columns = next(reader, None)
        expected = _column_names(n_channels, length)
        if columns != expected:
            raise ArtifactParseError(ARTIFACT, "columns", "column header does not match the declared shape")

        records = []
        for line, row in enumerate(reader, start=3):
            if len(row) != len(expected):
                reason = f"ragged row with {len(row)} cells, expected {len(expected)}"
                raise ArtifactParseError(ARTIFACT, f"line {line}", reason)
            try:
                label = int(row[1]) if row[1] != "" else None
            except ValueError:
                raise ArtifactParseError(ARTIFACT, f"line {line}.label", f"non-integer label '{row[1]}'")
            values = np.empty(n_channels * length)
            for index, cell in enumerate(row[2:]):
                try:
                    values[index] = parse_real(cell)
                except ValueError:
                    field = f"line {line}.{expected[index + 2]}"
                    raise ArtifactParseError(ARTIFACT, field, f"non-numeric cell '{cell}'")
            try:
                records.append(Record(id=row[0], values=values.reshape(n_channels, length), label=label))
            except ValidationError as e:
                raise ArtifactValidationError(ARTIFACT, f"line {line}", e.errors()[0]["msg"])

    try:
        return Dataset(records=records, n_classes=n_classes)
    except ValidationError as e:
        raise ArtifactValidationError(ARTIFACT, None, e.errors()[0]["msg"])
