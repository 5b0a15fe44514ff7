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
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from engine import Record
from exceptions import InvalidParameterError
from pydantic import BaseModel, root_validator


class Dataset(BaseModel):
    records: List[Record]
    n_classes: int
    split_tag: Optional[str] = None
    generator: Optional[Dict[str, Any]] = None

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _check_records(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        records: List[Record] = values["records"]
        if values["n_classes"] < 1:
            raise ValueError("n_classes must be positive")
        if records:
            shape = records[0].values.shape
            for record in records:
                if record.values.shape != shape:
                    actual = list(record.values.shape)
                    raise ValueError(f"record '{record.id}' has shape {actual}, expected {list(shape)}")
                if record.label is not None and record.label >= values["n_classes"]:
                    raise ValueError(f"record '{record.id}' label {record.label} >= n_classes {values['n_classes']}")
        ids = [record.id for record in records]
        if len(set(ids)) != len(ids):
            raise ValueError("record ids must be unique")
        return values

    @property
    def n_channels(self) -> int:
        return self.records[0].n_channels if self.records else 0

    @property
    def length(self) -> int:
        return self.records[0].length if self.records else 0

    def _derive(self, records: List[Record], split_tag: Optional[str]) -> "Dataset":
        return Dataset(records=records, n_classes=self.n_classes, split_tag=split_tag, generator=self.generator)

    def by_class(self, label: int) -> List[Record]:
        return [record for record in self.records if record.label == label]

    def find(self, record_id: str) -> Record:
        for record in self.records:
            if record.id == record_id:
                return record
        raise InvalidParameterError(f"no record with id '{record_id}'")

    def split(self, eval_fraction: float, seed: int) -> Tuple["Dataset", "Dataset"]:
        """Deterministic per-class split into 'train' and 'eval' datasets."""
        if not 0.0 <= eval_fraction < 1.0:
            raise InvalidParameterError("eval fraction must lie in [0, 1)")
        rng = np.random.default_rng(seed)
        eval_ids = set()
        groups: Dict[Optional[int], List[Record]] = {}
        for record in self.records:
            groups.setdefault(record.label, []).append(record)
        for label in sorted(groups, key=lambda key: -1 if key is None else key):
            members = groups[label]
            n_eval = int(round(eval_fraction * len(members)))
            for index in rng.permutation(len(members))[:n_eval]:
                eval_ids.add(members[index].id)
        train = [record for record in self.records if record.id not in eval_ids]
        evaluation = [record for record in self.records if record.id in eval_ids]
        return self._derive(train, "train"), self._derive(evaluation, "eval")

    def sample(self, count: int, seed: int, label: Optional[int] = None) -> List[Record]:
        """Up to count records drawn without replacement, kept in dataset order."""
        pool = self.records if label is None else self.by_class(label)
        if count >= len(pool):
            return list(pool)
        chosen = np.sort(np.random.default_rng(seed).choice(len(pool), size=count, replace=False))
        return [pool[index] for index in chosen]

    def stacked(self) -> np.ndarray:
        return np.stack([record.values for record in self.records])
