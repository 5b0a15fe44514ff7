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
import csv
from pathlib import Path
from typing import Any, Dict, Sequence, Union

from utils import format_real, sidecar_path, write_json

from .schemas import AttributionVector

COLUMNS = ["record_id", "method", "class_index", "feature_index", "contribution"]


def attribution_metadata(attributions: Sequence[AttributionVector]) -> Dict[str, Any]:
    return {
        "attributions": [
            {
                "record_id": attr.record_id,
                "method": attr.method_tag.value,
                "class_index": attr.class_index,
                "granularity": attr.granularity.value,
                "baseline": attr.baseline_descriptor,
                "n_features": attr.n_features,
                **attr.metadata,
            }
            for attr in attributions
        ]
    }


def save_attributions(
    attributions: Sequence[AttributionVector], path: Union[str, Path], run_metadata: Dict[str, Any]
) -> Path:
    """Write the long-format attribution CSV and its JSON sidecar; returns the sidecar path."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(COLUMNS)
        for attr in attributions:
            for index, value in enumerate(attr.per_feature):
                row = [attr.record_id or "", attr.method_tag.value, attr.class_index, index, format_real(value)]
                writer.writerow(row)
    sidecar = sidecar_path(path)
    write_json(sidecar, {**run_metadata, **attribution_metadata(attributions)})
    return sidecar
