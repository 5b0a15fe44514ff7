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
import json
from pathlib import Path
from typing import Any, Iterable, List, Union

import click
import numpy as np
import yaml
from click.exceptions import Exit
from exceptions import ArtifactParseError
from pydantic import BaseModel

# 17 significant digits round-trip every float64 exactly
REAL_FORMAT = ".17g"


def format_real(value: float) -> str:
    return format(float(value), REAL_FORMAT)


def format_reals(values: Iterable[float]) -> List[str]:
    return [format_real(v) for v in np.asarray(values, dtype=np.float64).ravel()]


def parse_real(text: str) -> float:
    value = float(text)
    if not np.isfinite(value):
        raise ValueError(f"non-finite value '{text}'")
    return value


def parse_reals(values: Iterable[Any], artifact: str, field: str) -> np.ndarray:
    """Parse decimal strings into a float64 vector, naming the offending entry on failure."""
    parsed = []
    for index, text in enumerate(values):
        try:
            parsed.append(parse_real(text))
        except (TypeError, ValueError) as e:
            raise ArtifactParseError(artifact, f"{field}[{index}]", str(e))
    return np.array(parsed, dtype=np.float64)


def write_json(path: Union[str, Path], document: Any) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as file:
        file.write(json.dumps(document, indent=2) + "\n")


def sidecar_path(path: Union[str, Path]) -> Path:
    return Path(path).with_suffix(".json")


def fail(message: str, code: int) -> Exit:
    click.echo(message, err=True)
    return Exit(code=code)


def __print_json(object: Any) -> None:
    click.echo(__json_string(object))


def __print_yaml(object: Any) -> None:
    click.echo(yaml.dump(yaml.load(__json_string(object), Loader=yaml.FullLoader), sort_keys=False))


def __json_string(object: Any) -> str:
    if object is None:
        return "None"
    if isinstance(object, list):
        return json.dumps([__plain(item) for item in object], indent=4, default=str)
    else:
        return json.dumps(__plain(object), indent=4, default=str)


def __plain(object: Any) -> Any:
    return json.loads(object.json()) if isinstance(object, BaseModel) else object
