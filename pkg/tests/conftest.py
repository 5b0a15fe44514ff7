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
import sys
from pathlib import Path
from typing import List

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parents[1] / "app"))

from engine import (  # noqa: E402
    Model,
    Record,
    build_spatiotemporal_model,
    build_temporal_model,
    linear_model,
    product_model,
)
from factories import make_records  # noqa: E402


@pytest.fixture
def linear() -> Model:
    return linear_model([2.0, -1.0])


@pytest.fixture
def product() -> Model:
    return product_model()


@pytest.fixture
def temporal() -> Model:
    return build_temporal_model(4, 16, 2, seed=7)


@pytest.fixture
def spatiotemporal() -> Model:
    return build_spatiotemporal_model(4, 16, 2, seed=7)


@pytest.fixture
def record() -> Record:
    return make_records(np.random.default_rng(0), 1, 4, 16, prefix="record")[0]


@pytest.fixture
def background() -> List[Record]:
    return make_records(np.random.default_rng(1), 6, 4, 16, prefix="background")


@pytest.fixture
def workdir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Run in a scratch directory so command logs stay out of the repository."""
    monkeypatch.chdir(tmp_path)
    return tmp_path
