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
from typing import List

import numpy as np
from engine import Record
from exceptions import InvalidParameterError
from loguru import logger
from pydantic import BaseModel, validator

from .dataset import Dataset


class SyntheticConfig(BaseModel):
    seed = 42
    n_channels = 6
    length = 64
    n_classes = 2
    records_per_class = 200
    # Every channel sits on this DC level, so the all-zero input lies off the data manifold.
    offset = 0.5
    discriminative_channels: List[int] = [0, 1]
    noise_scale = 0.2
    amplitude = 0.5
    class_shift = 1.0

    @validator("n_channels", "length", "n_classes", "records_per_class")
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @validator("noise_scale", "amplitude")
    def _non_negative(cls, value: float) -> float:
        if value < 0:
            raise ValueError("must be non-negative")
        return value


def generate_synthetic(config: SyntheticConfig) -> Dataset:
    """
    Sinusoid-plus-noise records. On discriminative channels class c adds a level shift of
    (c - (n_classes - 1) / 2) * class_shift and a sinusoid with 2 + c cycles per record at a
    random phase; all other channels carry only the DC offset and noise.
    """
    for channel in config.discriminative_channels:
        if not 0 <= channel < config.n_channels:
            raise InvalidParameterError(
                f"discriminative channel {channel} out of range for {config.n_channels} channels"
            )

    rng = np.random.default_rng(config.seed)
    time = np.arange(config.length) / config.length
    records = []
    for label in range(config.n_classes):
        level = (label - (config.n_classes - 1) / 2.0) * config.class_shift
        cycles = 2 + label
        for index in range(config.records_per_class):
            values = config.offset + config.noise_scale * rng.standard_normal((config.n_channels, config.length))
            for channel in config.discriminative_channels:
                phase = rng.uniform(0.0, 2.0 * np.pi)
                values[channel] += level + config.amplitude * np.sin(2.0 * np.pi * cycles * time + phase)
            records.append(Record(id=f"c{label}-{index:04d}", values=values, label=label))

    logger.info(
        f"Generated {len(records)} records ({config.n_channels} channels x {config.length} points, "
        f"{config.n_classes} classes)"
    )
    return Dataset(records=records, n_classes=config.n_classes, generator=config.dict())
