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
import datetime
from typing import Any, Callable, Dict, Optional

import click
from attribution import Granularity
from config import config
from loguru import logger
from pydantic import BaseModel, validator
from runs.logging import configure_logger_for_run

F = Callable[..., Any]


class RunConfig(BaseModel):
    """The resolved knobs of one command invocation, echoed into every artifact it writes."""

    subcommand: str
    inputs: Dict[str, str] = {}
    outputs: Dict[str, str] = {}
    method: Optional[str] = None
    seed = config.defaults.seed
    ig_steps = config.defaults.ig_steps
    ss_samples = config.defaults.ss_samples
    k_references = config.defaults.k_references
    background_size = config.defaults.background_size
    class_index: Optional[int] = None
    granularity = Granularity(config.defaults.granularity)
    # never written to artifacts, outputs do not depend on it
    threads: Optional[int] = None

    @validator("ig_steps", "ss_samples", "k_references", "background_size")
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    def artifact_metadata(self) -> Dict[str, Any]:
        return self.dict(exclude={"threads"}, exclude_none=True)


def start_run(run: RunConfig, title: str) -> str:
    log_path = configure_logger_for_run(command=run.subcommand, title=title)
    logger.debug(f"Run configuration: {run.json(exclude={'threads'})}")
    return log_path


def title_option(f: F) -> F:
    return click.option(
        "--title",
        default=lambda: str(datetime.datetime.now().strftime("%Y-%m-%d-%H:%M:%S")),
        show_default="timestamp",
        help="Name of this run's log file",
    )(f)


def seed_option(f: F) -> F:
    return click.option("--seed", type=int, default=config.defaults.seed, show_default=True, help="Root random seed")(f)


def threads_option(f: F) -> F:
    return click.option(
        "--threads",
        type=click.IntRange(min=1),
        envvar="ATTRIBKIT_THREADS",
        show_envvar=True,
        default=config.defaults.threads,
        help="Worker threads (default: available parallelism); results do not depend on it",
    )(f)


def granularity_option(f: F) -> F:
    return click.option(
        "--granularity",
        type=click.Choice([g.value for g in Granularity]),
        default=config.defaults.granularity,
        show_default=True,
        help="One feature per channel (sensor) or per timepoint",
    )(f)


def json_option(f: F) -> F:
    return click.option(
        "--json",
        is_flag=True,
        flag_value=True,
        help="Print JSON instead of YAML",
    )(f)
