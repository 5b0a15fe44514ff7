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
from typing import Optional

import click
import numpy as np
from attribution import SSConfig
from compensation import estimate_delta, save_delta
from config import config
from data import load_csv
from engine import load_model
from exceptions import EXIT_RUNTIME, EXIT_VALIDATION, AttribkitException, InvalidParameterError
from pydantic import ValidationError
from runs.logging import stage
from utils import __print_json, __print_yaml, fail

from .run_config import (
    RunConfig,
    granularity_option,
    json_option,
    seed_option,
    start_run,
    threads_option,
    title_option,
)


@click.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--data", required=True, type=click.Path(exists=True, dir_okay=False), help="Dataset CSV")
@click.option("--class-index", default=0, show_default=True, type=int, help="Class whose output is compensated")
@click.option("--k", "k_references", default=config.defaults.k_references, show_default=True, type=int)
@click.option("--steps", default=config.defaults.ig_steps, show_default=True, type=int, help="IG steps")
@click.option("--samples", default=config.defaults.ss_samples, show_default=True, type=int, help="SS draws")
@click.option("--background-size", default=config.defaults.background_size, show_default=True, type=int)
@click.option("--eval-fraction", default=config.defaults.eval_fraction, show_default=True, type=float)
@click.option("--output", "-o", required=True, type=click.Path(dir_okay=False), help="Delta JSON to write")
@granularity_option
@seed_option
@threads_option
@title_option
@json_option
def delta(
    model_path: str,
    data: str,
    class_index: int,
    k_references: int,
    steps: int,
    samples: int,
    background_size: int,
    eval_fraction: float,
    output: str,
    granularity: str,
    seed: int,
    threads: Optional[int],
    title: str,
    json: bool = False,
) -> None:
    """Estimate the compensation delta of one class from reference records of the training split"""
    try:
        run = RunConfig(
            subcommand="delta",
            inputs={"model": model_path, "data": data},
            outputs={"delta": output},
            seed=seed,
            ig_steps=steps,
            ss_samples=samples,
            k_references=k_references,
            background_size=background_size,
            class_index=class_index,
            granularity=granularity,
            threads=threads,
        )
    except ValidationError as e:
        raise fail(f"Invalid parameters:\n{e}", EXIT_VALIDATION)
    log_path = start_run(run, title)

    try:
        model = load_model(model_path)
        train_split, _ = load_csv(data).split(eval_fraction, seed)
        references = train_split.sample(k_references, seed, label=class_index)
        if not references:
            raise InvalidParameterError(f"the training split has no records of class {class_index}")
        background = train_split.sample(background_size, seed + 1)
        sampling = SSConfig(samples_per_feature=samples, background=background, seed=seed, granularity=granularity)
        stage(f"Estimating class {class_index} delta from {len(references)} references")
        zero = np.zeros((model.n_channels, model.input_length))
        estimated = estimate_delta(model, references, zero, steps, sampling, class_index, threads)
        save_delta(estimated, output)
    except ValidationError as e:
        raise fail(f"Invalid parameters:\n{e}", EXIT_VALIDATION)
    except AttribkitException as e:
        raise fail(str(e), EXIT_VALIDATION)
    except OSError as e:
        raise fail(f"Could not write the delta: {e}", EXIT_RUNTIME)

    summary = {
        "delta": output,
        "class_index": class_index,
        "references": list(estimated.reference_ids),
        "per_feature": [float(value) for value in estimated.per_feature],
        "dispersion": [float(value) for value in estimated.dispersion()],
    }
    if json:
        __print_json(summary)
    else:
        __print_yaml(summary)
    click.echo(f"Log output in: '{log_path}'")
