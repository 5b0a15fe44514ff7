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
from typing import List, Optional, Tuple

import click
import numpy as np
from attribution import AttributionVector, Granularity, MethodTag, SSConfig, save_attributions
from compensation import load_delta
from config import config
from data import Dataset, load_csv
from engine import Classifier, Record, load_model
from evaluation import MethodContext
from evaluation import attribute as attribute_record
from exceptions import EXIT_RUNTIME, EXIT_VALIDATION, AttribkitException
from pydantic import ValidationError
from runs.logging import stage
from utils import fail

from .run_config import (
    RunConfig,
    granularity_option,
    seed_option,
    start_run,
    threads_option,
    title_option,
)

BASELINES = ("zero", "mean")


@click.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--data", required=True, type=click.Path(exists=True, dir_okay=False), help="CSV holding the records")
@click.option("--record-id", "-r", "record_ids", multiple=True, help="Record to explain (repeatable, default: all)")
@click.option(
    "--method",
    type=click.Choice([tag.value for tag in MethodTag]),
    default=MethodTag.CIG.value,
    show_default=True,
)
@click.option("--steps", default=config.defaults.ig_steps, show_default=True, type=int, help="IG steps per segment")
@click.option("--samples", default=config.defaults.ss_samples, show_default=True, type=int, help="SS draws")
@click.option("--baseline", type=click.Choice(BASELINES), default="zero", show_default=True, help="IG baseline")
@click.option(
    "--background",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="CSV with background records for Shapley methods (default: --data)",
)
@click.option("--background-size", default=config.defaults.background_size, show_default=True, type=int)
@click.option("--delta", "delta_path", type=click.Path(exists=True, dir_okay=False), help="Delta JSON (cig)")
@click.option("--class-index", type=int, default=None, help="Target class (default: record label, or the delta's)")
@click.option("--output", "-o", required=True, type=click.Path(dir_okay=False), help="Attribution CSV to write")
@granularity_option
@seed_option
@threads_option
@title_option
def attribute(
    model_path: str,
    data: str,
    record_ids: Tuple[str, ...],
    method: str,
    steps: int,
    samples: int,
    baseline: str,
    background: Optional[str],
    background_size: int,
    delta_path: Optional[str],
    class_index: Optional[int],
    output: str,
    granularity: str,
    seed: int,
    threads: Optional[int],
    title: str,
) -> None:
    """Explain records with ig, ss, exact_shapley or cig and write the attributions as CSV"""
    inputs = {"model": model_path, "data": data}
    if background is not None:
        inputs["background"] = background
    if delta_path is not None:
        inputs["delta"] = delta_path
    try:
        run = RunConfig(
            subcommand="attribute",
            inputs=inputs,
            outputs={"attributions": output},
            method=method,
            seed=seed,
            ig_steps=steps,
            ss_samples=samples,
            background_size=background_size,
            class_index=class_index,
            granularity=granularity,
            threads=threads,
        )
    except ValidationError as e:
        raise fail(f"Invalid parameters:\n{e}", EXIT_VALIDATION)
    if method == MethodTag.CIG.value and delta_path is None:
        raise fail("--method cig needs --delta (see the 'delta' command)", EXIT_VALIDATION)
    log_path = start_run(run, title)

    try:
        model = load_model(model_path)
        dataset = load_csv(data)
        records = [dataset.find(record_id) for record_id in record_ids] if record_ids else dataset.records
        pool = load_csv(background) if background is not None else dataset
        attributions = _explain(model, records, pool, run, baseline, delta_path)
        sidecar = save_attributions(attributions, output, {**run.artifact_metadata(), "baseline": baseline})
    except ValidationError as e:
        raise fail(f"Invalid parameters:\n{e}", EXIT_VALIDATION)
    except AttribkitException as e:
        raise fail(str(e), EXIT_VALIDATION)
    except OSError as e:
        raise fail(f"Could not write the attributions: {e}", EXIT_RUNTIME)

    click.echo(f"Attributions for {len(attributions)} records written to '{output}' (metadata: '{sidecar}')")
    click.echo(f"Log output in: '{log_path}'")


def _explain(
    model: Classifier,
    records: List[Record],
    pool: Dataset,
    run: RunConfig,
    baseline: str,
    delta_path: Optional[str],
) -> List[AttributionVector]:
    method = MethodTag(run.method)
    delta = load_delta(delta_path) if delta_path is not None else None
    background = pool.sample(run.background_size, run.seed)
    baseline_values = None
    if baseline == "mean":
        baseline_values = np.mean([record.values for record in background], axis=0)

    attributions = []
    for record in records:
        class_index = run.class_index
        if class_index is None:
            class_index = delta.class_index if delta is not None else (record.label or 0)
        context = MethodContext(
            class_index=class_index,
            granularity=Granularity(run.granularity),
            ig_steps=run.ig_steps,
            baseline=baseline_values,
            baseline_descriptor=baseline,
            ss=SSConfig(
                samples_per_feature=run.ss_samples,
                background=background,
                seed=run.seed,
                granularity=run.granularity,
            ),
            delta=delta,
        )
        stage(f"{method.value}: record {record.id}, class {class_index}")
        attributions.append(attribute_record(model, record, method, context, run.threads))
    return attributions
