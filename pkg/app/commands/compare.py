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
from pathlib import Path
from typing import Optional, Tuple

import click
from attribution import MethodTag
from config import config
from data import load_csv
from engine import load_model
from evaluation import (
    TABLE_METHODS,
    ComparisonConfig,
    TruthKind,
    comparison_table,
    report_document,
    write_sensor_csv,
    write_table_csv,
)
from exceptions import EXIT_RUNTIME, EXIT_VALIDATION, AttribkitException, InvalidParameterError
from pydantic import ValidationError
from runs.logging import stage
from utils import __print_json, __print_yaml, fail, write_json

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
@click.option(
    "--method",
    "-m",
    "methods",
    multiple=True,
    type=click.Choice([tag.value for tag in TABLE_METHODS]),
    default=[tag.value for tag in TABLE_METHODS],
    show_default=True,
    help="Method to compare against the truth (repeatable)",
)
@click.option(
    "--truth",
    type=click.Choice([kind.value for kind in TruthKind]),
    default=TruthKind.EXACT.value,
    show_default=True,
    help="Exact Shapley values, or Shapley sampling with --truth-samples draws",
)
@click.option("--truth-samples", default=20000, show_default=True, type=int)
@click.option("--steps", default=config.defaults.ig_steps, show_default=True, type=int, help="IG steps")
@click.option("--samples", default=config.defaults.ss_samples, show_default=True, type=int, help="SS draws")
@click.option("--k", "k_references", default=config.defaults.k_references, show_default=True, type=int)
@click.option("--background-size", default=config.defaults.background_size, show_default=True, type=int)
@click.option("--records-per-class", type=int, default=None, help="Analysed records per class (default: all)")
@click.option("--eval-fraction", default=config.defaults.eval_fraction, show_default=True, type=float)
@click.option("--dataset-tag", default=None, help="Dataset column of the table (default: data file name)")
@click.option("--output", "-o", required=True, type=click.Path(dir_okay=False), help="Table CSV to write")
@granularity_option
@seed_option
@threads_option
@title_option
@json_option
def compare(
    model_path: str,
    data: str,
    methods: Tuple[str, ...],
    truth: str,
    truth_samples: int,
    steps: int,
    samples: int,
    k_references: int,
    background_size: int,
    records_per_class: Optional[int],
    eval_fraction: float,
    dataset_tag: Optional[str],
    output: str,
    granularity: str,
    seed: int,
    threads: Optional[int],
    title: str,
    json: bool = False,
) -> None:
    """Spearman similarity of each method to the truth, per class, on the evaluation split"""
    report_path = Path(output).with_suffix(".json")
    sensors_path = Path(output).with_suffix(".sensors.csv")
    try:
        run = RunConfig(
            subcommand="compare",
            inputs={"model": model_path, "data": data},
            outputs={"table": output, "report": str(report_path), "sensors": str(sensors_path)},
            method=",".join(methods),
            seed=seed,
            ig_steps=steps,
            ss_samples=samples,
            k_references=k_references,
            background_size=background_size,
            granularity=granularity,
            threads=threads,
        )
        comparison = ComparisonConfig(
            dataset_tag=dataset_tag or Path(data).stem,
            methods=[MethodTag(method) for method in methods],
            truth=truth,
            truth_samples=truth_samples,
            ig_steps=steps,
            ss_samples=samples,
            k_references=k_references,
            background_size=background_size,
            granularity=granularity,
            records_per_class=records_per_class,
            seed=seed,
        )
    except ValidationError as e:
        raise fail(f"Invalid parameters:\n{e}", EXIT_VALIDATION)
    log_path = start_run(run, title)

    try:
        model = load_model(model_path)
        train_split, eval_split = load_csv(data).split(eval_fraction, seed)
        if not eval_split.records:
            raise InvalidParameterError("the evaluation split is empty; raise --eval-fraction")
        report = comparison_table(model, eval_split.records, train_split.records, comparison, threads)
        write_table_csv(report, output)
        write_sensor_csv(report, sensors_path)
        write_json(report_path, {"run": run.artifact_metadata(), **report_document(report, comparison)})
    except ValidationError as e:
        raise fail(f"Invalid parameters:\n{e}", EXIT_VALIDATION)
    except AttribkitException as e:
        raise fail(str(e), EXIT_VALIDATION)
    except OSError as e:
        raise fail(f"Could not write the comparison: {e}", EXIT_RUNTIME)
    stage(f"Table written to {output}")

    summary = {
        "table": output,
        "accuracy": report.accuracy,
        "rows": [
            {"class": row.class_label, "method": row.method.value, "rho": round(row.rho, 3), "n_records": row.n_records}
            for row in report.rows
        ],
    }
    if json:
        __print_json(summary)
    else:
        __print_yaml(summary)
    click.echo(f"Log output in: '{log_path}'")
