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
import click
from config import config
from data import load_csv
from engine import ActivationKind, ArchitectureTag, TrainingHyperParams, build_model, save_model
from engine import train as train_model
from evaluation import accuracy
from exceptions import EXIT_RUNTIME, EXIT_VALIDATION, AttribkitException, TrainingDivergedError
from pydantic import ValidationError
from runs.logging import stage
from utils import __print_json, __print_yaml, fail

from .run_config import RunConfig, json_option, seed_option, start_run, title_option


@click.command()
@click.option("--data", required=True, type=click.Path(exists=True, dir_okay=False), help="Dataset CSV")
@click.option("--output", "-o", required=True, type=click.Path(dir_okay=False), help="Model JSON to write")
@click.option(
    "--arch",
    type=click.Choice([tag.value for tag in ArchitectureTag]),
    default=ArchitectureTag.TEMPORAL.value,
    show_default=True,
)
@click.option(
    "--activation",
    type=click.Choice([ActivationKind.TANH.value, ActivationKind.RELU.value]),
    default=ActivationKind.TANH.value,
    show_default=True,
)
@click.option("--epochs", default=50, show_default=True, type=int)
@click.option("--learning-rate", "--lr", default=0.1, show_default=True, type=float)
@click.option("--batch-size", default=16, show_default=True, type=int)
@click.option("--eval-fraction", default=config.defaults.eval_fraction, show_default=True, type=float)
@seed_option
@title_option
@json_option
def train(
    data: str,
    output: str,
    arch: str,
    activation: str,
    epochs: int,
    learning_rate: float,
    batch_size: int,
    eval_fraction: float,
    seed: int,
    title: str,
    json: bool = False,
) -> None:
    """Train a temporal or spatiotemporal CNN on the training split of a dataset"""
    run = RunConfig(subcommand="train", inputs={"data": data}, outputs={"model": output}, seed=seed)
    log_path = start_run(run, title)

    try:
        hyper = TrainingHyperParams(learning_rate=learning_rate, epochs=epochs, batch_size=batch_size, seed=seed)
        dataset = load_csv(data)
        train_split, eval_split = dataset.split(eval_fraction, seed)
        stage(f"Training {arch} model on {len(train_split.records)} records")
        model = build_model(
            ArchitectureTag(arch),
            dataset.n_channels,
            dataset.length,
            dataset.n_classes,
            seed,
            activation=ActivationKind(activation),
        )
        model = train_model(model, train_split.records, hyper)
        save_model(model, output)
    except TrainingDivergedError as e:
        raise fail(str(e), EXIT_RUNTIME)
    except ValidationError as e:
        raise fail(f"Invalid training settings:\n{e}", EXIT_VALIDATION)
    except AttribkitException as e:
        raise fail(str(e), EXIT_VALIDATION)
    except OSError as e:
        raise fail(f"Could not write the model: {e}", EXIT_RUNTIME)

    summary = {
        "model": output,
        "architecture": arch,
        "train_accuracy": accuracy(model, train_split.records),
        "eval_accuracy": accuracy(model, eval_split.records) if eval_split.records else None,
    }
    stage(f"Model written to {output}")
    if json:
        __print_json(summary)
    else:
        __print_yaml(summary)
    click.echo(f"Log output in: '{log_path}'")
