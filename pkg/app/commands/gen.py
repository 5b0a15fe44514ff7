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
from typing import Tuple

import click
from data import SyntheticConfig, generate_synthetic, save_csv
from exceptions import EXIT_RUNTIME, EXIT_VALIDATION, AttribkitException
from pydantic import ValidationError
from runs.logging import stage
from utils import fail

from .run_config import RunConfig, seed_option, start_run, title_option


@click.command()
@click.option("--output", "-o", required=True, type=click.Path(dir_okay=False), help="Dataset CSV to write")
@click.option("--channels", default=6, show_default=True, type=int, help="Channels (sensors) per record")
@click.option("--length", default=64, show_default=True, type=int, help="Timepoints per channel")
@click.option("--classes", default=2, show_default=True, type=int, help="Number of classes")
@click.option("--records-per-class", default=200, show_default=True, type=int)
@click.option("--offset", default=0.5, show_default=True, type=float, help="DC level added to every channel")
@click.option("--noise", default=0.2, show_default=True, type=float, help="Standard deviation of the white noise")
@click.option("--amplitude", default=0.5, show_default=True, type=float, help="Class sinusoid amplitude")
@click.option(
    "--discriminative",
    "-d",
    multiple=True,
    type=int,
    default=(0, 1),
    show_default=True,
    help="Channel carrying the class signature (repeatable)",
)
@seed_option
@title_option
def gen(
    output: str,
    channels: int,
    length: int,
    classes: int,
    records_per_class: int,
    offset: float,
    noise: float,
    amplitude: float,
    discriminative: Tuple[int, ...],
    seed: int,
    title: str,
) -> None:
    """Generate a synthetic multichannel time-series dataset"""
    run = RunConfig(subcommand="gen", outputs={"dataset": output}, seed=seed)
    log_path = start_run(run, title)

    try:
        synthetic = SyntheticConfig(
            seed=seed,
            n_channels=channels,
            length=length,
            n_classes=classes,
            records_per_class=records_per_class,
            offset=offset,
            noise_scale=noise,
            amplitude=amplitude,
            discriminative_channels=list(discriminative),
        )
        dataset = generate_synthetic(synthetic)
        save_csv(dataset, output)
    except ValidationError as e:
        raise fail(f"Invalid generator settings:\n{e}", EXIT_VALIDATION)
    except AttribkitException as e:
        raise fail(str(e), EXIT_VALIDATION)
    except OSError as e:
        raise fail(f"Could not write the dataset: {e}", EXIT_RUNTIME)

    stage(f"Wrote {len(dataset.records)} records to {output}")
    click.echo(f"Dataset written to '{output}'")
    click.echo(f"Log output in: '{log_path}'")
