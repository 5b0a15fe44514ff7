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
from typing import Optional, Tuple

import click
from config import config
from engine import ArchitectureTag
from evaluation import AXIOMS, SuiteConfig, run_axiom_suite
from exceptions import EXIT_RUNTIME, EXIT_VALIDATION, AttribkitException
from pydantic import ValidationError
from runs.logging import stage
from utils import __print_json, __print_yaml, fail, write_json

from .run_config import RunConfig, json_option, seed_option, start_run, threads_option, title_option


@click.command()
@click.option(
    "--suite",
    "suites",
    multiple=True,
    type=click.Choice(("all",) + AXIOMS),
    default=("all",),
    show_default=True,
    help="Axiom to check (repeatable)",
)
@click.option(
    "--arch",
    type=click.Choice([tag.value for tag in ArchitectureTag]),
    default=ArchitectureTag.TEMPORAL.value,
    show_default=True,
)
@click.option("--channels", default=4, show_default=True, type=int)
@click.option("--length", default=16, show_default=True, type=int)
@click.option("--steps", default=config.defaults.ig_steps, show_default=True, type=int, help="IG steps")
@click.option("--samples", default=config.defaults.ss_samples, show_default=True, type=int, help="SS draws")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="Axiom report JSON to write")
@seed_option
@threads_option
@title_option
@json_option
def axioms(
    suites: Tuple[str, ...],
    arch: str,
    channels: int,
    length: int,
    steps: int,
    samples: int,
    output: Optional[str],
    seed: int,
    threads: Optional[int],
    title: str,
    json: bool = False,
) -> None:
    """Check completeness, dummy, linearity, symmetry and implementation invariance on a seeded model"""
    selected = list(AXIOMS) if "all" in suites else list(dict.fromkeys(suites))
    try:
        run = RunConfig(
            subcommand="axioms",
            outputs={"report": output} if output else {},
            seed=seed,
            ig_steps=steps,
            ss_samples=samples,
            threads=threads,
        )
        suite = SuiteConfig(
            architecture=ArchitectureTag(arch),
            seed=seed,
            n_channels=channels,
            length=length,
            ig_steps=steps,
            ss_samples=samples,
            suites=selected,
        )
    except ValidationError as e:
        raise fail(f"Invalid parameters:\n{e}", EXIT_VALIDATION)
    log_path = start_run(run, title)

    try:
        stage(f"Running {', '.join(selected)} on a {arch} model")
        results = run_axiom_suite(suite, threads)
        if output:
            write_json(output, {"run": run.artifact_metadata(), "results": [result.dict() for result in results]})
    except ValidationError as e:
        raise fail(f"Invalid parameters:\n{e}", EXIT_VALIDATION)
    except AttribkitException as e:
        raise fail(str(e), EXIT_VALIDATION)
    except OSError as e:
        raise fail(f"Could not write the axiom report: {e}", EXIT_RUNTIME)

    if json:
        __print_json(results)
    else:
        __print_yaml(results)

    failures = [result for result in results if not result.acceptable]
    stage(f"{len(results) - len(failures)}/{len(results)} checks as expected")
    click.echo(f"Log output in: '{log_path}'")
    if failures:
        raise fail(f"{len(failures)} axiom check(s) failed", EXIT_VALIDATION)
