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
from evaluation import CostParams, cost_report
from exceptions import EXIT_RUNTIME, EXIT_VALIDATION
from pydantic import ValidationError
from utils import __print_json, __print_yaml, fail, write_json

from .run_config import json_option


@click.command()
@click.option("--m", "ig_steps", default=100, show_default=True, type=int, help="IG steps per record")
@click.option("--records", "n_records", default=400, show_default=True, type=int, help="Records to explain")
@click.option("--sensors", "n_sensors", default=61, show_default=True, type=int, help="Sensors (channel features)")
@click.option("--evals", "ss_evals", default=500, show_default=True, type=int, help="SS forward passes per sensor")
@click.option("--k", "k_compensation", default=10, show_default=True, type=int, help="Compensation references")
@click.option("--backprop-ratio", default=1.0, show_default=True, type=float, help="Backpropagation cost in forwards")
@click.option("--include-reference-ig", is_flag=True, help="Also count the IG passes on the references")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="Cost report JSON to write")
@json_option
def cost(
    ig_steps: int,
    n_records: int,
    n_sensors: int,
    ss_evals: int,
    k_compensation: int,
    backprop_ratio: float,
    include_reference_ig: bool,
    output: Optional[str],
    json: bool = False,
) -> None:
    """Model evaluation counts of IG, compensated IG and Shapley sampling over a dataset"""
    try:
        params = CostParams(
            ig_steps=ig_steps,
            n_records=n_records,
            n_sensors=n_sensors,
            ss_evals_per_sensor=ss_evals,
            k_compensation=k_compensation,
            backprop_cost_ratio=backprop_ratio,
            include_reference_ig=include_reference_ig,
        )
    except ValidationError as e:
        raise fail(f"Invalid parameters:\n{e}", EXIT_VALIDATION)

    report = cost_report(params)
    if output:
        try:
            write_json(output, report)
        except OSError as e:
            raise fail(f"Could not write the cost report: {e}", EXIT_RUNTIME)
    if json:
        __print_json(report)
    else:
        __print_yaml(report)
