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
from typing import Any

import click
from commands import attribute, axioms, compare, cost, delta, gen, train
from exceptions import EXIT_RUNTIME, EXIT_VALIDATION
from loguru import logger
from utils import fail


class RootGroup(click.Group):
    """Usage errors (unknown flags, bad values) exit with the validation code instead of click's 2.
    Anything a command lets escape is a runtime failure."""

    def make_context(self, *args: Any, **kwargs: Any) -> click.Context:
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as e:
            e.exit_code = EXIT_VALIDATION
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_VALIDATION
            raise
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except Exception as e:
            logger.exception("Command failed")
            raise fail(f"{type(e).__name__}: {e}", EXIT_RUNTIME)


@click.group(cls=RootGroup)
@click.version_option(version="0.1.0")
def root() -> None:
    """Compensated integrated gradients for multichannel time-series classifiers"""
    pass


root.add_command(gen)
root.add_command(train)
root.add_command(attribute)
root.add_command(delta)
root.add_command(compare)
root.add_command(axioms)
root.add_command(cost)


if __name__ == "__main__":
    root()
