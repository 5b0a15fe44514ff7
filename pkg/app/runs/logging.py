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
import os
import sys

from config import config
from loguru import logger

# Custom level for the one-line-per-stage progress log of the commands
STAGE_LEVEL = "STAGE"
logger.level(STAGE_LEVEL, no=21, icon="▶", color="<cyan>")


def configure_logger_for_run(command: str, title: str) -> str:
    # Reset (Remove all sinks from logger)
    logger.remove()

    log_path = os.path.join(config.log_config.output_log_path, f"{command}_{title}.log")

    logger.add(log_path, enqueue=True, format=config.log_config.format)
    logger.add(sys.stderr, level=STAGE_LEVEL, format=config.log_config.format)

    return log_path


def stage(message: str) -> None:
    logger.log(STAGE_LEVEL, message)
