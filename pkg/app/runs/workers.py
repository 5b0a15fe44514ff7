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
from typing import Callable, List, Optional, Sequence, TypeVar

import numpy as np
from config import config
from joblib import Parallel, delayed

T = TypeVar("T")
R = TypeVar("R")

# Rows per model evaluation. Fixed so that results never depend on the thread count.
CHUNK_ROWS = 2048


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is None:
        threads = config.defaults.threads
    if threads is None:
        threads = os.cpu_count() or 1
    return max(1, int(threads))


def run_ordered(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """Apply fn to every item on a thread pool, results in submission order."""
    n_jobs = resolve_threads(threads)
    if n_jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    return Parallel(n_jobs=n_jobs, prefer="threads")(delayed(fn)(item) for item in items)


def chunk_bounds(total: int, chunk: int) -> List[range]:
    return [range(start, min(start + chunk, total)) for start in range(0, total, chunk)]


def spawn_seeds(seed: int, count: int, stream: int = 0) -> List[int]:
    """Independent child seeds for per-item generators, reproducible from (seed, stream)."""
    children = np.random.SeedSequence([seed, stream]).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]
