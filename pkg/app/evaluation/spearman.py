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
from typing import Sequence, Union

import numpy as np
from exceptions import ShapeMismatchError, UndefinedCorrelationError
from scipy.stats import rankdata

ArrayLike = Union[Sequence[float], np.ndarray]


def spearman(a: ArrayLike, b: ArrayLike) -> float:
    """Pearson correlation of average ranks; ties share their mean rank."""
    left = np.asarray(a, dtype=np.float64).ravel()
    right = np.asarray(b, dtype=np.float64).ravel()
    if left.shape != right.shape:
        raise ShapeMismatchError("spearman inputs", left.shape, right.shape)
    if left.size < 2:
        raise UndefinedCorrelationError("rank correlation needs at least two values")
    left_ranks = rankdata(left, method="average")
    right_ranks = rankdata(right, method="average")
    if np.ptp(left_ranks) == 0 or np.ptp(right_ranks) == 0:
        raise UndefinedCorrelationError("rank correlation is undefined for a constant input")
    rho = np.corrcoef(left_ranks, right_ranks)[0, 1]
    return float(np.clip(rho, -1.0, 1.0))
