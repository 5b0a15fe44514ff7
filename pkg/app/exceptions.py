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
from typing import Optional, Sequence

EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


class AttribkitException(Exception):
    """Base class"""


class ShapeMismatchError(AttribkitException, ValueError):
    def __init__(self, what: str, expected: Sequence[int], actual: Sequence[int]) -> None:
        self.what = what
        self.expected = tuple(expected)
        self.actual = tuple(actual)

    def __str__(self) -> str:
        return f"Shape mismatch for {self.what}: expected {list(self.expected)}, got {list(self.actual)}"


class ClassIndexError(AttribkitException, IndexError):
    def __init__(self, class_index: int, n_classes: int) -> None:
        self.class_index = class_index
        self.n_classes = n_classes

    def __str__(self) -> str:
        return f"Class index {self.class_index} out of range for a model with {self.n_classes} classes"


class InvalidParameterError(AttribkitException, ValueError):
    pass


class EmptyBackgroundError(AttribkitException, ValueError):
    def __str__(self) -> str:
        return "Background set is empty; Shapley estimates need at least one background record"


class TooManyFeaturesError(AttribkitException, ValueError):
    def __init__(self, n_features: int, limit: int) -> None:
        self.n_features = n_features
        self.limit = limit

    def __str__(self) -> str:
        return (
            f"Exact Shapley enumeration refused for {self.n_features} features (limit {self.limit}); "
            "use Shapley sampling instead"
        )


class GranularityMismatchError(AttribkitException, ValueError):
    def __init__(self, expected: str, actual: str) -> None:
        self.expected = expected
        self.actual = actual

    def __str__(self) -> str:
        return f"Granularity mismatch: delta is '{self.expected}', requested '{self.actual}'"


class TrainingDivergedError(AttribkitException, ArithmeticError):
    def __init__(self, epoch: int, batch: int, loss: float) -> None:
        self.epoch = epoch
        self.batch = batch
        self.loss = loss

    def __str__(self) -> str:
        return f"Non-finite loss {self.loss} at epoch {self.epoch}, batch {self.batch}; lower the learning rate"


class ArtifactParseError(AttribkitException, ValueError):
    def __init__(self, artifact: str, field: Optional[str], reason: str) -> None:
        self.artifact = artifact
        self.field = field
        self.reason = reason

    def __str__(self) -> str:
        location = f" at field '{self.field}'" if self.field else ""
        return f"Failed to parse {self.artifact}{location}: {self.reason}"


class ArtifactValidationError(ArtifactParseError):
    def __str__(self) -> str:
        location = f" at field '{self.field}'" if self.field else ""
        return f"Invalid {self.artifact}{location}: {self.reason}"


class UndefinedCorrelationError(AttribkitException, ValueError):
    pass


class AxiomPreconditionError(AttribkitException, ValueError):
    pass
