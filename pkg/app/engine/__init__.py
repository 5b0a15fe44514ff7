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
from .builders import (
    build_model,
    build_spatiotemporal_model,
    build_temporal_model,
    init_layers,
    linear_model,
    product_model,
)
from .model import Classifier, LinearCombination, Model, check_class_index, check_record, forward, input_gradient
from .schemas import ActivationKind, ArchitectureTag, Gradient, Layer, LayerKind, LayerSpec, Record
from .serialization import load_model, save_model
from .training import TrainingHyperParams, softmax_cross_entropy, train
from .transforms import (
    channel_silent,
    channels_exchangeable,
    factorize_dense_head,
    permute_hidden_units,
    silence_channel,
    symmetrize_channels,
)
