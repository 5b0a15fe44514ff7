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
from .export import save_attributions
from .features import aggregate_to_channels, feature_count, feature_map, reduce_to_granularity
from .integrated_gradients import integrated_gradients, path_integrated_gradients, zero_baseline
from .schemas import AttributionVector, Granularity, MethodTag, PathSpec, SSConfig
from .shapley import EXACT_FEATURE_LIMIT, exact_shapley, sampling_plan, shapley_sampling
