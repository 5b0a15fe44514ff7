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
from .axioms import (
    AXIOMS,
    AxiomResult,
    SuiteConfig,
    axiom_completeness,
    axiom_dummy,
    axiom_implementation_invariance,
    axiom_linearity,
    axiom_symmetry,
    completeness_tolerance,
    mirror_channel,
    run_axiom_suite,
    symmetric_instance,
    symmetric_setting,
)
from .comparison import (
    TABLE_METHODS,
    ComparisonConfig,
    RecordRho,
    SensorRow,
    SpearmanReport,
    SpearmanRow,
    TruthKind,
    accuracy,
    comparison_table,
    report_document,
    write_sensor_csv,
    write_table_csv,
)
from .cost import COST_METHODS, CostParams, cost, cost_ratio, cost_report
from .methods import MethodContext, attribute, delta_for
from .spearman import spearman
