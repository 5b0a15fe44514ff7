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
import numpy as np
import pytest
from attribution import MethodTag, SSConfig
from engine import (
    ArchitectureTag,
    build_temporal_model,
    factorize_dense_head,
    permute_hidden_units,
    silence_channel,
)
from evaluation import (
    AXIOMS,
    MethodContext,
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
)
from exceptions import AxiomPreconditionError, InvalidParameterError
from numpy.testing import assert_array_equal

ALL_METHODS = [MethodTag.IG, MethodTag.SS, MethodTag.EXACT_SHAPLEY, MethodTag.CIG]


@pytest.fixture
def context(background):
    references = background[3:]
    return MethodContext(
        ig_steps=128,
        ss=SSConfig(samples_per_feature=200, background=background[:3], seed=5),
        references=references,
    )


def test_completeness_tolerance_scales_with_steps():
    assert completeness_tolerance(4096) == pytest.approx(1e-6)
    assert completeness_tolerance(2048) == pytest.approx(4e-6)


def test_completeness_holds_for_any_baseline(temporal, record, background):
    for baseline in (np.zeros((4, 16)), background[0].values):
        result = axiom_completeness(temporal, record, baseline, 4096)
        assert result.passed, result.details
        assert result.details["abs_error"] <= 1e-6


@pytest.mark.parametrize("method", ALL_METHODS)
def test_dummy(temporal, record, context, method):
    silenced = silence_channel(temporal, 2)
    result = axiom_dummy(silenced, record, method, 2, context)
    assert result.passed, result.details
    assert result.details["channel"] == 2


def test_dummy_requires_a_silent_channel(temporal, record, context):
    with pytest.raises(AxiomPreconditionError):
        axiom_dummy(temporal, record, MethodTag.IG, 2, context)


@pytest.mark.parametrize("method", ALL_METHODS)
def test_linearity(temporal, record, context, method):
    other = build_temporal_model(4, 16, 2, seed=8)
    result = axiom_linearity(temporal, other, 2.5, -1.0, record, method, context)
    assert result.passed, result.details


@pytest.mark.parametrize("method", ALL_METHODS)
def test_symmetry_in_an_exchangeable_setting(temporal, record, background, method):
    model, mirrored, sym_background, sym_references = symmetric_instance(
        temporal, record, background[:3], background[3:], 0, 1
    )
    context = MethodContext(
        ig_steps=128,
        ss=SSConfig(samples_per_feature=400, background=sym_background, seed=5),
        references=sym_references,
    )
    result = axiom_symmetry(model, mirrored, method, context)
    assert result.expected_to_hold
    assert result.passed, result.details


def test_asymmetric_baseline_breaks_symmetry_without_counting_against_it(temporal, record, background):
    model, mirrored, _, _ = symmetric_instance(temporal, record, background, [], 0, 1)
    baseline = np.zeros((4, 16))
    baseline[0], baseline[1] = 1.0, -1.0
    context = MethodContext(ig_steps=128, baseline=baseline, baseline_descriptor="asymmetric")
    result = axiom_symmetry(model, mirrored, MethodTag.IG, context)
    assert not result.passed
    assert not result.expected_to_hold
    assert result.acceptable


def test_symmetry_requires_equal_channels(temporal, record):
    with pytest.raises(AxiomPreconditionError):
        axiom_symmetry(temporal, record, MethodTag.IG, MethodContext())
    with pytest.raises(InvalidParameterError):
        axiom_symmetry(temporal, record, MethodTag.IG, MethodContext(), p=1, q=1)


def test_mirror_channel_copies_values(record):
    mirrored = mirror_channel(record, 2, 0)
    assert_array_equal(mirrored.values[0], record.values[2])
    assert_array_equal(mirrored.values[1:], record.values[1:])


def test_implementation_invariance(temporal, record):
    context = MethodContext(ig_steps=128)
    for equivalent in (permute_hidden_units(temporal, 0, [3, 1, 0, 2]), factorize_dense_head(temporal, 1)):
        result = axiom_implementation_invariance(temporal, equivalent, record, context)
        assert result.passed, result.details


def test_implementation_invariance_needs_equivalent_models(temporal, record):
    with pytest.raises(AxiomPreconditionError):
        axiom_implementation_invariance(temporal, build_temporal_model(4, 16, 2, seed=99), record, MethodContext())


def test_temporal_suite_passes():
    results = run_axiom_suite(SuiteConfig(seed=3, ig_steps=128, ss_samples=300), threads=1)
    assert {result.axiom for result in results} == set(AXIOMS)
    failures = [result for result in results if not result.acceptable]
    assert not failures, [(r.axiom, r.method, r.details) for r in failures]
    skewed = [result for result in results if result.method == "ig (asymmetric baseline)"]
    assert len(skewed) == 1 and not skewed[0].expected_to_hold


def test_channel_mixing_models_are_not_expected_to_be_symmetric():
    suite = SuiteConfig(architecture=ArchitectureTag.SPATIOTEMPORAL, ig_steps=64, ss_samples=100, suites=["symmetry"])
    results = run_axiom_suite(suite, threads=1)
    assert results
    assert all(not result.expected_to_hold for result in results)


def test_unknown_suite_is_rejected():
    with pytest.raises(InvalidParameterError):
        run_axiom_suite(SuiteConfig(suites=["monotonicity"]))
