import math

import numpy as np
import pytest

from dimwit import linalg
from dimwit.behaviour import Scenario, dimension_lower_bound, validate_behaviour
from dimwit.classical import (
    DeterministicStrategy,
    classical_witness_max,
    deterministic_behaviour,
    enumerate_vertices,
    strategy_value,
)
from dimwit.errors import DomainError, SizeError, ValidationError
from dimwit.qrac import (
    RacParams,
    average_success,
    optimal_qrac_model,
    rac_bound,
    rac_index_matrix,
    rac_isometry,
    rac_shift_constant,
    rac_witness,
    worst_case_success,
)
from dimwit.quantum import quantum_behaviour, random_model

F22 = np.array([[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]])


def uniform(p):
    return validate_behaviour(p.scenario, np.full(p.scenario.shape, 1 / p.m))


def test_params_validation():
    with pytest.raises(DomainError):
        RacParams(1, 2)
    with pytest.raises(DomainError):
        RacParams(2, 0)
    assert RacParams(3, 2).scenario == Scenario(9, 2, 3)


def test_f21_is_identity():
    np.testing.assert_array_equal(rac_index_matrix(RacParams(2, 1)), np.eye(2))


@pytest.mark.parametrize("method", ["inductive", "direct"])
def test_f22_golden(method):
    np.testing.assert_array_equal(rac_index_matrix(RacParams(2, 2), method), F22)


@pytest.mark.parametrize("m, n", [(2, 3), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_direct_equals_inductive(m, n):
    p = RacParams(m, n)
    F = rac_index_matrix(p)
    np.testing.assert_array_equal(F, rac_index_matrix(p, "direct"))
    np.testing.assert_array_equal(F.sum(axis=1), n)


def test_index_matrix_guard():
    with pytest.raises(SizeError):
        rac_index_matrix(RacParams(10, 8))


def test_witness_uniform_and_deterministic():
    p = RacParams(2, 2)
    assert rac_witness(p).evaluate(uniform(p)) == pytest.approx(0.5)
    # d = 1 (no message): every fixed answer is right half of the time.
    assert classical_witness_max(rac_witness(p), 1)[0] == pytest.approx(0.5)


def test_best_classical_two_to_one_code():
    p = RacParams(2, 2)
    G = rac_witness(p)
    full = max(strategy_value(G, s) for s in enumerate_vertices(p.scenario, 2))
    value, _ = classical_witness_max(G, 2)
    assert full == pytest.approx(0.75, abs=1e-12)
    assert value == pytest.approx(full, abs=1e-12)
    assert value <= rac_bound(2, 2, 2)


def test_isometry_22():
    p = RacParams(2, 2)
    a = rac_shift_constant(2, 2)
    assert a == pytest.approx(0.1464466, abs=1e-7)
    H = rac_isometry(p)
    np.testing.assert_allclose(sorted(set(np.round(H.ravel(), 7))), [-0.1035534, 0.6035534], atol=1e-7)
    np.testing.assert_allclose(np.linalg.eigvalsh(H.T @ H), [0, 1, 1, 1], atol=1e-9)
    assert linalg.operator_norm(H) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("m, n, rank", [(3, 2, 5), (2, 3, 4)])
def test_isometry_rank(m, n, rank):
    H = rac_isometry(RacParams(m, n))
    HtH = H.T @ H
    assert np.trace(HtH) == pytest.approx(1 + n * (m - 1), abs=1e-9)
    assert linalg.matrix_rank(HtH) == rank


@pytest.mark.parametrize("m, n", [(2, 2), (3, 2), (2, 4), (4, 3)])
def test_isometry_gram_entries(m, n):
    H = rac_isometry(RacParams(m, n))
    gram = H.T @ H
    diag = 1 - 1 / m + 1 / (m * n)
    same = -1 / m + 1 / (m * n)
    other = 1 / (m * n)
    for i in range(m * n):
        for j in range(m * n):
            if i == j:
                want = diag
            elif i // m == j // m:
                want = same
            else:
                want = other
            assert gram[i, j] == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize(
    "m, n, d, value",
    [
        (2, 2, 2, 0.5 + 1 / (2 * math.sqrt(2))),
        (2, 3, 2, 0.5 + 1 / (2 * math.sqrt(3))),
        (2, 2, 1, 0.5 + (math.sqrt(2) - 1) / (2 * math.sqrt(2))),
    ],
)
def test_rac_bound(m, n, d, value):
    assert rac_bound(m, n, d) == pytest.approx(value, abs=1e-15)


def test_rac_bound_values_printed():
    assert rac_bound(2, 2, 2) == pytest.approx(0.8535534, abs=1e-7)
    assert rac_bound(2, 3, 2) == pytest.approx(0.7886751, abs=1e-7)
    assert rac_bound(2, 2, 1) == pytest.approx(0.6464466, abs=1e-7)
    assert rac_bound(2, 1, 4) > 1  # vacuous, reported raw


def test_rac_bound_domain():
    with pytest.raises(DomainError):
        rac_bound(2, 2, 0)


def test_success_measures():
    p = RacParams(2, 2)
    assert average_success(uniform(p), p) == 0.5
    assert worst_case_success(uniform(p), p) == 0.5
    full = RacParams(2, 2)
    s = DeterministicStrategy(d=4, f=(0, 1, 2, 3), g=((0, 0), (0, 1), (1, 0), (1, 1)))
    P = deterministic_behaviour(s, full.scenario)
    assert average_success(P, p) == 1.0
    wrong = DeterministicStrategy(d=4, f=(0, 1, 2, 3), g=((0, 0), (0, 1), (1, 0), (1, 0)))
    assert worst_case_success(deterministic_behaviour(wrong, p.scenario), p) == 0.0


def test_average_success_equals_witness(rng):
    p = RacParams(3, 2)
    t = rng.random((9, 2, 3))
    P = validate_behaviour(p.scenario, t / t.sum(axis=2, keepdims=True))
    assert average_success(P, p) == pytest.approx(rac_witness(p).evaluate(P), abs=1e-12)


def test_scenario_mismatch():
    with pytest.raises(ValidationError):
        average_success(uniform(RacParams(2, 2)), RacParams(3, 2))


@pytest.mark.parametrize("n, p_opt, norm", [(2, 0.8535534, 4.0), (3, 0.7886751, math.sqrt(48))])
def test_optimal_models(n, p_opt, norm):
    p = RacParams(2, n)
    P = quantum_behaviour(optimal_qrac_model(n))
    assert average_success(P, p) == pytest.approx(rac_bound(2, n, 2), abs=1e-10)
    assert average_success(P, p) == pytest.approx(p_opt, abs=1e-7)
    assert worst_case_success(P, p) == pytest.approx(rac_bound(2, n, 2), abs=1e-10)
    rep = dimension_lower_bound(P)
    assert rep.trace_norm == pytest.approx(norm, abs=1e-9)
    assert rep.dimension_lower_bound == 2


def test_optimal_model_unsupported():
    with pytest.raises(DomainError):
        optimal_qrac_model(4)


def test_random_models_respect_bound(rng):
    for m, n in [(2, 2), (2, 3), (3, 2)]:
        p = RacParams(m, n)
        for d in (2, 3):
            for _ in range(10):
                P = quantum_behaviour(random_model(d, p.num_strings, n, m, rng))
                assert average_success(P, p) <= rac_bound(m, n, d) + 1e-8
