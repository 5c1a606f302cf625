import math

import numpy as np
import pytest

from dimwit import linalg
from dimwit.behaviour import Scenario, dimension_lower_bound
from dimwit.errors import ValidationError
from dimwit.qrac import RacParams, average_success, optimal_qrac_model
from dimwit.quantum import (
    QuantumModel,
    helstrom_measurement,
    helstrom_success,
    model_dimension,
    pure_state,
    quantum_behaviour,
    random_model,
    random_pure_state,
)
from dimwit.statedisc import closed_form_behaviour, discrimination_model, fourier_states

KET0 = pure_state([1, 0])
KET1 = pure_state([0, 1])


def test_uniform_behaviour_from_trivial_povm():
    d, nb = 3, 3
    model = QuantumModel(
        dim=d,
        states=(np.eye(d) / d, np.eye(d) / d),
        povms=((np.eye(d) / nb,) * nb, (np.eye(d) / nb,) * nb),
    )
    P = quantum_behaviour(model, Scenario(2, 2, 3))
    np.testing.assert_allclose(P.matrix, np.full((2, 6), 1 / 3), atol=1e-15)


def test_qrac_model_behaviour():
    P = quantum_behaviour(optimal_qrac_model(2))
    assert average_success(P, RacParams(2, 2)) == pytest.approx(0.5 + 1 / (2 * math.sqrt(2)), abs=1e-12)


def test_discrimination_model_matches_closed_form():
    P = quantum_behaviour(discrimination_model(4, 2))
    np.testing.assert_allclose(P.matrix, closed_form_behaviour(4).matrix, atol=1e-10)


def test_scenario_mismatch():
    with pytest.raises(ValidationError):
        quantum_behaviour(optimal_qrac_model(2), Scenario(4, 2, 3))


@pytest.mark.parametrize(
    "bad, match",
    [
        (dict(states=(np.diag([0.5, 0.6]),)), "trace"),
        (dict(states=(np.diag([1.5, -0.5]),)), "positive"),
        (dict(states=(np.array([[0.5, 1.0], [0.0, 0.5]]),)), "Hermitian"),
        (dict(povms=((KET0, KET0),)), "identity"),
    ],
)
def test_model_invariants(bad, match):
    kw = dict(dim=2, states=(KET0,), povms=((KET0, KET1),))
    kw.update(bad)
    with pytest.raises(ValidationError, match=match):
        QuantumModel(**kw)


def test_model_dimension():
    m = QuantumModel(dim=3, states=(pure_state([1, 0, 0]),) * 2, povms=((np.eye(3),),))
    assert model_dimension(m) == 1
    m = QuantumModel(dim=2, states=(KET0, KET1), povms=((np.eye(2),),))
    assert model_dimension(m) == 2
    m = QuantumModel(dim=3, states=tuple(fourier_states(5, 3)), povms=((np.eye(3),),))
    assert model_dimension(m) == 3


def test_helstrom_identical_states():
    plus, minus = helstrom_measurement(KET0, KET0)
    np.testing.assert_allclose(plus, 0, atol=1e-15)
    np.testing.assert_allclose(minus, np.eye(2), atol=1e-15)
    assert helstrom_success(KET0, KET0) == 0.5


def test_helstrom_orthogonal():
    plus, minus = helstrom_measurement(KET0, KET1)
    np.testing.assert_allclose(plus, KET0, atol=1e-15)
    assert helstrom_success(KET0, KET1) == pytest.approx(1.0)


def test_helstrom_fourier_pair():
    states = fourier_states(4, 2)
    rho, sigma = states[0], states[1]
    plus, _ = helstrom_measurement(rho, sigma)
    success = 0.5 * (np.trace(rho @ plus).real + 1 - np.trace(sigma @ plus).real)
    expected = 0.5 * (1 + math.sin(math.pi / 4))
    assert success == pytest.approx(expected, abs=1e-12)
    assert helstrom_success(rho, sigma) == pytest.approx(expected, abs=1e-12)


def test_helstrom_dimension_mismatch():
    with pytest.raises(ValidationError):
        helstrom_measurement(KET0, np.eye(3) / 3)


def test_helstrom_pure_state_formula(rng):
    for dim in (2, 3, 4):
        for _ in range(20):
            psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            phi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            psi /= np.linalg.norm(psi)
            phi /= np.linalg.norm(phi)
            rho, sigma = np.outer(psi, psi.conj()), np.outer(phi, phi.conj())
            plus, minus = helstrom_measurement(rho, sigma)
            overlap = abs(np.vdot(psi, phi)) ** 2
            success = 0.5 * (np.trace(rho @ plus).real + np.trace(sigma @ minus).real)
            assert success == pytest.approx(0.5 * (1 + math.sqrt(1 - overlap)), abs=1e-10)
            np.testing.assert_allclose(plus + minus, np.eye(dim), atol=1e-12)
            assert linalg.hermitian_eig(minus)[0][-1] >= -1e-10
            assert linalg.hermitian_eig(plus)[0][-1] >= -1e-10


def test_random_models_obey_trace_norm_bound(rng):
    for dim in (2, 3, 4):
        for _ in range(15):
            model = random_model(dim, nx=5, ny=3, nb=2, rng=rng)
            P = quantum_behaviour(model)
            sc = P.scenario
            tn = linalg.trace_norm(P.matrix)
            assert tn**2 <= model_dimension(model) * sc.nx * sc.ny + 1e-6
            assert dimension_lower_bound(P).dimension_lower_bound <= dim


def test_model_round_trip(rng):
    model = random_model(2, 3, 2, 2, rng)
    again = QuantumModel.from_dict(model.to_dict())
    for a, b in zip(model.states, again.states):
        np.testing.assert_array_equal(a, b)


def test_random_pure_state(rng):
    rho = random_pure_state(3, rng)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert linalg.matrix_rank(rho.real) <= 2
