"""Quantum preparations and measurements, and the behaviours they generate."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .behaviour import Behaviour, Scenario, validate_behaviour
from .errors import ValidationError

MODEL_TOL = 1e-10
ZERO_EIG_TOL = 1e-10
RANK_RTOL = 1e-8


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _check_psd(M: np.ndarray, what: str) -> None:
    if not linalg.is_hermitian(M, MODEL_TOL):
        raise ValidationError(f"{what} is not Hermitian")
    w, _ = linalg.hermitian_eig(M)
    if w.size and w[-1] < -MODEL_TOL:
        raise ValidationError(f"{what} is not positive semidefinite (min eigenvalue {w[-1]:.3g})")


@dataclass(frozen=True, eq=False)
class QuantumModel:
    """States ``rho_x`` and, for each question ``y``, a POVM ``{Pi_b^y}``.

    All invariants (Hermiticity, positivity, unit trace, completeness) are
    checked on construction.
    """

    dim: int
    states: tuple = field(repr=False)
    povms: tuple = field(repr=False)

    def __post_init__(self):
        dim = self.dim
        if isinstance(dim, bool) or int(dim) != dim or dim < 1:
            raise ValidationError(f"dim must be a positive integer, got {dim!r}")
        dim = int(dim)
        object.__setattr__(self, "dim", dim)
        if len(self.states) == 0:
            raise ValidationError("model needs at least one state")
        if len(self.povms) == 0:
            raise ValidationError("model needs at least one measurement")
        states = []
        for x, rho in enumerate(self.states):
            r = linalg.as_complex_matrix(rho, f"state {x}")
            if r.shape != (dim, dim):
                raise ValidationError(f"state {x} has shape {r.shape}, expected {(dim, dim)}")
            _check_psd(r, f"state {x}")
            tr = np.trace(r)
            if abs(tr - 1.0) > MODEL_TOL:
                raise ValidationError(f"state {x} has trace {tr.real:.12g}, expected 1")
            states.append(_frozen(r))
        eye = np.eye(dim)
        povms = []
        nb = len(self.povms[0])
        for y, povm in enumerate(self.povms):
            if len(povm) != nb:
                raise ValidationError(f"measurement {y} has {len(povm)} outcomes, expected {nb}")
            effects = []
            for b, E in enumerate(povm):
                e = linalg.as_complex_matrix(E, f"effect ({y},{b})")
                if e.shape != (dim, dim):
                    raise ValidationError(f"effect ({y},{b}) has shape {e.shape}")
                _check_psd(e, f"effect Pi_{b}^{y}")
                effects.append(_frozen(e))
            if np.max(np.abs(sum(effects) - eye)) > MODEL_TOL:
                raise ValidationError(f"measurement {y} does not sum to the identity")
            povms.append(tuple(effects))
        object.__setattr__(self, "states", tuple(states))
        object.__setattr__(self, "povms", tuple(povms))

    @property
    def scenario(self) -> Scenario:
        return Scenario(len(self.states), len(self.povms), len(self.povms[0]))

    def to_dict(self) -> dict:
        def enc(M):
            return [[[float(v.real), float(v.imag)] for v in row] for row in M]

        return {
            "dim": self.dim,
            "states": [enc(r) for r in self.states],
            "povms": [[enc(E) for E in povm] for povm in self.povms],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "QuantumModel":
        def dec(M, what):
            a = np.array(M, dtype=float)
            if a.ndim != 3 or a.shape[2] != 2:
                raise ValidationError(f"{what} must be a matrix of [re, im] pairs")
            return a[..., 0] + 1j * a[..., 1]

        try:
            states = [dec(r, f"state {x}") for x, r in enumerate(doc["states"])]
            povms = [
                [dec(E, f"effect ({y},{b})") for b, E in enumerate(p)]
                for y, p in enumerate(doc["povms"])
            ]
            return cls(dim=doc["dim"], states=tuple(states), povms=tuple(povms))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed model document: {exc}") from None


def quantum_behaviour(model: QuantumModel, scenario: Scenario | None = None) -> Behaviour:
    """``P(b|xy) = tr(rho_x Pi_b^y)``."""
    sc = model.scenario
    if scenario is not None and scenario != sc:
        raise ValidationError(f"model scenario {sc} does not match {scenario}")
    rho = np.stack(model.states)
    effects = np.stack([np.stack(p) for p in model.povms])
    # tr(rho E) = sum_ij rho_ij E_ji
    t = np.einsum("xij,ybji->xyb", rho, effects)
    if np.max(np.abs(t.imag)) > MODEL_TOL:
        raise ValidationError("behaviour has non-negligible imaginary parts")
    return validate_behaviour(sc, t.real)


def model_dimension(model: QuantumModel) -> int:
    """Dimension of the joint support of the prepared states."""
    total = sum(model.states)
    w, _ = linalg.hermitian_eig(total)
    if w[0] <= 0:
        return 0
    return int(np.count_nonzero(w > RANK_RTOL * w[0]))


def helstrom_measurement(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    """Optimal equal-prior POVM ``(Pi_plus, Pi_minus)`` for telling ``rho`` from ``sigma``.

    ``Pi_plus`` projects onto the strictly positive eigenspace of
    ``rho - sigma``; null directions go to ``Pi_minus``.
    """
    r = linalg.as_complex_matrix(rho, "rho")
    s = linalg.as_complex_matrix(sigma, "sigma")
    if r.shape != s.shape:
        raise ValidationError(f"dimension mismatch: {r.shape} vs {s.shape}")
    w, Q = linalg.hermitian_eig(r - s)
    V = Q[:, w > ZERO_EIG_TOL]
    plus = V @ V.conj().T
    minus = np.eye(r.shape[0]) - plus
    return plus, minus


def helstrom_success(rho, sigma) -> float:
    """Optimal equal-prior success probability ``1/2 + ||rho - sigma||_1 / 4``."""
    r = linalg.as_complex_matrix(rho, "rho")
    s = linalg.as_complex_matrix(sigma, "sigma")
    if r.shape != s.shape:
        raise ValidationError(f"dimension mismatch: {r.shape} vs {s.shape}")
    w, _ = linalg.hermitian_eig(r - s)
    return 0.5 + 0.25 * float(np.abs(w).sum())


def pure_state(psi: Sequence[complex]) -> np.ndarray:
    v = np.asarray(psi, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


# Random generators used by property tests and the soundness checks.

def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return pure_state(v)


def random_projective_measurement(dim: int, nb: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Eigenprojectors of a random Hermitian matrix, dealt round-robin to ``nb`` outcomes."""
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    _, Q = np.linalg.eigh(A + A.conj().T)
    effects = [np.zeros((dim, dim), dtype=complex) for _ in range(nb)]
    for k in range(dim):
        q = Q[:, k]
        effects[k % nb] += np.outer(q, q.conj())
    return effects


def random_model(
    dim: int, nx: int, ny: int, nb: int, rng: np.random.Generator
) -> QuantumModel:
    states = tuple(random_pure_state(dim, rng) for _ in range(nx))
    povms = tuple(tuple(random_projective_measurement(dim, nb, rng)) for _ in range(ny))
    return QuantumModel(dim=dim, states=states, povms=povms)
