"""Random access codes: index matrix, witness, partial isometry and success bounds.

In an ``(m, n)`` random access code the sender holds ``x = x_1 ... x_n``
with ``x_k`` in ``{0..m-1}`` and the receiver must output ``x_y`` for a
question ``y``. Row ``x`` of every matrix here encodes the string with
``x_1`` as the most significant base-``m`` digit; column ``y*m + b`` holds
answer ``b`` to question ``y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .behaviour import Behaviour, Scenario, Witness
from .errors import DomainError, SizeError, ValidationError
from .quantum import QuantumModel

MAX_ENTRIES = 10**8

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class RacParams:
    m: int
    n: int

    def __post_init__(self):
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 2:
            raise DomainError(f"alphabet size m must be an integer >= 2, got {self.m!r}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"string length n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))

    @property
    def num_strings(self) -> int:
        return self.m**self.n

    @property
    def scenario(self) -> Scenario:
        return Scenario(self.num_strings, self.n, self.m)

    def digits(self) -> np.ndarray:
        """``(m**n, n)`` table of the symbols ``x_1..x_n`` of every row index."""
        idx = np.arange(self.num_strings)
        powers = self.m ** np.arange(self.n - 1, -1, -1)
        return (idx[:, None] // powers[None, :]) % self.m


def _guard(p: RacParams) -> None:
    entries = p.num_strings * p.m * p.n
    if entries > MAX_ENTRIES:
        raise SizeError(entries, MAX_ENTRIES, f"F({p.m},{p.n}) entries")


def _index_direct(p: RacParams) -> np.ndarray:
    X = p.digits()
    F = np.zeros((p.num_strings, p.n * p.m))
    rows = np.repeat(np.arange(p.num_strings), p.n)
    cols = (np.arange(p.n)[None, :] * p.m + X).ravel()
    F[rows, cols] = 1.0
    return F


def _index_inductive(m: int, n: int) -> np.ndarray:
    F = np.eye(m)
    for k in range(2, n + 1):
        block = m ** (k - 1)
        left = np.kron(np.eye(m), np.ones((block, 1)))
        F = np.hstack([left, np.tile(F, (m, 1))])
    return F


def rac_index_matrix(p: RacParams, method: str = "inductive") -> np.ndarray:
    """The 0/1 matrix ``F(m, n)`` with ``F[x, (y, b)] = [b == x_y]``.

    ``method="inductive"`` stacks ``m`` blocks ``[e_i (x) 1 | F(m, n-1)]``
    starting from ``F(m, 1) = I_m``; ``method="direct"`` fills the
    definition entry by entry. Both give the same matrix.
    """
    _guard(p)
    if method == "inductive":
        return _index_inductive(p.m, p.n)
    if method == "direct":
        return _index_direct(p)
    raise ValueError(f"unknown method {method!r}")


def rac_witness(p: RacParams) -> Witness:
    """``G(m, n) = F(m, n) / (n m**n)``; ``<P, G>`` is the average success probability."""
    return Witness(p.scenario, rac_index_matrix(p) / (p.n * p.num_strings))


def rac_shift_constant(m: int, n: int) -> float:
    """``a_mn = 1/m - 1/(m sqrt(n))``, the offset that turns ``F`` into a partial isometry."""
    return 1.0 / m - 1.0 / (m * math.sqrt(n))


def rac_isometry(p: RacParams) -> np.ndarray:
    """``H = (F - a_mn J) / sqrt(m**(n-1))`` with ``J`` the all-ones matrix.

    ``H`` is a partial isometry: ``H^T H`` has eigenvalues in ``{0, 1}`` with
    ``1 + n(m-1)`` of them equal to one.
    """
    F = rac_index_matrix(p)
    a = rac_shift_constant(p.m, p.n)
    return (F - a) / math.sqrt(p.m ** (p.n - 1))


def rac_uniform_shift(p: RacParams) -> np.ndarray:
    """Shift table ``alpha_xy = -a_mn / (n m**n)`` mapping ``rac_witness`` onto a multiple of ``H``."""
    a = rac_shift_constant(p.m, p.n)
    return np.full((p.num_strings, p.n), -a / (p.n * p.num_strings))


def rac_bound(m: int, n: int, d: int) -> float:
    """Upper bound ``1/m + (sqrt(md) - 1)/(m sqrt(n))`` on the average success probability.

    Not clamped: values >= 1 mean the bound is vacuous.
    """
    for name, v, lo in (("m", m, 2), ("n", n, 1), ("d", d, 1)):
        if isinstance(v, bool) or int(v) != v or v < lo:
            raise DomainError(f"{name} must be an integer >= {lo}, got {v!r}")
    return 1.0 / m + (math.sqrt(m * d) - 1.0) / (m * math.sqrt(n))


def _check_scenario(P: Behaviour, p: RacParams) -> None:
    if P.scenario != p.scenario:
        raise ValidationError(
            f"behaviour scenario {P.scenario} does not match the ({p.m},{p.n}) code {p.scenario}"
        )


def _correct_probs(P: Behaviour, p: RacParams) -> np.ndarray:
    _check_scenario(P, p)
    X = p.digits()
    t = P.as_tensor()
    return t[np.arange(p.num_strings)[:, None], np.arange(p.n)[None, :], X]


def average_success(P: Behaviour, p: RacParams) -> float:
    return float(_correct_probs(P, p).mean())


def worst_case_success(P: Behaviour, p: RacParams) -> float:
    return float(_correct_probs(P, p).min())


def optimal_qrac_model(n: int) -> QuantumModel:
    """Qubit 2->1 (n=2) or 3->1 (n=3) code reaching ``rac_bound(2, n, 2)``.

    String ``x`` is encoded in the pure state with Bloch vector
    ``((-1)**x_1, ..., (-1)**x_n) / sqrt(n)``; question ``y`` measures the
    Pauli operator of axis ``y`` and maps eigenvalue +1 to answer 0.
    """
    if n not in (2, 3):
        raise DomainError(f"optimal qubit codes are provided for n in {{2, 3}}, got {n!r}")
    p = RacParams(2, n)
    eye = np.eye(2, dtype=complex)
    states = []
    for bits in p.digits():
        r = (1.0 - 2.0 * bits) / math.sqrt(n)
        states.append(0.5 * (eye + sum(rk * s for rk, s in zip(r, _PAULI))))
    povms = tuple(
        (0.5 * (eye + _PAULI[y]), 0.5 * (eye - _PAULI[y])) for y in range(n)
    )
    return QuantumModel(dim=2, states=tuple(states), povms=povms)
