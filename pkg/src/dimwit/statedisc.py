"""State-discrimination witnesses.

The sender holds ``x`` in ``{1..N}``; the receiver gets a pair ``y < z`` and
must say which of the two equals ``x``, answering ``+1`` for ``x = y`` and
``-1`` for ``x = z``. Storage is 0-based: pairs are enumerated
lexicographically and outcome index 0 means ``+1``. Formulas below use the
1-based labels.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .behaviour import Behaviour, Scenario, Witness, validate_behaviour
from .errors import DomainError, ValidationError
from .quantum import QuantumModel, helstrom_measurement, pure_state

ASYMPTOTIC_RATIO = 0.5 + 4.0 / math.pi**2


def _check_N(N, lo: int = 3) -> int:
    if isinstance(N, bool) or int(N) != N or N < lo:
        raise DomainError(f"N must be an integer >= {lo}, got {N!r}")
    return int(N)


@dataclass(frozen=True)
class DiscriminationScenario:
    N: int

    def __post_init__(self):
        object.__setattr__(self, "N", _check_N(self.N))

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """1-based pairs ``(y, z)``, ``y < z``, in lexicographic order."""
        return tuple((y, z) for y in range(1, self.N + 1) for z in range(y + 1, self.N + 1))

    @property
    def scenario(self) -> Scenario:
        return Scenario(self.N, self.N * (self.N - 1) // 2, 2)

    def pair_index(self, y: int, z: int) -> int:
        """0-based question index of the 1-based pair ``(y, z)``."""
        if not 1 <= y < z <= self.N:
            raise ValidationError(f"invalid pair ({y}, {z}) for N = {self.N}")
        # pairs with first element < y come first
        return (y - 1) * self.N - (y - 1) * y // 2 + (z - y - 1)

    def pair_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        yz = np.array(self.pairs, dtype=float)
        return yz[:, 0], yz[:, 1]


def _phase_table(N: int) -> np.ndarray:
    """``sin(pi (2x - y - z) / N)`` for every input ``x`` (rows) and pair (columns)."""
    ds = DiscriminationScenario(N)
    y, z = ds.pair_arrays()
    x = np.arange(1, N + 1, dtype=float)[:, None]
    return np.sin(np.pi * (2.0 * x - y[None, :] - z[None, :]) / N)


def _interleave(plus: np.ndarray, minus: np.ndarray) -> np.ndarray:
    out = np.empty((plus.shape[0], 2 * plus.shape[1]))
    out[:, 0::2] = plus
    out[:, 1::2] = minus
    return out


def fourier_states(N: int, d: int) -> list[np.ndarray]:
    """Density matrices of ``|psi_x> = d**-0.5 sum_k exp(2 pi i k x / N) |k>`` for ``x = 1..N``."""
    if isinstance(N, bool) or int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    if isinstance(d, bool) or int(d) != d or not 1 <= d <= N:
        raise DomainError(f"need 1 <= d <= N, got d={d!r}, N={N}")
    k = np.arange(d)
    return [pure_state(np.exp(2j * np.pi * k * x / N)) for x in range(1, N + 1)]


def discrimination_model(N: int, d: int) -> QuantumModel:
    """Fourier states with the Helstrom measurement for every pair.

    Outcome ``+1`` is the projector onto the positive part of
    ``rho_y - rho_z``.
    """
    ds = DiscriminationScenario(N)
    if isinstance(d, bool) or int(d) != d or not 2 <= d <= ds.N:
        raise DomainError(f"need 2 <= d <= N, got d={d!r}, N={ds.N}")
    states = fourier_states(ds.N, d)
    povms = tuple(helstrom_measurement(states[y - 1], states[z - 1]) for y, z in ds.pairs)
    return QuantumModel(dim=d, states=tuple(states), povms=povms)


def closed_form_behaviour(N: int) -> Behaviour:
    """Qubit Helstrom behaviour ``P(+-1|x,y,z) = (1 -+ sin(pi(2x-y-z)/N)) / 2`` over all inputs."""
    ds = DiscriminationScenario(N)
    s = _phase_table(ds.N)
    return validate_behaviour(ds.scenario, _interleave(0.5 * (1 - s), 0.5 * (1 + s)))


def discrimination_witness(N: int) -> Witness:
    """``G(+-1|x,y,z) = 2/(N sqrt(N-1)) (1/2 -+ sin(pi(2x-y-z)/N))``, a partial isometry."""
    ds = DiscriminationScenario(N)
    s = _phase_table(ds.N)
    c = 2.0 / (ds.N * math.sqrt(ds.N - 1))
    return Witness(ds.scenario, c * _interleave(0.5 - s, 0.5 + s))


def quantum_bound(N: int) -> float:
    """Maximum ``B_Q = N sqrt(N-1)`` of the witness over qubit behaviours."""
    N = _check_N(N)
    return N * math.sqrt(N - 1)


def classical_bound(N: int) -> float:
    """Maximum ``B_C`` of the witness over classical bit strategies (even N only)."""
    N = _check_N(N, lo=4)
    if N % 2:
        raise DomainError(f"the classical bound is only established for even N, got N={N}")
    y, z = DiscriminationScenario(N).pair_arrays()
    cos_sum = float(np.abs(np.cos(np.pi * (1.0 + y + z) / N)).sum())
    inner = N * N * (N - 1) / 4.0 + 2.0 / math.sin(math.pi / N) * cos_sum
    return 2.0 / (N * math.sqrt(N - 1)) * inner


def qd_bound(N: int, d: int) -> float:
    """``N sqrt(d (N-1) / 2)``: the witness bound over d-dimensional quantum behaviours."""
    N = _check_N(N)
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"d must be an integer >= 1, got {d!r}")
    return N * math.sqrt(d * (N - 1) / 2.0)


def wn_vn(P: Behaviour, N: int) -> tuple[float, float]:
    """Promise-cell witnesses ``W_N = sum (P(+1|x=y) - P(+1|x=z))**2`` and ``V_N`` (plain sum)."""
    ds = DiscriminationScenario(N)
    if P.scenario != ds.scenario:
        raise ValidationError(f"behaviour scenario {P.scenario} does not match N = {ds.N}")
    t = P.as_tensor()
    q = np.arange(len(ds.pairs))
    y, z = (a.astype(int) - 1 for a in ds.pair_arrays())
    diff = t[y, q, 0] - t[z, q, 0]
    return float(np.sum(diff**2)), float(np.sum(diff))


@dataclass(frozen=True)
class RatioRow:
    N: int
    B_C: float
    B_Q: float

    @property
    def ratio(self) -> float:
        return self.B_C / self.B_Q


def ratio_series(N_max: int) -> list[RatioRow]:
    """``B_C / B_Q`` for every even ``N`` from 4 to ``N_max``."""
    if isinstance(N_max, bool) or int(N_max) != N_max or N_max < 4 or N_max % 2:
        raise DomainError(f"N_max must be an even integer >= 4, got {N_max!r}")
    return [RatioRow(N, classical_bound(N), quantum_bound(N)) for N in range(4, int(N_max) + 1, 2)]


def ratio_series_csv(rows: list[RatioRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "B_C", "B_Q", "ratio"])
    for r in rows:
        w.writerow([r.N, f"{r.B_C:.17g}", f"{r.B_Q:.17g}", f"{r.ratio:.17g}"])
    return buf.getvalue()
