"""Behaviours, witnesses and the trace-norm dimension bounds.

A behaviour ``P(b|xy)`` is stored as an ``nx x (ny*nb)`` matrix whose entry
at row ``x`` and column ``y*nb + b`` is ``P(b|xy)`` (all indices 0-based).
Witnesses share the same layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import DomainError, ValidationError

NEGATIVE_TOL = 1e-12
NORMALIZATION_TOL = 1e-9
CEILING_SLACK = 1e-9
DEFAULT_RANK_TOLERANCE = 1e-8


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Scenario:
    """Alphabet sizes ``(|X|, |Y|, |B|)`` of a prepare-and-measure setting."""

    nx: int
    ny: int
    nb: int

    def __post_init__(self):
        for name in ("nx", "ny", "nb"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
                raise ValidationError(f"scenario {name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny * self.nb)

    def column(self, y: int, b: int) -> int:
        return y * self.nb + b

    def __str__(self) -> str:
        return f"(|X|, |Y|, |B|) = ({self.nx}, {self.ny}, {self.nb})"


def _coerce_table(scenario: Scenario, table, name: str) -> np.ndarray:
    try:
        a = np.array(table, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} is not numeric: {exc}") from None
    expected = scenario.nx * scenario.ny * scenario.nb
    if a.size != expected:
        raise ValidationError(
            f"{name} has {a.size} entries, scenario {scenario} needs {expected}"
        )
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} has non-finite entries")
    return a.reshape(scenario.shape)


@dataclass(frozen=True, eq=False)
class Behaviour:
    """A validated table of conditional probabilities. Build with :func:`validate_behaviour`."""

    scenario: Scenario
    matrix: np.ndarray = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.scenario.shape

    def prob(self, b: int, x: int, y: int) -> float:
        return float(self.matrix[x, self.scenario.column(y, b)])

    def as_tensor(self) -> np.ndarray:
        """View as an ``(nx, ny, nb)`` array."""
        s = self.scenario
        return self.matrix.reshape(s.nx, s.ny, s.nb)

    @property
    def normalization_error(self) -> float:
        """Largest ``|sum_b P(b|xy) - 1|`` over all ``(x, y)``."""
        return float(np.max(np.abs(self.as_tensor().sum(axis=2) - 1.0)))


@dataclass(frozen=True, eq=False)
class Witness:
    """Coefficients ``G(b|xy)`` of a linear functional ``<P, G>``."""

    scenario: Scenario
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = _coerce_table(self.scenario, self.matrix, "witness")
        object.__setattr__(self, "matrix", _readonly(m))

    @property
    def shape(self) -> tuple[int, int]:
        return self.scenario.shape

    def evaluate(self, P: Behaviour) -> float:
        return linalg.inner_product(P.matrix, self.matrix)


@dataclass(frozen=True)
class DimensionBoundReport:
    trace_norm: float
    raw_bound: float
    dimension_lower_bound: int

    @property
    def saturated(self) -> bool:
        """True when the raw bound is (numerically) an integer, i.e. attained with equality."""
        return abs(self.raw_bound - self.dimension_lower_bound) <= CEILING_SLACK


def validate_behaviour(scenario: Scenario, table) -> Behaviour:
    """Check positivity and normalization and return a :class:`Behaviour`.

    ``table`` may be flat, ``nx x (ny*nb)`` or ``(nx, ny, nb)``. Negative
    entries down to ``-1e-12`` are clamped to zero.
    """
    a = _coerce_table(scenario, table, "behaviour table")
    t = a.reshape(scenario.nx, scenario.ny, scenario.nb)
    neg = np.argwhere(t < -NEGATIVE_TOL)
    if neg.size:
        x, y, b = (int(i) for i in neg[0])
        raise ValidationError(
            f"negative probability P(b={b}|x={x},y={y}) = {t[x, y, b]!r} at (x,y)=({x},{y})"
        )
    t = np.where(t < 0.0, 0.0, t)
    dev = np.abs(t.sum(axis=2) - 1.0)
    bad = np.argwhere(dev > NORMALIZATION_TOL)
    if bad.size:
        x, y = (int(i) for i in bad[0])
        raise ValidationError(
            f"probabilities for (x,y)=({x},{y}) sum to {t[x, y].sum()!r}, not 1"
        )
    return Behaviour(scenario=scenario, matrix=_readonly(t.reshape(scenario.shape)))


def _as_scenario_matrix(P) -> tuple[Scenario, np.ndarray]:
    if isinstance(P, (Behaviour, Witness)):
        return P.scenario, P.matrix
    raise ValidationError(f"expected a Behaviour or Witness, got {type(P).__name__}")


def dimension_lower_bound(P: Behaviour) -> DimensionBoundReport:
    """Trace-norm lower bound ``d >= ||P||_1^2 / (|X||Y|)`` on the message dimension."""
    s, m = _as_scenario_matrix(P)
    tn = linalg.trace_norm(m)
    raw = tn * tn / (s.nx * s.ny)
    bound = max(1, math.ceil(raw - CEILING_SLACK))
    return DimensionBoundReport(trace_norm=tn, raw_bound=raw, dimension_lower_bound=bound)


def _check_dim(d) -> int:
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"dimension must be an integer >= 1, got {d!r}")
    return int(d)


def witness_bound(G: Witness, d: int) -> float:
    """Upper bound ``||G||_inf sqrt(d |X||Y|)`` on ``<P, G>`` over d-dimensional quantum behaviours."""
    d = _check_dim(d)
    s, m = _as_scenario_matrix(G)
    return linalg.operator_norm(m) * math.sqrt(d * s.nx * s.ny)


def shift_matrix(scenario: Scenario, alpha) -> np.ndarray:
    """``sum_xy alpha[x, y] A_xy``, where ``A_xy`` puts a 1 in row x at every column (y, b)."""
    try:
        a = np.array(alpha, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"alpha is not numeric: {exc}") from None
    if a.size != scenario.nx * scenario.ny:
        raise ValidationError(
            f"alpha has {a.size} entries, expected nx*ny = {scenario.nx * scenario.ny}"
        )
    if not np.all(np.isfinite(a)):
        raise ValidationError("alpha has non-finite entries")
    return np.repeat(a.reshape(scenario.nx, scenario.ny), scenario.nb, axis=1)


def shifted_witness_bound(G: Witness, alpha, d: int) -> float:
    """Witness bound after adding normalization-constraint terms.

    Since ``<P, A_xy> = 1`` for every behaviour, ``<P, G>`` is bounded by
    ``||G + sum alpha_xy A_xy||_inf sqrt(d |X||Y|) - sum alpha_xy``.
    """
    d = _check_dim(d)
    s, m = _as_scenario_matrix(G)
    shift = shift_matrix(s, alpha)
    shifted = m + shift
    return linalg.operator_norm(shifted) * math.sqrt(d * s.nx * s.ny) - float(
        np.sum(shift) / s.nb
    )


def svd_witness(P: Behaviour, rank_tolerance: float = DEFAULT_RANK_TOLERANCE) -> Witness:
    """The witness ``G = U V^T`` from the reduced SVD of ``P``.

    It satisfies ``<P, G> = ||P||_1`` and ``||G||_inf = 1``, so it is the
    optimal witness for any behaviour saturating the trace-norm bound.
    """
    s, m = _as_scenario_matrix(P)
    summary = linalg.svd(m)
    sv = summary.singular_values
    if sv.size == 0 or sv[0] == 0.0:
        raise DomainError("svd_witness is undefined for the zero matrix")
    k = int(np.count_nonzero(sv > rank_tolerance * sv[0]))
    U = summary.left_vectors[:, :k]
    V = summary.right_vectors[:, :k]
    return Witness(scenario=s, matrix=U @ V.T)
