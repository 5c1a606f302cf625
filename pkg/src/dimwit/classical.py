"""Deterministic strategies: vertices of the classical polytope C_d.

A deterministic strategy sends message ``f(x)`` in ``{0..d-1}`` and answers
``g(m, y)``. Linear witnesses are maximized over C_d by enumerating coding
functions ``f`` only; the best decoding is picked greedily per ``(m, y)``,
which is exact because the objective splits over ``(m, y)`` once ``f`` is
fixed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .behaviour import Behaviour, Scenario, Witness, validate_behaviour
from .errors import DomainError, SizeError, ValidationError

DEFAULT_CAP = 10**7
# Two objective values closer than this count as a tie (smallest f wins).
TIE_TOL = 1e-12
_CHUNK_ENTRIES = 1 << 22


@dataclass(frozen=True)
class DeterministicStrategy:
    d: int
    f: tuple[int, ...]
    g: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 1:
            raise ValidationError(f"message dimension d must be >= 1, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "f", tuple(int(v) for v in self.f))
        g = tuple(tuple(int(v) for v in row) for row in self.g)
        object.__setattr__(self, "g", g)
        if len(g) != self.d:
            raise ValidationError(f"g must have d = {self.d} rows, got {len(g)}")
        if len({len(row) for row in g}) > 1:
            raise ValidationError("g rows have unequal lengths")
        bad = [x for x, m in enumerate(self.f) if not 0 <= m < self.d]
        if bad:
            raise ValidationError(f"f({bad[0]}) = {self.f[bad[0]]} outside [0, {self.d})")

    def check(self, scenario: Scenario) -> None:
        if len(self.f) != scenario.nx:
            raise ValidationError(f"f has {len(self.f)} entries, scenario needs {scenario.nx}")
        for m, row in enumerate(self.g):
            if len(row) != scenario.ny:
                raise ValidationError(f"g({m}, .) has {len(row)} entries, scenario needs {scenario.ny}")
            for y, b in enumerate(row):
                if not 0 <= b < scenario.nb:
                    raise ValidationError(f"g({m}, {y}) = {b} outside [0, {scenario.nb})")

    def to_dict(self) -> dict:
        return {"d": self.d, "f": list(self.f), "g": [list(r) for r in self.g]}

    @classmethod
    def from_dict(cls, doc: dict) -> "DeterministicStrategy":
        try:
            return cls(d=doc["d"], f=doc["f"], g=doc["g"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed strategy document: {exc}") from None


def deterministic_behaviour(s: DeterministicStrategy, scenario: Scenario) -> Behaviour:
    """The vertex ``P(b|xy) = [b == g(f(x), y)]``."""
    s.check(scenario)
    t = np.zeros((scenario.nx, scenario.ny, scenario.nb))
    g = np.asarray(s.g, dtype=int).reshape(s.d, scenario.ny)
    ys = np.arange(scenario.ny)
    for x, m in enumerate(s.f):
        t[x, ys, g[m]] = 1.0
    return validate_behaviour(scenario, t)


def vertex_count(scenario: Scenario, d: int) -> int:
    return d**scenario.nx * scenario.nb ** (d * scenario.ny)


def enumerate_vertices(
    scenario: Scenario, d: int, cap: int = DEFAULT_CAP
) -> Iterator[DeterministicStrategy]:
    """Yield every ``(f, g)`` pair once, lexicographically with ``f`` outermost.

    Raises :class:`SizeError` up front if the count exceeds ``cap``.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    count = vertex_count(scenario, d)
    if count > cap:
        raise SizeError(count, cap, "deterministic strategies")
    return _vertices(scenario, d)


def _vertices(scenario: Scenario, d: int) -> Iterator[DeterministicStrategy]:
    ny = scenario.ny
    for f in itertools.product(range(d), repeat=scenario.nx):
        for flat in itertools.product(range(scenario.nb), repeat=d * ny):
            g = tuple(flat[m * ny : (m + 1) * ny] for m in range(d))
            yield DeterministicStrategy(d=d, f=f, g=g)


def _coding_functions(nx: int, d: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the lexicographic table of f: X -> [d]."""
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((idx.size, nx), dtype=np.int64)
    for pos in range(nx - 1, -1, -1):
        digits[:, pos] = idx % d
        idx //= d
    return digits


def _score_codings(G: np.ndarray, F: np.ndarray, d: int, ny: int, nb: int) -> np.ndarray:
    onehot = (F[:, None, :] == np.arange(d)[None, :, None]).astype(float)
    sums = (onehot @ G).reshape(F.shape[0], d, ny, nb)
    return sums.max(axis=3).sum(axis=(1, 2))


def classical_witness_max(
    G: Witness, d: int, cap: int = DEFAULT_CAP
) -> tuple[float, DeterministicStrategy]:
    """Maximum of ``<P, G>`` over C_d and one maximizing deterministic strategy.

    Ties go to the smallest answer ``b`` and then to the lexicographically
    smallest coding function.
    """
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"d must be an integer >= 1, got {d!r}")
    d = int(d)
    s = G.scenario
    total = d**s.nx
    if total > cap:
        raise SizeError(total, cap, "coding functions")
    Gm = np.asarray(G.matrix, dtype=float)
    chunk = max(1, _CHUNK_ENTRIES // max(1, d * s.nx * s.ny * s.nb))
    best_val = -np.inf
    best_idx = -1
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        vals = _score_codings(Gm, _coding_functions(s.nx, d, start, stop), d, s.ny, s.nb)
        top = vals.max()
        if top > best_val + TIE_TOL:
            best_val = float(top)
            best_idx = start + int(np.flatnonzero(vals >= top - TIE_TOL)[0])
    f = tuple(int(v) for v in _coding_functions(s.nx, d, best_idx, best_idx + 1)[0])
    return _decode(Gm, f, d, s)


def _decode(Gm: np.ndarray, f: Sequence[int], d: int, s: Scenario) -> tuple[float, DeterministicStrategy]:
    fa = np.asarray(f)
    value = 0.0
    g = []
    for m in range(d):
        block = Gm[fa == m].sum(axis=0).reshape(s.ny, s.nb)
        # argmax returns the first maximizer: smallest b on ties.
        g.append(tuple(int(b) for b in block.argmax(axis=1)))
        value += float(block.max(axis=1).sum())
    return value, DeterministicStrategy(d=d, f=tuple(f), g=tuple(g))


def strategy_value(G: Witness, s: DeterministicStrategy) -> float:
    return G.evaluate(deterministic_behaviour(s, G.scenario))


def extremal_block_behaviour(d: int, n: int, m: int) -> Behaviour:
    """Block behaviour with ``(|X|, |Y|, |B|) = (dn, m, d)`` and ``||P||_1 = d sqrt(nm)``.

    Input ``x`` sends its block index ``x // n`` and the receiver outputs it
    for every question.
    """
    for name, v in (("d", d), ("n", n), ("m", m)):
        if isinstance(v, bool) or int(v) != v or v < 1:
            raise DomainError(f"{name} must be an integer >= 1, got {v!r}")
    scenario = Scenario(d * n, m, d)
    strategy = DeterministicStrategy(
        d=d, f=tuple(x // n for x in range(d * n)), g=tuple((k,) * m for k in range(d))
    )
    return deterministic_behaviour(strategy, scenario)
