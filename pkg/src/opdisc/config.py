"""Problem definitions read from JSON.

A configuration looks like::

    {
      "operators": {"u1": "identity(2)", "u2": {"phase_shift": 0.3}},
      "prior": 0.5,
      "particles": 3,
      "strategy": "entangled",
      "dwell_time": 1.0
    }

An operator is one of

* an explicit matrix: a list of rows, each entry a ``[re, im]`` pair,
* ``"identity(d)"`` / ``{"identity": d}``,
* ``"phase_shift(delta)"`` / ``{"phase_shift": delta}``, the matrix
  ``diag(1, exp(2i delta))``,
* ``{"from_hamiltonian": {"H": <matrix>, "t": <time>}}``, giving
  ``exp(i H t)``; ``t`` defaults to ``dwell_time``.

The strategy is ``"product"``, ``"entangled"``, ``"partition:2x1,1x1"`` or
``{"partition": [[2, 1], [1, 1]]}`` with ``(block_size, count)`` pairs.
Angles are in radians.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace

import numpy as np

from .discrimination import DecisionProblem, PartitionStrategy, Strategy, phase_shift
from .errors import ConfigError, InputError
from .linalg import matrix_exp_hermitian

_CALL = re.compile(r"^\s*([a-z_]+)\s*\(\s*([^()]*?)\s*\)\s*$")


@dataclass(frozen=True)
class OperatorSpec:
    kind: str  # "matrix" | "identity" | "phase_shift" | "from_hamiltonian"
    matrix: np.ndarray | None = None
    delta: float | None = None
    dim: int | None = None
    t: float | None = None

    def build(self, dwell_time: float) -> np.ndarray:
        if self.kind == "matrix":
            return self.matrix
        if self.kind == "identity":
            return np.eye(self.dim, dtype=complex)
        if self.kind == "phase_shift":
            return phase_shift(self.delta)
        t = dwell_time if self.t is None else self.t
        return matrix_exp_hermitian(self.matrix, t)

    @property
    def dimension(self) -> int:
        if self.kind == "phase_shift":
            return 2
        if self.kind == "identity":
            return self.dim
        return self.matrix.shape[0]


@dataclass(frozen=True)
class ProblemConfig:
    u1: OperatorSpec
    u2: OperatorSpec
    prior: float = 0.5
    particles: int = 1
    strategy: Strategy = "product"
    dwell_time: float = 1.0

    def to_problem(self) -> DecisionProblem:
        try:
            return DecisionProblem(
                self.u1.build(self.dwell_time),
                self.u2.build(self.dwell_time),
                prior=self.prior,
                particles=self.particles,
                dwell_time=self.dwell_time,
            )
        except InputError as exc:
            raise ConfigError(f"{type(exc).__name__}: {exc}", "operators") from exc

    @property
    def dim(self) -> int:
        return self.u1.dimension

    def with_delta(self, delta: float) -> ProblemConfig:
        """Replace the angle of every ``phase_shift`` operator."""
        specs = [self.u1, self.u2]
        if not any(s.kind == "phase_shift" for s in specs):
            raise ConfigError("axis 'delta' needs at least one phase_shift operator", "operators")
        u1, u2 = (replace(s, delta=delta) if s.kind == "phase_shift" else s for s in specs)
        return replace(self, u1=u1, u2=u2)

    def with_dwell_time(self, t: float) -> ProblemConfig:
        """Change the dwell time; ``from_hamiltonian`` operators follow it."""
        specs = [self.u1, self.u2]
        if not any(s.kind == "from_hamiltonian" for s in specs):
            raise ConfigError("axis 't' needs from_hamiltonian operators", "operators")
        u1, u2 = (replace(s, t=None) if s.kind == "from_hamiltonian" else s for s in specs)
        return replace(self, u1=u1, u2=u2, dwell_time=t)


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", where)
    return float(value)


def parse_matrix(rows, where: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ConfigError("matrix must be a non-empty list of rows", where)
    n = len(rows)
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ConfigError(f"row must hold {n} entries", f"{where}[{i}]")
        for j, entry in enumerate(row):
            loc = f"{where}[{i}][{j}]"
            if not isinstance(entry, list) or len(entry) != 2:
                raise ConfigError("complex entry must be a [re, im] pair", loc)
            out[i, j] = complex(_number(entry[0], loc), _number(entry[1], loc))
    return out


def parse_operator(raw, where: str) -> OperatorSpec:
    if isinstance(raw, list):
        return OperatorSpec("matrix", matrix=parse_matrix(raw, where))
    if isinstance(raw, str):
        m = _CALL.match(raw)
        if raw.strip() == "identity":
            return OperatorSpec("identity", dim=2)
        if not m:
            raise ConfigError(f"cannot parse operator {raw!r}", where)
        name, arg = m.groups()
        try:
            value = float(arg)
        except ValueError:
            raise ConfigError(f"argument of {name} must be a number, got {arg!r}", where) from None
        raw = {name: value}
    if not isinstance(raw, dict) or len(raw) != 1:
        raise ConfigError("operator must be a matrix, a generator string or a one-key object", where)
    (name, arg), = raw.items()
    loc = f"{where}.{name}"
    if name == "identity":
        dim = _number(arg, loc)
        if dim != int(dim) or dim < 1:
            raise ConfigError("identity dimension must be a positive integer", loc)
        return OperatorSpec("identity", dim=int(dim))
    if name == "phase_shift":
        if isinstance(arg, dict):
            arg = arg.get("delta")
        return OperatorSpec("phase_shift", delta=_number(arg, loc))
    if name == "from_hamiltonian":
        if not isinstance(arg, dict) or "H" not in arg:
            raise ConfigError('from_hamiltonian needs {"H": matrix, "t": time}', loc)
        h = parse_matrix(arg["H"], f"{loc}.H")
        if np.max(np.abs(h - h.conj().T)) > 1e-10:
            raise ConfigError("NotHermitian: Hamiltonian is not Hermitian", f"{loc}.H")
        t = None if arg.get("t") is None else _number(arg["t"], f"{loc}.t")
        return OperatorSpec("from_hamiltonian", matrix=h, t=t)
    raise ConfigError(f"unknown operator generator {name!r}", where)


def parse_strategy(raw, where: str = "strategy") -> Strategy:
    if raw in ("product", "entangled"):
        return raw
    blocks = None
    if isinstance(raw, str) and raw.startswith("partition:"):
        try:
            blocks = [tuple(int(x) for x in item.split("x")) for item in raw[len("partition:"):].split(",")]
        except ValueError:
            blocks = None
    elif isinstance(raw, dict) and set(raw) == {"partition"}:
        blocks = raw["partition"]
    if not blocks or not all(
        isinstance(b, (list, tuple)) and len(b) == 2 and all(isinstance(x, int) for x in b) for b in blocks
    ):
        raise ConfigError(
            f"strategy must be product, entangled or a partition of (size, count) pairs, got {raw!r}",
            where,
        )
    try:
        return PartitionStrategy(tuple(tuple(b) for b in blocks))
    except InputError as exc:
        raise ConfigError(str(exc), where) from exc


def config_from_dict(doc: dict) -> ProblemConfig:
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object", "$")
    unknown = set(doc) - {"operators", "prior", "particles", "strategy", "dwell_time"}
    if unknown:
        raise ConfigError(f"unknown field(s) {sorted(unknown)}", "$")
    ops = doc.get("operators")
    if not isinstance(ops, dict) or set(ops) != {"u1", "u2"}:
        raise ConfigError('operators must be an object with keys "u1" and "u2"', "operators")
    u1 = parse_operator(ops["u1"], "operators.u1")
    u2 = parse_operator(ops["u2"], "operators.u2")
    if u1.dimension != u2.dimension:
        raise ConfigError(f"DimensionMismatch: dims {u1.dimension} and {u2.dimension}", "operators")
    prior = _number(doc.get("prior", 0.5), "prior")
    if not 0.0 <= prior <= 1.0:
        raise ConfigError("prior must lie in [0, 1]", "prior")
    particles = doc.get("particles", 1)
    if isinstance(particles, bool) or not isinstance(particles, int) or particles < 1:
        raise ConfigError("particles must be a positive integer", "particles")
    dwell = _number(doc.get("dwell_time", 1.0), "dwell_time")
    if dwell <= 0:
        raise ConfigError("dwell_time must be positive", "dwell_time")
    strategy = parse_strategy(doc.get("strategy", "product"))
    return ProblemConfig(u1, u2, prior, particles, strategy, dwell)


def loads(text: str) -> ProblemConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return config_from_dict(doc)


def load(path) -> ProblemConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from None
    return loads(text)
