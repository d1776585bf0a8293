"""Benchmark objective functions in the shifted/rotated large-scale style.

Four functions cover the main problem characteristics (multi-modality,
partial and full non-separability) plus an unshifted sphere used as an
analytic control:

* F2     shifted Rastrigin, bounds [-5, 5]
* F6     single-group m-rotated shifted Ackley (rotated group weighted 1e6),
         bounds [-32, 32]
* F14    d/m-group m-rotated shifted elliptic, bounds [-100, 100]
* F19    shifted Schwefel 1.2, bounds [-100, 100]
* SPHERE sum of squares, no shift, bounds [-100, 100]

Shift vectors, index permutations, and orthogonal rotation matrices are not
loaded from data files; they are generated deterministically from a 64-bit
``domain_seed`` so any instance can be regenerated bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigurationError, InputError


class FunctionId(str, Enum):
    F2 = "f2"
    F6 = "f6"
    F14 = "f14"
    F19 = "f19"
    SPHERE = "sphere"


# Search bounds per function family.
BOUNDS = {
    FunctionId.F2: (-5.0, 5.0),
    FunctionId.F6: (-32.0, 32.0),
    FunctionId.F14: (-100.0, 100.0),
    FunctionId.F19: (-100.0, 100.0),
    FunctionId.SPHERE: (-100.0, 100.0),
}

# Fraction of the domain the shift vector is drawn from, keeping the optimum
# strictly inside the bounds.
_SHIFT_MARGIN = 0.8


@dataclass(frozen=True)
class ObjectiveSpec:
    """Identifies one benchmark instance: function, size, and generation seed."""

    function_id: FunctionId
    dimension: int
    group_size: int = 50
    domain_seed: int = 1

    def validate(self) -> None:
        if self.dimension < 1:
            raise ConfigurationError(f"dimension must be >= 1, got {self.dimension}")
        m = self.group_size
        if self.function_id is FunctionId.F6:
            if not 1 <= m <= self.dimension:
                raise ConfigurationError(
                    f"group_size must satisfy 1 <= m <= dimension for F6, "
                    f"got m={m}, d={self.dimension}"
                )
        elif self.function_id is FunctionId.F14:
            if m < 1 or self.dimension % m != 0:
                raise ConfigurationError(
                    f"group_size must divide dimension for F14, "
                    f"got m={m}, d={self.dimension}"
                )

    @property
    def bounds(self) -> tuple[float, float]:
        return BOUNDS[self.function_id]

    @property
    def num_rotated_groups(self) -> int:
        if self.function_id is FunctionId.F6:
            return 1
        if self.function_id is FunctionId.F14:
            return self.dimension // self.group_size
        return 0


@dataclass(frozen=True)
class ObjectiveData:
    """Generated instance data: shift vector, permutation, rotation matrices.

    Immutable after generation; safe to share across workers.
    """

    shift: np.ndarray
    permutation: np.ndarray
    rotations: tuple[np.ndarray, ...]

    def __post_init__(self):
        self.shift.setflags(write=False)
        self.permutation.setflags(write=False)
        for rot in self.rotations:
            rot.setflags(write=False)


def _random_rotation(rng: np.random.Generator, m: int) -> np.ndarray:
    """Orthogonal matrix from QR factorization of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    # Fix the column signs so the factorization is unique.
    return q * np.where(np.diag(r) >= 0.0, 1.0, -1.0)


def generate_objective(spec: ObjectiveSpec) -> ObjectiveData:
    """Deterministically generate instance data from ``spec.domain_seed``.

    The sphere control function is unshifted and unrotated; all other
    functions draw a shift uniformly from the central 80% of the domain,
    a permutation of the coordinate indices, and one orthogonal matrix per
    rotated group.
    """
    spec.validate()
    d = spec.dimension
    if spec.function_id is FunctionId.SPHERE:
        return ObjectiveData(np.zeros(d), np.arange(d), ())
    rng = np.random.default_rng(spec.domain_seed)
    lower, upper = spec.bounds
    shift = rng.uniform(_SHIFT_MARGIN * lower, _SHIFT_MARGIN * upper, d)
    permutation = rng.permutation(d)
    rotations = tuple(
        _random_rotation(rng, spec.group_size)
        for _ in range(spec.num_rotated_groups)
    )
    return ObjectiveData(shift, permutation, rotations)


def _rastrigin(z: np.ndarray) -> np.ndarray:
    return np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z) + 10.0, axis=1)


def _ackley(z: np.ndarray) -> np.ndarray:
    rms = np.sqrt(np.mean(z * z, axis=1))
    cos_mean = np.mean(np.cos(2.0 * np.pi * z), axis=1)
    return -20.0 * np.exp(-0.2 * rms) - np.exp(cos_mean) + 20.0 + np.e


def _elliptic(z: np.ndarray) -> np.ndarray:
    m = z.shape[1]
    weights = np.ones(1) if m == 1 else 10.0 ** (6.0 * np.arange(m) / (m - 1))
    return np.sum(weights * z * z, axis=1)


def _schwefel_1_2(z: np.ndarray) -> np.ndarray:
    partial = np.cumsum(z, axis=1)
    return np.sum(partial * partial, axis=1)


def evaluate_many(spec: ObjectiveSpec, data: ObjectiveData, xs: np.ndarray) -> np.ndarray:
    """Evaluate a batch of row vectors; returns one fitness per row."""
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 2 or xs.shape[1] != spec.dimension:
        raise InputError(
            f"expected points of dimension {spec.dimension}, got shape {xs.shape}"
        )
    fid = spec.function_id
    if fid is FunctionId.SPHERE:
        return np.sum(xs * xs, axis=1)
    z = xs - data.shift
    if fid is FunctionId.F2:
        return _rastrigin(z)
    if fid is FunctionId.F19:
        return _schwefel_1_2(z)
    zp = z[:, data.permutation]
    m = spec.group_size
    if fid is FunctionId.F6:
        value = 1e6 * _ackley(zp[:, :m] @ data.rotations[0].T)
        if m < spec.dimension:
            value = value + _ackley(zp[:, m:])
        return value
    if fid is FunctionId.F14:
        value = np.zeros(len(xs))
        for g, rot in enumerate(data.rotations):
            value += _elliptic(zp[:, g * m : (g + 1) * m] @ rot.T)
        return value
    raise InputError(f"unknown function id {fid!r}")


def evaluate(spec: ObjectiveSpec, data: ObjectiveData, x: np.ndarray) -> float:
    """Evaluate a single point. f(x) >= 0 everywhere, with f(shift) = 0."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != spec.dimension:
        raise InputError(
            f"expected a vector of dimension {spec.dimension}, got shape {x.shape}"
        )
    return float(evaluate_many(spec, data, x[None, :])[0])


@dataclass(frozen=True)
class Objective:
    """A spec bundled with its generated data, ready to evaluate."""

    spec: ObjectiveSpec
    data: ObjectiveData

    @property
    def dimension(self) -> int:
        return self.spec.dimension

    @property
    def bounds(self) -> tuple[float, float]:
        return self.spec.bounds

    def evaluate(self, x) -> float:
        return evaluate(self.spec, self.data, x)

    def evaluate_many(self, xs) -> np.ndarray:
        return evaluate_many(self.spec, self.data, xs)


def make_objective(spec: ObjectiveSpec) -> Objective:
    return Objective(spec, generate_objective(spec))
