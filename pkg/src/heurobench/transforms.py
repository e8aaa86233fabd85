"""Seeded instance transforms.

Each problem instance is the base function wrapped in a domain transform
T_x and a range transform T_y, both drawn deterministically from the
(problem id, instance id) pair.  Instance 1 is always the identity, so
every problem keeps one untransformed debugging instance.

Boolean domain:    T_x permutes variables and XORs a mask,
                   T_y(y) = a*y + b with a > 0.
Continuous domain: T_x(x) = R @ (x - x_opt) with R orthonormal,
                   T_y(y) = y + f_opt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Domain

# instance_id rides in the low four decimal digits of the seed, so it is
# capped at 9999 per problem.
MAX_INSTANCE_ID = 9_999
CONTINUOUS_SEED_OFFSET = 5 * 10**8


def derive_seed(problem_id: int, instance_id: int, domain: Domain) -> int:
    """Deterministic RNG seed for one instance's transform parameters.

    Boolean and continuous problems get disjoint seed ranges so a boolean
    and a continuous problem sharing an id never share draws.
    """
    if problem_id < 1 or instance_id < 1:
        raise ValueError("problem_id and instance_id must be >= 1")
    if instance_id > MAX_INSTANCE_ID:
        raise ValueError(f"instance_id must be <= {MAX_INSTANCE_ID}, got {instance_id}")
    seed = problem_id * 10_000 + instance_id
    if domain is Domain.CONTINUOUS:
        seed += CONTINUOUS_SEED_OFFSET
    return seed


@dataclass(frozen=True)
class RangeAffine:
    """Order-preserving value transform y -> scale*y + offset."""

    scale: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    def __call__(self, y: float) -> float:
        return self.scale * y + self.offset


class InstanceTransform:
    """Common interface: T_x via apply_domain, T_y via apply_range."""

    dimension: int
    identity: bool

    def apply_domain(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def apply_range(self, y: float) -> float:
        raise NotImplementedError

    def domain_preimage(self, inner: np.ndarray) -> np.ndarray:
        """Map a point in the base function's frame back to algorithm
        coordinates, i.e. the inverse of apply_domain."""
        raise NotImplementedError


class BooleanTransform(InstanceTransform):
    """Variable permutation plus XOR mask: y_j = x_{sigma(j)} ^ z_j."""

    def __init__(self, z: np.ndarray, sigma: np.ndarray, affine: RangeAffine):
        z = np.asarray(z, dtype=np.int8)
        sigma = np.asarray(sigma, dtype=np.intp)
        if z.shape != sigma.shape:
            raise ValueError("mask and permutation lengths differ")
        if not np.array_equal(np.sort(sigma), np.arange(len(sigma))):
            raise ValueError("sigma is not a permutation")
        self.z = z
        self.sigma = sigma
        self.affine = affine
        self.dimension = len(z)
        self.identity = (
            not z.any()
            and np.array_equal(sigma, np.arange(len(sigma)))
            and affine.scale == 1.0
            and affine.offset == 0.0
        )

    def apply_domain(self, x: np.ndarray) -> np.ndarray:
        if self.identity:
            return x
        return x[self.sigma] ^ self.z

    def apply_range(self, y: float) -> float:
        return self.affine(y)

    def domain_preimage(self, inner: np.ndarray) -> np.ndarray:
        x = np.empty_like(self.z)
        x[self.sigma] = np.asarray(inner, dtype=np.int8) ^ self.z
        return x


class ContinuousTransform(InstanceTransform):
    """Shift to x_opt, optional rotation, and additive value offset."""

    def __init__(self, x_opt: np.ndarray, rotation: np.ndarray | None, f_opt: float):
        self.x_opt = np.asarray(x_opt, dtype=float)
        self.rotation = rotation
        self.f_opt = float(f_opt)
        self.dimension = len(self.x_opt)
        self.identity = (
            not self.x_opt.any() and rotation is None and self.f_opt == 0.0
        )

    def apply_domain(self, x: np.ndarray) -> np.ndarray:
        if self.identity:
            return x
        shifted = x - self.x_opt
        if self.rotation is None:
            return shifted
        return self.rotation @ shifted

    def apply_range(self, y: float) -> float:
        return y + self.f_opt

    def domain_preimage(self, inner: np.ndarray) -> np.ndarray:
        if self.rotation is None:
            return np.asarray(inner, dtype=float) + self.x_opt
        return self.rotation.T @ np.asarray(inner, dtype=float) + self.x_opt


def identity_transform(dimension: int, domain: Domain) -> InstanceTransform:
    if domain is Domain.BOOLEAN:
        return BooleanTransform(
            np.zeros(dimension, dtype=np.int8), np.arange(dimension), RangeAffine()
        )
    return ContinuousTransform(np.zeros(dimension), None, 0.0)


def make_boolean_transform(problem_id: int, instance_id: int, n: int) -> BooleanTransform:
    """Draw the boolean instance transform for (problem_id, instance_id).

    Draw order is part of the format: mask, permutation, scale, offset.
    """
    if instance_id == 1:
        return identity_transform(n, Domain.BOOLEAN)
    rng = np.random.default_rng(derive_seed(problem_id, instance_id, Domain.BOOLEAN))
    z = rng.integers(0, 2, size=n, dtype=np.int8)
    sigma = rng.permutation(n)
    a = math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
    b = rng.uniform(-1000.0, 1000.0)
    return BooleanTransform(z, sigma, RangeAffine(a, b))


def _gram_schmidt(rng: np.random.Generator, n: int) -> np.ndarray:
    """Orthonormalize a random normal matrix row by row (modified
    Gram-Schmidt).  Returns None-equivalent by raising on a singular draw;
    the caller redraws."""
    m = rng.standard_normal((n, n))
    for i in range(n):
        for j in range(i):
            m[i] -= (m[i] @ m[j]) * m[j]
        norm = np.linalg.norm(m[i])
        if norm < 1e-12:
            raise np.linalg.LinAlgError("singular draw")
        m[i] /= norm
    return m


def make_continuous_transform(
    problem_id: int, instance_id: int, n: int, use_rotation: bool = False
) -> ContinuousTransform:
    """Draw the continuous instance transform for (problem_id, instance_id).

    Draw order is part of the format: shift, value offset, rotation.
    """
    if instance_id == 1:
        return identity_transform(n, Domain.CONTINUOUS)
    rng = np.random.default_rng(derive_seed(problem_id, instance_id, Domain.CONTINUOUS))
    x_opt = rng.uniform(-4.0, 4.0, size=n)
    f_opt = round(rng.uniform(-1000.0, 1000.0), 2)
    rotation = None
    if use_rotation:
        while True:
            try:
                rotation = _gram_schmidt(rng, n)
                break
            except np.linalg.LinAlgError:
                continue
    return ContinuousTransform(x_opt, rotation, f_opt)
