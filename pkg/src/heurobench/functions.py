"""Base function catalog and registry.

Pseudo-Boolean set (MAXIMIZE): OneMax, LeadingOnes, a harmonic-weight
linear function, and layered OneMax variants built from the W-model
operators (dummy variables, neutrality, epistasis, ruggedness).

Continuous set (MINIMIZE): sphere, separable ellipsoid, separable
Rastrigin, Rosenbrock, and a rotated ellipsoid whose rotation comes from
the instance transform.

The registry maps (domain, problem id) to a FunctionEntry; custom
functions can be registered alongside the built-in catalog.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    Direction,
    Domain,
    OptimumInfo,
    ProblemInstance,
    ProblemMetadata,
)
from .transforms import make_boolean_transform, make_continuous_transform

# Continuous catalog problems share one box; algorithms may leave it
# (evaluation does not clamp), but samplers and baselines use it.
CONTINUOUS_LOWER = -5.0
CONTINUOUS_UPPER = 5.0

# Dummy-layer positions are a structural property of (problem, dimension),
# shared by all instances, so they get their own seed range disjoint from
# the instance-transform seeds.
DUMMY_SEED_OFFSET = 7 * 10**8


# ---------------------------------------------------------------------------
# pseudo-Boolean base functions


def onemax(x) -> float:
    """Number of one-bits."""
    return float(np.sum(x))


def leadingones(x) -> float:
    """Length of the maximal all-ones prefix."""
    zeros = np.flatnonzero(np.asarray(x) == 0)
    return float(zeros[0]) if len(zeros) else float(len(x))


def linear_harmonic(x) -> float:
    """Linear function with weight i on bit i (1-based)."""
    x = np.asarray(x)
    return float(np.arange(1, len(x) + 1) @ x)


# ---------------------------------------------------------------------------
# W-model layers


def dummy_positions(n: int, m: int, seed: int) -> np.ndarray:
    """m distinct positions in [0, n), ascending, drawn from `seed`."""
    if not 1 <= m <= n:
        raise ValueError(f"dummy size m={m} out of range [1, {n}]")
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(n, size=m, replace=False))


def w_dummy(x, m: int, seed: int) -> np.ndarray:
    """Keep only m seeded positions of x (the rest become dummy bits)."""
    return np.asarray(x)[dummy_positions(len(x), m, seed)]


def w_neutrality(x, mu: int) -> np.ndarray:
    """Collapse consecutive size-mu blocks to their majority bit.

    Ties resolve to 0; a trailing partial block is dropped.
    """
    if mu < 1:
        raise ValueError(f"neutrality block size must be >= 1, got {mu}")
    x = np.asarray(x)
    k = len(x) // mu
    blocks = x[: k * mu].reshape(k, mu)
    return (2 * blocks.sum(axis=1) > mu).astype(np.int8)


def _bits_to_int(bits: np.ndarray) -> int:
    """Unsigned integer value of a bit block, first bit most significant."""
    v = 0
    for b in bits:
        v = (v << 1) | int(b)
    return v


def _int_to_bits(v: int, width: int) -> np.ndarray:
    return np.array([(v >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.int8)


def epistasis_block_map(v: int, nu: int) -> int:
    """Bijection on {0..2^nu - 1}: v -> (5v + 1) mod 2^nu."""
    return (5 * v + 1) % (1 << nu)


def epistasis_block_inverse(w: int, nu: int) -> int:
    # 5 is odd, hence invertible mod any power of two.
    return ((w - 1) * pow(5, -1, 1 << nu)) % (1 << nu)


def w_epistasis(x, nu: int) -> np.ndarray:
    """Scramble each size-nu block through the bijective block map.

    A trailing partial block passes through unchanged.
    """
    if nu < 1:
        raise ValueError(f"epistasis block size must be >= 1, got {nu}")
    x = np.asarray(x, dtype=np.int8)
    out = x.copy()
    full = len(x) // nu
    for i in range(full):
        block = x[i * nu : (i + 1) * nu]
        out[i * nu : (i + 1) * nu] = _int_to_bits(
            epistasis_block_map(_bits_to_int(block), nu), nu
        )
    return out


def w_ruggedness(y: float, n: int) -> float:
    """Optimum-preserving rugged value map on {0..n}.

    Keeps n fixed and swaps adjacent values pairwise descending from the
    top: n-1 <-> n-2, n-3 <-> n-4, and so on.  When n is odd the leftover
    value 0 maps to itself.
    """
    y = int(y)
    if not 0 <= y <= n:
        raise ValueError(f"ruggedness input {y} outside [0, {n}]")
    if y == n:
        return float(n)
    if (n - 1 - y) % 2 == 0:
        return float(y - 1) if y >= 1 else 0.0
    return float(y + 1)


@dataclass(frozen=True)
class WModelParams:
    """Layer settings for one layered-OneMax problem.

    dummy_m None keeps every position; epistasis_nu None skips the layer
    entirely (nu=1 would flip bits, which is not an identity).
    """

    dummy_m: int | None = None
    neutrality_mu: int = 1
    epistasis_nu: int | None = None
    ruggedness_enabled: bool = False


class WModelFunction:
    """OneMax seen through the W-model layer stack.

    Layer order: dummy -> neutrality -> epistasis -> OneMax -> ruggedness.
    """

    def __init__(self, n: int, params: WModelParams, dummy_seed: int):
        self.n = n
        self.params = params
        if params.dummy_m is None:
            self.positions = np.arange(n)
        else:
            self.positions = dummy_positions(n, params.dummy_m, dummy_seed)
        m = len(self.positions)
        self.inner_length = m // params.neutrality_mu
        if self.inner_length < 1:
            raise ValueError(
                f"W-model layers leave no effective bits "
                f"(n={n}, m={m}, mu={params.neutrality_mu})"
            )

    def __call__(self, x) -> float:
        u = np.asarray(x)[self.positions]
        if self.params.neutrality_mu > 1:
            u = w_neutrality(u, self.params.neutrality_mu)
        if self.params.epistasis_nu is not None:
            u = w_epistasis(u, self.params.epistasis_nu)
        s = float(np.sum(u))
        if self.params.ruggedness_enabled:
            return w_ruggedness(s, self.inner_length)
        return s

    def optimum(self) -> tuple[float, np.ndarray]:
        """Optimal raw value and one optimizer, built layer by layer.

        The target after epistasis is all-ones; walking the layers
        backwards gives a preimage in {0,1}^n.
        """
        k = self.inner_length
        target = np.ones(k, dtype=np.int8)
        if self.params.epistasis_nu is not None:
            nu = self.params.epistasis_nu
            pre = target.copy()
            for i in range(k // nu):
                block = target[i * nu : (i + 1) * nu]
                pre[i * nu : (i + 1) * nu] = _int_to_bits(
                    epistasis_block_inverse(_bits_to_int(block), nu), nu
                )
            target = pre
        m = len(self.positions)
        u = np.zeros(m, dtype=np.int8)
        u[: k * self.params.neutrality_mu] = np.repeat(target, self.params.neutrality_mu)
        x = np.zeros(self.n, dtype=np.int8)
        x[self.positions] = u
        return float(k), x


# ---------------------------------------------------------------------------
# continuous base functions


def sphere(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(x @ x)


def ellipsoid(x) -> float:
    """Separable ellipsoid with condition number 10^6 (plain square at n=1)."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    if n == 1:
        return float(x[0] ** 2)
    weights = 10.0 ** (6.0 * np.arange(n) / (n - 1))
    return float(weights @ (x * x))


def rastrigin(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(10.0 * len(x) + np.sum(x * x - 10.0 * np.cos(2.0 * math.pi * x)))


def rosenbrock(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class FunctionEntry:
    problem_id: int
    name: str
    domain: Domain
    constructor: Callable[[int, int], ProblemInstance]
    raw_optimum: Callable[[int], tuple[float, np.ndarray | None]]


_REGISTRY: dict[tuple[Domain, int], FunctionEntry] = {}


def register_function(entry: FunctionEntry) -> None:
    key = (entry.domain, entry.problem_id)
    if key in _REGISTRY:
        raise ValueError(
            f"problem id {entry.problem_id} already registered for {entry.domain.value}"
        )
    _REGISTRY[key] = entry


def lookup(problem_id: int, domain: Domain) -> FunctionEntry:
    try:
        return _REGISTRY[(domain, problem_id)]
    except KeyError:
        raise ValueError(
            f"unknown {domain.value} problem id {problem_id}"
        ) from None


def registered_entries(domain: Domain) -> list[FunctionEntry]:
    return [e for (d, _), e in sorted(_REGISTRY.items(), key=lambda kv: kv[0][1]) if d is domain]


def get_problem(domain: Domain, problem_id: int, instance_id: int, dimension: int) -> ProblemInstance:
    """Build a fresh ProblemInstance from the registry."""
    return lookup(problem_id, domain).constructor(instance_id, dimension)


def _boolean_entry(problem_id: int, name: str, fn, raw_optimum) -> FunctionEntry:
    def build(instance_id: int, n: int) -> ProblemInstance:
        transform = make_boolean_transform(problem_id, instance_id, n)
        y_raw, x_raw = raw_optimum(n)
        optimum = OptimumInfo(
            y_opt=transform.apply_range(y_raw),
            x_opt=transform.domain_preimage(x_raw) if x_raw is not None else None,
            known=True,
        )
        metadata = ProblemMetadata.boolean(problem_id, name, n, instance_id)
        return ProblemInstance(metadata, fn, transform, optimum)

    return FunctionEntry(problem_id, name, Domain.BOOLEAN, build, raw_optimum)


def _wmodel_entry(problem_id: int, name: str, params_for) -> FunctionEntry:
    def make_fn(n: int) -> WModelFunction:
        seed = DUMMY_SEED_OFFSET + problem_id * 10_000 + n
        return WModelFunction(n, params_for(n), seed)

    def raw_optimum(n: int):
        return make_fn(n).optimum()

    def build(instance_id: int, n: int) -> ProblemInstance:
        fn = make_fn(n)
        transform = make_boolean_transform(problem_id, instance_id, n)
        y_raw, x_raw = fn.optimum()
        optimum = OptimumInfo(
            y_opt=transform.apply_range(y_raw),
            x_opt=transform.domain_preimage(x_raw),
            known=True,
        )
        metadata = ProblemMetadata.boolean(problem_id, name, n, instance_id)
        return ProblemInstance(metadata, fn, transform, optimum)

    return FunctionEntry(problem_id, name, Domain.BOOLEAN, build, raw_optimum)


def _continuous_entry(
    problem_id: int, name: str, fn, raw_optimum, use_rotation: bool = False
) -> FunctionEntry:
    def build(instance_id: int, n: int) -> ProblemInstance:
        transform = make_continuous_transform(problem_id, instance_id, n, use_rotation)
        y_raw, x_raw = raw_optimum(n)
        optimum = OptimumInfo(
            y_opt=transform.apply_range(y_raw),
            x_opt=transform.domain_preimage(x_raw) if x_raw is not None else None,
            known=True,
        )
        metadata = ProblemMetadata(
            problem_id=problem_id,
            name=name,
            dimension=n,
            instance_id=instance_id,
            direction=Direction.MINIMIZE,
            domain=Domain.CONTINUOUS,
            lower_bounds=np.full(n, CONTINUOUS_LOWER),
            upper_bounds=np.full(n, CONTINUOUS_UPPER),
        )
        return ProblemInstance(metadata, fn, transform, optimum)

    return FunctionEntry(problem_id, name, Domain.CONTINUOUS, build, raw_optimum)


def _register_catalog() -> None:
    ones = lambda n: np.ones(n, dtype=np.int8)
    register_function(_boolean_entry(1, "OneMax", onemax, lambda n: (float(n), ones(n))))
    register_function(
        _boolean_entry(2, "LeadingOnes", leadingones, lambda n: (float(n), ones(n)))
    )
    register_function(
        _boolean_entry(
            3, "LinearHarmonic", linear_harmonic, lambda n: (n * (n + 1) / 2.0, ones(n))
        )
    )
    register_function(
        _wmodel_entry(4, "OneMax_Dummy", lambda n: WModelParams(dummy_m=math.ceil(0.9 * n)))
    )
    register_function(
        _wmodel_entry(5, "OneMax_Neutrality", lambda n: WModelParams(neutrality_mu=3))
    )
    register_function(
        _wmodel_entry(
            6,
            "OneMax_EpistasisRugged",
            lambda n: WModelParams(epistasis_nu=4, ruggedness_enabled=True),
        )
    )

    origin = lambda n: (0.0, np.zeros(n))
    register_function(_continuous_entry(1, "Sphere", sphere, origin))
    register_function(_continuous_entry(2, "Ellipsoid", ellipsoid, origin))
    register_function(_continuous_entry(3, "Rastrigin", rastrigin, origin))
    register_function(
        _continuous_entry(8, "Rosenbrock", rosenbrock, lambda n: (0.0, np.ones(n)))
    )
    register_function(
        _continuous_entry(10, "EllipsoidRotated", ellipsoid, origin, use_rotation=True)
    )


_register_catalog()
